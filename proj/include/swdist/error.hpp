#pragma once

#include <stdexcept>
#include <string>

namespace swdist {

struct invalid_parameter : std::invalid_argument {
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

struct invalid_measure : std::invalid_argument {
    explicit invalid_measure(const std::string& what) : std::invalid_argument(what) {}
};

struct invalid_witness : std::invalid_argument {
    explicit invalid_witness(const std::string& what) : std::invalid_argument(what) {}
};

struct unsupported_dimension : std::invalid_argument {
    explicit unsupported_dimension(const std::string& what) : std::invalid_argument(what) {}
};

struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct numerical_degeneracy : std::runtime_error {
    explicit numerical_degeneracy(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swdist
