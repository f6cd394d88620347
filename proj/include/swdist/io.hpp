#pragma once

#include <string>

#include "swdist/measures.hpp"

namespace swdist {

// CSV contract: one row per point, d numeric columns, optional final column
// named `weight` (requires a header row); without weights, uniform 1/n.
// Parse errors carry line/column.
EmpiricalMeasure read_csv_measure(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace swdist
