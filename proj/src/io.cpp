#include "swdist/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "swdist/error.hpp"

namespace swdist {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

[[noreturn]] void fail(const std::string& path, std::size_t line, std::size_t col,
                       const std::string& msg) {
    throw invalid_measure(path + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + msg);
}

}  // namespace

EmpiricalMeasure read_csv_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_measure("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    bool has_weight_col = false;
    std::size_t ncols = 0;
    bool saw_header = false;
    std::vector<double> coords;
    std::vector<double> weights;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto fields = split_csv_line(line);
        if (ncols == 0) {
            // first non-empty line: header if any field is non-numeric
            double tmp;
            bool numeric = true;
            for (const auto& f : fields)
                if (!parse_double(f, tmp)) numeric = false;
            if (!numeric) {
                saw_header = true;
                ncols = fields.size();
                has_weight_col = (fields.back() == "weight");
                continue;
            }
            ncols = fields.size();
        }
        if (fields.size() != ncols)
            fail(path, lineno, fields.size(), "expected " + std::to_string(ncols) +
                                                  " columns");
        const std::size_t d = has_weight_col ? ncols - 1 : ncols;
        if (d == 0) fail(path, lineno, 1, "no coordinate columns");
        for (std::size_t c = 0; c < d; ++c) {
            double v;
            if (!parse_double(fields[c], v)) fail(path, lineno, c + 1, "not a number");
            coords.push_back(v);
        }
        if (has_weight_col) {
            double w;
            if (!parse_double(fields[ncols - 1], w))
                fail(path, lineno, ncols, "bad weight");
            weights.push_back(w);
        }
    }
    (void)saw_header;
    if (coords.empty()) throw invalid_measure(path + ": no data rows");
    const std::size_t d = has_weight_col ? ncols - 1 : ncols;
    if (!has_weight_col) return EmpiricalMeasure::uniform(std::move(coords), d);
    // normalize weights to sum 1 (the file carries relative weights)
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw invalid_measure(path + ": negative weight");
        total += w;
    }
    if (!(total > 0.0)) throw invalid_measure(path + ": weights sum to 0");
    for (double& w : weights) w /= total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) acc += weights[i];
    weights.back() = 1.0 - acc;
    return EmpiricalMeasure(std::move(coords), d, std::move(weights));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace swdist
