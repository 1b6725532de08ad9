#pragma once

// Small deterministic CSV writer: one table per file, header row, rows kept
// in insertion order, numbers at full double precision. Identical inputs
// produce identical bytes, which the reproducibility tests rely on.

#include <cstddef>
#include <string>
#include <vector>

namespace s2flow {

// %.17g: round-trip exact, no locale surprises.
std::string csv_double(double v);
std::string csv_int(long long v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);  // throws config_error on width mismatch
    std::size_t rows() const { return rows_.size(); }

    std::string to_string() const;
    void write(const std::string& path) const;  // throws io_error with the path
private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace s2flow
