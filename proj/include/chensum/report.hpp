// report.hpp
// CSV/JSON emission with stable field order. Reals are written with 12
// significant digits, rationals as "p/q" strings.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace chensum {

std::string format_real(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Throws std::runtime_error when the path is not writable.
void write_text_file(const std::string& path, const std::string& content);

std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace chensum
