#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace ringpair::cli
{

enum class TableFormat
{
    Csv,
    Json
};

/// Fixed-width-free decimal rendering with 17 significant digits.
std::string format_number(double v);

struct Table
{
    using Cell = std::variant<double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Writes `stem`.csv or `stem`.json and returns the file name written.
std::string write_table(const std::string& dir, const std::string& stem, const Table& table,
                        TableFormat format);

void write_json(const std::string& path, const nlohmann::ordered_json& doc);

/// Raw little-endian IEEE-754 doubles, no header.
void write_binary(const std::string& path, const std::vector<double>& values);

} // namespace ringpair::cli
