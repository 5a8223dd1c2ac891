#include "ringpair/cli/writers.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ringpair::cli
{

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace
{

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

} // namespace

std::string write_table(const std::string& dir, const std::string& stem, const Table& table,
                        TableFormat format)
{
    const std::string name = stem + (format == TableFormat::Csv ? ".csv" : ".json");
    const std::string path = (std::filesystem::path(dir) / name).string();
    if (format == TableFormat::Json)
    {
        nlohmann::ordered_json doc;
        doc["columns"] = table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : table.rows)
        {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& c : r)
            {
                if (std::holds_alternative<double>(c))
                    row.push_back(std::get<double>(c));
                else
                    row.push_back(std::get<std::string>(c));
            }
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        write_json(path, doc);
        return name;
    }
    std::ofstream f = open_out(path);
    std::string line;
    for (std::size_t k = 0; k < table.columns.size(); ++k)
        line += (k ? "," : "") + table.columns[k];
    f << line << '\n';
    for (const auto& r : table.rows)
    {
        line.clear();
        for (std::size_t k = 0; k < r.size(); ++k)
        {
            if (k)
                line += ',';
            if (std::holds_alternative<double>(r[k]))
                line += format_number(std::get<double>(r[k]));
            else
                line += std::get<std::string>(r[k]);
        }
        f << line << '\n';
    }
    return name;
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc)
{
    std::ofstream f = open_out(path);
    f << doc.dump(2) << '\n';
}

void write_binary(const std::string& path, const std::vector<double>& values)
{
    std::ofstream f = open_out(path);
    for (double v : values)
    {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        if constexpr (std::endian::native == std::endian::big)
            bits = __builtin_bswap64(bits);
        f.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
}

} // namespace ringpair::cli
