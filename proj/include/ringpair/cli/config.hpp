#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ringpair::cli
{

/// Parse or validation failure tied to a config line (0 when not line-specific).
class ConfigError : public std::runtime_error
{
public:
    ConfigError(const std::string& msg, int line = 0);
    int line() const { return line_; }

private:
    int line_;
};

struct ConfigValue
{
    using List = std::vector<std::variant<double, std::string>>;
    std::variant<double, std::string, bool, List> data;
    int line = 0;

    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_list() const { return std::holds_alternative<List>(data); }
};

/// Flat `key = value` document. Values are numbers, "quoted strings",
/// true/false, or [lists] of numbers/strings. `#` starts a comment.
class Config
{
public:
    static Config parse(const std::string& text, const std::string& source = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const ConfigValue& at(const std::string& key) const;

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    bool bool_or(const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> strings(const std::string& key) const;

    /// Keys that no accessor has touched; used to reject typos.
    std::vector<std::string> unused_keys() const;
    int line_of(const std::string& key) const;
    const std::string& source() const { return source_; }
    const std::map<std::string, ConfigValue>& values() const { return values_; }

private:
    std::string source_;
    std::map<std::string, ConfigValue> values_;
    mutable std::map<std::string, bool> used_;
};

} // namespace ringpair::cli
