#include "ringpair/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ringpair::cli
{

ConfigError::ConfigError(const std::string& msg, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line)
{
}

namespace
{

class LineParser
{
public:
    LineParser(const std::string& text, int line) : s_(text), line_(line) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r'))
            ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size() || s_[pos_] == '#';
    }

    std::string key()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size()
               && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'
                   || s_[pos_] == '.' || s_[pos_] == '-'))
            ++pos_;
        if (pos_ == start)
            fail("expected a key");
        return s_.substr(start, pos_ - start);
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::variant<double, std::string> scalar()
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '"')
            return quoted();
        return number();
    }

    ConfigValue value()
    {
        skip_ws();
        ConfigValue v;
        v.line = line_;
        if (pos_ >= s_.size() || s_[pos_] == '#')
            fail("missing value");
        if (s_[pos_] == '[')
        {
            ++pos_;
            ConfigValue::List list;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ']')
            {
                ++pos_;
                v.data = list;
                return v;
            }
            for (;;)
            {
                list.push_back(scalar());
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == ',')
                {
                    ++pos_;
                    continue;
                }
                expect(']');
                break;
            }
            v.data = list;
        }
        else if (s_.compare(pos_, 4, "true") == 0 && !word_continues(pos_ + 4))
        {
            pos_ += 4;
            v.data = true;
        }
        else if (s_.compare(pos_, 5, "false") == 0 && !word_continues(pos_ + 5))
        {
            pos_ += 5;
            v.data = false;
        }
        else
        {
            auto sc = scalar();
            if (std::holds_alternative<double>(sc))
                v.data = std::get<double>(sc);
            else
                v.data = std::get<std::string>(sc);
        }
        return v;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ConfigError(msg + " (column " + std::to_string(pos_ + 1) + ")", line_);
    }

private:
    bool word_continues(std::size_t p) const
    {
        return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
    }

    std::string quoted()
    {
        ++pos_;
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"')
        {
            if (s_[pos_] == '\\' && pos_ + 1 < s_.size())
                ++pos_;
            out += s_[pos_++];
        }
        if (pos_ >= s_.size())
            fail("unterminated string");
        ++pos_;
        return out;
    }

    double number()
    {
        const char* begin = s_.data() + pos_;
        const char* end = s_.data() + s_.size();
        if (begin < end && *begin == '+')
            ++begin;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin)
            fail("expected a number, string, boolean or list");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    const std::string& s_;
    int line_;
    std::size_t pos_ = 0;
};

} // namespace

Config Config::parse(const std::string& text, const std::string& source)
{
    Config cfg;
    cfg.source_ = source;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        LineParser p(line, lineno);
        if (p.at_end())
            continue;
        const std::string key = p.key();
        p.expect('=');
        ConfigValue v = p.value();
        if (!p.at_end())
            p.fail("unexpected trailing characters");
        if (cfg.values_.count(key))
            throw ConfigError("duplicate key '" + key + "' (first set on line "
                                  + std::to_string(cfg.values_.at(key).line) + ")",
                              lineno);
        cfg.values_.emplace(key, std::move(v));
    }
    return cfg;
}

Config Config::load(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

const ConfigValue& Config::at(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing required key '" + key + "'");
    used_[key] = true;
    return it->second;
}

double Config::number(const std::string& key) const
{
    const ConfigValue& v = at(key);
    if (!v.is_number())
        throw ConfigError("key '" + key + "' must be a number", v.line);
    return std::get<double>(v.data);
}

double Config::number_or(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

std::string Config::string_or(const std::string& key, const std::string& fallback) const
{
    if (!has(key))
        return fallback;
    const ConfigValue& v = at(key);
    if (!v.is_string())
        throw ConfigError("key '" + key + "' must be a quoted string", v.line);
    return std::get<std::string>(v.data);
}

bool Config::bool_or(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const ConfigValue& v = at(key);
    if (!v.is_bool())
        throw ConfigError("key '" + key + "' must be true or false", v.line);
    return std::get<bool>(v.data);
}

std::vector<double> Config::numbers(const std::string& key) const
{
    const ConfigValue& v = at(key);
    if (v.is_number())
        return {std::get<double>(v.data)};
    if (!v.is_list())
        throw ConfigError("key '" + key + "' must be a number or a list of numbers", v.line);
    std::vector<double> out;
    for (const auto& item : std::get<ConfigValue::List>(v.data))
    {
        if (!std::holds_alternative<double>(item))
            throw ConfigError("key '" + key + "' must contain only numbers", v.line);
        out.push_back(std::get<double>(item));
    }
    return out;
}

std::vector<std::string> Config::strings(const std::string& key) const
{
    const ConfigValue& v = at(key);
    if (v.is_string())
        return {std::get<std::string>(v.data)};
    if (!v.is_list())
        throw ConfigError("key '" + key + "' must be a string or a list of strings", v.line);
    std::vector<std::string> out;
    for (const auto& item : std::get<ConfigValue::List>(v.data))
    {
        if (!std::holds_alternative<std::string>(item))
            throw ConfigError("key '" + key + "' must contain only strings", v.line);
        out.push_back(std::get<std::string>(item));
    }
    return out;
}

std::vector<std::string> Config::unused_keys() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!used_.count(k))
            out.push_back(k);
    return out;
}

int Config::line_of(const std::string& key) const
{
    auto it = values_.find(key);
    return it == values_.end() ? 0 : it->second.line;
}

} // namespace ringpair::cli
