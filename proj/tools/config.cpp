#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qgravcli {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& s, bool& ok) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        ok = used == s.size();
        return v;
    } catch (...) {
        ok = false;
        return 0.0;
    }
}

struct Unit {
    const char* suffix;
    double scale;
};

// SI prefixes spelled out; a year is the Julian year (31557600 s)
constexpr Unit length_units[] = {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3},
                                 {"cm", 1e-2}, {"km", 1e3},  {"m", 1.0}};
constexpr Unit time_units[] = {{"ms", 1e-3}, {"us", 1e-6}, {"min", 60.0},
                               {"hr", 3600.0}, {"day", 86400.0}, {"yr", 31557600.0},
                               {"s", 1.0}};
constexpr Unit power_units[] = {{"kW", 1e3}, {"MW", 1e6}, {"GW", 1e9}, {"mW", 1e-3},
                                {"W", 1.0}};
constexpr Unit angle_units[] = {{"rad", 1.0}, {"deg", M_PI / 180.0}};

template <size_t N>
bool parse_with_units(const std::string& raw, const Unit (&units)[N], double& out) {
    const std::string s = trim(raw);
    // split into number and suffix at the last space or first alpha char
    size_t split = s.size();
    while (split > 0 &&
           (std::isalpha(static_cast<unsigned char>(s[split - 1])) || s[split - 1] == ' '))
        --split;
    const std::string num = trim(s.substr(0, split));
    const std::string suffix = trim(s.substr(split));
    if (num.empty() || suffix.empty()) return false;
    for (const Unit& u : units) {
        if (suffix == u.suffix) {
            bool ok = false;
            const double v = parse_double(num, ok);
            if (!ok) return false;
            out = v * u.scale;
            return true;
        }
    }
    return false;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            cfg.sections_[section]; // sections may be empty
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside of any [section]");
        if (cfg.sections_[section].count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                              "' in [" + section + "]");
        cfg.sections_[section][key] = Entry{value, lineno, false};
    }
    return cfg;
}

void Config::overlay(const Config& other) {
    for (const auto& [sec, entries] : other.sections_) {
        for (const auto& [key, entry] : entries) sections_[sec][key] = entry;
        sections_[sec];
    }
    if (origin_.empty()) origin_ = other.origin_;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    const auto it = sec->second.find(key);
    return it == sec->second.end() ? nullptr : &it->second;
}

const Config::Entry& Config::require(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e)
        throw ConfigError(origin_ + ": missing required key '" + key + "' in [" + section + "]");
    return *e;
}

void Config::fail(const Entry& e, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": " + msg + " (got '" +
                      e.value + "')");
}

double Config::number(const std::string& section, const std::string& key) {
    const Entry& e = require(section, key);
    e.consumed = true;
    bool ok = false;
    const double v = parse_double(e.value, ok);
    if (!ok) fail(e, "expected a plain number for '" + key + "'");
    return v;
}

double Config::number_or(const std::string& section, const std::string& key, double fallback) {
    return find(section, key) ? number(section, key) : fallback;
}

long Config::integer_or(const std::string& section, const std::string& key, long fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    const double v = number(section, key);
    if (v != std::floor(v)) fail(*e, "expected an integer for '" + key + "'");
    return static_cast<long>(v);
}

std::string Config::string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    return e->value;
}

double Config::length_m(const std::string& section, const std::string& key) {
    const Entry& e = require(section, key);
    e.consumed = true;
    double v = 0.0;
    if (!parse_with_units(e.value, length_units, v))
        fail(e, "expected a length with unit (nm|um|mm|cm|m|km) for '" + key + "'");
    return v;
}

double Config::length_m_or(const std::string& section, const std::string& key, double fallback) {
    return find(section, key) ? length_m(section, key) : fallback;
}

double Config::time_s(const std::string& section, const std::string& key) {
    const Entry& e = require(section, key);
    e.consumed = true;
    double v = 0.0;
    if (!parse_with_units(e.value, time_units, v))
        fail(e, "expected a time with unit (us|ms|s|min|hr|day|yr) for '" + key + "'");
    return v;
}

double Config::time_s_or(const std::string& section, const std::string& key, double fallback) {
    return find(section, key) ? time_s(section, key) : fallback;
}

double Config::power_w(const std::string& section, const std::string& key) {
    const Entry& e = require(section, key);
    e.consumed = true;
    double v = 0.0;
    if (!parse_with_units(e.value, power_units, v))
        fail(e, "expected a power with unit (mW|W|kW|MW|GW) for '" + key + "'");
    return v;
}

std::optional<double> Config::power_w_opt(const std::string& section, const std::string& key) {
    if (!find(section, key)) return std::nullopt;
    return power_w(section, key);
}

double Config::angle_rad_or(const std::string& section, const std::string& key,
                            double fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    double v = 0.0;
    if (parse_with_units(e->value, angle_units, v)) return v;
    bool ok = false;
    v = parse_double(e->value, ok); // bare numbers are radians
    if (!ok) fail(*e, "expected an angle (rad|deg or bare radians) for '" + key + "'");
    return v;
}

std::vector<double> Config::number_list_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    std::vector<double> out;
    std::istringstream in(e->value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(*e, "empty element in list '" + key + "'");
        bool ok = false;
        const double v = parse_double(item, ok);
        if (!ok) fail(*e, "expected a comma-separated number list for '" + key + "'");
        out.push_back(v);
    }
    if (out.empty()) fail(*e, "empty list for '" + key + "'");
    return out;
}

std::vector<double> Config::time_list_s_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    std::vector<double> out;
    std::istringstream in(e->value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        double v = 0.0;
        if (!parse_with_units(item, time_units, v))
            fail(*e, "expected a comma-separated list of times for '" + key + "'");
        out.push_back(v);
    }
    if (out.empty()) fail(*e, "empty list for '" + key + "'");
    return out;
}

void Config::ignore_section(const std::string& section) {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return;
    for (auto& [key, entry] : sec->second) entry.consumed = true;
}

void Config::ensure_all_consumed() const {
    for (const auto& [sec, entries] : sections_) {
        for (const auto& [key, entry] : entries) {
            if (!entry.consumed)
                throw ConfigError(origin_ + ":" + std::to_string(entry.line) +
                                  ": unknown key '" + key + "' in [" + sec + "]");
        }
    }
}

} // namespace qgravcli
