#ifndef QGRAV_CLI_CONFIG_HPP
#define QGRAV_CLI_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgravcli {

// Raised for anything wrong with a config file; the CLI maps it to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// INI-style config with explicit unit suffixes on physical quantities
// ("arm_length = 10 km"). Parsing is strict: every key must be consumed by
// the command schema or the run aborts before computing anything.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin);

    // merge `other` on top of this config (other wins per key)
    void overlay(const Config& other);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    // typed getters; all record the key as consumed
    double number(const std::string& section, const std::string& key);
    double number_or(const std::string& section, const std::string& key, double fallback);
    long integer_or(const std::string& section, const std::string& key, long fallback);
    std::string string_or(const std::string& section, const std::string& key,
                          const std::string& fallback);
    double length_m(const std::string& section, const std::string& key);
    double length_m_or(const std::string& section, const std::string& key, double fallback);
    double time_s(const std::string& section, const std::string& key);
    double time_s_or(const std::string& section, const std::string& key, double fallback);
    double power_w(const std::string& section, const std::string& key);
    std::optional<double> power_w_opt(const std::string& section, const std::string& key);
    double angle_rad_or(const std::string& section, const std::string& key, double fallback);
    std::vector<double> number_list_or(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback);
    std::vector<double> time_list_s_or(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback);

    // mark a whole section consumed (annotation sections like [reference]
    // that commands read selectively)
    void ignore_section(const std::string& section);

    // reject any key that no getter touched
    void ensure_all_consumed() const;

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    const Entry* find(const std::string& section, const std::string& key) const;
    const Entry& require(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const Entry& e, const std::string& msg) const;
};

} // namespace qgravcli

#endif
