#ifndef ICVISTREAM_CONFIGFILE_HPP
#define ICVISTREAM_CONFIGFILE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace icvistream {

/// Flat key = value configuration. Lines starting with # are comments;
/// values may be numbers, true/false, bare or quoted strings, or a
/// numeric grid "start:stop:step". Keys follow the model's parameter
/// names (rho_a, beta_1, ...). Files whose first non-space character
/// is '{' are parsed as JSON instead (a results.json echo re-runs
/// as-is).
class KvConfig {
public:
    static KvConfig parse_file(const std::filesystem::path& path);
    static KvConfig parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_number(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& items() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Grid values: "a:b:c" expands to a, a+c, ..., up to b (inclusive
/// within a half-step tolerance).
bool is_grid(const std::string& value);
std::vector<double> expand_grid(const std::string& value);

/// Cartesian product over every grid-valued key; non-grid keys pass
/// through. A config without grids expands to itself.
std::vector<KvConfig> expand_grids(const KvConfig& cfg, std::vector<std::string>* grid_keys = nullptr);

} // namespace icvistream

#endif
