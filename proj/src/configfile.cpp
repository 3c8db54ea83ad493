#include "icvistream/configfile.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace icvistream {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e;
}

} // namespace

KvConfig KvConfig::parse_text(const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') {
        // JSON: accept a results.json echo ({"config": {...}}) or a flat object
        const auto j = nlohmann::json::parse(text);
        const auto& obj = j.contains("config") ? j["config"] : j;
        KvConfig cfg;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it->is_string()) {
                cfg.set(it.key(), it->get<std::string>());
            } else if (it->is_boolean()) {
                cfg.set(it.key(), it->get<bool>() ? "true" : "false");
            } else if (it->is_number()) {
                std::ostringstream os;
                os.precision(17);
                os << it->get<double>();
                cfg.set(it.key(), os.str());
            }
        }
        return cfg;
    }

    KvConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        const auto hash = value.find(" #");
        if (hash != std::string::npos) value = trim(value.substr(0, hash));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        }
        cfg.set(key, unquote(value));
    }
    return cfg;
}

KvConfig KvConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::optional<std::string> KvConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> KvConfig::get_number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    double v;
    if (!parse_double(it->second, v)) {
        throw std::runtime_error("config key '" + key + "': expected a number, got '" +
                                 it->second + "'");
    }
    return v;
}

std::optional<long long> KvConfig::get_int(const std::string& key) const {
    auto v = get_number(key);
    if (!v) return std::nullopt;
    return static_cast<long long>(std::llround(*v));
}

std::optional<bool> KvConfig::get_bool(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    const std::string& s = it->second;
    if (s == "true" || s == "True" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "False" || s == "0" || s == "no") return false;
    throw std::runtime_error("config key '" + key + "': expected a boolean, got '" + s + "'");
}

bool is_grid(const std::string& value) {
    double a, b, c;
    std::size_t p1 = value.find(':');
    if (p1 == std::string::npos) return false;
    std::size_t p2 = value.find(':', p1 + 1);
    if (p2 == std::string::npos) return false;
    return parse_double(trim(value.substr(0, p1)), a) &&
           parse_double(trim(value.substr(p1 + 1, p2 - p1 - 1)), b) &&
           parse_double(trim(value.substr(p2 + 1)), c);
}

std::vector<double> expand_grid(const std::string& value) {
    const std::size_t p1 = value.find(':');
    const std::size_t p2 = value.find(':', p1 + 1);
    double start, stop, step;
    if (p1 == std::string::npos || p2 == std::string::npos ||
        !parse_double(trim(value.substr(0, p1)), start) ||
        !parse_double(trim(value.substr(p1 + 1, p2 - p1 - 1)), stop) ||
        !parse_double(trim(value.substr(p2 + 1)), step) || step <= 0.0) {
        throw std::runtime_error("bad grid '" + value + "' (want start:stop:step)");
    }
    std::vector<double> out;
    for (double v = start; v <= stop + 0.5 * step; v += step) {
        out.push_back(v);
    }
    return out;
}

std::vector<KvConfig> expand_grids(const KvConfig& cfg, std::vector<std::string>* grid_keys) {
    std::vector<KvConfig> result{cfg};
    for (const auto& [key, value] : cfg.items()) {
        if (!is_grid(value)) continue;
        if (grid_keys) grid_keys->push_back(key);
        const auto points = expand_grid(value);
        std::vector<KvConfig> next;
        next.reserve(result.size() * points.size());
        for (const auto& base : result) {
            for (double p : points) {
                KvConfig c = base;
                std::ostringstream os;
                os.precision(17);
                os << p;
                c.set(key, os.str());
                next.push_back(std::move(c));
            }
        }
        result = std::move(next);
    }
    return result;
}

} // namespace icvistream
