#include "lyaplab/config.hpp"

#include "lyaplab/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lyaplab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

void ExperimentConfig::set(const std::string& key, double value) {
    kv_[key] = format_double(value);
}

std::string ExperimentConfig::get_str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(key, "missing required key");
    return it->second;
}

std::string ExperimentConfig::get_str_or(const std::string& key,
                                         const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key) const {
    const std::string raw = get_str(key);
    try {
        std::size_t pos = 0;
        double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + raw + "'");
    }
}

double ExperimentConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long ExperimentConfig::get_long(const std::string& key) const {
    const std::string raw = get_str(key);
    try {
        std::size_t pos = 0;
        long v = std::stol(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + raw + "'");
    }
}

long ExperimentConfig::get_long_or(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}

std::uint64_t ExperimentConfig::get_seed_or(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string raw = get_str(key);
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a seed: '" + raw + "'");
    }
}

bool ExperimentConfig::get_bool_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string raw = get_str(key);
    if (raw == "1" || raw == "true" || raw == "yes") return true;
    if (raw == "0" || raw == "false" || raw == "no") return false;
    throw ConfigError(key, "not a boolean: '" + raw + "'");
}

std::vector<long> ExperimentConfig::get_long_list(const std::string& key) const {
    const std::string raw = get_str(key);
    std::vector<long> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ConfigError(key, "not an integer list: '" + raw + "'");
        }
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

MapSpec ExperimentConfig::map() const {
    const std::string family = get_str_or("family", "poly");
    if (family == "poly") {
        long d = get_long_or("degree", 2);
        if (d < 2) throw ConfigError("degree", "must be >= 2");
        return MapSpec::poly(static_cast<int>(d),
                             cplx{get_double_or("c_re", 0.0), get_double_or("c_im", 0.0)});
    }
    if (family == "exp") {
        cplx a{get_double_or("a_re", 1.0), get_double_or("a_im", 0.0)};
        if (a == cplx{0.0, 0.0}) throw ConfigError("a_re", "a must be nonzero");
        return MapSpec::exponential(a);
    }
    throw ConfigError("family", "expected poly or exp, got '" + family + "'");
}

std::string ExperimentConfig::canonical() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::string ExperimentConfig::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char ch : canonical()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    long line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no), "empty key");
        cfg.set(key, value);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

void ExperimentConfig::to_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("config", "cannot write '" + path + "'");
    out << canonical();
}

void ExperimentConfig::overlay(const ExperimentConfig& other) {
    for (const auto& [k, v] : other.kv_) kv_[k] = v;
}

} // namespace lyaplab
