#pragma once

#include "lyaplab/map.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyaplab {

// Invalid configuration with a field-level diagnostic.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& message)
        : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}
};

// Flat typed key-value experiment description. Serialization is "key = value"
// per line, keys sorted; identical configs digest identically and re-running
// one reproduces identical outputs byte for byte.
class ExperimentConfig {
public:
    ExperimentConfig() { set("schema_version", "1"); }

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set(const std::string& key, double value);
    void set(const std::string& key, long value) { kv_[key] = std::to_string(value); }
    void set(const std::string& key, int value) { kv_[key] = std::to_string(value); }
    void set(const std::string& key, std::uint64_t value) { kv_[key] = std::to_string(value); }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_str(const std::string& key) const;
    std::string get_str_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long_or(const std::string& key, long fallback) const;
    std::uint64_t get_seed_or(const std::string& key, std::uint64_t fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;
    std::vector<long> get_long_list(const std::string& key) const; // comma separated

    // Map keys: family = poly|exp, degree, c_re, c_im, a_re, a_im.
    MapSpec map() const;

    std::string canonical() const;
    std::string digest() const; // FNV-1a 64 of the canonical form, hex

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
    void to_file(const std::string& path) const;

    // File values override existing entries (config file wins over flags).
    void overlay(const ExperimentConfig& other);

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace lyaplab
