#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/core_types.hpp"

namespace shiftlab::cli {

/// Flat `key = value` configuration. Lines starting with '#' are comments; lists are comma separated.
class RunConfig {
public:
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] double require_double(const std::string& key) const;
    [[nodiscard]] long get_int(const std::string& key, long fallback) const;
    [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
    [[nodiscard]] std::vector<double> get_doubles(const std::string& key) const;

    /// k, nu, a_re, a_im, coeffs_re, coeffs_im (lowest degree first); validated.
    [[nodiscard]] ShiftSpec shift() const;
    /// coeffs_re, coeffs_im only.
    [[nodiscard]] Polynomial polynomial() const;
    /// z0_re, z0_im with k entries each; zeros when absent.
    [[nodiscard]] Point point(const std::string& prefix, int k) const;

    [[nodiscard]] std::uint64_t seed() const;

    [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace shiftlab::cli
