#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace shiftlab::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "k", "nu", "a_re", "a_im", "coeffs_re", "coeffs_im", "seed",
        // iterate
        "z0_re", "z0_im", "horizon", "R",
        // slice
        "slice_x", "slice_y", "box", "width", "height", "level",
        // degenerate
        "a_list", "count", "burn_in", "supp_eps", "lyapunov_n", "green_level", "test_points",
        // cover, certify, partition
        "eps", "resolution", "cell", "per_label", "rho1", "N", "lambda", "search", "max_N", "phases",
        "head_weight", "required_pass", "blocks", "candidate_eps",
        // hyperbolic1d
        "tol", "eta", "eta_starts", "eta_draws", "eta_horizon"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ValidationError("config key '" + key + "': not a number: '" + t + "'");
    return v;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (!known_keys().count(key)) throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (c.values_.count(key)) throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        c.values_[key] = trim(t.substr(eq + 1));
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

double RunConfig::require_double(const std::string& key) const {
    if (!has(key)) throw ValidationError("config key '" + key + "' is required");
    return get_double(key, 0.0);
}

long RunConfig::get_int(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string t = trim(it->second);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ValidationError("config key '" + key + "': not an integer: '" + t + "'");
    return v;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ValidationError("config key '" + key + "': expected true or false");
}

std::vector<double> RunConfig::get_doubles(const std::string& key) const {
    std::vector<double> out;
    const auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
    return out;
}

Polynomial RunConfig::polynomial() const {
    const auto re = get_doubles("coeffs_re");
    auto im = get_doubles("coeffs_im");
    if (re.empty()) throw ValidationError("config key 'coeffs_re' is required");
    if (im.empty()) im.assign(re.size(), 0.0);
    if (im.size() != re.size()) throw ValidationError("coeffs_re and coeffs_im differ in length");
    std::vector<Complex> c;
    for (std::size_t i = 0; i < re.size(); ++i) c.emplace_back(re[i], im[i]);
    return Polynomial(std::move(c));
}

ShiftSpec RunConfig::shift() const {
    ShiftSpec s;
    s.k = static_cast<int>(get_int("k", 3));
    s.nu = static_cast<int>(get_int("nu", 1));
    s.a = Complex{get_double("a_re", 0.0), get_double("a_im", 0.0)};
    s.p = polynomial();
    validate_shift(s);
    return s;
}

Point RunConfig::point(const std::string& prefix, int k) const {
    auto re = get_doubles(prefix + "_re");
    auto im = get_doubles(prefix + "_im");
    if (re.empty()) re.assign(static_cast<std::size_t>(k), 0.0);
    if (im.empty()) im.assign(re.size(), 0.0);
    if (re.size() != static_cast<std::size_t>(k) || im.size() != re.size())
        throw ValidationError(prefix + "_re/" + prefix + "_im must have k = " + std::to_string(k) + " entries");
    Point z(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < re.size(); ++i) z[i] = Complex{re[i], im[i]};
    return z;
}

std::uint64_t RunConfig::seed() const {
    const long s = get_int("seed", 1);
    if (s < 0) throw ValidationError("seed must be non-negative");
    return static_cast<std::uint64_t>(s);
}

}  // namespace shiftlab::cli
