#include "hvdw/config.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hvdw {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

void RunConfig::apply_line(const std::string& line) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') return;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config: expected key = value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "alpha_fs") constants.alpha_fs = std::stod(val);
    else if (key == "lamb_shift_ghz") lamb_shift_ghz = std::stod(val);
    else if (key == "deg_threshold") deg_threshold = std::stod(val);
    else if (key == "basis_size") basis_size = std::stoi(val);
    else if (key == "basis_size_ground") basis_size_ground = std::stoi(val);
    else if (key == "scale_a") scale_a = std::stod(val);
    else if (key == "scale_b") scale_b = std::stod(val);
    else if (key == "wick_rel_tol") wick_rel_tol = std::stod(val);
    else if (key == "wick_max_depth") wick_max_depth = std::stoi(val);
    else if (key == "cache_dir") cache_dir = val;
    else if (key == "si_output") si_output = (val == "true" || val == "1");
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) cfg.apply_line(line);
    cfg.validate();
    return cfg;
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "alpha_fs = " << constants.alpha_fs << "\n"
       << "lamb_shift_ghz = " << lamb_shift_ghz << "\n"
       << "deg_threshold = " << deg_threshold << "\n"
       << "basis_size = " << basis_size << "\n"
       << "basis_size_ground = " << basis_size_ground << "\n"
       << "scale_a = " << scale_a << "\n"
       << "scale_b = " << scale_b << "\n"
       << "wick_rel_tol = " << wick_rel_tol << "\n"
       << "wick_max_depth = " << wick_max_depth << "\n"
       << "cache_dir = " << cache_dir << "\n"
       << "si_output = " << (si_output ? "true" : "false") << "\n";
    return os.str();
}

std::string RunConfig::fingerprint() const {
    const std::string s = serialize();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void RunConfig::validate() const {
    if (constants.alpha_fs <= 0.0) throw std::invalid_argument("config: alpha_fs must be > 0");
    if (lamb_shift_ghz <= 0.0) throw std::invalid_argument("config: lamb_shift_ghz must be > 0");
    if (deg_threshold <= 0.0) throw std::invalid_argument("config: deg_threshold must be > 0");
    if (basis_size < 4 || basis_size_ground < 4)
        throw std::invalid_argument("config: basis sizes must be >= 4");
    if (wick_rel_tol <= 0.0) throw std::invalid_argument("config: wick_rel_tol must be > 0");
}

} // namespace hvdw
