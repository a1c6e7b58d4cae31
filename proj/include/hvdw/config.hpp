#pragma once

#include <string>

#include "hvdw/constants.hpp"

namespace hvdw {

// Runtime configuration. Defaults reproduce the shipped coefficient tables;
// every field can be set from a flat key = value config file, with CLI flags
// taking precedence.
struct RunConfig {
    Constants constants;

    double lamb_shift_ghz = 1.0;    // quasi-degenerate displacement, GHz
    double deg_threshold = 1e-9;    // quasi-degeneracy threshold, Hartree
    int basis_size = 120;           // pseudo-state count, excited-atom channels
    int basis_size_ground = 120;    // pseudo-state count, ground-atom channel
    double scale_a = 0.0;           // radial scale, 0 -> 1/max(2, n_A)
    double scale_b = 0.0;           // radial scale, 0 -> 1/max(2, n_B)
    double wick_rel_tol = 1e-10;
    int wick_max_depth = 48;
    std::string cache_dir;          // spectral disk cache; empty disables
    bool si_output = false;

    double lamb_shift() const { return Constants::ghz_to_hartree(lamb_shift_ghz); }

    // Flat key = value text round-trip.
    static RunConfig from_file(const std::string& path);
    void apply_line(const std::string& line);
    std::string serialize() const;

    // FNV-1a hash of the serialized form, for CSV reproducibility headers.
    std::string fingerprint() const;

    void validate() const;
};

} // namespace hvdw
