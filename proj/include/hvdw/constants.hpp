#pragma once

namespace hvdw {

// Atomic units throughout: hbar = e = m_e = 4*pi*eps0 = 1, energies in
// Hartree, lengths in Bohr radii, c = 1/alpha.
struct Constants {
    double alpha_fs = 7.2973525693e-3;

    double c() const { return 1.0 / alpha_fs; }

    // CODATA 2018 conversion factors (SI output only).
    static constexpr double hartree_joule = 4.3597447222071e-18;
    static constexpr double bohr_meter = 5.29177210903e-11;
    static constexpr double planck_joule_second = 6.62607015e-34;

    static double ghz_to_hartree(double ghz) {
        return ghz * 1e9 * planck_joule_second / hartree_joule;
    }
};

} // namespace hvdw
