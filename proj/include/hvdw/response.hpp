#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hvdw/config.hpp"
#include "hvdw/hydrogen.hpp"
#include "hvdw/sturmian.hpp"

namespace hvdw {

enum class FrequencyAxis { real_axis, imaginary_axis };

struct FrequencyPoint {
    std::complex<double> value{0.0, 0.0};
    FrequencyAxis axis = FrequencyAxis::real_axis;

    static FrequencyPoint real(double w) { return {{w, 0.0}, FrequencyAxis::real_axis}; }
    static FrequencyPoint imaginary(double u) { return {{0.0, u}, FrequencyAxis::imaginary_axis}; }
};

// One group of spectral terms sharing an angular numerator tensor:
//   contribution = tensor * sum_k weight_k [1/(gap_k - w) + 1/(gap_k + w)].
// Weights are products of radial amplitudes (signed for mixed kinds).
struct SpectralGroup {
    Eigen::Matrix3cd tensor;
    Eigen::VectorXd gaps;
    Eigen::VectorXd weights;
    std::string name;
    int channel_l = -1;
};

// Spectral (pole-sum) representation of a tensor or mixed polarizability.
// Quasi-degenerate terms (same-n manifold, displaced by the Lamb shift) are
// kept in a separate list so callers can include or exclude them.
class SpectralPolarizability {
  public:
    std::vector<SpectralGroup> ordinary;
    std::vector<SpectralGroup> quasi;

    Eigen::Matrix3cd eval(std::complex<double> omega, bool include_quasi = false) const;
    Eigen::Matrix3cd eval_imag(double u, bool include_quasi = false) const;
    Eigen::Matrix3cd eval_imag_quasi(double u) const; // quasi-degenerate part alone
    Eigen::Matrix3cd eval_static(bool include_quasi = false) const;

    // Distance from a real frequency to the nearest pole, with its label.
    std::pair<double, std::string> nearest_pole(double omega, bool include_quasi = false) const;

    bool empty() const { return ordinary.empty() && quasi.empty(); }
};

// Dynamic polarizability of a bound state, Feynman pole prescription, summed
// over the dipole-allowed channels l' = l +/- 1 of the pseudo-state spectrum.
SpectralPolarizability build_direct_polarizability(const BoundState& ref,
                                                   const AveragingScheme& scheme,
                                                   const RunConfig& cfg,
                                                   double scale_override = 0.0,
                                                   int size_override = 0);

enum class MixedSide { a_underlined, b_underlined };

// Two-atom mixed polarizability for a fixed projection m_A of the excited
// state; zero (empty) unless l_A = l_B or |l_A - l_B| = 2. Both underline
// variants share numerators and differ in the energy gaps.
SpectralPolarizability build_mixed_polarizability(const BoundState& state_a, int m_a,
                                                  const BoundState& state_b,
                                                  MixedSide side, const RunConfig& cfg);

// Evaluation with pole-hit detection on the real axis (exact eps -> 0 limit;
// no finite broadening anywhere).
Eigen::Matrix3cd polarizability_tensor(const SpectralPolarizability& pol,
                                       const FrequencyPoint& w,
                                       bool include_quasi = false);

double static_scalar_polarizability(const SpectralPolarizability& pol,
                                    bool include_quasi = false);

} // namespace hvdw
