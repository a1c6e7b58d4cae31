#pragma once

#include <string>
#include <vector>

#include "hvdw/interaction.hpp"

namespace hvdw {

// Short-range 1/R^6 coefficients from the spectral double sum. The lower and
// upper virtual channels are l_A - 1 and l_A + 1 (virtual P and F for nD
// references). Quasi-degenerate same-n states enter with the Lamb-shift gap
// when included.
struct ChannelCoefficients {
    double lower = 0.0;
    double upper = 0.0;
    double total = 0.0;
    int lower_l = -1;
    int upper_l = -1;
};

ChannelCoefficients d6_direct(const PairModel& model, bool include_quasi_degenerate = true);

double m6_mixing(const PairModel& model, bool include_quasi_degenerate = true);

// <Dbar6(nD;1S)> = 81/8 n^2 (n^2 - 7).
double dbar6_closed_form(int n);

// Leading intermediate-range coefficient of the quasi-degenerate channel,
// from exact intra-manifold dipole elements and the static ground-state
// polarizability; independent of the Lamb shift at this order.
double dbar6_numeric(const PairModel& model, double lamb_shift);

double mbar6_numeric(const PairModel& model);

// Retarded 1/R^7 tails and oscillatory 1/R^2 tails.
double cp_tail_direct(const PairModel& model, double R);
double cp_tail_mixing(const PairModel& model, double R);
double pole_tail_direct(const PairModel& model, double R);
double pole_tail_mixing(const PairModel& model, double R);

struct PoleTailTerm {
    int n = 0, l = 0;
    double gap = 0.0;       // E_m - E_A, Hartree
    double amplitude = 0.0; // tail = -amplitude cos(2 gap R / c) / R^2
    double phase_rate = 0.0; // 2 gap / c, radians per Bohr radius
};

std::vector<PoleTailTerm> pole_tail_terms(const PairModel& model);

struct CoefficientSet {
    ChannelCoefficients d6;
    double m6 = 0.0;
    double dbar6 = 0.0;
    double mbar6 = 0.0;
    double cp_amplitude_dir = 0.0; // tail = -amplitude / R^7
    double cp_amplitude_mix = 0.0;
    std::vector<PoleTailTerm> pole_tails;
};

CoefficientSet coefficient_set(const PairModel& model);

enum class EnvelopeKind {
    pole_cos_r4, // alpha^4 / rho^2
    pole_cos_r2, // alpha^2 / rho^4
    pole_cos_r0, // 1 / rho^6
    pole_sin_r3, // alpha^3 / rho^3
    pole_sin_r1, // alpha / rho^5
    vdw,         // 1 / rho^6
    wick_retarded // 1 / (alpha rho^7)
};

// Order-of-magnitude envelope of each monomial, cos/sin factors dropped.
double parametric_envelope(EnvelopeKind kind, double rho, double alpha_fs);

// Worst-case (|cos| = 1) envelope of the pole term, channels added coherently.
double pole_envelope(const PairModel& model, double R);

struct CrossoverResult {
    bool found = false;
    double R = 0.0;
    double pole_envelope = 0.0;
    double wick_magnitude = 0.0;
    std::string status;
};

// Smallest R in [rmin, rmax] beyond which the pole envelope permanently
// exceeds |W|.
CrossoverResult crossover_radius(const PairModel& model, double rmin, double rmax);

} // namespace hvdw
