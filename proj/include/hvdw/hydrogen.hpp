#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hvdw {

// Nonrelativistic hydrogen bound state |n l m>, infinite nuclear mass.
struct BoundState {
    int n = 1;
    int l = 0;
    int m = 0;

    BoundState() = default;
    BoundState(int n_, int l_, int m_ = 0);

    std::string label() const;

    bool operator==(const BoundState& o) const {
        return n == o.n && l == o.l && m == o.m;
    }
};

// -1/(2 n^2) Hartree.
double bound_energy(int n);

// E(state) - E(reference); negative when `state` lies below the reference.
double transition_gap(const BoundState& state, const BoundState& reference);

// Reduced radial function u_nl(r) = r R_nl(r), positive near the origin.
double radial_u(int n, int l, double r);

// <n1 l1| r |n2 l2> radial integral over u1 * r * u2, |l1 - l2| = 1 required.
double radial_dipole(int n1, int l1, int n2, int l2);

// <n l| r^2 |n l> = n^2/2 (5 n^2 + 1 - 3 l (l+1)).
double expectation_r2(int n, int l);

enum class Axis { x = 0, y = 1, z = 2 };

// <l m| rhat_i |l' m'> angular integral over spherical harmonics; complex in
// general (y component), zero unless |l - l'| = 1 and the m rule holds.
std::complex<double> angular_dipole_factor(int l, int m, int lp, int mp, Axis i);

// Sum_{m',i} |<l m|rhat_i|l' m'>|^2: (l+1)/(2l+1) up, l/(2l+1) down.
double angular_strength(int l, int lp);

// T_ik = Sum_{m'} <l m|rhat_i|l' m'><l' m'|rhat_k|l m>  (Hermitian).
Eigen::Matrix3cd angular_channel_tensor(int l, int m, int lp);

// X_ik = Sum_{mv} <la ma|rhat_i|lv mv><lv mv|rhat_k|lb mb>.
Eigen::Matrix3cd angular_mixed_tensor(int la, int ma, int lv, int lb, int mb);

enum class AveragingKind {
    projection_average,
    single_projection,
    fine_structure_average,
};

struct AveragingScheme {
    AveragingKind kind = AveragingKind::projection_average;
    int m = 0; // used by single_projection only

    static AveragingScheme projection() { return {AveragingKind::projection_average, 0}; }
    static AveragingScheme single(int m) { return {AveragingKind::single_projection, m}; }
    static AveragingScheme fine_structure() { return {AveragingKind::fine_structure_average, 0}; }
};

// (projection, weight) pairs; weights are nonnegative and sum to 1. The
// fine-structure average reduces to the m average because nonrelativistic
// energy denominators are J-independent.
std::vector<std::pair<int, double>> averaging_weights(const AveragingScheme& scheme, int l);

} // namespace hvdw
