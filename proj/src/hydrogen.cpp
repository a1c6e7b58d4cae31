#include "hvdw/hydrogen.hpp"

#include <cmath>
#include <sstream>

#include "hvdw/errors.hpp"
#include "hvdw/quadrature.hpp"

namespace hvdw {

BoundState::BoundState(int n_, int l_, int m_) : n(n_), l(l_), m(m_) {
    if (n < 1) throw std::invalid_argument("BoundState: n must be >= 1");
    if (l < 0 || l >= n) throw std::invalid_argument("BoundState: need 0 <= l < n");
    if (std::abs(m) > l) throw std::invalid_argument("BoundState: need |m| <= l");
}

std::string BoundState::label() const {
    static const char* letters = "SPDFGHIK";
    std::ostringstream os;
    os << n;
    if (l < 8)
        os << letters[l];
    else
        os << "(l=" << l << ")";
    return os.str();
}

double bound_energy(int n) {
    if (n < 1) throw std::domain_error("bound_energy: n must be >= 1");
    return -0.5 / (static_cast<double>(n) * n);
}

double transition_gap(const BoundState& state, const BoundState& reference) {
    return bound_energy(state.n) - bound_energy(reference.n);
}

double radial_u(int n, int l, double r) {
    if (r <= 0.0) return 0.0;
    const double x = 2.0 * r / n;
    // u_nl = sqrt((n-l-1)!/(n^2 (n+l)!)) x^{l+1} e^{-x/2} L_{n-l-1}^{2l+1}(x).
    double ratio = 1.0; // (n+l)! / (n-l-1)!
    for (int k = n - l; k <= n + l; ++k) ratio *= k;
    const double norm = std::sqrt(1.0 / (ratio * n * n));
    // Scaled Laguerre recurrence, lk = exp(-x/2) L_k^{(2l+1)}(x), keeps
    // intermediates bounded for large x.
    const int kmax = n - l - 1;
    const double e = std::exp(-0.5 * x);
    const double alpha = 2.0 * l + 1.0;
    double lkm1 = e;
    double lk = e * (alpha + 1.0 - x);
    double val = (kmax == 0) ? lkm1 : lk;
    for (int k = 1; k < kmax; ++k) {
        double lkp1 = ((2.0 * k + alpha + 1.0 - x) * lk - (k + alpha) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
        val = lk;
    }
    return norm * std::pow(x, l + 1) * val;
}

double expectation_r2(int n, int l) {
    const double nn = static_cast<double>(n) * n;
    return 0.5 * nn * (5.0 * nn + 1.0 - 3.0 * l * (l + 1.0));
}

double radial_dipole(int n1, int l1, int n2, int l2) {
    if (std::abs(l1 - l2) != 1)
        throw SelectionRuleError("radial_dipole: requires |l1 - l2| = 1");
    BoundState a(n1, l1), b(n2, l2); // validates quantum numbers
    (void)a;
    (void)b;
    const double rmax = std::max(n1 * (3.0 * n1 + 30.0), n2 * (3.0 * n2 + 30.0)) + 50.0;
    const int panels = 12 + (n1 + n2);
    auto f = [&](double r) { return radial_u(n1, l1, r) * r * radial_u(n2, l2, r); };
    return integrate_panels(f, 0.0, rmax, panels, 40);
}

namespace {

// <l' m'|C1q|l m> for l' = l +/- 1 (Condon-Shortley phases).
double c1_element(int lp, int mp, int l, int m, int q) {
    if (mp != m + q) return 0.0;
    const double ld = l;
    const double md = m;
    if (lp == l + 1) {
        if (q == 0) return std::sqrt(((ld + 1) * (ld + 1) - md * md) / ((2 * ld + 1) * (2 * ld + 3)));
        if (q == 1) return -std::sqrt((ld + md + 1) * (ld + md + 2) / (2 * (2 * ld + 1) * (2 * ld + 3)));
        return std::sqrt((ld - md + 1) * (ld - md + 2) / (2 * (2 * ld + 1) * (2 * ld + 3)));
    }
    if (lp == l - 1) {
        if (q == 0) return std::sqrt((ld * ld - md * md) / ((2 * ld - 1) * (2 * ld + 1)));
        if (q == 1) return std::sqrt((ld - md) * (ld - md - 1) / (2 * (2 * ld - 1) * (2 * ld + 1)));
        return -std::sqrt((ld + md) * (ld + md - 1) / (2 * (2 * ld - 1) * (2 * ld + 1)));
    }
    return 0.0;
}

} // namespace

std::complex<double> angular_dipole_factor(int l, int m, int lp, int mp, Axis i) {
    if (std::abs(l - lp) != 1) return {0.0, 0.0};
    if (std::abs(m) > l || std::abs(mp) > lp) return {0.0, 0.0};
    // rhat in spherical components: x = (C_{1,-1} - C_{1,+1})/sqrt(2),
    // y = i (C_{1,-1} + C_{1,+1})/sqrt(2), z = C_{1,0}.
    const double cm = c1_element(l, m, lp, mp, -1);
    const double cp = c1_element(l, m, lp, mp, +1);
    const double c0 = c1_element(l, m, lp, mp, 0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (i) {
        case Axis::x: return {(cm - cp) * inv_sqrt2, 0.0};
        case Axis::y: return {0.0, (cm + cp) * inv_sqrt2};
        case Axis::z: return {c0, 0.0};
    }
    return {0.0, 0.0};
}

double angular_strength(int l, int lp) {
    if (lp == l + 1) return (l + 1.0) / (2.0 * l + 1.0);
    if (lp == l - 1) return static_cast<double>(l) / (2.0 * l + 1.0);
    return 0.0;
}

Eigen::Matrix3cd angular_channel_tensor(int l, int m, int lp) {
    Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
    for (int mp = -lp; mp <= lp; ++mp) {
        std::complex<double> f[3];
        for (int i = 0; i < 3; ++i)
            f[i] = angular_dipole_factor(l, m, lp, mp, static_cast<Axis>(i));
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) t(i, k) += f[i] * std::conj(f[k]);
    }
    return t;
}

Eigen::Matrix3cd angular_mixed_tensor(int la, int ma, int lv, int lb, int mb) {
    Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
    for (int mv = -lv; mv <= lv; ++mv) {
        std::complex<double> fa[3], fb[3];
        for (int i = 0; i < 3; ++i) {
            fa[i] = angular_dipole_factor(la, ma, lv, mv, static_cast<Axis>(i));
            // <lv mv|rhat_k|lb mb> = conj(<lb mb|rhat_k|lv mv>)
            fb[i] = std::conj(angular_dipole_factor(lb, mb, lv, mv, static_cast<Axis>(i)));
        }
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) t(i, k) += fa[i] * fb[k];
    }
    return t;
}

std::vector<std::pair<int, double>> averaging_weights(const AveragingScheme& scheme, int l) {
    std::vector<std::pair<int, double>> w;
    switch (scheme.kind) {
        case AveragingKind::single_projection:
            if (std::abs(scheme.m) > l)
                throw std::domain_error("averaging_weights: |m| > l");
            w.emplace_back(scheme.m, 1.0);
            break;
        case AveragingKind::projection_average:
        case AveragingKind::fine_structure_average:
            for (int m = -l; m <= l; ++m) w.emplace_back(m, 1.0 / (2.0 * l + 1.0));
            break;
    }
    return w;
}

} // namespace hvdw
