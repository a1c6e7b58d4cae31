#include "hvdw/response.hpp"

#include <cmath>
#include <sstream>

#include "hvdw/errors.hpp"

namespace hvdw {

Eigen::Matrix3cd SpectralPolarizability::eval(std::complex<double> omega,
                                              bool include_quasi) const {
    Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
    auto accumulate = [&](const std::vector<SpectralGroup>& groups) {
        for (const SpectralGroup& g : groups) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < g.gaps.size(); ++k)
                s += g.weights(k) * (1.0 / (g.gaps(k) - omega) + 1.0 / (g.gaps(k) + omega));
            out += s * g.tensor;
        }
    };
    accumulate(ordinary);
    if (include_quasi) accumulate(quasi);
    return out;
}

Eigen::Matrix3cd SpectralPolarizability::eval_imag(double u, bool include_quasi) const {
    Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
    auto accumulate = [&](const std::vector<SpectralGroup>& groups) {
        for (const SpectralGroup& g : groups) {
            double s = 0.0;
            for (int k = 0; k < g.gaps.size(); ++k) {
                const double e = g.gaps(k);
                s += g.weights(k) * 2.0 * e / (e * e + u * u);
            }
            out += s * g.tensor;
        }
    };
    accumulate(ordinary);
    if (include_quasi) accumulate(quasi);
    return out;
}

Eigen::Matrix3cd SpectralPolarizability::eval_imag_quasi(double u) const {
    Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
    for (const SpectralGroup& g : quasi) {
        double s = 0.0;
        for (int k = 0; k < g.gaps.size(); ++k) {
            const double e = g.gaps(k);
            s += g.weights(k) * 2.0 * e / (e * e + u * u);
        }
        out += s * g.tensor;
    }
    return out;
}

Eigen::Matrix3cd SpectralPolarizability::eval_static(bool include_quasi) const {
    return eval_imag(0.0, include_quasi);
}

std::pair<double, std::string> SpectralPolarizability::nearest_pole(double omega,
                                                                    bool include_quasi) const {
    double best = std::numeric_limits<double>::infinity();
    std::string label;
    auto scan = [&](const std::vector<SpectralGroup>& groups) {
        for (const SpectralGroup& g : groups) {
            for (int k = 0; k < g.gaps.size(); ++k) {
                double d = std::fabs(std::fabs(g.gaps(k)) - std::fabs(omega));
                if (d < best) {
                    best = d;
                    std::ostringstream os;
                    os << g.name << " pseudo-state " << k << " at gap " << g.gaps(k);
                    label = os.str();
                }
            }
        }
    };
    scan(ordinary);
    if (include_quasi) scan(quasi);
    return {best, label};
}

namespace {

double channel_scale(const RunConfig& cfg, const BoundState& ref, double override_scale) {
    if (override_scale > 0.0) return override_scale;
    double s = (ref.n == 1) ? cfg.scale_b : cfg.scale_a;
    if (s > 0.0) return s;
    return 1.0 / std::max(2, ref.n);
}

} // namespace

SpectralPolarizability build_direct_polarizability(const BoundState& ref,
                                                   const AveragingScheme& scheme,
                                                   const RunConfig& cfg,
                                                   double scale_override,
                                                   int size_override) {
    SpectralPolarizability pol;
    const double e_ref = bound_energy(ref.n);
    const double scale = channel_scale(cfg, ref, scale_override);
    const int size = size_override > 0
                         ? size_override
                         : (ref.n == 1 ? cfg.basis_size_ground : cfg.basis_size);
    const auto weights = averaging_weights(scheme, ref.l);

    for (int lp : {ref.l - 1, ref.l + 1}) {
        if (lp < 0) continue;
        auto basis = BasisCache::instance().get(lp, size, scale, cfg.cache_dir,
                                                cfg.constants.alpha_fs);
        DipoleVector dv = dipole_vector(BoundState(ref.n, ref.l, 0), *basis);

        Eigen::Matrix3cd tensor = Eigen::Matrix3cd::Zero();
        for (const auto& [m, w] : weights)
            tensor += w * angular_channel_tensor(ref.l, m, lp);

        SpectralGroup ord, qd;
        ord.tensor = tensor;
        qd.tensor = tensor;
        ord.channel_l = lp;
        qd.channel_l = lp;
        std::ostringstream name;
        name << ref.label() << " -> l'=" << lp;
        ord.name = name.str();
        qd.name = name.str() + " (quasi-degenerate)";

        std::vector<double> g_ord, w_ord;
        double w_qd = 0.0;
        bool has_qd = false;
        for (int k = 0; k < basis->size; ++k) {
            const double gap = basis->energies(k) - e_ref;
            const double weight = dv.amplitudes(k) * dv.amplitudes(k);
            if (std::fabs(gap) < cfg.deg_threshold) {
                w_qd += weight;
                has_qd = true;
            } else {
                g_ord.push_back(gap);
                w_ord.push_back(weight);
            }
        }
        ord.gaps = Eigen::Map<Eigen::VectorXd>(g_ord.data(), g_ord.size());
        ord.weights = Eigen::Map<Eigen::VectorXd>(w_ord.data(), w_ord.size());
        pol.ordinary.push_back(std::move(ord));
        if (has_qd) {
            qd.gaps = Eigen::VectorXd::Constant(1, cfg.lamb_shift());
            qd.weights = Eigen::VectorXd::Constant(1, w_qd);
            pol.quasi.push_back(std::move(qd));
        }
    }
    return pol;
}

SpectralPolarizability build_mixed_polarizability(const BoundState& state_a, int m_a,
                                                  const BoundState& state_b,
                                                  MixedSide side, const RunConfig& cfg) {
    SpectralPolarizability pol;
    const int la = state_a.l, lb = state_b.l;
    if (!(la == lb || std::abs(la - lb) == 2)) return pol; // selection rule: zero tensor

    const double e_a = bound_energy(state_a.n);
    const double e_b = bound_energy(state_b.n);
    const double scale = channel_scale(cfg, state_a, 0.0);

    for (int lv = std::max(la - 1, 0); lv <= la + 1; ++lv) {
        if (std::abs(lv - la) != 1 || std::abs(lv - lb) != 1) continue;
        auto basis = BasisCache::instance().get(lv, cfg.basis_size, scale, cfg.cache_dir,
                                                cfg.constants.alpha_fs);
        DipoleVector da = dipole_vector(BoundState(state_a.n, la, 0), *basis);
        DipoleVector db = dipole_vector(BoundState(state_b.n, lb, 0), *basis);

        SpectralGroup ord, qd;
        ord.tensor = angular_mixed_tensor(la, m_a, lv, lb, state_b.m);
        qd.tensor = ord.tensor;
        ord.channel_l = lv;
        qd.channel_l = lv;
        std::ostringstream name;
        name << state_a.label() << "|" << state_b.label() << " via l=" << lv;
        ord.name = name.str();
        qd.name = name.str() + " (quasi-degenerate)";

        std::vector<double> g_ord, w_ord;
        double w_qd = 0.0;
        bool has_qd = false;
        for (int k = 0; k < basis->size; ++k) {
            const double gap_a = basis->energies(k) - e_a;
            const double gap_b = basis->energies(k) - e_b;
            const double weight = da.amplitudes(k) * db.amplitudes(k);
            // Quasi-degeneracy is an atom-A property; the B-side gap of the
            // same state is ordinary.
            if (std::fabs(gap_a) < cfg.deg_threshold) {
                has_qd = true;
                if (side == MixedSide::a_underlined) {
                    w_qd += weight;
                } else {
                    g_ord.push_back(gap_b);
                    w_ord.push_back(weight);
                }
            } else {
                g_ord.push_back(side == MixedSide::a_underlined ? gap_a : gap_b);
                w_ord.push_back(weight);
            }
        }
        ord.gaps = Eigen::Map<Eigen::VectorXd>(g_ord.data(), g_ord.size());
        ord.weights = Eigen::Map<Eigen::VectorXd>(w_ord.data(), w_ord.size());
        pol.ordinary.push_back(std::move(ord));
        if (has_qd && side == MixedSide::a_underlined) {
            qd.gaps = Eigen::VectorXd::Constant(1, cfg.lamb_shift());
            qd.weights = Eigen::VectorXd::Constant(1, w_qd);
            pol.quasi.push_back(std::move(qd));
        }
    }
    return pol;
}

Eigen::Matrix3cd polarizability_tensor(const SpectralPolarizability& pol,
                                       const FrequencyPoint& w, bool include_quasi) {
    if (w.axis == FrequencyAxis::imaginary_axis) {
        if (w.value.real() != 0.0)
            throw std::invalid_argument("imaginary-axis frequency must have zero real part");
        return pol.eval_imag(w.value.imag(), include_quasi);
    }
    const double omega = w.value.real();
    auto [dist, label] = pol.nearest_pole(omega, include_quasi);
    if (dist < 1e-12 * std::max(1.0, std::fabs(omega))) {
        throw ResonanceError("polarizability evaluated at a pole: " + label);
    }
    return pol.eval(std::complex<double>(omega, 0.0), include_quasi);
}

double static_scalar_polarizability(const SpectralPolarizability& pol, bool include_quasi) {
    return pol.eval_static(include_quasi).trace().real() / 3.0;
}

} // namespace hvdw
