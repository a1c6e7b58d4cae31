#include "hvdw/coefficients.hpp"

#include <cmath>

#include "hvdw/errors.hpp"

namespace hvdw {

namespace {

struct SumGroup {
    const SpectralGroup* group;
    bool zero_gap; // quasi-degenerate states enter the coefficient sums in
                   // the exact-degeneracy limit (the Lamb shift drops out at
                   // leading order)
};

double double_sum(const SumGroup& ga, const SpectralGroup& gb) {
    double s = 0.0;
    for (int v = 0; v < ga.group->gaps.size(); ++v) {
        const double wa = ga.group->weights(v);
        if (wa == 0.0) continue;
        const double gap_a = ga.zero_gap ? 0.0 : ga.group->gaps(v);
        for (int q = 0; q < gb.gaps.size(); ++q)
            s += wa * gb.weights(q) / (gap_a + gb.gaps(q));
    }
    return s;
}

std::vector<SumGroup> groups_of(const SpectralPolarizability& pol, bool include_quasi) {
    std::vector<SumGroup> out;
    for (const auto& g : pol.ordinary) out.push_back({&g, false});
    if (include_quasi)
        for (const auto& g : pol.quasi) out.push_back({&g, true});
    return out;
}

} // namespace

ChannelCoefficients d6_direct(const PairModel& model, bool include_quasi_degenerate) {
    const GeometryTensors g = model.geometry(1.0);
    ChannelCoefficients out;
    const int la = model.spec().state_a.l;
    out.lower_l = la - 1;
    out.upper_l = la + 1;

    for (const SumGroup& ga : groups_of(model.alpha_a(), include_quasi_degenerate)) {
        for (const auto& gb : model.alpha_b().ordinary) {
            const double cfac =
                tensor_contraction(g.beta, g.beta, ga.group->tensor, gb.tensor).real();
            const double contrib = cfac * double_sum(ga, gb);
            if (ga.group->channel_l == out.lower_l)
                out.lower += contrib;
            else
                out.upper += contrib;
        }
    }
    out.total = out.lower + out.upper;
    return out;
}

double m6_mixing(const PairModel& model, bool include_quasi_degenerate) {
    if (!model.mixing_active()) return 0.0;
    const GeometryTensors g = model.geometry(1.0);
    double m6 = 0.0;
    const auto& weights = model.projection_weights();
    for (size_t i = 0; i < weights.size(); ++i) {
        for (const SumGroup& ga : groups_of(model.mixed_a_side(i), include_quasi_degenerate)) {
            for (const auto& gb : model.mixed_b_side(i).ordinary) {
                const std::complex<double> cfac = tensor_contraction(
                    g.beta, g.beta, ga.group->tensor, gb.tensor.adjoint());
                m6 += weights[i].second * cfac.real() * double_sum(ga, gb);
            }
        }
    }
    return m6;
}

double dbar6_closed_form(int n) {
    if (n < 3) throw std::domain_error("dbar6_closed_form: requires n >= 3 (no D state)");
    const double nn = static_cast<double>(n) * n;
    return 81.0 / 8.0 * nn * (nn - 7.0);
}

double dbar6_numeric(const PairModel& model, double lamb_shift) {
    if (lamb_shift <= 0.0) throw std::domain_error("dbar6_numeric: lamb_shift must be > 0");
    const GeometryTensors g = model.geometry(1.0);
    const BoundState& a = model.spec().state_a;
    const Eigen::Matrix3cd b0 = model.alpha_b().eval_static(false);
    double out = 0.0;
    for (int lp : {a.l - 1, a.l + 1}) {
        if (lp < 0 || lp > a.n - 1) continue;
        const double rho = radial_dipole(a.n, a.l, a.n, lp);
        Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
        for (const auto& [m, w] : model.projection_weights())
            t += w * angular_channel_tensor(a.l, m, lp);
        out += 0.5 * (rho * rho) *
               tensor_contraction(g.beta, g.beta, t, b0).real();
    }
    return out;
}

double mbar6_numeric(const PairModel& model) {
    if (!model.mixing_active()) return 0.0;
    const GeometryTensors g = model.geometry(1.0);
    const BoundState& a = model.spec().state_a;
    const BoundState& b = model.spec().state_b;
    const auto& weights = model.projection_weights();
    double out = 0.0;
    for (int lp : {a.l - 1, a.l + 1}) {
        if (lp < 0 || lp > a.n - 1) continue;
        if (std::abs(lp - b.l) != 1) continue;
        const double rho_a = radial_dipole(a.n, a.l, a.n, lp);
        const double rho_b = radial_dipole(a.n, lp, b.n, b.l);
        for (size_t i = 0; i < weights.size(); ++i) {
            const Eigen::Matrix3cd x =
                (rho_a * rho_b) * angular_mixed_tensor(a.l, weights[i].first, lp, b.l, b.m);
            const Eigen::Matrix3cd mb0 = model.mixed_b_side(i).eval_static(false);
            out += 0.5 * weights[i].second *
                   tensor_contraction(g.beta, g.beta, x, mb0).real();
        }
    }
    return out;
}

namespace {

// Retarded-limit tensor integral: -(c / 8 pi R^7) [3 Vaa + 5/2 (Vab + Vba) + 5 Vbb].
double retarded_tail(const GeometryTensors& g, const Eigen::Matrix3cd& A,
                     const Eigen::Matrix3cd& B, double R, double c) {
    const std::complex<double> vaa = tensor_contraction(g.alpha, g.alpha, A, B);
    const std::complex<double> vab = tensor_contraction(g.alpha, g.beta, A, B) +
                                     tensor_contraction(g.beta, g.alpha, A, B);
    const std::complex<double> vbb = tensor_contraction(g.beta, g.beta, A, B);
    const double bracket = (3.0 * vaa + 2.5 * vab + 5.0 * vbb).real();
    return -c / (8.0 * M_PI * std::pow(R, 7)) * bracket;
}

} // namespace

double cp_tail_direct(const PairModel& model, double R) {
    if (R <= 0.0) throw std::domain_error("cp_tail_direct: R must be > 0");
    const GeometryTensors g = model.geometry(R);
    const Eigen::Matrix3cd a0 = model.alpha_a().eval_static(true);
    const Eigen::Matrix3cd b0 = model.alpha_b().eval_static(false);
    return retarded_tail(g, a0, b0, R, model.config().constants.c());
}

double cp_tail_mixing(const PairModel& model, double R) {
    if (R <= 0.0) throw std::domain_error("cp_tail_mixing: R must be > 0");
    if (!model.mixing_active()) return 0.0;
    const GeometryTensors g = model.geometry(R);
    const double c = model.config().constants.c();
    double out = 0.0;
    const auto& weights = model.projection_weights();
    for (size_t i = 0; i < weights.size(); ++i) {
        const Eigen::Matrix3cd a0 = model.mixed_a_side(i).eval_static(true);
        const Eigen::Matrix3cd b0 = model.mixed_b_side(i).eval_static(false);
        out += weights[i].second * retarded_tail(g, a0, b0, R, c);
    }
    return out;
}

double pole_tail_direct(const PairModel& model, double R) {
    if (R <= 0.0) throw std::domain_error("pole_tail_direct: R must be > 0");
    const GeometryTensors g = model.geometry(R);
    const double c = model.config().constants.c();
    double out = 0.0;
    for (const PoleChannel& ch : model.pole_channels()) {
        const Eigen::Matrix3cd ab = model.alpha_b().eval(std::complex<double>(ch.gap, 0.0));
        const double vaa =
            tensor_contraction(g.alpha, g.alpha, ch.numerator_avg, ab).real();
        out -= std::pow(ch.gap / c, 4) * std::cos(2.0 * ch.gap * R / c) / (R * R) * vaa;
    }
    return out;
}

double pole_tail_mixing(const PairModel& model, double R) {
    if (R <= 0.0) throw std::domain_error("pole_tail_mixing: R must be > 0");
    if (!model.mixing_active()) return 0.0;
    const GeometryTensors g = model.geometry(R);
    const double c = model.config().constants.c();
    const auto& weights = model.projection_weights();
    double out = 0.0;
    for (const PoleChannel& ch : model.pole_channels()) {
        if (ch.mixed_per_m.empty()) continue;
        for (size_t i = 0; i < weights.size(); ++i) {
            const Eigen::Matrix3cd mb =
                model.mixed_b_side(i).eval(std::complex<double>(ch.gap, 0.0));
            const double vaa =
                tensor_contraction(g.alpha, g.alpha, ch.mixed_per_m[i], mb).real();
            out -= weights[i].second * std::pow(ch.gap / c, 4) *
                   std::cos(2.0 * ch.gap * R / c) / (R * R) * vaa;
        }
    }
    return out;
}

std::vector<PoleTailTerm> pole_tail_terms(const PairModel& model) {
    const GeometryTensors g = model.geometry(1.0);
    const double c = model.config().constants.c();
    std::vector<PoleTailTerm> terms;
    for (const PoleChannel& ch : model.pole_channels()) {
        const Eigen::Matrix3cd ab = model.alpha_b().eval(std::complex<double>(ch.gap, 0.0));
        PoleTailTerm t;
        t.n = ch.n;
        t.l = ch.l;
        t.gap = ch.gap;
        t.amplitude = std::pow(ch.gap / c, 4) *
                      tensor_contraction(g.alpha, g.alpha, ch.numerator_avg, ab).real();
        t.phase_rate = 2.0 * ch.gap / c;
        terms.push_back(t);
    }
    return terms;
}

CoefficientSet coefficient_set(const PairModel& model) {
    CoefficientSet set;
    set.d6 = d6_direct(model);
    set.m6 = m6_mixing(model);
    if (model.spec().state_a.l >= 1 && model.spec().state_a.n > model.spec().state_a.l)
        set.dbar6 = dbar6_numeric(model, model.config().lamb_shift());
    set.mbar6 = mbar6_numeric(model);
    set.cp_amplitude_dir = -cp_tail_direct(model, 1.0);
    set.cp_amplitude_mix = model.mixing_active() ? -cp_tail_mixing(model, 1.0) : 0.0;
    set.pole_tails = pole_tail_terms(model);
    return set;
}

double parametric_envelope(EnvelopeKind kind, double rho, double alpha_fs) {
    if (rho <= 0.0) throw std::domain_error("parametric_envelope: rho must be > 0");
    const double a = alpha_fs;
    switch (kind) {
        case EnvelopeKind::pole_cos_r4: return std::pow(a, 4) / (rho * rho);
        case EnvelopeKind::pole_cos_r2: return a * a / std::pow(rho, 4);
        case EnvelopeKind::pole_cos_r0: return 1.0 / std::pow(rho, 6);
        case EnvelopeKind::pole_sin_r3: return std::pow(a, 3) / std::pow(rho, 3);
        case EnvelopeKind::pole_sin_r1: return a / std::pow(rho, 5);
        case EnvelopeKind::vdw: return 1.0 / std::pow(rho, 6);
        case EnvelopeKind::wick_retarded: return 1.0 / (a * std::pow(rho, 7));
    }
    return 0.0;
}

double pole_envelope(const PairModel& model, double R) {
    const GeometryTensors g = model.geometry(R);
    const double c = model.config().constants.c();
    const double r6 = std::pow(R, 6);
    double env = 0.0;
    const auto& weights = model.projection_weights();
    for (const PoleChannel& ch : model.pole_channels()) {
        const double r = ch.gap * R / c;
        const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
        const std::complex<double> tilde_bb(-(1.0 - r2), -2.0 * r);
        const std::complex<double> tilde_ab(r2, r3);
        const std::complex<double> tilde_aa(-r4, 0.0);
        const Eigen::Matrix3cd ab = model.alpha_b().eval(std::complex<double>(ch.gap, 0.0));
        std::complex<double> z =
            tilde_aa * tensor_contraction(g.alpha, g.alpha, ch.numerator_avg, ab) +
            tilde_ab * (tensor_contraction(g.alpha, g.beta, ch.numerator_avg, ab) +
                        tensor_contraction(g.beta, g.alpha, ch.numerator_avg, ab)) +
            tilde_bb * tensor_contraction(g.beta, g.beta, ch.numerator_avg, ab);
        env += std::abs(z) / r6;
        if (!ch.mixed_per_m.empty()) {
            std::complex<double> zm = 0.0;
            for (size_t i = 0; i < weights.size(); ++i) {
                const Eigen::Matrix3cd mb =
                    model.mixed_b_side(i).eval(std::complex<double>(ch.gap, 0.0));
                const Eigen::Matrix3cd& X = ch.mixed_per_m[i];
                zm += weights[i].second *
                      (tilde_aa * tensor_contraction(g.alpha, g.alpha, X, mb) +
                       tilde_ab * (tensor_contraction(g.alpha, g.beta, X, mb) +
                                   tensor_contraction(g.beta, g.alpha, X, mb)) +
                       tilde_bb * tensor_contraction(g.beta, g.beta, X, mb));
            }
            env += std::abs(zm) / r6;
        }
    }
    return env;
}

CrossoverResult crossover_radius(const PairModel& model, double rmin, double rmax) {
    if (!(0.0 < rmin && rmin < rmax))
        throw std::invalid_argument("crossover_radius: need 0 < rmin < rmax");
    CrossoverResult res;
    if (model.pole_channels().empty()) {
        res.status = "no-crossover";
        return res;
    }
    auto gap = [&](double R) {
        WickTerms w = model.wick(R);
        const double wmag = std::fabs(w.dir + model.spec().symmetry * w.mix);
        return pole_envelope(model, R) - wmag;
    };

    const int nscan = 33;
    std::vector<double> rs(nscan), gs(nscan);
    for (int i = 0; i < nscan; ++i) {
        rs[i] = rmin * std::pow(rmax / rmin, static_cast<double>(i) / (nscan - 1));
        gs[i] = gap(rs[i]);
    }
    int last = -1;
    for (int i = 0; i + 1 < nscan; ++i)
        if (gs[i] <= 0.0 && gs[i + 1] > 0.0) last = i;
    if (last < 0) {
        res.status = "not-found";
        return res;
    }
    for (int i = last + 1; i < nscan; ++i) {
        if (gs[i] <= 0.0) {
            res.status = "not-found";
            return res;
        }
    }
    double lo = rs[last], hi = rs[last + 1];
    for (int it = 0; it < 60 && (hi - lo) > 1e-12 * hi; ++it) {
        double mid = std::sqrt(lo * hi);
        (gap(mid) <= 0.0 ? lo : hi) = mid;
    }
    res.found = true;
    res.R = std::sqrt(lo * hi);
    WickTerms w = model.wick(res.R);
    res.wick_magnitude = std::fabs(w.dir + model.spec().symmetry * w.mix);
    res.pole_envelope = pole_envelope(model, res.R);
    res.status = "found";
    return res;
}

} // namespace hvdw
