#include "hvdw/interaction.hpp"

#include <cmath>
#include <sstream>

#include "hvdw/errors.hpp"

namespace hvdw {

GeometryTensors geometry_tensors(const Eigen::Vector3d& r_vec) {
    const double R = r_vec.norm();
    if (R <= 0.0) throw std::domain_error("geometry_tensors: zero separation vector");
    GeometryTensors g;
    g.R = R;
    g.rhat = r_vec / R;
    const Eigen::Matrix3d proj = g.rhat * g.rhat.transpose();
    g.alpha = Eigen::Matrix3d::Identity() - proj;
    g.beta = Eigen::Matrix3d::Identity() - 3.0 * proj;
    return g;
}

std::complex<double> propagator_scalar_f(double omega, double R, double c) {
    if (omega == 0.0)
        throw std::domain_error("propagator_scalar_f: omega = 0 is handled only inside "
                                "asymptotic formulas");
    if (R <= 0.0) throw std::domain_error("propagator_scalar_f: R must be > 0");
    return {-c * c / (omega * omega * R * R), c / (std::fabs(omega) * R)};
}

double propagator_scalar_f_imag(double u, double R, double c) {
    const double y = c / (u * R);
    return y + y * y;
}

PoleTensorF pole_tensor_f(double r) {
    // f_ijkl = -exp(-2ir) [ bb (1 + 2ir) - (ab + ba + bb) r^2 - i (ab + ba) r^3
    //                       + aa r^4 ].
    PoleTensorF out;
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -2.0 * r));
    out.f_bb = -phase * std::complex<double>(1.0 - r2, 2.0 * r);
    out.f_ab = phase * std::complex<double>(r2, r3);
    out.f_aa = -phase * r4;
    const double c2 = std::cos(2.0 * r), s2 = std::sin(2.0 * r);
    out.re_bb = -c2 * (1.0 - r2) - 2.0 * r * s2;
    out.re_ab = c2 * r2 + r3 * s2;
    out.re_aa = -c2 * r4;
    out.im_bb = (1.0 - r2) * s2 - 2.0 * r * c2;
    out.im_ab = -r2 * s2 + r3 * c2;
    out.im_aa = r4 * s2;
    return out;
}

std::complex<double> tensor_contraction(const Eigen::Matrix3d& P, const Eigen::Matrix3d& Q,
                                        const Eigen::Matrix3cd& A, const Eigen::Matrix3cd& B) {
    // Sum_ijkl P_ij Q_kl A_ik B_jl = Sum_ik A_ik (P B Q^T)_ik.
    const Eigen::Matrix3cd M = P * B * Q.transpose();
    return (A.array() * M.array()).sum();
}

void PairSpec::validate() const {
    if (bound_energy(state_b.n) > bound_energy(state_a.n))
        throw std::invalid_argument("PairSpec: state_b must not lie above state_a");
    if (state_b.n != 1 || state_b.l != 0)
        throw std::invalid_argument("PairSpec: the partner atom must be in the 1S ground state");
    if (symmetry != 1 && symmetry != -1)
        throw std::invalid_argument("PairSpec: symmetry must be +1 or -1");
    if (averaging.kind == AveragingKind::single_projection &&
        std::abs(averaging.m) > state_a.l)
        throw std::invalid_argument("PairSpec: |m| exceeds l of the reference state");
}

bool PairSpec::mixing_active() const {
    if (!identical) return false;
    if (state_a.n == state_b.n && state_a.l == state_b.l) return false;
    const int d = std::abs(state_a.l - state_b.l);
    return d == 0 || d == 2;
}

PairModel::PairModel(const PairSpec& spec, const RunConfig& cfg) : spec_(spec), cfg_(cfg) {
    spec_.validate();
    cfg_.validate();
    mixing_active_ = spec_.mixing_active();

    alpha_a_ = build_direct_polarizability(spec_.state_a, spec_.averaging, cfg_);
    alpha_b_ = build_direct_polarizability(spec_.state_b, AveragingScheme::projection(), cfg_);

    mweights_ = averaging_weights(spec_.averaging, spec_.state_a.l);
    if (mixing_active_) {
        for (const auto& [m, w] : mweights_) {
            mixed_a_.push_back(build_mixed_polarizability(spec_.state_a, m, spec_.state_b,
                                                          MixedSide::a_underlined, cfg_));
            mixed_b_.push_back(build_mixed_polarizability(spec_.state_a, m, spec_.state_b,
                                                          MixedSide::b_underlined, cfg_));
        }
    }

    // Bound states below the reference, dipole-coupled, same-n manifold
    // excluded (routed through the quasi-degenerate channel).
    const BoundState& a = spec_.state_a;
    for (int lm : {a.l - 1, a.l + 1}) {
        if (lm < 0) continue;
        for (int nm = lm + 1; nm < a.n; ++nm) {
            PoleChannel ch;
            ch.n = nm;
            ch.l = lm;
            ch.gap = bound_energy(nm) - bound_energy(a.n);
            ch.rho_a = radial_dipole(a.n, a.l, nm, lm);
            Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
            for (const auto& [m, w] : mweights_)
                t += w * angular_channel_tensor(a.l, m, lm);
            ch.numerator_avg = (ch.rho_a * ch.rho_a) * t;
            if (mixing_active_ && std::abs(lm - spec_.state_b.l) == 1) {
                ch.rho_b = radial_dipole(nm, lm, spec_.state_b.n, spec_.state_b.l);
                for (const auto& [m, w] : mweights_)
                    ch.mixed_per_m.push_back(
                        (ch.rho_a * ch.rho_b) *
                        angular_mixed_tensor(a.l, m, lm, spec_.state_b.l, spec_.state_b.m));
            }
            poles_.push_back(std::move(ch));
        }
    }

    verify_no_accidental_resonance();
}

void PairModel::verify_no_accidental_resonance() const {
    for (const PoleChannel& ch : poles_) {
        auto [dist, label] = alpha_b_.nearest_pole(ch.gap, true);
        if (dist < 1e-10) {
            std::ostringstream msg;
            msg << "accidental degeneracy: alpha_B has a pole at the " << ch.n
                << (ch.l == 1 ? "P" : "F") << " residue frequency (" << label << ")";
            throw ResonanceError(msg.str());
        }
    }
}

GeometryTensors PairModel::geometry(double R) const {
    return geometry_tensors(Eigen::Vector3d(0.0, 0.0, R));
}

namespace {

struct WickContraction {
    const Eigen::Matrix3d& al;
    const Eigen::Matrix3d& be;
    double R, c;

    // u^4 D_ij D_kl A_ik B_jl without the e^{-2uR/c}/R^2 prefactor; the
    // f-powers are folded in as polynomials so u -> 0 stays finite.
    double operator()(double u, const Eigen::Matrix3cd& A, const Eigen::Matrix3cd& B) const {
        const double u2 = u * u;
        const double cr = c / R;
        const double g1 = u2 * u2;
        const double g2 = u2 * u * cr + u2 * cr * cr;
        const double g3 = u2 * cr * cr + 2.0 * u * cr * cr * cr + cr * cr * cr * cr;
        const std::complex<double> vaa = tensor_contraction(al, al, A, B);
        const std::complex<double> vab =
            tensor_contraction(al, be, A, B) + tensor_contraction(be, al, A, B);
        const std::complex<double> vbb = tensor_contraction(be, be, A, B);
        return (g1 * vaa + g2 * vab + g3 * vbb).real();
    }
};

} // namespace

WickTerms PairModel::wick(double R, const WickOptions& opts) const {
    if (R <= 0.0) throw std::domain_error("wick: R must be > 0");
    WickTerms out;
    const double c = cfg_.constants.c();
    const double a4 = std::pow(cfg_.constants.alpha_fs, 4);
    const GeometryTensors g = geometry(R);
    WickContraction contract{g.alpha, g.beta, R, c};
    const double pref = a4 / (R * R);
    const double lamb = cfg_.lamb_shift();

    auto run = [&](const std::function<double(double)>& f, bool lorentzian,
                   double lorentz_width) {
        const double cut = 0.5 * c / R;
        QuadResult q = lorentzian
            ? integrate_semi_infinite_tan(f, std::min(lorentz_width, cut),
                                          cfg_.wick_rel_tol, cfg_.wick_max_depth)
            : integrate_semi_infinite_rational(f, std::min(1.0, cut),
                                               cfg_.wick_rel_tol, cfg_.wick_max_depth);
        out.diag.panels += q.diag.panels;
        out.diag.evaluations += q.diag.evaluations;
        out.diag.error_estimate += q.diag.error_estimate;
        return -q.value / (2.0 * M_PI);
    };

    auto dir_integrand = [&](bool quasi) {
        return [&, quasi](double u) {
            const Eigen::Matrix3cd A = quasi ? alpha_a_.eval_imag_quasi(u)
                                             : alpha_a_.eval_imag(u, false);
            const Eigen::Matrix3cd B = alpha_b_.eval_imag(u, false);
            return pref * std::exp(-2.0 * u * R / c) * contract(u, A, B);
        };
    };
    out.dir_ordinary = run(dir_integrand(false), false, 0.0);
    if (opts.include_quasi_degenerate && !alpha_a_.quasi.empty())
        out.dir_quasi = run(dir_integrand(true), true, lamb);
    out.dir = out.dir_ordinary + out.dir_quasi;

    if (mixing_active_) {
        auto mix_integrand = [&](bool quasi) {
            return [&, quasi](double u) {
                double sum = 0.0;
                for (size_t i = 0; i < mweights_.size(); ++i) {
                    const Eigen::Matrix3cd A = quasi ? mixed_a_[i].eval_imag_quasi(u)
                                                     : mixed_a_[i].eval_imag(u, false);
                    const Eigen::Matrix3cd B = mixed_b_[i].eval_imag(u, false);
                    sum += mweights_[i].second * contract(u, A, B);
                }
                return pref * std::exp(-2.0 * u * R / c) * sum;
            };
        };
        bool any_quasi = false;
        for (const auto& p : mixed_a_) any_quasi = any_quasi || !p.quasi.empty();
        out.mix_ordinary = run(mix_integrand(false), false, 0.0);
        if (opts.include_quasi_degenerate && any_quasi)
            out.mix_quasi = run(mix_integrand(true), true, lamb);
        out.mix = out.mix_ordinary + out.mix_quasi;
    }
    return out;
}

PoleTerms PairModel::pole(double R) const {
    if (R <= 0.0) throw std::domain_error("pole: R must be > 0");
    PoleTerms out;
    const double c = cfg_.constants.c();
    const GeometryTensors g = geometry(R);
    const double r6 = std::pow(R, 6);

    std::complex<double> q_dir = 0.0, q_mix = 0.0;
    for (const PoleChannel& ch : poles_) {
        const double r = ch.gap * R / c;
        const PoleTensorF f = pole_tensor_f(r);
        const Eigen::Matrix3cd ab_at = alpha_b_.eval(std::complex<double>(ch.gap, 0.0), false);
        const std::complex<double> vaa = tensor_contraction(g.alpha, g.alpha, ch.numerator_avg, ab_at);
        const std::complex<double> vab = tensor_contraction(g.alpha, g.beta, ch.numerator_avg, ab_at) +
                                         tensor_contraction(g.beta, g.alpha, ch.numerator_avg, ab_at);
        const std::complex<double> vbb = tensor_contraction(g.beta, g.beta, ch.numerator_avg, ab_at);
        q_dir += (f.f_aa * vaa + f.f_ab * vab + f.f_bb * vbb) / r6;

        if (!ch.mixed_per_m.empty()) {
            for (size_t i = 0; i < mweights_.size(); ++i) {
                const Eigen::Matrix3cd mb_at =
                    mixed_b_[i].eval(std::complex<double>(ch.gap, 0.0), false);
                const Eigen::Matrix3cd& X = ch.mixed_per_m[i];
                const std::complex<double> maa = tensor_contraction(g.alpha, g.alpha, X, mb_at);
                const std::complex<double> mab = tensor_contraction(g.alpha, g.beta, X, mb_at) +
                                                 tensor_contraction(g.beta, g.alpha, X, mb_at);
                const std::complex<double> mbb = tensor_contraction(g.beta, g.beta, X, mb_at);
                q_mix += mweights_[i].second * (f.f_aa * maa + f.f_ab * mab + f.f_bb * mbb) / r6;
            }
        }
    }
    out.p_dir = q_dir.real();
    out.gamma_dir = -2.0 * q_dir.imag();
    out.p_mix = q_mix.real();
    out.gamma_mix = -2.0 * q_mix.imag();
    return out;
}

InteractionBreakdown PairModel::total(double R) const {
    InteractionBreakdown b;
    b.R = R;
    WickTerms w = wick(R);
    PoleTerms p = pole(R);
    b.w_dir = w.dir;
    b.w_mix = w.mix;
    b.p_dir = p.p_dir;
    b.p_mix = p.p_mix;
    b.gamma_dir = p.gamma_dir;
    b.gamma_mix = p.gamma_mix;
    const double s = spec_.symmetry;
    b.total = b.w_dir + s * b.w_mix + b.p_dir + s * b.p_mix;
    return b;
}

WickTerms wick_term(const PairModel& model, double R, const WickOptions& opts) {
    return model.wick(R, opts);
}

PoleTerms pole_term(const PairModel& model, double R) { return model.pole(R); }

InteractionBreakdown total_energy(const PairModel& model, double R) { return model.total(R); }

std::pair<double, double> width_gamma(const PairModel& model, double R) {
    PoleTerms p = model.pole(R);
    return {p.gamma_dir, p.gamma_mix};
}

} // namespace hvdw
