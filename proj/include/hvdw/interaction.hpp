#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hvdw/config.hpp"
#include "hvdw/quadrature.hpp"
#include "hvdw/response.hpp"

namespace hvdw {

// alpha_ij = delta_ij - Ri Rj / R^2, beta_ij = delta_ij - 3 Ri Rj / R^2.
struct GeometryTensors {
    double R = 0.0;
    Eigen::Vector3d rhat = Eigen::Vector3d::UnitZ();
    Eigen::Matrix3d alpha;
    Eigen::Matrix3d beta;
};

GeometryTensors geometry_tensors(const Eigen::Vector3d& r_vec);

// f(w, R) = i c/(|w| R) - c^2/(w^2 R^2) on the real axis.
std::complex<double> propagator_scalar_f(double omega, double R, double c);

// Continuation to w = i u: f = c/(u R) + c^2/(u^2 R^2), real.
double propagator_scalar_f_imag(double u, double R, double c);

// Monomial coefficients of the residue tensor f_ijkl(r): the full complex
// form plus its real part and the curly-bracket (width) part. The "ab"
// coefficient multiplies the symmetrized alpha-beta contraction
// V(a,b) + V(b,a).
struct PoleTensorF {
    std::complex<double> f_aa, f_ab, f_bb;
    double re_aa, re_ab, re_bb;
    double im_aa, im_ab, im_bb;
};

PoleTensorF pole_tensor_f(double r);

struct PairSpec {
    BoundState state_a; // excited reference
    BoundState state_b; // ground partner (1S)
    bool identical = true;
    int symmetry = +1;  // gerade/ungerade sign of the mixing term
    AveragingScheme averaging = AveragingScheme::projection();

    void validate() const;
    bool mixing_active() const;
};

struct WickOptions {
    bool include_quasi_degenerate = true;
};

struct WickTerms {
    double dir = 0.0, mix = 0.0;
    double dir_ordinary = 0.0, dir_quasi = 0.0;
    double mix_ordinary = 0.0, mix_quasi = 0.0;
    QuadDiagnostics diag;
};

struct PoleTerms {
    double p_dir = 0.0, p_mix = 0.0;
    double gamma_dir = 0.0, gamma_mix = 0.0;
};

struct InteractionBreakdown {
    double R = 0.0;
    double w_dir = 0.0, w_mix = 0.0;
    double p_dir = 0.0, p_mix = 0.0;
    double gamma_dir = 0.0, gamma_mix = 0.0;
    double total = 0.0;
};

// One bound state group |n_m, l_m> below the reference, entering the pole sum.
struct PoleChannel {
    int n = 0, l = 0;
    double gap = 0.0;          // E_m - E_A < 0
    double rho_a = 0.0;        // <A| r |m> radial
    double rho_b = 0.0;        // <m| r |B> radial, 0 if not coupled to B
    Eigen::Matrix3cd numerator_avg;              // averaged <A|d_i|m><m|d_k|A>
    std::vector<Eigen::Matrix3cd> mixed_per_m;   // <A|d_i|m><m|d_k|B> per m_A
};

// Immutable spectral data for one atom pair; safe to share across threads.
class PairModel {
  public:
    PairModel(const PairSpec& spec, const RunConfig& cfg);

    const PairSpec& spec() const { return spec_; }
    const RunConfig& config() const { return cfg_; }
    const SpectralPolarizability& alpha_a() const { return alpha_a_; }
    const SpectralPolarizability& alpha_b() const { return alpha_b_; }
    const std::vector<PoleChannel>& pole_channels() const { return poles_; }
    const std::vector<std::pair<int, double>>& projection_weights() const { return mweights_; }
    // Mixed polarizabilities indexed like projection_weights().
    const SpectralPolarizability& mixed_a_side(size_t idx) const { return mixed_a_[idx]; }
    const SpectralPolarizability& mixed_b_side(size_t idx) const { return mixed_b_[idx]; }
    bool mixing_active() const { return mixing_active_; }

    GeometryTensors geometry(double R) const;

    WickTerms wick(double R, const WickOptions& opts = {}) const;
    PoleTerms pole(double R) const;
    InteractionBreakdown total(double R) const;

  private:
    PairSpec spec_;
    RunConfig cfg_;
    bool mixing_active_ = false;
    SpectralPolarizability alpha_a_;
    SpectralPolarizability alpha_b_;
    std::vector<std::pair<int, double>> mweights_;
    std::vector<SpectralPolarizability> mixed_a_, mixed_b_;
    std::vector<PoleChannel> poles_;

    void verify_no_accidental_resonance() const;
};

// Convenience wrappers matching the operation names used by the CLI layer.
WickTerms wick_term(const PairModel& model, double R, const WickOptions& opts = {});
PoleTerms pole_term(const PairModel& model, double R);
InteractionBreakdown total_energy(const PairModel& model, double R);
std::pair<double, double> width_gamma(const PairModel& model, double R);

// Bilinear contraction P_ij Q_kl A_ik B_jl used throughout.
std::complex<double> tensor_contraction(const Eigen::Matrix3d& P, const Eigen::Matrix3d& Q,
                                        const Eigen::Matrix3cd& A, const Eigen::Matrix3cd& B);

} // namespace hvdw
