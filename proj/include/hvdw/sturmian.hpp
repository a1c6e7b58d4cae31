#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hvdw/hydrogen.hpp"

namespace hvdw {

// Pseudo-state discretization of one angular-momentum channel of the radial
// Coulomb Hamiltonian in a Sturmian-type basis
//   phi_k(r) ~ (2*scale*r)^{l+1} exp(-scale*r) L_k^{2l+1}(2*scale*r).
// Overlap and Hamiltonian are symmetric tridiagonal; the generalized
// eigenproblem yields bound-state approximations plus a discretized
// continuum.
struct RadialChannelBasis {
    int l = 0;
    int size = 0;
    double scale = 1.0;
    Eigen::VectorXd energies;  // ascending, Hartree
    Eigen::MatrixXd transform; // primitive -> pseudo-state coefficients

    // Values of all primitives at r (scaled recurrence, over/underflow safe).
    void primitive_values(double r, Eigen::VectorXd& out) const;

    // Radial extent beyond which every primitive has decayed.
    double extent() const;
};

RadialChannelBasis build_channel_basis(int l, int size, double scale);

// Radial dipole amplitudes <u_ref| r |pseudo_k> against an exact bound state.
struct DipoleVector {
    BoundState ref;
    int channel_l = 0;
    Eigen::VectorXd amplitudes;
};

DipoleVector dipole_vector(const BoundState& ref, const RadialChannelBasis& basis);

struct ScanRow {
    int size;
    double value;
    double delta; // value - previous value, 0 for the first row
};

std::vector<ScanRow> convergence_scan(const std::function<double(int)>& observable,
                                      const std::vector<int>& sizes);

// Process-wide basis cache keyed by (l, size, scale); optionally backed by a
// directory of binary files (see save/load below). Readers never block
// readers.
class BasisCache {
  public:
    static BasisCache& instance();
    std::shared_ptr<const RadialChannelBasis> get(int l, int size, double scale,
                                                  const std::string& cache_dir = "",
                                                  double alpha_fs = 0.0);
    void clear();

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    BasisCache();
};

// Binary cache file: magic "HVDWBAS1", u32 version, u32 l, u32 size,
// f64 scale, f64 fine-structure constant, f64 energies[size],
// f64 transform[size*size] column-major; little-endian throughout.
void save_basis_file(const std::string& path, const RadialChannelBasis& basis,
                     double alpha_fs);
RadialChannelBasis load_basis_file(const std::string& path);

} // namespace hvdw
