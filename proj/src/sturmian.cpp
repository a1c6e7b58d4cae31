#include "hvdw/sturmian.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "hvdw/errors.hpp"
#include "hvdw/quadrature.hpp"

namespace hvdw {

namespace {

static_assert(std::endian::native == std::endian::little,
              "spectral cache files are little-endian");

// Normalization c_k = sqrt(k!/(k+alpha)!) built incrementally.
std::vector<double> primitive_norms(int size, int alpha) {
    std::vector<double> c(size);
    double f = 1.0;
    for (int k = 1; k <= alpha; ++k) f *= k;
    c[0] = 1.0 / std::sqrt(f);
    for (int k = 1; k < size; ++k)
        c[k] = c[k - 1] * std::sqrt(static_cast<double>(k) / (k + alpha));
    return c;
}

} // namespace

RadialChannelBasis build_channel_basis(int l, int size, double scale) {
    if (size < l + 2) throw std::invalid_argument("build_channel_basis: size must be >= l + 2");
    if (scale <= 0.0) throw std::invalid_argument("build_channel_basis: scale must be > 0");

    const double a = 2.0 * l + 1.0;
    // With normalized primitives, <phi_m|1/r|phi_n> = delta_mn and the
    // overlap is tridiagonal:
    //   S_kk = (2k + a + 1)/(2 scale), S_{k,k+1} = -sqrt((k+1)(k+1+a))/(2 scale).
    // The Coulomb Hamiltonian acts as ((k+l+1) scale - 1)/r - scale^2/2.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(size, size);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(size, size);
    for (int k = 0; k < size; ++k) {
        S(k, k) = (2.0 * k + a + 1.0) / (2.0 * scale);
        if (k + 1 < size) {
            double off = -std::sqrt((k + 1.0) * (k + 1.0 + a)) / (2.0 * scale);
            S(k, k + 1) = off;
            S(k + 1, k) = off;
        }
    }
    for (int k = 0; k < size; ++k) {
        H(k, k) = ((k + l + 1.0) * scale - 1.0) - 0.5 * scale * scale * S(k, k);
        if (k + 1 < size) {
            double off = -0.5 * scale * scale * S(k, k + 1);
            H(k, k + 1) = off;
            H(k + 1, k) = off;
        }
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, S);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "build_channel_basis: eigensolver failed for l=" << l
            << " size=" << size << " scale=" << scale;
        throw ConvergenceError(msg.str());
    }

    RadialChannelBasis basis;
    basis.l = l;
    basis.size = size;
    basis.scale = scale;
    basis.energies = solver.eigenvalues();
    basis.transform = solver.eigenvectors();

    // Deterministic column signs: first coefficient above threshold positive.
    for (int j = 0; j < size; ++j) {
        for (int k = 0; k < size; ++k) {
            double v = basis.transform(k, j);
            if (std::fabs(v) > 1e-8) {
                if (v < 0.0) basis.transform.col(j) *= -1.0;
                break;
            }
        }
    }
    return basis;
}

void RadialChannelBasis::primitive_values(double r, Eigen::VectorXd& out) const {
    out.resize(size);
    const double a = 2.0 * l + 1.0;
    const double x = 2.0 * scale * r;
    const double e = std::exp(-0.5 * x);
    const double xp = std::pow(x, l + 1);
    static thread_local std::vector<double> norm_cache;
    static thread_local int norm_l = -1;
    static thread_local int norm_size = 0;
    if (norm_l != l || norm_size < size) {
        norm_cache = primitive_norms(size, 2 * l + 1);
        norm_l = l;
        norm_size = size;
    }
    double lkm1 = e;
    double lk = e * (a + 1.0 - x);
    out(0) = norm_cache[0] * xp * lkm1;
    if (size > 1) out(1) = norm_cache[1] * xp * lk;
    for (int k = 1; k + 1 < size; ++k) {
        double lkp1 = ((2.0 * k + a + 1.0 - x) * lk - (k + a) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
        out(k + 1) = norm_cache[k + 1] * xp * lk;
    }
}

double RadialChannelBasis::extent() const {
    return (4.0 * size + 2.0 * (2 * l + 1) + 60.0) / (2.0 * scale);
}

DipoleVector dipole_vector(const BoundState& ref, const RadialChannelBasis& basis) {
    if (std::abs(ref.l - basis.l) != 1)
        throw SelectionRuleError("dipole_vector: requires |ref.l - basis.l| = 1");
    const double ref_ext = ref.n * (3.0 * ref.n + 30.0) + 50.0;
    const double rmax = std::min(ref_ext, basis.extent());
    // Integrand oscillation count scales with the basis size reached within
    // rmax; panel count follows it.
    const int zeros = static_cast<int>(basis.size * std::min(1.0, rmax / basis.extent())) + ref.n;
    const int panels = std::max(24, zeros);
    const GaussLegendreRule& rule = gauss_legendre(40);

    Eigen::VectorXd t = Eigen::VectorXd::Zero(basis.size);
    Eigen::VectorXd phi(basis.size);
    for (int p = 0; p < panels; ++p) {
        const double pa = rmax * p / panels;
        const double pb = rmax * (p + 1) / panels;
        const double mid = 0.5 * (pa + pb);
        const double half = 0.5 * (pb - pa);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = mid + half * rule.nodes[i];
            const double w = half * rule.weights[i] * radial_u(ref.n, ref.l, r) * r;
            if (w == 0.0) continue;
            basis.primitive_values(r, phi);
            t.noalias() += w * phi;
        }
    }

    DipoleVector dv;
    dv.ref = ref;
    dv.channel_l = basis.l;
    dv.amplitudes = basis.transform.transpose() * t;
    return dv;
}

std::vector<ScanRow> convergence_scan(const std::function<double(int)>& observable,
                                      const std::vector<int>& sizes) {
    for (size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("convergence_scan: sizes must ascend");
    std::vector<ScanRow> rows;
    double prev = 0.0;
    for (size_t i = 0; i < sizes.size(); ++i) {
        double v = observable(sizes[i]);
        rows.push_back({sizes[i], v, i == 0 ? 0.0 : v - prev});
        prev = v;
    }
    return rows;
}

// ---------------------------------------------------------------------------
// cache

struct BasisCache::Impl {
    std::map<std::tuple<int, int, int64_t>, std::shared_ptr<const RadialChannelBasis>> store;
    std::shared_mutex mtx;
};

BasisCache::BasisCache() : impl_(std::make_shared<Impl>()) {}

BasisCache& BasisCache::instance() {
    static BasisCache cache;
    return cache;
}

namespace {

std::string cache_file_name(int l, int size, double scale) {
    uint64_t bits;
    std::memcpy(&bits, &scale, sizeof bits);
    std::ostringstream os;
    os << "basis_l" << l << "_n" << size << "_s" << std::hex << bits << ".bin";
    return os.str();
}

} // namespace

std::shared_ptr<const RadialChannelBasis> BasisCache::get(int l, int size, double scale,
                                                          const std::string& cache_dir,
                                                          double alpha_fs) {
    int64_t sbits;
    std::memcpy(&sbits, &scale, sizeof sbits);
    const auto key = std::make_tuple(l, size, sbits);
    {
        std::shared_lock lock(impl_->mtx);
        auto it = impl_->store.find(key);
        if (it != impl_->store.end()) return it->second;
    }
    std::shared_ptr<const RadialChannelBasis> built;
    if (!cache_dir.empty()) {
        auto path = std::filesystem::path(cache_dir) / cache_file_name(l, size, scale);
        if (std::filesystem::exists(path)) {
            auto loaded = std::make_shared<RadialChannelBasis>(load_basis_file(path.string()));
            if (loaded->l == l && loaded->size == size && loaded->scale == scale)
                built = loaded;
        }
    }
    if (!built) {
        built = std::make_shared<const RadialChannelBasis>(build_channel_basis(l, size, scale));
        if (!cache_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache_dir, ec);
            if (!ec) {
                auto path = std::filesystem::path(cache_dir) / cache_file_name(l, size, scale);
                save_basis_file(path.string(), *built, alpha_fs);
            }
        }
    }
    std::unique_lock lock(impl_->mtx);
    auto [it, inserted] = impl_->store.emplace(key, built);
    return it->second;
}

void BasisCache::clear() {
    std::unique_lock lock(impl_->mtx);
    impl_->store.clear();
}

void save_basis_file(const std::string& path, const RadialChannelBasis& basis,
                     double alpha_fs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_basis_file: cannot open '" + path + "'");
    const char magic[8] = {'H', 'V', 'D', 'W', 'B', 'A', 'S', '1'};
    out.write(magic, 8);
    auto put_u32 = [&](uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put_u32(1u);
    put_u32(static_cast<uint32_t>(basis.l));
    put_u32(static_cast<uint32_t>(basis.size));
    put_f64(basis.scale);
    put_f64(alpha_fs);
    out.write(reinterpret_cast<const char*>(basis.energies.data()), 8l * basis.size);
    out.write(reinterpret_cast<const char*>(basis.transform.data()),
              8l * basis.size * basis.size);
}

RadialChannelBasis load_basis_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_basis_file: cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "HVDWBAS1", 8) != 0)
        throw std::runtime_error("load_basis_file: bad magic in '" + path + "'");
    auto get_u32 = [&]() {
        uint32_t v;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get_f64 = [&]() {
        double v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    const uint32_t version = get_u32();
    if (version != 1u) throw std::runtime_error("load_basis_file: unsupported version");
    RadialChannelBasis basis;
    basis.l = static_cast<int>(get_u32());
    basis.size = static_cast<int>(get_u32());
    basis.scale = get_f64();
    (void)get_f64(); // fine-structure constant, provenance only
    basis.energies.resize(basis.size);
    basis.transform.resize(basis.size, basis.size);
    in.read(reinterpret_cast<char*>(basis.energies.data()), 8l * basis.size);
    in.read(reinterpret_cast<char*>(basis.transform.data()), 8l * basis.size * basis.size);
    if (!in) throw std::runtime_error("load_basis_file: truncated file '" + path + "'");
    return basis;
}

} // namespace hvdw
