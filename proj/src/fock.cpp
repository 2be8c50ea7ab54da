#include "optocool/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace optocool {

void ModeSpec::validate() const {
    if (!(frequency > 0.0))
        throw ConfigError("mode '" + label + "': frequency must be > 0");
    if (truncation < 2)
        throw InvalidDimension("mode '" + label + "': truncation must be >= 2");
}

void SystemConfig::validate() const {
    optical.validate();
    if (mechanical.empty())
        throw ConfigError("at least one mechanical mode is required");
    for (const auto& m : mechanical) m.validate();
    if (couplings.size() != mechanical.size())
        throw ConfigError("couplings list length must match the number of mechanical modes");
    for (double g : couplings)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw ConfigError("couplings must be finite and >= 0");
}

double SystemConfig::zeta(std::size_t i) const {
    return couplings.at(i) / mechanical.at(i).frequency;
}

std::vector<int> SystemConfig::dims() const {
    std::vector<int> d;
    d.reserve(1 + mechanical.size());
    d.push_back(optical.truncation);
    for (const auto& m : mechanical) d.push_back(m.truncation);
    return d;
}

Eigen::Index SystemConfig::total_dim() const {
    Eigen::Index n = 1;
    for (int d : dims()) n *= d;
    return n;
}

double weak_coupling_parameter(const SystemConfig& config, std::size_t i,
                               double bath_occupation) {
    const double z = config.zeta(i);
    return z * z * bath_occupation;
}

Eigen::Index Operator::total() const {
    Eigen::Index n = 1;
    for (int d : dims) n *= d;
    return n;
}

Operator Operator::adjoint() const {
    Operator out{dims, SparseCMat(matrix.adjoint())};
    out.matrix.prune(0.0, 0.0);
    return out;
}

namespace {

void check_density(const std::vector<int>& dims, const Eigen::MatrixXcd& m) {
    Eigen::Index n = 1;
    for (int d : dims) {
        if (d < 2) throw InvalidDimension("density matrix: mode dimension must be >= 2");
        n *= d;
    }
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch("density matrix: matrix size does not match mode dimensions");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
        throw InvalidState("density matrix: not Hermitian (defect " + std::to_string(herm) + ")");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw InvalidState("density matrix: trace " + std::to_string(tr) + " != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw InvalidState("density matrix: negative eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()));
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<int> dims, Eigen::MatrixXcd matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    check_density(dims_, matrix_);
}

DensityMatrix::DensityMatrix(trusted_tag, std::vector<int> dims, Eigen::MatrixXcd matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

DensityMatrix DensityMatrix::trusted(std::vector<int> dims, Eigen::MatrixXcd matrix) {
    return DensityMatrix(trusted_tag{}, std::move(dims), std::move(matrix));
}

SparseCMat kron(const SparseCMat& a, const SparseCMat& b) {
    SparseCMat out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseCMat::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseCMat::InnerIterator ib(b, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * b.rows() + ib.row(),
                                       ia.col() * b.cols() + ib.col(),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(trips.begin(), trips.end());
    out.prune(0.0, 0.0);
    return out;
}

Operator make_destroy(int dim) {
    if (dim < 2) throw InvalidDimension("make_destroy: dim must be >= 2");
    SparseCMat m(dim, dim);
    m.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (int n = 1; n < dim; ++n) m.insert(n - 1, n) = std::sqrt(double(n));
    m.makeCompressed();
    return Operator{{dim}, std::move(m)};
}

Operator make_create(int dim) { return make_destroy(dim).adjoint(); }

Operator make_number(int dim) {
    if (dim < 2) throw InvalidDimension("make_number: dim must be >= 2");
    SparseCMat m(dim, dim);
    m.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (int n = 1; n < dim; ++n) m.insert(n, n) = double(n);
    m.makeCompressed();
    return Operator{{dim}, std::move(m)};
}

Operator make_identity(int dim) {
    if (dim < 2) throw InvalidDimension("make_identity: dim must be >= 2");
    SparseCMat m(dim, dim);
    m.setIdentity();
    return Operator{{dim}, std::move(m)};
}

Operator make_top_level_projector(int dim) {
    if (dim < 2) throw InvalidDimension("make_top_level_projector: dim must be >= 2");
    SparseCMat m(dim, dim);
    m.insert(dim - 1, dim - 1) = 1.0;
    m.makeCompressed();
    return Operator{{dim}, std::move(m)};
}

Operator tensor(const std::vector<Operator>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
    std::vector<int> dims;
    SparseCMat acc = factors.front().matrix;
    dims = factors.front().dims;
    for (std::size_t k = 1; k < factors.size(); ++k) {
        acc = kron(acc, factors[k].matrix);
        dims.insert(dims.end(), factors[k].dims.begin(), factors[k].dims.end());
    }
    return Operator{std::move(dims), std::move(acc)};
}

Operator embed(const Operator& op, std::size_t mode_index, const SystemConfig& config) {
    const auto d = config.dims();
    if (mode_index >= d.size())
        throw std::out_of_range("embed: mode index out of range");
    if (op.dims.size() != 1 || op.dims[0] != d[mode_index])
        throw DimensionMismatch("embed: operator dimension does not match the configured mode");
    std::vector<Operator> factors;
    factors.reserve(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        factors.push_back(k == mode_index ? op : make_identity(d[k]));
    return tensor(factors);
}

DensityMatrix thermal_state(int dim, double occupation) {
    if (dim < 2) throw InvalidDimension("thermal_state: dim must be >= 2");
    if (!(occupation >= 0.0) || !std::isfinite(occupation))
        throw std::invalid_argument("thermal_state: occupation must be finite and >= 0");
    Eigen::VectorXd p(dim);
    if (occupation == 0.0) {
        p.setZero();
        p[0] = 1.0;
    } else {
        const double r = occupation / (1.0 + occupation);
        double w = 1.0;
        for (int n = 0; n < dim; ++n, w *= r) p[n] = w;
        p /= p.sum();
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho.diagonal() = p.cast<Complex>();
    return DensityMatrix::trusted({dim}, std::move(rho));
}

double thermal_mean(int dim, double occupation) {
    if (occupation == 0.0) return 0.0;
    const double r = occupation / (1.0 + occupation);
    double w = 1.0, z = 0.0, s = 0.0;
    for (int n = 0; n < dim; ++n, w *= r) {
        z += w;
        s += n * w;
    }
    return s / z;
}

double diagonal_energies(const SystemConfig& config, int n_a, const std::vector<int>& m) {
    if (n_a < 0 || n_a >= config.optical.truncation)
        throw std::out_of_range("diagonal_energies: photon number out of range");
    if (m.size() != config.mechanical.size())
        throw DimensionMismatch("diagonal_energies: one phonon number per mechanical mode");
    double e = n_a * config.optical.frequency;
    double kerr = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0 || m[i] >= config.mechanical[i].truncation)
            throw std::out_of_range("diagonal_energies: phonon number out of range");
        e += m[i] * config.mechanical[i].frequency;
        kerr += config.couplings[i] * config.couplings[i] / config.mechanical[i].frequency;
    }
    return e - double(n_a) * double(n_a) * kerr;
}

}  // namespace optocool
