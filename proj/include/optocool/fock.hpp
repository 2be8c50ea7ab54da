// Truncated bosonic Fock spaces: mode operators, tensor embeddings and
// thermal states. Everything is built in the dressed (polaron) frame, where
// the ladder operators are the ordinary truncated ones and the system
// Hamiltonian is diagonal. Units: hbar = k_B = 1, frequencies in units of
// the optical frequency.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "optocool/errors.hpp"

namespace optocool {

using Complex = std::complex<double>;
using SparseCMat = Eigen::SparseMatrix<Complex>;  // column-major

struct ModeSpec {
    std::string label;
    double frequency = 1.0;  // units of omega_a
    int truncation = 2;      // Fock dimension

    void validate() const;
};

struct SystemConfig {
    ModeSpec optical;
    std::vector<ModeSpec> mechanical;  // N >= 1
    std::vector<double> couplings;     // g_i >= 0, one per mechanical mode

    void validate() const;
    double zeta(std::size_t i) const;  // g_i / omega_i
    std::vector<int> dims() const;     // [optical, mech_1, ..., mech_N]
    Eigen::Index total_dim() const;
};

// Weak-coupling figure of merit zeta_i^2 * nbar_i per mechanical mode;
// callers warn above 0.1.
double weak_coupling_parameter(const SystemConfig& config, std::size_t i,
                               double bath_occupation);

// Sparse operator tagged with the per-mode dimensions of the product space
// it acts on. Explicit zeros are pruned on construction.
struct Operator {
    std::vector<int> dims;
    SparseCMat matrix;

    Eigen::Index total() const;
    Operator adjoint() const;
};

// Density matrix over a mode product space. Construction validates
// Hermiticity (1e-12), unit trace (1e-10) and spectral positivity (-1e-10);
// non-physical inputs are rejected.
class DensityMatrix {
  public:
    DensityMatrix(std::vector<int> dims, Eigen::MatrixXcd matrix);

    const std::vector<int>& dims() const { return dims_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    Eigen::Index total() const { return matrix_.rows(); }

    // Internal fast path for states whose physicality was already
    // established by the caller (e.g. after clipping in the solver).
    static DensityMatrix trusted(std::vector<int> dims, Eigen::MatrixXcd matrix);

  private:
    struct trusted_tag {};
    DensityMatrix(trusted_tag, std::vector<int> dims, Eigen::MatrixXcd matrix);

    std::vector<int> dims_;
    Eigen::MatrixXcd matrix_;
};

SparseCMat kron(const SparseCMat& a, const SparseCMat& b);

// Single-mode ladder operators, <n-1|a|n> = sqrt(n).
Operator make_destroy(int dim);
Operator make_create(int dim);
Operator make_number(int dim);
Operator make_identity(int dim);
// Projector onto the highest retained Fock level.
Operator make_top_level_projector(int dim);

// Kronecker product of single-mode operators, dims concatenated in order.
Operator tensor(const std::vector<Operator>& factors);

// Place a single-mode operator at mode_index, identities elsewhere.
Operator embed(const Operator& op, std::size_t mode_index, const SystemConfig& config);

// Diagonal Bose-Einstein state with the given mean occupation, renormalized
// over the truncated space.
DensityMatrix thermal_state(int dim, double occupation);
// Mean of the number operator in thermal_state(dim, occupation).
double thermal_mean(int dim, double occupation);

// Eigenenergy of the dressed state |n_a, m_1..m_N>:
//   n_a*omega_a + sum_i m_i*omega_i - n_a^2 * sum_i g_i^2/omega_i.
double diagonal_energies(const SystemConfig& config, int n_a, const std::vector<int>& m);

}  // namespace optocool
