// Lindblad dissipators and vectorized Liouvillian superoperators.
// Vectorization is column-stacking: vec(rho)_{i + d*j} = rho_{ij}, so
// vec(A rho B) = (B^T kron A) vec(rho). The generator holds dissipators
// only; the dressed-frame Hamiltonian is diagonal and does not move
// populations.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "optocool/bath.hpp"
#include "optocool/fock.hpp"

namespace optocool {

struct LindbladChannel {
    Operator jump;
    double rate = 0.0;      // >= 0
    std::string label;
    double frequency = 0.0;  // transition frequency the channel addresses
};

struct Liouvillian {
    std::vector<int> dims;
    std::vector<LindbladChannel> channels;
    SparseCMat superoperator;  // (d^2 x d^2)

    Eigen::Index hilbert_dim() const;
};

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index d);

// D[o] rho = o rho o^dag - (o^dag o rho + rho o^dag o)/2  (unit rate).
Eigen::MatrixXcd dissipator_apply(const Operator& jump, const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd dissipator_apply(const Operator& jump, const DensityMatrix& rho);

Liouvillian build_superoperator(std::vector<LindbladChannel> channels);

// Joint-space Liouvillian for a scenario channel table, with jump
// operators assembled from the embedded ladder operators.
Liouvillian build_scenario(Scenario scenario, const SystemConfig& config,
                           const std::vector<BathSpec>& baths);

// Effective (downward, upward) phonon transition rates for resonator i
// from the optical baths, at the given cavity occupation.
std::pair<double, double> reduced_resonator_generator(std::size_t i, Scenario scenario,
                                                      const SystemConfig& config,
                                                      const std::vector<BathSpec>& baths,
                                                      double cavity_occupation);

}  // namespace optocool
