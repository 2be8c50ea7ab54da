#include "optocool/liouvillian.hpp"

#include <cmath>

namespace optocool {

Eigen::Index Liouvillian::hilbert_dim() const {
    Eigen::Index n = 1;
    for (int d : dims) n *= d;
    return n;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index d) {
    if (v.size() != d * d)
        throw DimensionMismatch("unvectorize: vector length is not d^2");
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Eigen::MatrixXcd dissipator_apply(const Operator& jump, const Eigen::MatrixXcd& rho) {
    if (jump.total() != rho.rows() || rho.rows() != rho.cols())
        throw DimensionMismatch("dissipator_apply: dimension mismatch");
    const SparseCMat& o = jump.matrix;
    const SparseCMat odag = SparseCMat(o.adjoint());
    const SparseCMat oo = SparseCMat(odag * o);
    Eigen::MatrixXcd out = o * rho * Eigen::MatrixXcd(odag);
    out.noalias() -= 0.5 * (oo * rho);
    out.noalias() -= 0.5 * (rho * Eigen::MatrixXcd(oo));
    return out;
}

Eigen::MatrixXcd dissipator_apply(const Operator& jump, const DensityMatrix& rho) {
    return dissipator_apply(jump, rho.matrix());
}

Liouvillian build_superoperator(std::vector<LindbladChannel> channels) {
    if (channels.empty())
        throw std::invalid_argument("build_superoperator: empty channel list");
    const auto& dims = channels.front().jump.dims;
    for (const auto& c : channels) {
        if (c.jump.dims != dims)
            throw DimensionMismatch("build_superoperator: channels act on different spaces");
        if (!(c.rate >= 0.0))
            throw std::invalid_argument("build_superoperator: negative rate on " + c.label);
    }
    const Eigen::Index d = channels.front().jump.total();
    SparseCMat id(d, d);
    id.setIdentity();

    SparseCMat L(d * d, d * d);
    for (const auto& c : channels) {
        if (c.rate == 0.0) continue;
        const SparseCMat& o = c.jump.matrix;
        const SparseCMat oconj = o.conjugate();
        const SparseCMat oo = SparseCMat(SparseCMat(o.adjoint()) * o);
        const SparseCMat ooT = SparseCMat(oo.transpose());
        SparseCMat term = kron(oconj, o);
        term -= SparseCMat(0.5 * kron(id, oo));
        term -= SparseCMat(0.5 * kron(ooT, id));
        L += SparseCMat(c.rate * term);
    }
    L.prune(0.0, 0.0);
    L.makeCompressed();
    return Liouvillian{dims, std::move(channels), std::move(L)};
}

namespace {

Operator joint_jump(const ChannelSpec& ch, const SystemConfig& config) {
    const auto d = config.dims();
    std::vector<Operator> factors;
    factors.reserve(d.size());
    const auto single = [](int kind, int dim) {
        if (kind < 0) return make_destroy(dim);
        if (kind > 0) return make_create(dim);
        return make_identity(dim);
    };
    factors.push_back(single(ch.optical_op, d[0]));
    for (std::size_t k = 1; k < d.size(); ++k) {
        const int kind = (ch.mech_index >= 0 && k == std::size_t(ch.mech_index) + 1)
                             ? ch.mech_op
                             : 0;
        factors.push_back(single(kind, d[k]));
    }
    return tensor(factors);
}

}  // namespace

Liouvillian build_scenario(Scenario scenario, const SystemConfig& config,
                           const std::vector<BathSpec>& baths) {
    const auto table = channel_table(scenario, config, baths);
    std::vector<LindbladChannel> channels;
    channels.reserve(table.size());
    for (const auto& ch : table)
        channels.push_back({joint_jump(ch, config), ch.rate, ch.label, ch.frequency});
    return build_superoperator(std::move(channels));
}

std::pair<double, double> reduced_resonator_generator(std::size_t i, Scenario scenario,
                                                      const SystemConfig& config,
                                                      const std::vector<BathSpec>& baths_in,
                                                      double cavity_occupation) {
    if (!(cavity_occupation >= 0.0))
        throw std::invalid_argument("reduced_resonator_generator: cavity occupation must be >= 0");
    config.validate();
    const auto baths = apply_default_filters(scenario, config, baths_in);
    const BathSpec& hot = find_bath(baths, "H");
    const BathSpec& cold = find_bath(baths, "C");
    const double z2 = config.zeta(i) * config.zeta(i);
    const double wa = config.optical.frequency;
    const double wm = wa - config.mechanical.at(i).frequency;
    const double wp = wa + config.mechanical.at(i).frequency;
    const double na = cavity_occupation;

    switch (scenario) {
        case Scenario::cooling:
            return {z2 * bath_rate(-wm, hot) * (na + 1.0), z2 * bath_rate(wm, hot) * na};
        case Scenario::heating:
            return {z2 * bath_rate(wp, hot) * na, z2 * bath_rate(-wp, hot) * (na + 1.0)};
        case Scenario::full: {
            double down = 0.0, up = 0.0;
            for (const BathSpec* b : {&hot, &cold}) {
                down += spectrum(wp, *b) * na + spectrum(-wm, *b) * (na + 1.0);
                up += spectrum(wm, *b) * na + spectrum(-wp, *b) * (na + 1.0);
            }
            return {z2 * down, z2 * up};
        }
    }
    throw std::invalid_argument("reduced_resonator_generator: invalid scenario");
}

}  // namespace optocool
