#include "optocool/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/QR>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

namespace optocool {

namespace {

constexpr double kTruncationFlagThreshold = 1e-6;

struct UnionFind {
    std::vector<Eigen::Index> parent;
    explicit UnionFind(Eigen::Index n) : parent(n) {
        std::iota(parent.begin(), parent.end(), Eigen::Index(0));
    }
    Eigen::Index find(Eigen::Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Eigen::Index a, Eigen::Index b) { parent[find(a)] = find(b); }
};

double max_abs_coeff(const SparseCMat& m) {
    double s = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCMat::InnerIterator it(m, k); it; ++it)
            s = std::max(s, std::abs(it.value()));
    return s;
}

std::vector<int> decode_index(Eigen::Index g, const std::vector<int>& dims) {
    std::vector<int> n(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        n[k] = int(g % dims[k]);
        g /= dims[k];
    }
    return n;
}

int dense_null_dimension(const SparseCMat& m, double scale) {
    Eigen::MatrixXcd dense = Eigen::MatrixXcd(m) / scale;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(dense);
    qr.setThreshold(1e-10);
    return int(m.rows() - qr.rank());
}

}  // namespace

std::vector<double> top_level_populations(const Eigen::MatrixXcd& rho,
                                          const std::vector<int>& dims) {
    std::vector<double> pops(dims.size(), 0.0);
    for (Eigen::Index g = 0; g < rho.rows(); ++g) {
        const auto n = decode_index(g, dims);
        const double p = rho(g, g).real();
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (n[k] == dims[k] - 1) pops[k] += p;
    }
    return pops;
}

std::vector<double> mode_number_means(const Eigen::MatrixXcd& rho,
                                      const std::vector<int>& dims) {
    std::vector<double> means(dims.size(), 0.0);
    for (Eigen::Index g = 0; g < rho.rows(); ++g) {
        const auto n = decode_index(g, dims);
        const double p = rho(g, g).real();
        for (std::size_t k = 0; k < dims.size(); ++k) means[k] += n[k] * p;
    }
    return means;
}

SteadyStateResult steady_state(const Liouvillian& L, double tol) {
    SteadyStateOptions opts;
    opts.tol = tol;
    return steady_state(L, opts);
}

SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& opts) {
    const SparseCMat& M = L.superoperator;
    const Eigen::Index d = L.hilbert_dim();
    const Eigen::Index n = M.rows();
    if (n != d * d) throw DimensionMismatch("steady_state: superoperator size mismatch");

    const double s = max_abs_coeff(M);
    if (s == 0.0)
        throw NonUniqueSteadyState("steady_state: zero generator, every state is stationary",
                                   int(n));

    // Trace preservation: the sum of the diagonal-row entries must vanish
    // column-wise, i.e. vec(I)^dag L = 0.
    {
        Eigen::VectorXd colsum = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < M.outerSize(); ++k)
            for (SparseCMat::InnerIterator it(M, k); it; ++it)
                if (it.row() % (d + 1) == 0) colsum[it.col()] += it.value().real();
        // imaginary parts of diagonal-row sums cancel for Hermitian-closed
        // channel sets; the real part is the binding check
        if (colsum.cwiseAbs().maxCoeff() > 1e-8 * s)
            throw std::invalid_argument("steady_state: generator is not trace-preserving");
    }

    UnionFind uf(n);
    for (int k = 0; k < M.outerSize(); ++k)
        for (SparseCMat::InnerIterator it(M, k); it; ++it)
            if (it.row() != it.col()) uf.unite(it.row(), it.col());

    // Components carrying diagonal (trace) entries.
    std::vector<Eigen::Index> trace_roots;
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index r = uf.find(k * (d + 1));
        if (std::find(trace_roots.begin(), trace_roots.end(), r) == trace_roots.end())
            trace_roots.push_back(r);
    }
    if (trace_roots.size() > 1) {
        const int null_dim = n <= 1024 ? dense_null_dimension(M, s) : int(trace_roots.size());
        throw NonUniqueSteadyState(
            "steady_state: " + std::to_string(trace_roots.size()) +
                " disconnected trace-carrying sectors; steady-state manifold is degenerate "
                "(null-space dimension " + std::to_string(null_dim) + ")",
            null_dim);
    }
    const Eigen::Index root = trace_roots.front();

    std::vector<Eigen::Index> local(n, -1);
    std::vector<Eigen::Index> global;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (uf.find(i) == root) {
            local[i] = Eigen::Index(global.size());
            global.push_back(i);
        }
    }
    const Eigen::Index m = Eigen::Index(global.size());

    const Eigen::Index rep_global = opts.replace_row.value_or(0);
    if (rep_global < 0 || rep_global >= n || local[rep_global] < 0)
        throw std::invalid_argument(
            "steady_state: replaced row must lie in the trace-carrying sector");
    const Eigen::Index rep = local[rep_global];

    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(std::size_t(M.nonZeros()));
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SparseCMat::InnerIterator it(M, k); it; ++it) {
            const Eigen::Index li = local[it.row()];
            if (li < 0 || li == rep) continue;
            trips.emplace_back(li, local[it.col()], it.value() / s);
        }
    }
    for (Eigen::Index k = 0; k < d; ++k)
        trips.emplace_back(rep, local[k * (d + 1)], Complex(1.0, 0.0));

    SparseCMat block(m, m);
    block.setFromTriplets(trips.begin(), trips.end());
    block.makeCompressed();

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m);
    rhs[rep] = 1.0;
    Eigen::VectorXcd xb;
    if (m <= opts.direct_limit) {
        Eigen::SparseLU<SparseCMat> lu;
        lu.compute(block);
        if (lu.info() != Eigen::Success) {
            const int null_dim = n <= 1024 ? dense_null_dimension(M, s) : -1;
            throw NonUniqueSteadyState(
                "steady_state: singular linear system beyond the trace constraint "
                "(null-space dimension " +
                    (null_dim >= 0 ? std::to_string(null_dim) : std::string("unknown")) + ")",
                null_dim);
        }
        xb = lu.solve(rhs);
        // one step of iterative refinement
        xb += lu.solve(rhs - block * xb);
    } else {
        Eigen::LeastSquaresConjugateGradient<SparseCMat> lscg;
        lscg.setTolerance(1e-14);
        lscg.setMaxIterations(40 * m);
        lscg.compute(block);
        xb = lscg.solve(rhs);
        // the residual acceptance below decides whether this converged
    }

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index li = 0; li < m; ++li) x[global[li]] = xb[li];

    Eigen::MatrixXcd rho = unvectorize(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 1e-300))
        throw ConvergenceFailure("steady_state: solution trace collapsed to zero");
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < -1e-10 * lmax)
        throw PositivityError("steady_state: negative eigenvalue " + std::to_string(lmin) +
                              " exceeds the repair threshold");
    if (lmin < 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esv(rho);
        Eigen::VectorXd ev = esv.eigenvalues().cwiseMax(0.0);
        rho = esv.eigenvectors() * ev.asDiagonal() * esv.eigenvectors().adjoint();
        rho /= rho.trace().real();
    }

    const double residual = (M * vectorize(rho)).norm() / s;
    if (residual > opts.tol)
        throw ConvergenceFailure("steady_state: scaled residual " + std::to_string(residual) +
                                 " above tolerance");

    auto pops = top_level_populations(rho, L.dims);
    std::vector<bool> flags;
    flags.reserve(pops.size());
    for (double p : pops) flags.push_back(p > kTruncationFlagThreshold);

    return SteadyStateResult{DensityMatrix::trusted(L.dims, std::move(rho)), residual,
                             std::move(pops), std::move(flags)};
}

std::vector<Observable> default_observables(const std::vector<int>& dims) {
    std::vector<Observable> out;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<Operator> nf, tf;
        for (std::size_t j = 0; j < dims.size(); ++j) {
            nf.push_back(j == k ? make_number(dims[j]) : make_identity(dims[j]));
            tf.push_back(j == k ? make_top_level_projector(dims[j]) : make_identity(dims[j]));
        }
        out.push_back({"n" + std::to_string(k), tensor(nf)});
        out.push_back({"top" + std::to_string(k), tensor(tf)});
    }
    return out;
}

namespace {

double sparse_trace_product(const SparseCMat& o, const Eigen::MatrixXcd& rho, double* imag_out) {
    Complex tr(0.0, 0.0);
    for (int k = 0; k < o.outerSize(); ++k)
        for (SparseCMat::InnerIterator it(o, k); it; ++it)
            tr += it.value() * rho(it.col(), it.row());
    if (imag_out) *imag_out = tr.imag();
    return tr.real();
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0,
                  const std::vector<double>& t_grid, const std::vector<Observable>& observables,
                  const EvolveOptions& opts) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw std::invalid_argument("evolve: time grid must start at 0");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw std::invalid_argument("evolve: time grid must increase strictly");
    if (rho0.dims() != L.dims)
        throw DimensionMismatch("evolve: state dimensions do not match the Liouvillian");
    for (const auto& ob : observables)
        if (ob.op.total() != rho0.total())
            throw DimensionMismatch("evolve: observable '" + ob.label + "' dimension mismatch");

    const SparseCMat& M = L.superoperator;
    const Eigen::Index d = rho0.total();
    Eigen::VectorXcd y = vectorize(rho0.matrix());

    std::vector<double> times;
    std::map<std::string, std::vector<double>> obs_series;
    for (const auto& ob : observables) obs_series[ob.label] = {};

    const double t_end = t_grid.back();
    const double h_min = std::max(1e-14 * std::max(t_end, 1.0), 1e-300);
    const double init_trace = rho0.matrix().trace().real();

    const auto record = [&](double t, const Eigen::VectorXcd& yy) {
        const Eigen::MatrixXcd rho = unvectorize(yy, d);
        const double tr = rho.trace().real();
        if (std::abs(tr - init_trace) > 1e-8 * std::max(1.0, std::abs(init_trace)))
            throw NumericalCorruption("evolve: trace drifted to " + std::to_string(tr) +
                                      " at t = " + std::to_string(t));
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
            throw NumericalCorruption("evolve: Hermiticity lost at t = " + std::to_string(t));
        times.push_back(t);
        for (const auto& ob : observables) {
            double im = 0.0;
            obs_series[ob.label].push_back(sparse_trace_product(ob.op.matrix, rho, &im));
        }
    };

    record(0.0, y);

    Eigen::VectorXcd k1 = M * y, k2, k3, k4, k5, k6, k7, y5;
    double t = 0.0;
    double h = t_grid.size() > 1 ? (t_grid[1] - t_grid[0]) / 16.0 : t_end;
    {
        const double fn = k1.cwiseAbs().maxCoeff();
        if (fn > 0.0) h = std::min(h, 0.1 * std::max(y.cwiseAbs().maxCoeff(), opts.abs_tol) / fn);
        h = std::max(h, h_min);
    }

    std::size_t next = 1;
    while (next < t_grid.size()) {
        const double target = t_grid[next];
        bool clipped = false;
        if (t + h >= target) {
            h = target - t;
            clipped = true;
        }

        k2 = M * (y + h * a21 * k1).eval();
        k3 = M * (y + h * (a31 * k1 + a32 * k2)).eval();
        k4 = M * (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval();
        k5 = M * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval();
        k6 = M * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval();
        y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = M * y5;

        const Eigen::VectorXcd errv =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale =
            opts.abs_tol + opts.rel_tol * std::max(y.cwiseAbs().maxCoeff(),
                                                   y5.cwiseAbs().maxCoeff());
        const double err = errv.cwiseAbs().maxCoeff() / scale;

        if (err <= 1.0) {
            t = clipped ? target : t + h;
            y.swap(y5);
            k1.swap(k7);  // FSAL
            if (clipped) {
                record(t, y);
                ++next;
            }
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h = std::max(h * factor, h_min);
        if (h <= h_min && err > 1.0)
            throw StiffnessError(
                "evolve: step size underflow; reduce the bath-rate spread or use the dense "
                "exponential oracle");
    }

    Eigen::MatrixXcd rho = unvectorize(y, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return Trajectory{std::move(times), std::move(obs_series),
                      DensityMatrix::trusted(L.dims, std::move(rho))};
}

DensityMatrix expm_oracle(const Liouvillian& L, const DensityMatrix& rho0, double t) {
    if (L.hilbert_dim() > 64)
        throw InvalidDimension("expm_oracle: Hilbert dimension above 64");
    if (rho0.dims() != L.dims)
        throw DimensionMismatch("expm_oracle: state dimensions do not match");
    const Eigen::MatrixXcd A = Eigen::MatrixXcd(L.superoperator) * t;
    const Eigen::MatrixXcd E = A.exp();
    Eigen::VectorXcd y = E * vectorize(rho0.matrix());
    Eigen::MatrixXcd rho = unvectorize(y, rho0.total());
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return DensityMatrix(L.dims, std::move(rho));
}

double expectation(const DensityMatrix& state, const Operator& observable) {
    if (observable.total() != state.total())
        throw DimensionMismatch("expectation: dimension mismatch");
    const SparseCMat herm_defect =
        SparseCMat(observable.matrix - SparseCMat(observable.matrix.adjoint()));
    const double herm = max_abs_coeff(herm_defect);
    const double onorm = max_abs_coeff(observable.matrix);
    if (herm > 1e-12 * std::max(1.0, onorm))
        throw std::invalid_argument("expectation: observable is not Hermitian");
    double im = 0.0;
    const double re = sparse_trace_product(observable.matrix, state.matrix(), &im);
    if (std::abs(im) > 1e-10 * std::max(1.0, std::abs(re)))
        throw NumericalCorruption("expectation: imaginary part " + std::to_string(im));
    return re;
}

}  // namespace optocool
