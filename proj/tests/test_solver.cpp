#include <doctest.h>

#include <random>

#include "optocool/rates.hpp"
#include "optocool/solver.hpp"
#include "test_helpers.hpp"

using namespace optocool;

namespace {

Liouvillian thermal_pair(int d, double kappa, double nbar) {
    const Operator a = make_destroy(d);
    return build_superoperator({
        {a, kappa * (1.0 + nbar), "down", 1.0},
        {a.adjoint(), kappa * nbar, "up", -1.0},
    });
}

}  // namespace

TEST_CASE("steady state of the thermal pair") {
    {
        const auto res = steady_state(thermal_pair(10, 1.0, 0.0), 1e-10);
        CHECK(res.state.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(res.residual < 1e-10);
    }
    {
        const auto res = steady_state(thermal_pair(10, 1.0, 0.5), 1e-10);
        const Eigen::MatrixXcd want = thermal_state(10, 0.5).matrix();
        CHECK((res.state.matrix() - want).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(res.top_level_populations[0] < 1e-4);
        CHECK(res.truncation_flags[0] == (res.top_level_populations[0] > 1e-6));
    }
}

TEST_CASE("steady state independent of the replaced row") {
    const Liouvillian L = thermal_pair(10, 0.7, 0.5);
    const auto a = steady_state(L, SteadyStateOptions{1e-10, std::nullopt});
    SteadyStateOptions opts;
    opts.replace_row = 5 * 11;  // a different diagonal equation
    const auto b = steady_state(L, opts);
    CHECK((a.state.matrix() - b.state.matrix()).cwiseAbs().maxCoeff() < 1e-9);

    SteadyStateOptions off_component;
    off_component.replace_row = 1;  // coherence row, outside the trace sector
    CHECK_THROWS_AS(steady_state(L, off_component), std::invalid_argument);
}

TEST_CASE("degenerate steady-state manifolds are reported") {
    // a^2 jumps keep even and odd ladders disconnected
    const Operator a = make_destroy(6);
    const Operator a2{{6}, SparseCMat(a.matrix * a.matrix)};
    const Liouvillian L = build_superoperator({{a2, 1.0, "pair-decay", 1.0}});
    CHECK_THROWS_AS(steady_state(L, 1e-10), NonUniqueSteadyState);
    try {
        steady_state(L, 1e-10);
    } catch (const NonUniqueSteadyState& e) {
        CHECK(e.null_space_dimension == 4);  // two population sectors + dark 0-1 coherences
    }

    // pure dephasing freezes every population
    const Liouvillian Ld = build_superoperator({{make_number(4), 1.0, "dephase", 0.0}});
    try {
        steady_state(Ld, 1e-10);
        CHECK(false);
    } catch (const NonUniqueSteadyState& e) {
        CHECK(e.null_space_dimension == 4);
    }
}

TEST_CASE("non-trace-preserving generator is rejected") {
    std::mt19937 rng(23);
    Liouvillian fake;
    fake.dims = {2};
    fake.superoperator = testutil::random_operator({2, 2}, rng).matrix;
    CHECK_THROWS_AS(steady_state(fake, 1e-10), std::invalid_argument);
}

TEST_CASE("zero generator evolves nothing") {
    const Operator a = make_destroy(3);
    const Liouvillian L = build_superoperator({{a, 0.0, "off", 1.0}});
    const DensityMatrix rho0 = thermal_state(3, 0.7);
    const auto obs = default_observables({3});
    const auto traj = evolve(L, rho0, {0.0, 1.0, 2.0}, obs);
    for (double v : traj.observables.at("n0"))
        CHECK(v == doctest::Approx(thermal_mean(3, 0.7)).epsilon(1e-12));
    CHECK((traj.final_state.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("amplitude damping decay curve") {
    const double kappa = 0.8;
    const int d = 4;
    const Operator a = make_destroy(d);
    const Liouvillian L = build_superoperator({{a, kappa, "down", 1.0}});
    Eigen::MatrixXcd one = Eigen::MatrixXcd::Zero(d, d);
    one(1, 1) = 1.0;
    const DensityMatrix rho0({d}, one);
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.4 * k);
    const auto obs = default_observables({d});
    const auto traj = evolve(L, rho0, grid, obs);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(traj.observables.at("n0")[k] ==
              doctest::Approx(std::exp(-kappa * grid[k])).epsilon(1e-7));
}

TEST_CASE("evolve agrees with the dense exponential") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const int d = 2 + int(rng() % 5);  // up to 6
        std::vector<LindbladChannel> channels;
        for (int c = 0; c < 3; ++c)
            channels.push_back({testutil::random_operator({d}, rng), rate(rng),
                                "c" + std::to_string(c), 1.0});
        const Liouvillian L = build_superoperator(channels);
        const DensityMatrix rho0 =
            DensityMatrix({d}, testutil::random_density(d, rng));
        const auto traj = evolve(L, rho0, {0.0, 1.0});
        const DensityMatrix want = expm_oracle(L, rho0, 1.0);
        CHECK((traj.final_state.matrix() - want.matrix()).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("expm oracle basics") {
    const Liouvillian L = thermal_pair(6, 1.0, 0.8);
    const DensityMatrix rho0 = thermal_state(6, 3.0);
    const DensityMatrix at0 = expm_oracle(L, rho0, 0.0);
    CHECK((at0.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-13);

    const DensityMatrix late = expm_oracle(L, rho0, 40.0);
    CHECK((late.matrix() - thermal_state(6, 0.8).matrix()).cwiseAbs().maxCoeff() < 1e-9);

    SystemConfig big;
    big.optical = {"a", 1.0, 9};
    big.mechanical = {{"m1", 0.1, 9}};
    big.couplings = {0.0};
    const Operator a81 = embed(make_destroy(9), 0, big);
    const Liouvillian L81 = build_superoperator({{a81, 1.0, "down", 1.0}});
    CHECK_THROWS_AS(expm_oracle(L81, DensityMatrix::trusted({9, 9}, Eigen::MatrixXcd::Identity(81, 81) / 81.0), 1.0),
                    InvalidDimension);
}

TEST_CASE("stiffness guard") {
    const Operator a = make_destroy(2);
    const Liouvillian L = build_superoperator({{a, 1e20, "fast", 1.0}});
    const DensityMatrix rho0 = thermal_state(2, 0.4);
    CHECK_THROWS_AS(evolve(L, rho0, {0.0, 1.0}), StiffnessError);
}

TEST_CASE("cooling relaxation follows the reduced rates") {
    SystemConfig cfg;
    cfg.optical = {"a", 1.0, 4};
    cfg.mechanical = {{"m1", 0.1, 20}};
    cfg.couplings = {0.005};  // zeta = 0.05
    const std::vector<BathSpec> baths = {
        {"H", 3.0, 0.01, SpectrumFamily::ohmic, std::nullopt},
        {"C", 0.2, 0.01, SpectrumFamily::ohmic, std::nullopt},
        {"m1", 0.1, 1e-5, SpectrumFamily::ohmic, std::nullopt},
    };
    const Liouvillian L = build_scenario(Scenario::cooling, cfg, baths);

    const double nbar1 = bose_occupation(0.1, 0.1);
    const auto filtered = apply_default_filters(Scenario::cooling, cfg, baths);
    const double na = cavity_occupation_ss(cfg, filtered);
    const RateSet rates = scenario_rates(0, Scenario::cooling, cfg, baths, na);
    const BathSpec& mb = find_bath(baths, "m1");
    const double keff = mechanical_damping(mb, 0.1);

    Eigen::MatrixXcd rho_a = thermal_state(4, na).matrix();
    Eigen::MatrixXcd rho_m = thermal_state(20, nbar1).matrix();
    Eigen::MatrixXcd joint(80, 80);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) joint.block(r * 20, c * 20, 20, 20) = rho_a(r, c) * rho_m;
    const DensityMatrix rho0 = DensityMatrix::trusted({4, 20}, joint);

    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(2000.0 * k);
    const auto obs = default_observables({4, 20});
    const auto traj = evolve(L, rho0, grid, obs);
    const auto& n1 = traj.observables.at("n1");

    // after the cavity settles the joint curve tracks the two-rate solution
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < 10.0 / 0.01) continue;
        const double reduced = phonon_transient_exact(rates, keff, nbar1, nbar1, grid[k]);
        CHECK(std::abs(n1[k] - reduced) / reduced < 0.05);
    }
    // and relaxes monotonically
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k - 1] < 10.0 / 0.01) continue;
        CHECK(n1[k] <= n1[k - 1] + 1e-8 * std::max(1.0, n1[k - 1]));
    }
    // trace conserved along the grid to the contract tolerance
    CHECK(traj.final_state.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("expectation") {
    Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(4, 4);
    two(2, 2) = 1.0;
    const DensityMatrix rho({4}, two);
    CHECK(expectation(rho, make_number(4)) == doctest::Approx(2.0));
    CHECK(expectation(rho, make_identity(4)) == doctest::Approx(1.0));

    const DensityMatrix th = thermal_state(40, 3.0);
    CHECK(expectation(th, make_number(40)) ==
          doctest::Approx(2.9995977325480991).epsilon(1e-12));
    CHECK(expectation(th, make_number(40)) == doctest::Approx(thermal_mean(40, 3.0)));

    CHECK_THROWS_AS(expectation(rho, make_destroy(4)), std::invalid_argument);
    CHECK_THROWS_AS(expectation(rho, make_number(5)), DimensionMismatch);
}

TEST_CASE("two-resonator joint steady state") {
    SystemConfig cfg;
    cfg.optical = {"a", 1.0, 3};
    cfg.mechanical = {{"m1", 0.1, 6}, {"m2", 0.1, 6}};
    cfg.couplings = {0.005, 0.005};
    const std::vector<BathSpec> baths = {
        {"H", 3.0, 0.01, SpectrumFamily::ohmic, std::nullopt},
        {"C", 0.2, 0.01, SpectrumFamily::ohmic, std::nullopt},
        {"m1", 0.1, 1e-5, SpectrumFamily::ohmic, std::nullopt},
        {"m2", 0.1, 1e-5, SpectrumFamily::ohmic, std::nullopt},
    };
    const Liouvillian L = build_scenario(Scenario::cooling, cfg, baths);
    CHECK(L.channels.size() == 10);  // 2 cold + 2 hot per resonator + 2 mech per resonator
    CHECK(L.hilbert_dim() == 108);
    const auto ss = steady_state(L, 1e-9);
    const auto means = mode_number_means(ss.state.matrix(), L.dims);
    CHECK(means[1] == doctest::Approx(means[2]).epsilon(1e-10));
    // both resonators cooled well below their bath occupation
    CHECK(means[1] < 0.2 * bose_occupation(0.1, 0.1));
}

TEST_CASE("heating evolution tracks the dense exponential") {
    SystemConfig cfg;
    cfg.optical = {"a", 1.0, 3};
    cfg.mechanical = {{"m1", 1e-7, 10}};
    cfg.couplings = {1e-9};
    const std::vector<BathSpec> baths = {
        {"H", 1e3, 1e-8, SpectrumFamily::ohmic, std::nullopt},
        {"C", 1e-5, 1e-8, SpectrumFamily::ohmic, std::nullopt},
        {"m1", 2e-4, 1e-12, SpectrumFamily::ohmic, std::nullopt},
    };
    const Liouvillian L = build_scenario(Scenario::heating, cfg, baths);
    Eigen::MatrixXcd ra = thermal_state(3, 0.0).matrix();
    Eigen::MatrixXcd rm = thermal_state(10, 0.5).matrix();
    Eigen::MatrixXcd joint(30, 30);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) joint.block(i * 10, j * 10, 10, 10) = ra(i, j) * rm;
    const DensityMatrix rho0 = DensityMatrix::trusted({3, 10}, joint);

    const auto obs = default_observables({3, 10});
    double prev = 0.5;
    for (int k = 1; k <= 5; ++k) {
        const double t = 2e8 * k;
        const auto traj = evolve(L, rho0, {0.0, t}, obs);
        const DensityMatrix ref = expm_oracle(L, rho0, t);
        CHECK((traj.final_state.matrix() - ref.matrix()).cwiseAbs().maxCoeff() < 1e-6);
        const double n1 = traj.observables.at("n1").back();
        CHECK(n1 > prev);  // heats monotonically across the sampled times
        prev = n1;
    }
}

TEST_CASE("expectation flags corrupted states") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = 0.5;
    bad(1, 1) = 0.5;
    bad(0, 1) = Complex(0.0, 0.4);
    bad(1, 0) = Complex(0.0, 0.4);  // not Hermitian; trusted() skips the checks
    const DensityMatrix rho = DensityMatrix::trusted({2}, bad);
    const Operator a = make_destroy(2);
    const Operator quadrature{{2}, SparseCMat(a.matrix + a.adjoint().matrix)};
    CHECK_THROWS_AS(expectation(rho, quadrature), NumericalCorruption);
}

TEST_CASE("unreachable tolerance reports convergence failure") {
    CHECK_THROWS_AS(steady_state(thermal_pair(10, 1.0, 0.5), 1e-30), ConvergenceFailure);
}

TEST_CASE("iterative fallback solves past the direct-factorization limit") {
    const Liouvillian L = thermal_pair(30, 1.0, 0.5);
    SteadyStateOptions opts;
    opts.tol = 1e-9;
    opts.direct_limit = 10;  // force the least-squares path
    const auto res = steady_state(L, opts);
    CHECK((res.state.matrix() - thermal_state(30, 0.5).matrix()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(res.residual < 1e-9);
}
