#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "optocool/sweep.hpp"

using namespace optocool;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(
# minimal cooling run
system.optical.truncation = 7
system.mechanical.1.frequency = 1e-7
system.mechanical.1.truncation = 70
system.mechanical.1.coupling = 1e-9
bath.H.temperature = 1000
bath.H.coupling = 1e-8
bath.C.temperature = 1e-5
bath.C.coupling = 1e-8
bath.m1.temperature = 2e-4
bath.m1.coupling = 1e-12
)";

RunConfig minimal() {
    RunConfig cfg = parse_config_text(kMinimalConfig, "test");
    validate_config(cfg);
    return cfg;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("optocool_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config gets defaults") {
    const RunConfig cfg = minimal();
    CHECK(cfg.scenario == Scenario::cooling);
    CHECK(cfg.solver.method == SolveMethod::analytic);
    CHECK(cfg.solver.tolerance == 1e-10);
    CHECK(cfg.output.directory == "out");
    CHECK(cfg.output.csv);
    CHECK(cfg.output.json);
    CHECK(cfg.system.mechanical.size() == 1);
    CHECK(cfg.system.mechanical[0].label == "m1");
    // zeta^2 nbar ~ 0.2: the weak-coupling warning is attached
    REQUIRE(cfg.warnings.size() == 1);
}

TEST_CASE("sweep plan parses") {
    std::string text = kMinimalConfig;
    text += "sweep.parameter = baths.H.temperature\n";  // plural alias accepted
    text += "sweep.values = logspace(1e1,1e4,40)\n";
    RunConfig cfg = parse_config_text(text, "test");
    validate_config(cfg);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->values.size() == 40);
    CHECK(cfg.sweep->values.front() == doctest::Approx(10.0));
    CHECK(cfg.sweep->values.back() == doctest::Approx(1e4));
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config_text("system.optical.truncation = 7\nsystem.bogus.key = 1\n", "cfg");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cfg:2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("just a line without equals\n", "cfg"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("system.optical.truncation = 7\nsystem.optical.truncation = 8\n",
                          "cfg"),
        ConfigError);
}

TEST_CASE("validation reports every violation at once") {
    std::string text = kMinimalConfig;
    text += "solver.tolerance = -1\n";
    RunConfig cfg = parse_config_text(text, "test");
    cfg.system.mechanical[0].frequency = -2.0;
    cfg.baths[0].temperature = -5.0;
    try {
        validate_config(cfg);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.issues.size() >= 3);
    }
}

TEST_CASE("parameter resolution") {
    RunConfig cfg = minimal();
    double* hot_temperature = nullptr;
    for (auto& b : cfg.baths)
        if (b.label == "H") hot_temperature = &b.temperature;
    REQUIRE(hot_temperature != nullptr);
    CHECK(resolve_parameter(cfg, "bath.H.temperature") == hot_temperature);
    CHECK(resolve_parameter(cfg, "baths.H.temperature") == hot_temperature);
    CHECK(resolve_parameter(cfg, "system.mechanical.1.frequency") ==
          &cfg.system.mechanical[0].frequency);
    CHECK(resolve_parameter(cfg, "system.mechanical.1.coupling") == &cfg.system.couplings[0]);
    CHECK(resolve_parameter(cfg, "system.coupling.1") == &cfg.system.couplings[0]);
    CHECK(resolve_parameter(cfg, "bath.X.temperature") == nullptr);
    CHECK(resolve_parameter(cfg, "nonsense") == nullptr);
}

TEST_CASE("canonical form and hash are stable") {
    const RunConfig a = minimal();
    const RunConfig b = minimal();
    CHECK(canonical_config(a) == canonical_config(b));
    CHECK(config_hash_hex(a) == config_hash_hex(b));
    RunConfig c = minimal();
    c.baths[0].temperature *= 2.0;
    CHECK(config_hash_hex(a) != config_hash_hex(c));
}

TEST_CASE("preset tables match the frozen parameter set") {
    const auto fig2 = preset_configs("fig2");
    REQUIRE(fig2.size() == 3);
    std::vector<double> t1s;
    for (const auto& cfg : fig2) {
        CHECK(cfg.scenario == Scenario::cooling);
        CHECK(cfg.system.optical.frequency == 1.0);
        CHECK(cfg.system.optical.truncation == 7);
        CHECK(cfg.system.mechanical[0].frequency == 1e-7);
        CHECK(cfg.system.mechanical[0].truncation == 70);
        CHECK(cfg.system.couplings[0] == 1e-9);
        CHECK(find_bath(cfg.baths, "H").coupling == 1e-8);
        CHECK(find_bath(cfg.baths, "C").coupling == 1e-8);
        CHECK(find_bath(cfg.baths, "C").temperature == 1e-5);
        CHECK(find_bath(cfg.baths, "m1").coupling == 1e-12);
        REQUIRE(cfg.sweep.has_value());
        CHECK(cfg.sweep->parameter == "bath.H.temperature");
        CHECK(cfg.sweep->values.size() == 40);
        // preset range endpoints: 4e4 K and 4e7 K in scaled units
        CHECK(cfg.sweep->values.front() ==
              doctest::Approx(8.3346476493310302).epsilon(1e-12));
        CHECK(cfg.sweep->values.back() ==
              doctest::Approx(8334.6476493310292).epsilon(1e-12));
        t1s.push_back(find_bath(cfg.baths, "m1").temperature);
    }
    CHECK(t1s == std::vector<double>{1e-4, 2e-4, 3e-4});

    const auto fig3b = preset_configs("fig3b");
    REQUIRE(fig3b.size() == 1);
    CHECK(fig3b[0].system.mechanical.size() == 2);
    CHECK(fig3b[0].system.mechanical[1].frequency == doctest::Approx(0.75e-7));
    CHECK(find_bath(fig3b[0].baths, "m1").temperature == 2e-4);
    CHECK(find_bath(fig3b[0].baths, "m2").temperature == 2e-4);

    const auto fig3c = preset_configs("fig3c");
    CHECK(fig3c[0].system.couplings[1] == doctest::Approx(0.5e-9));
    const auto fig3d = preset_configs("fig3d");
    CHECK(find_bath(fig3d[0].baths, "m2").coupling == doctest::Approx(1e-11));

    const auto fig5 = preset_configs("fig5");
    REQUIRE(fig5.size() == 1);
    CHECK(fig5[0].solver.method == SolveMethod::joint_steady_state);
    CHECK(bose_occupation(1.0, find_bath(fig5[0].baths, "C").temperature) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bose_occupation(1e-7, find_bath(fig5[0].baths, "m1").temperature) ==
          doctest::Approx(10.0).epsilon(1e-12));

    const auto heating = preset_configs("heating");
    CHECK(heating[0].scenario == Scenario::heating);
    CHECK(heating[0].solver.method == SolveMethod::joint_evolve);
    CHECK(heating[0].system.optical.truncation == 4);
    CHECK(heating[0].system.mechanical[0].truncation == 12);

    CHECK_THROWS_AS(preset_configs("fig9"), ConfigError);
}

TEST_CASE("sweep runs, emits deterministic csv, tolerates point failures") {
    TempDir tmp;
    RunConfig cfg = minimal();
    cfg.output.directory = (tmp.path / "a").string();
    cfg.sweep = SweepSpec{"bath.H.temperature", logspace(10.0, 1e4, 7)};
    validate_config(cfg);

    const SweepResult r1 = run_sweep(cfg, 1);
    CHECK(r1.points.size() == 7);
    CHECK(r1.failed_count() == 0);
    const auto p1 = emit(r1, cfg);

    RunConfig cfg2 = cfg;
    cfg2.output.directory = (tmp.path / "b").string();
    const SweepResult r2 = run_sweep(cfg2, 4);  // different worker count
    const auto p2 = emit(r2, cfg2);
    CHECK(read_file(p1.csv) == read_file(p2.csv));
    CHECK(fs::path(p1.csv).filename() == fs::path(p2.csv).filename());

    // header carries the sweep parameter and the analytic observables
    const std::string csv = read_file(p1.csv);
    CHECK(csv.rfind("bath.H.temperature,na_ss,n1_ss,Gamma1,residual,flags", 0) == 0);

    // single-point run emits exactly one data row
    RunConfig single = minimal();
    single.output.directory = (tmp.path / "c").string();
    const SweepResult rs = run_sweep(single, 1);
    CHECK(rs.points.size() == 1);
    const auto ps = emit(rs, single);
    const std::string scsv = read_file(ps.csv);
    CHECK(std::count(scsv.begin(), scsv.end(), '\n') == 2);  // header + one row

    // a poisoned point is recorded, not fatal
    RunConfig part = minimal();
    part.output.directory = (tmp.path / "d").string();
    part.sweep = SweepSpec{"bath.H.temperature", {-1.0, 100.0}};
    validate_config(part);
    const SweepResult rp = run_sweep(part, 2);
    CHECK(rp.failed_count() == 1);
    CHECK(!rp.points[0].error.empty());
    CHECK(rp.points[1].error.empty());
    const auto pp = emit(rp, part);
    CHECK(read_file(pp.csv).find("error:") != std::string::npos);

    // every point failing is a run error
    RunConfig dead = minimal();
    dead.sweep = SweepSpec{"bath.H.temperature", {-1.0, -2.0}};
    validate_config(dead);
    CHECK_THROWS_AS(run_sweep(dead, 1), std::runtime_error);
}

TEST_CASE("json manifest carries provenance") {
    TempDir tmp;
    RunConfig cfg = minimal();
    cfg.output.directory = tmp.path.string();
    const SweepResult r = run_sweep(cfg, 1);
    const auto paths = emit(r, cfg);
    const std::string j = read_file(paths.json);
    CHECK(j.find("\"tool\"") != std::string::npos);
    CHECK(j.find("\"timestamp\"") != std::string::npos);
    CHECK(j.find("\"si_conversion\"") != std::string::npos);
    CHECK(j.find("kelvin_per_temperature_unit") != std::string::npos);
    CHECK(j.find(r.hash) != std::string::npos);
}

TEST_CASE("load_config reads files") {
    TempDir tmp;
    const fs::path p = tmp.path / "run.cfg";
    std::ofstream(p) << kMinimalConfig;
    const RunConfig cfg = load_config(p.string());
    CHECK(cfg.system.optical.truncation == 7);
    CHECK_THROWS_AS(load_config((tmp.path / "missing.cfg").string()), ConfigError);
}

TEST_CASE("identical-resonator preset produces identical curves") {
    auto cfg = preset_configs("fig3a")[0];
    cfg.sweep->values = logspace(cfg.sweep->values.front(), cfg.sweep->values.back(), 5);
    validate_config(cfg);
    const SweepResult r = run_sweep(cfg, 2);
    REQUIRE(r.failed_count() == 0);
    for (const auto& pt : r.points) {
        double n1 = 0.0, n2 = 0.0;
        for (const auto& [label, v] : pt.observables) {
            if (label == "n1_ss") n1 = v;
            if (label == "n2_ss") n2 = v;
        }
        CHECK(n1 == n2);
    }
}

TEST_CASE("heating preset emits a growing transient") {
    auto cfg = preset_configs("heating")[0];
    cfg.sweep->values = linspace(0.0, 3e9, 13);
    validate_config(cfg);
    const SweepResult r = run_sweep(cfg, 1);
    REQUIRE(r.failed_count() == 0);
    REQUIRE(r.points.size() == 13);
    const auto get = [](const PointRecord& pt, const std::string& want) {
        for (const auto& [label, v] : pt.observables)
            if (label == want) return v;
        return std::numeric_limits<double>::quiet_NaN();
    };
    // the joint curve grows monotonically toward truncation saturation
    for (std::size_t k = 1; k < r.points.size(); ++k)
        CHECK(get(r.points[k], "n1_joint") >=
              get(r.points[k - 1], "n1_joint") - 1e-9);
    // the printed closed form starts offset by its stationary term, the
    // exact solution starts at the bath occupation
    const double nbar = bose_occupation(1e-7, 2e-4);
    CHECK(get(r.points[0], "n1_exact") == doctest::Approx(nbar).epsilon(1e-12));
    const double offset = get(r.points[0], "n1_formula") - nbar;
    CHECK(std::abs(offset) > 0.9);  // stationary term of the unstable branch, about -1 here
    CHECK(get(r.points.back(), "n1_formula") > get(r.points[1], "n1_formula"));
}

TEST_CASE("reduced-ode method relaxes to the analytic fixed point") {
    RunConfig cfg = minimal();
    cfg.solver.method = SolveMethod::reduced_ode;
    validate_config(cfg);
    const SweepResult r = run_sweep(cfg, 1);
    REQUIRE(r.failed_count() == 0);
    double n_ode = 0.0;
    for (const auto& [label, v] : r.points[0].observables)
        if (label == "n1_ode") n_ode = v;

    RunConfig ana = minimal();
    const SweepResult ra = run_sweep(ana, 1);
    double n_ss = 0.0;
    for (const auto& [label, v] : ra.points[0].observables)
        if (label == "n1_ss") n_ss = v;
    CHECK(n_ode == doctest::Approx(n_ss).epsilon(1e-9));
}
