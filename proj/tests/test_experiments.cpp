#include "briesz/experiments.hpp"

#include "briesz/errors.hpp"
#include "briesz/kernel.hpp"
#include "briesz/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace briesz;

namespace {

std::string csv_of(const Table& t) {
    std::stringstream ss;
    write_table_csv(ss, t);
    return ss.str();
}

ExperimentConfig base_config(const std::string& experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    cfg.finalize();
    return cfg;
}

} // namespace

TEST_CASE("config: JSON round trip preserves the experiment description") {
    ExperimentConfig cfg = base_config("young");
    cfg.trials = 17;
    cfg.seed = 99;
    const nlohmann::json j = config_to_json(cfg);
    ExperimentConfig back = config_from_json(j);
    back.finalize();
    CHECK(back.experiment == "young");
    CHECK(back.trials == 17);
    CHECK(back.seed == 99);
    CHECK(config_to_json(back).dump() == j.dump());
}

TEST_CASE("config: psi_from_string spellings") {
    const GeneratingFunction power = psi_from_string("power:m=2");
    CHECK(power.kind == GeneratingFunction::Kind::power);
    CHECK(power.m == doctest::Approx(2.0));
    const GeneratingFunction iwsb = psi_from_string("iwsb:a=1,b=3,alpha=1,beta=0");
    CHECK(iwsb.kind == GeneratingFunction::Kind::iwaniec_sbordone);
    CHECK(iwsb.b == doctest::Approx(3.0));
    const GeneratingFunction point = psi_from_string("point:r=2");
    CHECK(point.kind == GeneratingFunction::Kind::single_point);
    CHECK(point.point == doctest::Approx(2.0));
    const GeneratingFunction capped = psi_from_string("power:m=3,a=1.5,b=inf");
    CHECK(capped.a == doctest::Approx(1.5));
    CHECK(std::isinf(capped.b));
    CHECK_THROWS_AS(psi_from_string("spline:k=3"), ConfigError);
}

TEST_CASE("config: unknown experiment and bad values are rejected") {
    ExperimentConfig cfg;
    cfg.experiment = "interpolate";
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);

    ExperimentConfig young;
    young.experiment = "young";
    young.trials = 0;
    CHECK_THROWS_AS(young.finalize(), ConfigError);

    ExperimentConfig conv;
    conv.experiment = "converge";
    conv.R_list = {8.0, 4.0};
    CHECK_THROWS_AS(conv.finalize(), ConfigError);
}

TEST_CASE("run_young: deterministic, all trials pass at small size") {
    ExperimentConfig cfg = base_config("young");
    cfg.trials = 10;
    cfg.seed = 42;
    const Table a = run_young(cfg);
    const Table b = run_young(cfg);
    CHECK(csv_of(a) == csv_of(b));  // same seed + config -> identical bytes
    CHECK(a.summary.at("violations").get<int>() == 0);
    CHECK(a.summary.at("max_gaussian_gap").get<double>() <= 1e-3);
    CHECK(a.rows.size() == 10 + 9);  // trials + gaussian grid
}

TEST_CASE("young p = q = r = 1: Fubini equality for nonnegative factors") {
    const ExperimentConfig cfg = base_config("young");
    const Grid grid = cfg.grid.make();
    const GridFunction f = sample(TestFunctionSpec::gaussian(0.8, 0.7), grid);
    const GridFunction g = sample(TestFunctionSpec::gaussian(1.1, 1.4), grid);
    const double lhs = lp_norm(convolve_spectral(f, g), 1.0);
    const double rhs = young_bound(1.0, 1.0, 1.0, 1) * lp_norm(f, 1.0) * lp_norm(g, 1.0);
    CHECK(young_bound(1.0, 1.0, 1.0, 1) == doctest::Approx(1.0));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("run_gls: single_point psi degenerates to the Lp -> Lr table") {
    ExperimentConfig cfg;
    cfg.experiment = "gls";
    cfg.psi = GeneratingFunction::single_point(1.5);
    cfg.psi_given = true;
    cfg.alpha = 0.5;  // n=1: q0 = 2/3, every r > d is admissible
    cfg.alpha_given = true;
    cfg.r_list = {4.0};
    cfg.finalize();
    const Table t = run_gls(cfg);
    const double d = d_lower(0.5, 1, cfg.psi.b);
    REQUIRE(4.0 > d);
    // nu column equals W at the point, and gpsi is the plain L_{1.5} norm
    bool saw_ok_row = false;
    for (const auto& row : t.rows) {
        if (row[0] != "gauss_std" || row[5] != "ok") continue;
        saw_ok_row = true;
        CHECK(std::stod(row[2]) ==
              doctest::Approx(w_coeff(0.5, 1, cfg.R, 1.5, 4.0)).epsilon(1e-10));
    }
    CHECK(saw_ok_row);
    const Grid grid = cfg.grid.make();
    const GridFunction f = sample(TestFunctionSpec::standard_gaussian(1), grid);
    const double gpsi =
        t.summary.at("per_function").at("gauss_std").at("gpsi").get<double>();
    CHECK(gpsi == doctest::Approx(lp_norm(f, 1.5)).epsilon(1e-12));
}

TEST_CASE("config: tabulated psi JSON form") {
    nlohmann::json j;
    j["kind"] = "tabulated";
    j["p"] = {1.0, 2.0, 3.0};
    j["values"] = {1.0, 1.5, 1.2};
    const GeneratingFunction gf = psi_from_json(j);
    CHECK(gf.kind == GeneratingFunction::Kind::tabulated);
    CHECK(psi_eval(gf, 1.5) == doctest::Approx(1.25));
}

TEST_CASE("run_young: different seed changes the emitted rows") {
    ExperimentConfig cfg = base_config("young");
    cfg.trials = 4;
    cfg.seed = 1;
    ExperimentConfig cfg2 = cfg;
    cfg2.seed = 2;
    CHECK(csv_of(run_young(cfg)) != csv_of(run_young(cfg2)));
}

TEST_CASE("run_converge: band-limited input gives near-zero error") {
    ExperimentConfig cfg;
    cfg.experiment = "converge";
    cfg.grid = GridConfig::defaults(1);
    cfg.grid_given = true;
    cfg.function = TestFunctionSpec::cosine_packet(2.0, 2.0);
    cfg.function_given = true;
    cfg.alpha = 0.0;
    cfg.alpha_given = true;
    cfg.R_list = {8.0, 12.0};
    cfg.p = 2.0;
    cfg.finalize();
    const Table t = run_converge(cfg);
    REQUIRE(t.rows.size() == 2);
    for (const auto& row : t.rows) {
        CHECK(std::stod(row[1]) <= 1e-6);  // err column
        CHECK(std::stod(row[2]) <= 3.0);   // ratio column
    }
    CHECK(t.summary.at("ratio_le_3").get<bool>());
}

TEST_CASE("run_uniform_converge: sup-norm variant on a band-limited input") {
    ExperimentConfig cfg;
    cfg.experiment = "uconverge";
    cfg.grid = GridConfig::defaults(1);
    cfg.grid_given = true;
    cfg.function = TestFunctionSpec::cosine_packet(2.0, 2.0);
    cfg.function_given = true;
    cfg.alpha = 0.0;
    cfg.alpha_given = true;
    cfg.R_list = {8.0, 12.0};
    cfg.finalize();
    const Table t = run_uniform_converge(cfg);
    for (const auto& row : t.rows) CHECK(std::stod(row[1]) <= 1e-6);
    CHECK(t.summary.at("ratio_le_3").get<bool>());
}

TEST_CASE("run_kernel_table: eval row at zero and rejected q rows") {
    ExperimentConfig cfg;
    cfg.experiment = "kernel";
    cfg.alpha = 0.5;
    cfg.alpha_given = true;
    cfg.z_list = {0.0, 1.0};
    cfg.q_list = {0.9, 2.0};  // q0 = 1 for alpha = 0.5, n = 2
    cfg.finalize();
    const Table t = run_kernel_table(cfg);
    const KernelSpec spec(0.5, 2, 1.0);
    CHECK(std::stod(t.rows[0][2]) == doctest::Approx(kernel_eval_radial(spec, 0.0)));
    bool found_rejected = false;
    for (const auto& row : t.rows)
        if (row[0] == "lq_norm" && row[4] == "rejected") {
            found_rejected = true;
            CHECK(row[5].find("infinite") != std::string::npos);
        }
    CHECK(found_rejected);
}

TEST_CASE("run_bounds: reason column on inadmissible rows") {
    ExperimentConfig cfg;
    cfg.experiment = "bounds";
    cfg.alpha = 0.0;
    cfg.alpha_given = true;
    cfg.p_list = {2.0};
    cfg.r_list = {4.0, 8.0};  // q(2,4) = q0 exactly; q(2,8) = 8/5 > 4/3 admissible
    cfg.finalize();
    const Table t = run_bounds(cfg);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][11] == "rejected");
    CHECK(!t.rows[0][12].empty());
    CHECK(t.rows[1][11] == "ok");
    CHECK(std::stod(t.rows[1][9]) ==
          doctest::Approx(w_coeff(0.0, 2, cfg.R, 2.0, 8.0)).epsilon(1e-12));
    const double emp = std::stod(t.rows[1][10]);
    CHECK(emp > 0.0);
    CHECK(emp == doctest::Approx(t.summary.at("max_emp_ratio").get<double>()));
}

TEST_CASE("run_lowerbound: summary meets theta on the default grids") {
    ExperimentConfig cfg;
    cfg.experiment = "lowerbound";
    cfg.alpha_grid = {0.5, 10.0, 8};
    cfg.R_grid = {1.0, 50.0, 8};
    cfg.finalize();
    const Table t = run_lowerbound(cfg);
    CHECK(t.summary.at("meets_theta").get<bool>());
    CHECK(t.summary.at("max_W").get<double>() >= t.summary.at("theta_reference").get<double>());
    CHECK(t.summary.at("on_R_boundary").get<bool>());
}

TEST_CASE("run_gaussian_limit: errors decrease along R") {
    ExperimentConfig cfg = base_config("gauss-limit");
    const Table t = run_gaussian_limit(cfg);
    CHECK(t.summary.at("strictly_decreasing").get<bool>());
    CHECK(t.summary.at("symbol_gap_R50").get<double>() <= 1e-3);
}

TEST_CASE("run_norms: lp rows plus gls row") {
    ExperimentConfig cfg = base_config("norms");
    const Table t = run_norms(cfg);
    REQUIRE(t.rows.size() == 4);  // p in {1, 2, inf} plus the gls row
    CHECK(t.rows[2][1] == "inf");
    CHECK(t.rows[3][0] == "gls");
}

TEST_CASE("run_norms: reads a GridFunction JSON input") {
    ExperimentConfig cfg = base_config("norms");
    const Grid grid = cfg.grid.make();
    const GridFunction f = sample(TestFunctionSpec::standard_gaussian(1), grid);
    const auto path = std::filesystem::temp_directory_path() / "briesz_norms_in.json";
    {
        std::ofstream os(path);
        write_grid_function(os, f);
    }
    cfg.in = path.string();
    const Table t = run_norms(cfg);
    CHECK(std::stod(t.rows[0][2]) == doctest::Approx(lp_norm(f, 1.0)).epsilon(1e-12));
    std::filesystem::remove(path);

    ExperimentConfig missing = base_config("norms");
    missing.in = "/nonexistent/briesz.json";
    CHECK_THROWS_AS(run_norms(missing), ConfigError);
}

TEST_CASE("CSV writer: quotes cells containing commas") {
    Table t;
    t.config_json = "{}";
    t.columns = {"a", "b"};
    t.rows.push_back({"plain", "needs, quoting"});
    const std::string csv = csv_of(t);
    CHECK(csv.find("\"needs, quoting\"") != std::string::npos);
}

TEST_CASE("atomic table writing produces the same bytes as the stream writer") {
    ExperimentConfig cfg = base_config("young");
    cfg.trials = 3;
    const Table t = run_young(cfg);
    const auto path = std::filesystem::temp_directory_path() / "briesz_test_table.csv";
    write_table_atomic(path, t, "csv");
    std::ifstream in(path);
    std::stringstream file_bytes;
    file_bytes << in.rdbuf();
    CHECK(file_bytes.str() == csv_of(t));
    std::filesystem::remove(path);
}
