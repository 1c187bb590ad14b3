#pragma once

#include "briesz/field.hpp"
#include "briesz/gls.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace briesz {

struct GridConfig {
    int dim = 1;
    std::vector<double> half_extent;
    std::vector<int> points;

    Grid make() const;
    /// Default boxes: n=1 -> L=16, M=1024; n=2 -> L=8, M=256 per axis;
    /// n=3 -> L=6, M=64 per axis. Test functions used by the experiments
    /// decay below 1e-12 at these boundaries.
    static GridConfig defaults(int dim);
};

struct LinearGrid {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;
    std::vector<double> values() const;
};

/// Full description of one batch experiment. Everything that affects the
/// emitted rows is carried here; the output sink (out/format) is not part of
/// the reported config header.
struct ExperimentConfig {
    std::string experiment;
    GridConfig grid;
    double alpha = 0.5;
    double R = 4.0;
    std::vector<double> R_list;
    double p = 2.0;
    double r = 4.0;
    std::vector<double> p_list;
    std::vector<double> r_list;
    std::vector<double> q_list;
    std::vector<double> z_list;
    GeneratingFunction psi = GeneratingFunction::power(2.0);
    TestFunctionSpec function = TestFunctionSpec::standard_gaussian(1);
    int trials = 200;
    std::uint64_t seed = 1;
    int p_samples = 48;
    int directions = 8;
    LinearGrid alpha_grid{0.5, 20.0, 40};
    LinearGrid R_grid{1.0, 100.0, 50};
    std::string in;  // optional GridFunction JSON input (norms)
    std::string out;
    std::string format = "csv";

    bool grid_given = false;
    bool function_given = false;
    bool alpha_given = false;
    bool R_given = false;
    bool psi_given = false;

    /// Fills unset members with the per-experiment defaults and validates
    /// against module preconditions (throws ConfigError).
    void finalize();
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
GeneratingFunction psi_from_json(const nlohmann::json& j);
GeneratingFunction psi_from_string(const std::string& spec);  // "power:m=2" etc.
TestFunctionSpec function_from_json(const nlohmann::json& j);

/// Report emitted by a runner: column-named rows plus a summary object,
/// all cells preformatted so emission is byte-stable.
struct Table {
    std::string config_json;  // one-line JSON header
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json summary = nlohmann::json::object();
};

Table run_converge(const ExperimentConfig& cfg);
Table run_uniform_converge(const ExperimentConfig& cfg);
Table run_young(const ExperimentConfig& cfg);
Table run_gls(const ExperimentConfig& cfg);
Table run_gaussian_limit(const ExperimentConfig& cfg);
Table run_kernel_table(const ExperimentConfig& cfg);
Table run_bounds(const ExperimentConfig& cfg);
Table run_lowerbound(const ExperimentConfig& cfg);
Table run_norms(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment.
Table run_experiment(const ExperimentConfig& cfg);

void write_table_csv(std::ostream& os, const Table& t);
void write_table_json(std::ostream& os, const Table& t);
/// Temp-file + rename; format is "csv" or "json".
void write_table_atomic(const std::filesystem::path& path, const Table& t,
                        const std::string& format);

/// Fixed-format numeric cell ("%.12g"; "inf"/"nan" spelled out).
std::string fmt_cell(double v);

} // namespace briesz
