// briesz: batch experiment runner for the Bochner-Riesz toolkit.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical guard
// (Nyquist / admissibility), 1 anything else.

#include "briesz/errors.hpp"
#include "briesz/experiments.hpp"
#include "briesz/field.hpp"
#include "briesz/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string format;
    std::string psi;
    std::vector<double> R;
    std::optional<double> alpha;
    std::optional<double> p;
    std::optional<double> r;
    std::optional<int> dim;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path, "Full ExperimentConfig JSON file");
    sub->add_option("--out", flags.out, "Output path (stdout when omitted)");
    sub->add_option("--format", flags.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", flags.seed, "Seed for randomized trials");
    sub->add_option("--alpha", flags.alpha, "Multiplier order alpha");
    sub->add_option("--dim", flags.dim, "Dimension n (1..3); selects the default grid");
    sub->add_option("--R", flags.R, "Dilation R (repeat for an R list)");
    sub->add_option("--p", flags.p, "Lebesgue exponent p");
    sub->add_option("--r", flags.r, "Target exponent r");
    sub->add_option("--psi", flags.psi,
                    "Generating function: power:m=2 | iwsb:a=1,b=3,alpha=1,beta=0 | point:r=2");
    sub->add_option("--trials", flags.trials, "Randomized trial count");
}

briesz::ExperimentConfig build_config(const std::string& experiment, const CommonFlags& flags) {
    briesz::ExperimentConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw briesz::ConfigError("cannot open config file " + flags.config_path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw briesz::ConfigError(std::string("config JSON: ") + e.what());
        }
        cfg = briesz::config_from_json(doc);
    }
    cfg.experiment = experiment;
    if (flags.alpha) {
        cfg.alpha = *flags.alpha;
        cfg.alpha_given = true;
    }
    if (flags.dim) {
        cfg.grid = briesz::GridConfig::defaults(*flags.dim);
        cfg.grid_given = true;
    }
    if (flags.R.size() == 1) {
        cfg.R = flags.R.front();
        cfg.R_given = true;
    } else if (flags.R.size() > 1) {
        cfg.R_list = flags.R;
    }
    if (flags.p) cfg.p = *flags.p;
    if (flags.r) cfg.r = *flags.r;
    if (!flags.psi.empty()) {
        cfg.psi = briesz::psi_from_string(flags.psi);
        cfg.psi_given = true;
    }
    if (flags.trials) cfg.trials = *flags.trials;
    if (flags.seed) cfg.seed = *flags.seed;
    if (!flags.out.empty()) cfg.out = flags.out;
    if (!flags.format.empty()) cfg.format = flags.format;
    cfg.finalize();
    return cfg;
}

void emit(const briesz::Table& table, const briesz::ExperimentConfig& cfg) {
    if (cfg.out.empty()) {
        if (cfg.format == "json")
            briesz::write_table_json(std::cout, table);
        else
            briesz::write_table_csv(std::cout, table);
    } else {
        briesz::write_table_atomic(cfg.out, table, cfg.format);
    }
}

int run_apply(const std::string& in_path, const std::string& function_json,
              const CommonFlags& flags) {
    briesz::ExperimentConfig cfg;
    cfg.experiment = "norms";  // reuse grid defaults/validation
    if (flags.dim) {
        cfg.grid = briesz::GridConfig::defaults(*flags.dim);
        cfg.grid_given = true;
    }
    const double alpha = flags.alpha.value_or(0.5);
    const double R = flags.R.empty() ? 4.0 : flags.R.front();

    std::optional<briesz::GridFunction> f;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw briesz::ConfigError("cannot open input " + in_path);
        f = briesz::read_grid_function(in);
    } else {
        if (function_json.empty())
            throw briesz::ConfigError("apply: need --in <file> or --function <json>");
        cfg.finalize();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(function_json);
        } catch (const nlohmann::json::exception& e) {
            throw briesz::ConfigError(std::string("apply: bad --function JSON: ") + e.what());
        }
        f = briesz::sample(briesz::function_from_json(doc), cfg.grid.make());
    }
    const briesz::GridFunction out = briesz::bochner_riesz_spectral(*f, alpha, R);
    if (flags.out.empty()) {
        briesz::write_grid_function(std::cout, out);
    } else {
        const std::string tmp = flags.out + ".tmp";
        {
            std::ofstream os(tmp);
            if (!os) throw std::runtime_error("cannot open " + flags.out);
            briesz::write_grid_function(os, out);
        }
        std::filesystem::rename(tmp, flags.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bochner-Riesz operator toolkit: kernels, norms, bounds, convergence"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> table_cmds = {
        {"kernel", "Tabulate kernel values and Lq norms"},
        {"norms", "Lp and Grand Lebesgue norms of a test function"},
        {"young", "Sharp Young inequality trials and Gaussian equality checks"},
        {"converge", "Lp convergence of the approximation as R grows"},
        {"uconverge", "Uniform-norm convergence as R grows"},
        {"gls", "Grand Lebesgue transfer ratios"},
        {"gauss-limit", "Gaussian-limit operator against the closed form"},
        {"bounds", "W coefficient table over (p, r)"},
        {"lowerbound", "Grid search for the lower-bound coefficient"},
    };

    std::map<std::string, CommonFlags> flags;
    std::string norms_in;
    for (const auto& [name, desc] : table_cmds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common(sub, flags[name]);
        if (name == "norms")
            sub->add_option("--in", norms_in, "GridFunction JSON file to take norms of");
    }

    CommonFlags apply_flags;
    std::string apply_in, apply_function;
    CLI::App* apply = app.add_subcommand("apply", "Apply the operator to a sampled function");
    add_common(apply, apply_flags);
    apply->add_option("--in", apply_in, "Input GridFunction JSON file");
    apply->add_option("--function", apply_function, "Inline test-function JSON spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (apply->parsed()) return run_apply(apply_in, apply_function, apply_flags);
        for (const auto& [name, desc] : table_cmds) {
            if (app.get_subcommand(name)->parsed()) {
                auto cfg = build_config(name, flags[name]);
                if (name == "norms" && !norms_in.empty()) cfg.in = norms_in;
                emit(briesz::run_experiment(cfg), cfg);
                return 0;
            }
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const briesz::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const briesz::GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
