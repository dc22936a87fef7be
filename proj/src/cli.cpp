#include "bcfrac/cli.hpp"

#include "bcfrac/closed_forms.hpp"
#include "bcfrac/errors.hpp"
#include "bcfrac/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>

namespace bcfrac::cli {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

int verify(const std::string& config_path, const std::string& preset, int levels, const std::string& out_dir,
           unsigned jobs, bool no_timing, std::ostream& out) {
    ExperimentConfig config =
        preset.empty() ? load_config(config_path) : parse_config(find_preset(preset).json, "preset " + preset);
    if (!out_dir.empty()) config.output = out_dir;

    const SuiteSummary s = run_suite(config, levels, jobs);
    emit_report(s, config.output, {.timing = !no_timing});

    for (const auto& o : s.outcomes) {
        const auto& last = o.study.reports.back();
        out << (o.pass ? "PASS " : "FAIL ") << o.identity << "  residual " << fmt(last.residual.max(), "%.3e")
            << "  tolerance " << fmt(o.tolerance, "%.1e");
        if (o.study.order) out << "  order " << fmt(*o.study.order, "%.2f");
        if (o.study.saturated) out << "  (exact to rounding)";
        out << "\n";
    }
    out << "reports written to " << config.output << "\n";
    return s.pass() ? kPass : kToleranceFailed;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bicomplex proportional fractional Cauchy-Riemann calculus: identity verification"};
    app.require_subcommand(1);

    auto* verify_cmd = app.add_subcommand("verify", "run the identities of a configuration and write CSV reports");
    std::string config_path, preset, out_dir;
    int levels = 0;
    unsigned jobs = 1;
    bool no_timing = false;
    auto* config_opt = verify_cmd->add_option("--config", config_path, "JSON configuration file");
    auto* preset_opt = verify_cmd->add_option("--preset", preset, "built-in preset (see list-presets)");
    config_opt->excludes(preset_opt);
    verify_cmd->add_option("--levels", levels, "refinement levels (overrides the config)")->check(CLI::Range(1, 8));
    verify_cmd->add_option("--out", out_dir, "output directory (overrides the config)");
    verify_cmd->add_option("--jobs", jobs, "identities evaluated in parallel")->check(CLI::Range(1u, 256u));
    verify_cmd->add_flag("--no-timing", no_timing, "write 0 in the seconds column");

    auto* list_cmd = app.add_subcommand("list-presets", "list the built-in presets");
    auto* show_cmd = app.add_subcommand("show-preset", "print a preset as a JSON configuration");
    std::string show_name;
    show_cmd->add_option("name", show_name)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "evaluate a one-dimensional closed form");
    oracle_cmd->require_subcommand(1);
    std::vector<double> args;
    struct OracleOp {
        const char* name;
        const char* help;
        std::size_t arity;
    };
    const OracleOp ops[] = {
        {"rl-power", "ALPHA BETA A T: RL integral of (s-a)^(beta-1)", 4},
        {"prop-eigen", "ALPHA BETA SIGMA PHI_T PHI_A: proportional integral of exp(c phi)(phi-phi(a))^(beta-1)", 5},
        {"rl-const-derivative", "ALPHA A T: RL derivative of 1", 3},
        {"rl-const-integral", "ALPHA A T: RL integral of 1", 3},
    };
    std::vector<CLI::App*> op_cmds;
    for (const auto& op : ops) {
        auto* c = oracle_cmd->add_subcommand(op.name, op.help);
        c->add_option("args", args)->required()->expected(static_cast<int>(op.arity));
        op_cmds.push_back(c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kUsageError;
    }

    try {
        if (*verify_cmd) {
            if (config_path.empty() && preset.empty()) {
                err << "verify: one of --config or --preset is required\n";
                return kUsageError;
            }
            return verify(config_path, preset, levels, out_dir, jobs, no_timing, out);
        }
        if (*list_cmd) {
            for (const auto& p : presets()) out << p.name << "  " << p.description << "\n";
            return kPass;
        }
        if (*show_cmd) {
            out << find_preset(show_name).json << "\n";
            return kPass;
        }
        for (std::size_t i = 0; i < op_cmds.size(); ++i) {
            if (!*op_cmds[i]) continue;
            const auto& a = args;
            double v = 0.0;
            switch (i) {
            case 0: v = closed::rl_power_integral(a[0], a[1], a[2], a[3]); break;
            case 1: v = closed::prop_eigen_integral(a[0], a[1], a[2], a[3], a[4]); break;
            case 2: v = closed::rl_const_derivative(a[0], a[1], a[2]); break;
            default: v = closed::rl_const_integral(a[0], a[1], a[2]); break;
            }
            out << fmt(v) << "\n";
            return kPass;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kUsageError;
}

} // namespace bcfrac::cli
