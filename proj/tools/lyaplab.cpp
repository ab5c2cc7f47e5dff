#include "lyaplab/csvio.hpp"
#include "lyaplab/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>

namespace {

using lyaplab::ConfigError;
using lyaplab::ExperimentConfig;

// CLI flags mirror config keys one-to-one (dashes map to underscores);
// a --config file, when given, overrides flag values.
struct SubcommandState {
    ExperimentConfig config;
    std::string config_file;
    std::string out_dir = "out";
    std::string map_spec;   // poly:d:c_re:c_im | exp:a_re:a_im
    std::string point_spec; // re[,im]
    std::string t_spec;     // re[,im]
    bool report = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

void apply_map_spec(ExperimentConfig& cfg, const std::string& spec) {
    std::vector<std::string> parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("map", "empty map spec");
    if (parts[0] == "poly") {
        cfg.set("family", "poly");
        if (parts.size() > 1) cfg.set("degree", parts[1]);
        if (parts.size() > 2) cfg.set("c_re", parts[2]);
        if (parts.size() > 3) cfg.set("c_im", parts[3]);
    } else if (parts[0] == "exp") {
        cfg.set("family", "exp");
        if (parts.size() > 1) cfg.set("a_re", parts[1]);
        if (parts.size() > 2) cfg.set("a_im", parts[2]);
    } else {
        throw ConfigError("map", "expected poly:... or exp:..., got '" + spec + "'");
    }
}

void apply_point_spec(ExperimentConfig& cfg, const std::string& spec, const std::string& re_key,
                      const std::string& im_key) {
    std::vector<std::string> parts = split(spec, ',');
    if (parts.empty() || parts.size() > 2)
        throw ConfigError(re_key, "expected 're' or 're,im', got '" + spec + "'");
    cfg.set(re_key, parts[0]);
    if (parts.size() > 1) cfg.set(im_key, parts[1]);
}

void key_option(CLI::App* cmd, SubcommandState& state, const std::string& flag,
                const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&state, key](const std::string& value) { state.config.set(key, value); }, help);
}

void add_common(CLI::App* cmd, SubcommandState& state) {
    cmd->add_option("--config", state.config_file, "config file (key = value); overrides flags");
    cmd->add_option("--out", state.out_dir, "output directory");
    cmd->add_option("--map", state.map_spec, "map: poly:d:c_re:c_im or exp:a_re:a_im");
    key_option(cmd, state, "--family", "family", "poly | exp");
    key_option(cmd, state, "--degree", "degree", "polynomial degree d >= 2");
    key_option(cmd, state, "--c-re", "c_re", "Re c");
    key_option(cmd, state, "--c-im", "c_im", "Im c");
    key_option(cmd, state, "--a-re", "a_re", "Re a");
    key_option(cmd, state, "--a-im", "a_im", "Im a");
    key_option(cmd, state, "--parallel", "parallel", "1 (default) or 0 for the serial path");
    cmd->add_flag("--report", state.report, "also emit plot files and report.txt");
}

void run_and_print(SubcommandState& state, const std::string& kind) {
    state.config.set("kind", kind);
    if (!state.map_spec.empty()) apply_map_spec(state.config, state.map_spec);
    if (!state.point_spec.empty()) apply_point_spec(state.config, state.point_spec, "z_re", "z_im");
    if (!state.t_spec.empty()) apply_point_spec(state.config, state.t_spec, "t_re", "t_im");
    if (!state.config_file.empty())
        state.config.overlay(ExperimentConfig::from_file(state.config_file));

    lyaplab::ResultRecord rec = lyaplab::run_experiment(state.config, state.out_dir);
    if (state.report) lyaplab::emit_report({rec}, state.out_dir);
    std::cout << "kind: " << rec.kind << "\ndigest: " << rec.digest
              << "\nverdict: " << (rec.verdict_pass ? "pass" : "fail")
              << "\nsummary: " << rec.summary.dump(2)
              << "\nresults: " << (rec.outdir / "results.json").string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for unicritical polynomial and exponential dynamics"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<SubcommandState>> states;
    auto subcommand = [&](const std::string& name, const std::string& help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        states.push_back(std::make_unique<SubcommandState>());
        SubcommandState* state = states.back().get();
        add_common(cmd, *state);
        cmd->callback([state, name]() { run_and_print(*state, name); });
        return std::make_pair(cmd, state);
    };

    {
        auto [cmd, state] = subcommand("orbit", "iterate a point and dump the trace");
        cmd->add_option("--point", state->point_spec, "start point re[,im]");
        key_option(cmd, *state, "--n", "n", "steps");
    }
    {
        auto [cmd, state] =
            subcommand("cycle-detect", "detect an attracting cycle of the marked orbit");
        key_option(cmd, *state, "--max-period", "max_period", "largest period scanned");
        key_option(cmd, *state, "--max-iter", "max_iter", "iteration budget");
        key_option(cmd, *state, "--tol", "tol", "classification tolerance");
    }
    {
        auto [cmd, state] = subcommand("lyapunov", "forward exponent series of a point");
        cmd->add_option("--point", state->point_spec, "start point re[,im] (default: marked)");
        key_option(cmd, *state, "--n-max", "n_max", "series length");
        key_option(cmd, *state, "--burn-in", "burn_in", "window start for the lower exponent");
    }
    {
        auto [cmd, state] = subcommand("backward", "backward orbit of 0 with a branch policy");
        key_option(cmd, *state, "--policy", "policy", "fixed | random | minderiv");
        key_option(cmd, *state, "--angle-index", "angle_index", "k for the fixed policy");
        key_option(cmd, *state, "--seed", "seed", "seed for the random policy");
        key_option(cmd, *state, "--n-max", "n_max", "depth");
    }
    {
        auto [cmd, state] = subcommand("slowrec", "slow-recurrence classifier");
        cmd->add_option("--point", state->point_spec, "start point re[,im]");
        key_option(cmd, *state, "--alpha", "alpha", "recurrence rate");
        key_option(cmd, *state, "--horizon", "horizon", "steps checked");
        key_option(cmd, *state, "--burn-in", "burn_in", "violations at or below are ignored");
        key_option(cmd, *state, "--reference", "reference", "point (0) or value (c)");
    }
    {
        auto [cmd, state] = subcommand("pliss", "Pliss-time extraction from a sequence");
        key_option(cmd, *state, "--input", "input", "CSV of values, or - for stdin");
        key_option(cmd, *state, "--B", "B", "upper bound on the terms");
        key_option(cmd, *state, "--b1", "b1", "lower rate");
        key_option(cmd, *state, "--b2", "b2", "mean rate");
    }
    {
        auto [cmd, state] = subcommand("hyptimes", "lambda-hyperbolic times of an orbit");
        cmd->add_option("--point", state->point_spec, "start point re[,im]");
        key_option(cmd, *state, "--lambda", "lambda", "expansion rate > 1");
        key_option(cmd, *state, "--m-max", "m_max", "horizon");
    }
    {
        auto [cmd, state] = subcommand("shadows", "shadow intervals and A(N,K) membership");
        cmd->add_option("--point", state->point_spec, "start point re[,im]");
        key_option(cmd, *state, "--K", "K", "shadow length factor");
        key_option(cmd, *state, "--N", "N", "coverage bound");
        key_option(cmd, *state, "--m", "m", "horizon");
    }
    {
        auto [cmd, state] =
            subcommand("density-report", "hyperbolic-time density with criticality counts");
        cmd->add_option("--point", state->point_spec, "start point re[,im]");
        key_option(cmd, *state, "--lambda", "lambda", "base rate > 1");
        key_option(cmd, *state, "--eps0", "eps0", "exponent margin");
        key_option(cmd, *state, "--eps", "eps", "splitting (default eps0/8)");
        key_option(cmd, *state, "--m", "m", "horizon");
        key_option(cmd, *state, "--rho", "rho", "criticality radius");
        key_option(cmd, *state, "--N", "N", "override the derived N");
    }
    {
        auto [cmd, state] = subcommand("return-bound", "first-entry derivative bound campaign");
        key_option(cmd, *state, "--target", "target", "marked | zero");
        key_option(cmd, *state, "--delta", "delta", "entry radius");
        key_option(cmd, *state, "--lambda", "lambda", "rate > 1");
        key_option(cmd, *state, "--events", "events", "events to harvest");
        key_option(cmd, *state, "--n-max-search", "n_max_search", "orbit budget per event");
        key_option(cmd, *state, "--seed", "seed", "root seed");
        key_option(cmd, *state, "--region", "region", "segment | disk");
        key_option(cmd, *state, "--region-lo", "region_lo", "segment start");
        key_option(cmd, *state, "--region-hi", "region_hi", "segment end");
        key_option(cmd, *state, "--region-radius", "region_radius", "disk radius");
    }
    {
        auto [cmd, state] = subcommand("close-return", "closest-return derivative bound campaign");
        key_option(cmd, *state, "--delta0", "delta0", "return radius");
        key_option(cmd, *state, "--lambda", "lambda", "rate > 1");
        key_option(cmd, *state, "--samples", "samples", "orbits sampled");
        key_option(cmd, *state, "--orbit-length", "orbit_length", "steps per orbit");
        key_option(cmd, *state, "--seed", "seed", "root seed");
        key_option(cmd, *state, "--region", "region", "segment | disk");
        key_option(cmd, *state, "--region-lo", "region_lo", "segment start");
        key_option(cmd, *state, "--region-hi", "region_hi", "segment end");
    }
    {
        auto [cmd, state] = subcommand("fredholm", "Fredholm series evaluation / zero scan");
        cmd->add_option("--t", state->t_spec, "evaluation point re[,im]");
        key_option(cmd, *state, "--n-cut", "n_cut", "truncation order");
        key_option(cmd, *state, "--grid", "grid", "zero-scan grid size (0 = single point)");
        key_option(cmd, *state, "--t-max", "t_max", "zero-scan disk radius");
    }
    {
        auto [cmd, state] = subcommand("area-scan", "Monte-Carlo area fractions of E_n");
        key_option(cmd, *state, "--alpha", "alpha", "decay rate");
        key_option(cmd, *state, "--n", "n_list", "comma-separated n values");
        key_option(cmd, *state, "--window-re", "window_re", "window center Re");
        key_option(cmd, *state, "--window-im", "window_im", "window center Im");
        key_option(cmd, *state, "--window-radius", "window_radius", "window radius");
        key_option(cmd, *state, "--samples", "samples", "sample count");
        key_option(cmd, *state, "--seed", "seed", "root seed");
    }
    {
        auto [cmd, state] = subcommand("porosity", "Julia-free hole probe at dyadic scales");
        cmd->add_option("--point", state->point_spec, "probe center re[,im]");
        key_option(cmd, *state, "--j", "j_list", "comma-separated scales j");
        key_option(cmd, *state, "--grid", "grid", "samples per axis (forced odd)");
        key_option(cmd, *state, "--escape-budget", "escape_budget", "indicator budget");
    }

    // sweep: one experiment kind over a parameter axis
    {
        CLI::App* cmd = app.add_subcommand("sweep", "run an experiment over a parameter grid");
        states.push_back(std::make_unique<SubcommandState>());
        SubcommandState* state = states.back().get();
        add_common(cmd, *state);
        auto inner_kind = std::make_shared<std::string>();
        auto param = std::make_shared<std::string>();
        auto values = std::make_shared<std::string>();
        auto from = std::make_shared<double>(0.0);
        auto to = std::make_shared<double>(0.0);
        auto steps = std::make_shared<long>(0);
        cmd->add_option("--kind", *inner_kind, "experiment kind to sweep")->required();
        cmd->add_option("--param", *param, "config key to vary")->required();
        cmd->add_option_function<std::vector<std::string>>(
            "--set",
            [state](const std::vector<std::string>& pairs) {
                for (const std::string& kv : pairs) {
                    std::size_t eq = kv.find('=');
                    if (eq == std::string::npos)
                        throw ConfigError("set", "expected key=value, got '" + kv + "'");
                    state->config.set(kv.substr(0, eq), kv.substr(eq + 1));
                }
            },
            "base config entry key=value (repeatable)");
        cmd->add_option("--values", *values, "comma-separated values");
        cmd->add_option("--from", *from, "numeric axis start");
        cmd->add_option("--to", *to, "numeric axis end");
        cmd->add_option("--steps", *steps, "numeric axis point count");
        cmd->callback([state, inner_kind, param, values, from, to, steps]() {
            state->config.set("kind", *inner_kind);
            if (!state->map_spec.empty()) apply_map_spec(state->config, state->map_spec);
            if (!state->config_file.empty())
                state->config.overlay(ExperimentConfig::from_file(state->config_file));

            std::vector<std::string> axis;
            if (!values->empty()) {
                axis = split(*values, ',');
            } else if (*steps > 0) {
                for (long i = 0; i < *steps; ++i) {
                    double x = *steps == 1 ? *from
                                           : *from + (*to - *from) * static_cast<double>(i) /
                                                         static_cast<double>(*steps - 1);
                    axis.push_back(lyaplab::format_double(x));
                }
            }
            auto records = lyaplab::run_sweep(state->config, *param, axis, state->out_dir,
                                              state->config.get_bool_or("parallel", true));
            if (!records.empty()) lyaplab::emit_report(records, state->out_dir);
            long errors = 0;
            for (const auto& r : records)
                if (!r.error.empty()) ++errors;
            std::cout << "points: " << records.size() << "\nerrors: " << errors << "\naggregate: "
                      << (std::filesystem::path(state->out_dir) / "aggregate.csv").string()
                      << "\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
