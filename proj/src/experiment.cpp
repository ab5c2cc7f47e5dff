#include "lyaplab/experiment.hpp"

#include "lyaplab/areascan.hpp"
#include "lyaplab/backward.hpp"
#include "lyaplab/campaign.hpp"
#include "lyaplab/criticality.hpp"
#include "lyaplab/csvio.hpp"
#include "lyaplab/cycle.hpp"
#include "lyaplab/exponent.hpp"
#include "lyaplab/fredholm.hpp"
#include "lyaplab/hyperbolic.hpp"
#include "lyaplab/pliss.hpp"
#include "lyaplab/porosity.hpp"
#include "lyaplab/recurrence.hpp"
#include "lyaplab/returnlab.hpp"
#include "lyaplab/shadow.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lyaplab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx config_point(const ExperimentConfig& cfg, const std::string& re_key,
                  const std::string& im_key, cplx fallback) {
    return cplx{cfg.get_double_or(re_key, fallback.real()),
                cfg.get_double_or(im_key, fallback.imag())};
}

SampleRegion config_region(const ExperimentConfig& cfg) {
    const std::string kind = cfg.get_str_or("region", "segment");
    if (kind == "segment")
        return SampleRegion::segment(cfg.get_double_or("region_lo", -2.0),
                                     cfg.get_double_or("region_hi", 2.0));
    if (kind == "disk")
        return SampleRegion::disk(config_point(cfg, "region_re", "region_im", cplx{0.0, 0.0}),
                                  cfg.get_double_or("region_radius", 2.0));
    throw ConfigError("region", "expected segment or disk, got '" + kind + "'");
}

void write_artifacts(const std::vector<FailureArtifact>& artifacts, const fs::path& outdir,
                     ResultRecord& rec) {
    long written = write_failure_artifacts(artifacts, outdir);
    if (written > 0) rec.summary["counterexamples"] = written;
}

// Caveat for results conditioned on "no attracting cycle": numerically
// only non-detection within a budget can be asserted.
std::string sink_caveat(const MapSpec& map) {
    CycleSearchResult sink = detect_attracting_cycle(map, 64, 20000, 1e-9);
    if (sink.status == CycleSearchStatus::Found)
        return "attracting cycle detected (period " + std::to_string(sink.cycle->period) +
               "): hypothesis of the no-sink statements fails";
    if (sink.status == CycleSearchStatus::Ambiguous)
        return "indifferent cycle suspected: no-sink hypothesis unresolved";
    return "no attracting cycle detected within budget 20000; claims conditional on this";
}

void run_orbit(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const long n = cfg.get_long_or("n", 100);
    if (n < 0) throw ConfigError("n", "must be >= 0");

    OrbitTrace trace = iterate(map, z0, n);
    write_orbit_csv(trace, (outdir / "orbit.csv").string());
    rec.csv_files.push_back("orbit.csv");
    rec.plots.push_back({"orbit.csv", {"k", "re", "im"}});
    rec.summary["length"] = trace.length();
    rec.summary["S_final"] = trace.cum_logderiv.back();
    if (trace.escaped_at) rec.summary["escaped_at"] = *trace.escaped_at;
    if (trace.hit_critical_at) rec.summary["hit_critical_at"] = *trace.hit_critical_at;
}

void run_cycle_detect(const ExperimentConfig& cfg, const fs::path&, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    CycleSearchResult res =
        detect_attracting_cycle(map, static_cast<int>(cfg.get_long_or("max_period", 64)),
                                cfg.get_long_or("max_iter", 100000),
                                cfg.get_double_or("tol", 1e-9));
    switch (res.status) {
    case CycleSearchStatus::Found: {
        json pts = json::array();
        for (const cplx& p : res.cycle->points) pts.push_back(cplx_json(p));
        rec.summary["period"] = res.cycle->period;
        rec.summary["points"] = pts;
        rec.summary["multiplier"] = cplx_json(res.cycle->multiplier);
        rec.summary["multiplier_abs"] = std::abs(res.cycle->multiplier);
        rec.summary["residual"] = res.cycle->residual;
        break;
    }
    case CycleSearchStatus::Ambiguous:
        rec.summary["none"] = true;
        rec.summary["ambiguous"] = true;
        rec.summary["multiplier_abs"] = std::abs(res.cycle->multiplier);
        break;
    case CycleSearchStatus::None:
        rec.summary["none"] = true;
        rec.summary["escaped"] = res.escaped;
        break;
    }
    rec.summary["iterations_used"] = res.iterations_used;
}

void run_lyapunov(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const long n_max = cfg.get_long_or("n_max", 10000);
    if (n_max < 1) throw ConfigError("n_max", "must be >= 1");
    const long burn_in = cfg.get_long_or("burn_in", std::max<long>(1, n_max / 10));
    if (burn_in < 1 || burn_in >= n_max) throw ConfigError("burn_in", "need 1 <= burn_in < n_max");

    ExponentEstimate est = forward_exponent_series(map, z0, n_max);
    CsvWriter w((outdir / "lyapunov.csv").string());
    w.header({"n", "chi_n", "running_inf", "running_sup"});
    for (std::size_t n = 1; n <= est.horizon(); ++n)
        w.row({CsvWriter::cell(static_cast<long>(n)), CsvWriter::cell(est.chi_at(n)),
               CsvWriter::cell(est.inf_tail[n - 1]), CsvWriter::cell(est.sup_tail[n - 1])});
    rec.csv_files.push_back("lyapunov.csv");
    rec.plots.push_back({"lyapunov.csv", {"n", "chi_n"}});

    rec.summary["verdict"] = verdict_name(est.verdict);
    if (est.horizon() > 0) {
        rec.summary["chi_final"] = est.chi.back();
        rec.summary["tail_mean"] = est.tail_mean();
    }
    if (static_cast<long>(est.horizon()) >= burn_in) {
        double lo = std::numeric_limits<double>::infinity();
        for (long n = burn_in; n <= static_cast<long>(est.horizon()); ++n)
            lo = std::min(lo, est.chi_at(static_cast<std::size_t>(n)));
        rec.summary["lower_exponent"] = lo;
    }
}

void run_backward(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const long n_max = cfg.get_long_or("n_max", 40);
    const std::string policy_name = cfg.get_str_or("policy", "fixed");
    BranchPolicy policy;
    if (policy_name == "fixed")
        policy = BranchPolicy::fixed_angle(static_cast<int>(cfg.get_long_or("angle_index", 0)));
    else if (policy_name == "random")
        policy = BranchPolicy::random_seeded(cfg.get_seed_or("seed", 1));
    else if (policy_name == "minderiv")
        policy = BranchPolicy::min_derivative();
    else
        throw ConfigError("policy", "expected fixed|random|minderiv, got '" + policy_name + "'");

    BackwardOrbit orbit = backward_orbit(map, policy, n_max);
    CsvWriter w((outdir / "backward.csv").string());
    w.header({"n", "re", "im", "S_n", "chi_n"});
    for (std::size_t n = 0; n < orbit.points.size(); ++n)
        w.row({CsvWriter::cell(static_cast<long>(n)), CsvWriter::cell(orbit.points[n].real()),
               CsvWriter::cell(orbit.points[n].imag()), CsvWriter::cell(orbit.cum_logderiv[n]),
               CsvWriter::cell(n > 0 ? orbit.chi(n) : 0.0)});
    rec.csv_files.push_back("backward.csv");
    rec.plots.push_back({"backward.csv", {"n", "chi_n"}});

    rec.summary["status"] =
        orbit.status == BackwardStatus::Completed ? "completed" : "branch_point_hit";
    if (orbit.status == BackwardStatus::BranchPointHit) {
        rec.summary["hit_step"] = orbit.hit_step;
        rec.verdict_pass = false;
    } else if (orbit.depth() > 0) {
        rec.summary["chi_final"] = orbit.chi(orbit.depth());
    }
}

void run_slowrec(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const double alpha = cfg.get_double_or("alpha", 0.1);
    if (!(alpha > 0.0)) throw ConfigError("alpha", "must be > 0");
    const long horizon = cfg.get_long_or("horizon", 10000);
    const long burn_in = cfg.get_long_or("burn_in", 0);
    const std::string ref_name = cfg.get_str_or("reference", "point");
    RecurrenceReference ref;
    if (ref_name == "point")
        ref = RecurrenceReference::CriticalPoint;
    else if (ref_name == "value")
        ref = RecurrenceReference::CriticalValue;
    else
        throw ConfigError("reference", "expected point or value, got '" + ref_name + "'");

    RecurrenceReport rep = slow_recurrence_test(map, z0, alpha, horizon, ref, burn_in);

    const cplx target = ref == RecurrenceReference::CriticalPoint
                            ? cplx{0.0, 0.0}
                            : (map.is_poly() ? map.c : cplx{0.0, 0.0});
    OrbitTrace trace = iterate(map, z0, horizon);
    CsvWriter w((outdir / "slowrec.csv").string());
    w.header({"n", "dist", "threshold", "violated"});
    for (std::size_t n = 1; n < trace.points.size(); ++n) {
        double dist = std::abs(trace.points[n] - target);
        double thr = std::exp(-alpha * static_cast<double>(n));
        w.row({CsvWriter::cell(static_cast<long>(n)), CsvWriter::cell(dist),
               CsvWriter::cell(thr), CsvWriter::cell(static_cast<long>(dist < thr ? 1 : 0))});
    }
    rec.csv_files.push_back("slowrec.csv");
    rec.plots.push_back({"slowrec.csv", {"n", "dist", "threshold"}});

    rec.summary["violations"] = rep.violations;
    rec.summary["slowly_recurrent"] = rep.slowly_recurrent;
    if (rep.escaped_at) rec.summary["escaped_at"] = *rep.escaped_at;
    rec.verdict_pass = rep.slowly_recurrent;
}

std::vector<double> read_sequence(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) throw ConfigError("input", "cannot open '" + path + "'");
        in = &file;
    }
    std::vector<double> seq;
    std::string line;
    while (std::getline(*in, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t a = cell.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            seq.push_back(std::stod(cell));
        }
    }
    if (seq.empty()) throw ConfigError("input", "no values in sequence");
    return seq;
}

void run_pliss(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    PlissInput input;
    input.a = read_sequence(cfg.get_str_or("input", "-"));
    input.B = cfg.get_double_or("B", 1.0);
    input.b1 = cfg.get_double_or("b1", 0.25);
    input.b2 = cfg.get_double_or("b2", 0.5);
    if (!(0.0 < input.b1 && input.b1 < input.b2 && input.b2 <= input.B))
        throw ConfigError("b1", "need 0 < b1 < b2 <= B");

    PlissResult res = pliss_times(input);
    CsvWriter w((outdir / "pliss.csv").string());
    w.header({"j", "time"});
    for (std::size_t j = 0; j < res.times.size(); ++j)
        w.row({CsvWriter::cell(static_cast<long>(j)), CsvWriter::cell(res.times[j])});
    rec.csv_files.push_back("pliss.csv");

    rec.summary["count"] = static_cast<long>(res.times.size());
    rec.summary["theta"] = res.theta;
    rec.summary["hypothesis_ok"] = res.hypothesis_ok;
    rec.summary["guarantee"] = static_cast<double>(res.times.size()) >
                               res.theta * static_cast<double>(input.a.size());
    rec.summary["times"] = res.times;
}

void run_hyptimes(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const double lambda = cfg.get_double_or("lambda", 1.5);
    if (!(lambda > 1.0)) throw ConfigError("lambda", "must be > 1");
    const long m_max = cfg.get_long_or("m_max", 1000);

    OrbitTrace trace = iterate(map, z0, m_max);
    if (static_cast<long>(trace.horizon()) < m_max)
        throw ConfigError("m_max", "orbit escaped before m_max");
    HyperbolicTimeSet set = hyperbolic_times(trace, lambda, m_max);

    CsvWriter w((outdir / "hyptimes.csv").string());
    w.header({"n", "is_hyperbolic"});
    std::vector<char> is_hyp(static_cast<std::size_t>(m_max), 0);
    for (long t : set.times) is_hyp[static_cast<std::size_t>(t - 1)] = 1;
    for (long n = 1; n <= m_max; ++n)
        w.row({CsvWriter::cell(n),
               CsvWriter::cell(static_cast<long>(is_hyp[static_cast<std::size_t>(n - 1)]))});
    rec.csv_files.push_back("hyptimes.csv");
    rec.plots.push_back({"hyptimes.csv", {"n", "is_hyperbolic"}});

    rec.summary["count"] = static_cast<long>(set.times.size());
    rec.summary["density"] = set.density;
    rec.summary["minus_inf"] = set.status == HypTimesStatus::MinusInfinityInWindow;
    rec.verdict_pass = set.status == HypTimesStatus::Ok;
}

void run_shadows(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    if (!map.is_poly()) throw ConfigError("family", "shadow machinery is polynomial-only");
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const double K = cfg.get_double_or("K", 1.0);
    if (!(K > 0.0)) throw ConfigError("K", "must be > 0");
    const int N = static_cast<int>(cfg.get_long_or("N", 3));
    const long m = cfg.get_long_or("m", 1000);

    OrbitTrace trace = iterate(map, z0, m);
    ShadowTable table = shadow_table(trace, K, N);

    CsvWriter w((outdir / "shadows.csv").string());
    w.header({"n", "cover_count", "in_A"});
    for (long n = 1; n <= table.m(); ++n)
        w.row({CsvWriter::cell(n), CsvWriter::cell(table.cover_count[static_cast<std::size_t>(n - 1)]),
               CsvWriter::cell(static_cast<long>(table.in_A[static_cast<std::size_t>(n - 1)]))});
    rec.csv_files.push_back("shadows.csv");
    rec.plots.push_back({"shadows.csv", {"n", "cover_count"}});

    rec.summary["density_A"] = table.density_A;
    rec.summary["c_g_fit"] = table.c_g_fit;
    rec.summary["coverage_bound_ok"] = table.coverage_bound_ok;
    if (table.hit_critical) rec.summary["hit_critical"] = *table.hit_critical;
    rec.verdict_pass = table.coverage_bound_ok;
}

void run_density_report(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    if (!map.is_poly()) throw ConfigError("family", "density report is polynomial-only");
    const cplx z0 = config_point(cfg, "z_re", "z_im", marked_point(map));
    const double lambda = cfg.get_double_or("lambda", 1.5);
    const double eps0 = cfg.get_double_or("eps0", 0.1);
    const long m = cfg.get_long_or("m", 1000);
    DensityReportParams params;
    params.eps = cfg.get_double_or("eps", -1.0);
    params.rho = cfg.get_double_or("rho", 0.05);
    params.N_override = static_cast<int>(cfg.get_long_or("N", -1));
    params.with_criticality = cfg.get_bool_or("criticality", true);

    DensityReport rep = hyperbolic_density_report(map, z0, lambda, eps0, m, params);
    rec.summary["hypothesis_ok"] = rep.hypothesis_ok;
    rec.summary["chi_m"] = rep.chi_m;
    if (!rep.hypothesis_ok) {
        rec.summary["note"] = "HypothesisFails: no density guarantee claimed";
        rec.verdict_pass = false;
        return;
    }

    CsvWriter w((outdir / "density.csv").string());
    w.header({"n", "is_hyperbolic", "shadow_cover_count", "in_A", "criticality_count"});
    for (long n = 1; n <= rep.m; ++n)
        w.row({CsvWriter::cell(n),
               CsvWriter::cell(static_cast<long>(rep.is_hyp[static_cast<std::size_t>(n - 1)])),
               CsvWriter::cell(rep.cover_count[static_cast<std::size_t>(n - 1)]),
               CsvWriter::cell(static_cast<long>(rep.in_A[static_cast<std::size_t>(n - 1)])),
               CsvWriter::cell(rep.crit_count.empty()
                                   ? 0L
                                   : rep.crit_count[static_cast<std::size_t>(n - 1)])});
    rec.csv_files.push_back("density.csv");
    rec.plots.push_back({"density.csv", {"n", "is_hyperbolic", "in_A"}});

    rec.summary["theta"] = rep.theta;
    rec.summary["K0"] = rep.K0;
    rec.summary["N"] = rep.N;
    rec.summary["c_g_fit"] = rep.c_g_fit;
    rec.summary["rho"] = rep.rho;
    rec.summary["hyp_density"] = rep.hyp_density;
    rec.summary["A_density"] = rep.A_density;
    rec.summary["H_density"] = rep.H_density;
    rec.summary["violations"] = rep.violations;
    rec.verdict_pass = rep.violations.empty();
}

void run_return_bound(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    ReturnCampaignParams params;
    params.map = cfg.map();
    const std::string target = cfg.get_str_or("target", "marked");
    if (target == "marked")
        params.target = marked_point(params.map);
    else if (target == "zero")
        params.target = cplx{0.0, 0.0};
    else
        throw ConfigError("target", "expected marked or zero, got '" + target + "'");
    params.delta = cfg.get_double_or("delta", 1e-2);
    if (!(params.delta > 0.0)) throw ConfigError("delta", "must be > 0");
    params.lambda = cfg.get_double_or("lambda", 1.05);
    if (!(params.lambda > 1.0)) throw ConfigError("lambda", "must be > 1");
    params.n_events = cfg.get_long_or("events", 10000);
    params.n_max_search = cfg.get_long_or("n_max_search", 20000);
    params.seed = cfg.get_seed_or("seed", 1);
    params.region = config_region(cfg);

    ReturnCampaignResult res = run_return_campaign(params, cfg.get_bool_or("parallel", true));
    CsvWriter w((outdir / "return_bound.csv").string());
    w.header({"events", "passes", "failures", "no_event", "min_slack"});
    w.row({CsvWriter::cell(res.events), CsvWriter::cell(res.passes),
           CsvWriter::cell(res.failures), CsvWriter::cell(res.no_event),
           CsvWriter::cell(res.min_slack)});
    rec.csv_files.push_back("return_bound.csv");

    rec.summary["events"] = res.events;
    rec.summary["passes"] = res.passes;
    rec.summary["failures"] = res.failures;
    rec.summary["no_event"] = res.no_event;
    rec.summary["min_slack"] = res.min_slack;
    rec.summary["caveat"] = sink_caveat(params.map);
    rec.verdict_pass = res.failures == 0;
    write_artifacts(res.artifacts, outdir, rec);
}

void run_close_return(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    CloseReturnCampaignParams params;
    params.map = cfg.map();
    params.delta0 = cfg.get_double_or("delta0", 0.05);
    if (!(params.delta0 > 0.0)) throw ConfigError("delta0", "must be > 0");
    params.lambda = cfg.get_double_or("lambda", 1.05);
    if (!(params.lambda > 1.0)) throw ConfigError("lambda", "must be > 1");
    params.n_samples = cfg.get_long_or("samples", 1000);
    params.orbit_length = cfg.get_long_or("orbit_length", 1000);
    params.seed = cfg.get_seed_or("seed", 1);
    params.region = config_region(cfg);

    CloseReturnCampaignResult res =
        run_close_return_campaign(params, cfg.get_bool_or("parallel", true));
    CsvWriter w((outdir / "close_return.csv").string());
    w.header({"checks", "passes", "failures", "min_slack"});
    w.row({CsvWriter::cell(res.checks), CsvWriter::cell(res.passes),
           CsvWriter::cell(res.failures), CsvWriter::cell(res.min_slack)});
    rec.csv_files.push_back("close_return.csv");

    rec.summary["checks"] = res.checks;
    rec.summary["passes"] = res.passes;
    rec.summary["failures"] = res.failures;
    rec.summary["min_slack"] = res.min_slack;
    rec.summary["caveat"] = sink_caveat(params.map);
    rec.verdict_pass = res.failures == 0;
    write_artifacts(res.artifacts, outdir, rec);
}

void run_fredholm(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    if (!map.is_poly()) throw ConfigError("family", "fredholm series is polynomial-only");
    const long n_cut = cfg.get_long_or("n_cut", 60);
    const long grid = cfg.get_long_or("grid", 0);

    rec.summary["caveat"] = sink_caveat(map);
    if (grid > 0) {
        const double t_max = cfg.get_double_or("t_max", 0.95);
        if (!(t_max > 0.0 && t_max < 1.0)) throw ConfigError("t_max", "need 0 < t_max < 1");
        FredholmScan scan = fredholm_zero_scan(map, t_max, grid, n_cut);
        CsvWriter w((outdir / "fredholm.csv").string());
        w.header({"min_abs", "argmin_re", "argmin_im", "grid_points"});
        w.row({CsvWriter::cell(scan.min_abs), CsvWriter::cell(scan.argmin_t.real()),
               CsvWriter::cell(scan.argmin_t.imag()), CsvWriter::cell(scan.grid_points)});
        rec.csv_files.push_back("fredholm.csv");
        rec.summary["min_abs"] = scan.min_abs;
        rec.summary["argmin"] = cplx_json(scan.argmin_t);
        rec.summary["all_tails_valid"] = scan.all_tails_valid;
        rec.summary["zero_found"] = scan.min_abs <= 0.0;
        rec.verdict_pass = scan.min_abs > 0.0;
        return;
    }

    const cplx t = config_point(cfg, "t_re", "t_im", cplx{0.5, 0.0});
    if (!(std::abs(t) < 1.0)) throw ConfigError("t_re", "need |t| < 1");
    FredholmResult res = fredholm_eval(map, t, n_cut);
    if (res.status == FredholmStatus::CoefficientBlowup) {
        rec.summary["error"] = "CoefficientBlowup";
        rec.summary["blowup_index"] = res.blowup_index;
        rec.verdict_pass = false;
        return;
    }
    rec.summary["value"] = cplx_json(res.eval.value);
    rec.summary["abs"] = std::abs(res.eval.value);
    rec.summary["tail_bound"] = res.eval.tail_bound;
    rec.summary["tail_valid"] = res.eval.tail_valid;
    rec.summary["env_A"] = res.eval.env_A;
    rec.summary["env_q"] = res.eval.env_q;
}

void run_area_scan(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const double alpha = cfg.get_double_or("alpha", 0.1);
    if (!(alpha > 0.0)) throw ConfigError("alpha", "must be > 0");
    std::vector<long> n_list = cfg.has("n_list") ? cfg.get_long_list("n_list")
                                                 : std::vector<long>{20, 30, 40, 50};
    Disk window{config_point(cfg, "window_re", "window_im", cplx{0.0, 0.0}),
                cfg.get_double_or("window_radius", 2.5)};
    const long samples = cfg.get_long_or("samples", 100000);
    const std::uint64_t seed = cfg.get_seed_or("seed", 7);
    for (long n : n_list)
        if (n < area_scan_n_min(alpha, window))
            throw ConfigError("n_list", "n below n_min(alpha, window)");

    AreaScan scan =
        area_scan_En(map, alpha, n_list, window, samples, seed, cfg.get_bool_or("parallel", true));
    CsvWriter w((outdir / "area_scan.csv").string());
    w.header({"n", "hits", "fraction", "eps_return", "min_return", "return_events", "k_emp"});
    for (std::size_t i = 0; i < scan.n_values.size(); ++i)
        w.row({CsvWriter::cell(scan.n_values[i]), CsvWriter::cell(scan.hits[i]),
               CsvWriter::cell(scan.fractions[i]), CsvWriter::cell(scan.return_stats[i].eps),
               CsvWriter::cell(scan.return_stats[i].min_return),
               CsvWriter::cell(scan.return_stats[i].events),
               CsvWriter::cell(scan.return_stats[i].k_emp)});
    rec.csv_files.push_back("area_scan.csv");
    rec.plots.push_back({"area_scan.csv", {"n", "fraction"}});

    rec.summary["fractions"] = scan.fractions;
    rec.summary["hits"] = scan.hits;
    bool nonincreasing = true;
    for (std::size_t i = 1; i < scan.fractions.size(); ++i)
        if (scan.fractions[i] > scan.fractions[i - 1]) nonincreasing = false;
    rec.summary["nonincreasing"] = nonincreasing;
    rec.verdict_pass = nonincreasing;
}

void run_porosity(const ExperimentConfig& cfg, const fs::path& outdir, ResultRecord& rec) {
    const MapSpec map = cfg.map();
    const cplx z0 = config_point(cfg, "z_re", "z_im", cplx{1.0, 0.0});
    std::vector<long> j_list =
        cfg.has("j_list") ? cfg.get_long_list("j_list") : std::vector<long>{2, 3, 4, 5};
    const long grid = cfg.get_long_or("grid", 65);
    const long budget = cfg.get_long_or("escape_budget", 200);

    PorosityProbe probe =
        porosity_probe(map, z0, j_list, grid, budget, cfg.get_bool_or("parallel", true));
    CsvWriter w((outdir / "porosity.csv").string());
    w.header({"j", "hole_radius_rel"});
    for (std::size_t i = 0; i < probe.j_values.size(); ++i)
        w.row({CsvWriter::cell(probe.j_values[i]), CsvWriter::cell(probe.hole_radii[i])});
    rec.csv_files.push_back("porosity.csv");
    rec.plots.push_back({"porosity.csv", {"j", "hole_radius_rel"}});

    rec.summary["hole_radii"] = probe.hole_radii;
    rec.summary["low_resolution"] = probe.low_resolution;
}

using Handler = void (*)(const ExperimentConfig&, const fs::path&, ResultRecord&);

struct KindEntry {
    const char* name;
    Handler handler;
};

constexpr KindEntry kKinds[] = {
    {"orbit", run_orbit},
    {"cycle-detect", run_cycle_detect},
    {"lyapunov", run_lyapunov},
    {"backward", run_backward},
    {"slowrec", run_slowrec},
    {"pliss", run_pliss},
    {"hyptimes", run_hyptimes},
    {"shadows", run_shadows},
    {"density-report", run_density_report},
    {"return-bound", run_return_bound},
    {"close-return", run_close_return},
    {"fredholm", run_fredholm},
    {"area-scan", run_area_scan},
    {"porosity", run_porosity},
};

} // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = [] {
        std::vector<std::string> v;
        for (const KindEntry& e : kKinds) v.emplace_back(e.name);
        return v;
    }();
    return kinds;
}

ResultRecord run_experiment(const ExperimentConfig& config, const fs::path& outdir) {
    const std::string kind = config.get_str("kind");
    Handler handler = nullptr;
    for (const KindEntry& e : kKinds)
        if (kind == e.name) handler = e.handler;
    if (!handler) throw ConfigError("kind", "unknown experiment kind '" + kind + "'");

    fs::create_directories(outdir);
    ResultRecord rec;
    rec.kind = kind;
    rec.digest = config.digest();
    rec.outdir = outdir;

    const auto t0 = std::chrono::steady_clock::now();
    handler(config, outdir, rec);
    const auto t1 = std::chrono::steady_clock::now();

    json out{{"schema_version", 1},
             {"digest", rec.digest},
             {"kind", kind},
             {"config", config.entries()},
             {"summary", rec.summary},
             {"verdict", rec.verdict_pass ? "pass" : "fail"},
             {"csv_files", rec.csv_files}};
    std::ofstream results(outdir / "results.json", std::ios::binary);
    results << out.dump(2) << '\n';

    // wall time lives only in the sidecar log, outside the reproducibility contract
    std::ofstream log(outdir / "run.log", std::ios::app);
    log << kind << " digest=" << rec.digest << " ms="
        << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << '\n';
    return rec;
}

std::vector<ResultRecord> run_sweep(const ExperimentConfig& base, const std::string& axis_key,
                                    const std::vector<std::string>& values,
                                    const fs::path& outdir, bool parallel) {
    const long n = static_cast<long>(values.size());
    std::vector<ResultRecord> records(static_cast<std::size_t>(n));
    fs::create_directories(outdir);

    auto body = [&](long i) {
        char name[32];
        std::snprintf(name, sizeof(name), "point_%04ld", i);
        fs::path point_dir = outdir / name;
        ExperimentConfig cfg = base;
        cfg.set(axis_key, values[static_cast<std::size_t>(i)]);
        ResultRecord& rec = records[static_cast<std::size_t>(i)];
        try {
            rec = run_experiment(cfg, point_dir);
        } catch (const std::exception& e) {
            rec.kind = cfg.get_str_or("kind", "?");
            rec.digest = cfg.digest();
            rec.outdir = point_dir;
            rec.verdict_pass = false;
            rec.error = e.what();
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) body(i);
    } else {
        for (long i = 0; i < n; ++i) body(i);
    }

    CsvWriter w((outdir / "aggregate.csv").string());
    w.header({"point", "value", "ok", "digest", "verdict"});
    for (long i = 0; i < n; ++i) {
        const ResultRecord& rec = records[static_cast<std::size_t>(i)];
        w.row({CsvWriter::cell(i), values[static_cast<std::size_t>(i)],
               CsvWriter::cell(static_cast<long>(rec.error.empty() ? 1 : 0)), rec.digest,
               rec.error.empty() ? (rec.verdict_pass ? "pass" : "fail") : "error"});
    }
    return records;
}

void emit_report(const std::vector<ResultRecord>& records, const fs::path& outdir) {
    if (records.empty()) throw std::invalid_argument("NonemptyRequired: no records to report");
    fs::create_directories(outdir);

    std::ofstream report(outdir / "report.txt", std::ios::binary);
    long idx = 0;
    for (const ResultRecord& rec : records) {
        report << idx << " kind=" << rec.kind << " digest=" << rec.digest << " verdict="
               << (rec.error.empty() ? (rec.verdict_pass ? "pass" : "fail") : "error");
        if (!rec.error.empty()) report << " error=" << rec.error;
        report << '\n';

        for (const PlotSpec& plot : rec.plots) {
            std::ifstream csv(rec.outdir / plot.csv);
            if (!csv) continue;
            std::string line;
            if (!std::getline(csv, line)) continue;
            // resolve requested columns in the header
            std::vector<std::string> header;
            std::stringstream hs(line);
            std::string cell;
            while (std::getline(hs, cell, ',')) header.push_back(cell);
            std::vector<std::size_t> cols;
            for (const std::string& want : plot.columns)
                for (std::size_t c = 0; c < header.size(); ++c)
                    if (header[c] == want) cols.push_back(c);
            if (cols.size() != plot.columns.size()) continue;

            char name[64];
            std::snprintf(name, sizeof(name), "plot_%04ld_%s.dat", idx, rec.kind.c_str());
            std::ofstream plot_out(outdir / name, std::ios::binary);
            while (std::getline(csv, line)) {
                std::vector<std::string> cells;
                std::stringstream ls(line);
                while (std::getline(ls, cell, ',')) cells.push_back(cell);
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    if (k) plot_out << ' ';
                    if (cols[k] < cells.size()) plot_out << cells[cols[k]];
                }
                plot_out << '\n';
            }
        }
        ++idx;
    }
}

} // namespace lyaplab
