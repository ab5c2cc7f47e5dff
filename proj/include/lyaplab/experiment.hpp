#pragma once

#include "lyaplab/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace lyaplab {

// One extractable plot series: columns of a written CSV, by name.
struct PlotSpec {
    std::string csv;
    std::vector<std::string> columns;
};

struct ResultRecord {
    std::string digest;
    std::string kind;
    nlohmann::json summary;
    std::vector<std::string> csv_files; // relative to the record's out dir
    std::vector<PlotSpec> plots;
    bool verdict_pass = true;
    std::string error; // nonempty for failed sweep points
    std::filesystem::path outdir;
};

// Dispatches on config "kind", writes <kind>.csv rows plus results.json under
// outdir (and counterexamples/*.json for failed inequality checks), and
// returns the record. Throws ConfigError on invalid configs. Identical
// configs reproduce identical bytes; wall-clock goes to run.log only.
ResultRecord run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& outdir);

// Independent experiments over a parameter axis, one subdirectory per point.
// A failure in one point is recorded in its ResultRecord; the sweep always
// completes. Points run in parallel when requested (outputs are per-point,
// so the execution order cannot matter).
std::vector<ResultRecord> run_sweep(const ExperimentConfig& base, const std::string& axis_key,
                                    const std::vector<std::string>& values,
                                    const std::filesystem::path& outdir, bool parallel = true);

// Plot-ready column files plus a human-readable summary for a batch of
// records. Throws std::invalid_argument("NonemptyRequired") on empty input.
void emit_report(const std::vector<ResultRecord>& records,
                 const std::filesystem::path& outdir);

const std::vector<std::string>& experiment_kinds();

} // namespace lyaplab
