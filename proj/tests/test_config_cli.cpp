#include "lyaplab/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lyaplab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config: canonical text round-trips") {
    ExperimentConfig cfg;
    cfg.set("kind", "lyapunov");
    cfg.set("c_re", -2.0);
    cfg.set("n_max", 100L);
    ExperimentConfig back = ExperimentConfig::from_text(cfg.canonical());
    CHECK(back.entries() == cfg.entries());
    CHECK(back.digest() == cfg.digest());
}

TEST_CASE("config: digest is sensitive to every entry") {
    ExperimentConfig a;
    a.set("kind", "orbit");
    a.set("n", 100L);
    ExperimentConfig b = a;
    CHECK(a.digest() == b.digest());
    b.set("n", 101L);
    CHECK(a.digest() != b.digest());
}

TEST_CASE("config: file values override existing entries") {
    ExperimentConfig flags;
    flags.set("kind", "lyapunov");
    flags.set("n_max", 100L);
    ExperimentConfig file = ExperimentConfig::from_text("n_max = 777\n");
    flags.overlay(file);
    CHECK(flags.get_long("n_max") == 777);
    CHECK(flags.get_str("kind") == "lyapunov");
}

TEST_CASE("config: field-level diagnostics on bad values") {
    ExperimentConfig cfg = ExperimentConfig::from_text("alpha = banana\n");
    try {
        cfg.get_double("alpha");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "alpha");
    }
    CHECK_THROWS_AS(ExperimentConfig::from_text("not a pair\n"), ConfigError);
    ExperimentConfig bad_map = ExperimentConfig::from_text("family = poly\ndegree = 1\n");
    CHECK_THROWS_AS(bad_map.map(), ConfigError);
}

TEST_CASE("run_experiment: lyapunov summary and byte-identical reruns") {
    ExperimentConfig cfg;
    cfg.set("kind", "lyapunov");
    cfg.set("family", "poly");
    cfg.set("degree", 2L);
    cfg.set("c_re", -2.0);
    cfg.set("n_max", 200L);
    cfg.set("burn_in", 10L);

    fs::path dir_a = fresh_dir("lyaplab_rerun_a");
    fs::path dir_b = fresh_dir("lyaplab_rerun_b");
    ResultRecord rec_a = run_experiment(cfg, dir_a);
    ResultRecord rec_b = run_experiment(cfg, dir_b);
    CHECK(rec_a.digest == rec_b.digest);
    CHECK(rec_a.summary["chi_final"].get<double>() ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(slurp(dir_a / "lyapunov.csv") == slurp(dir_b / "lyapunov.csv"));
    CHECK(slurp(dir_a / "results.json") == slurp(dir_b / "results.json"));
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("run_experiment: cycle-detect summary for the superattracting 2-cycle") {
    ExperimentConfig cfg;
    cfg.set("kind", "cycle-detect");
    cfg.set("family", "poly");
    cfg.set("c_re", -1.0);
    fs::path dir = fresh_dir("lyaplab_cyc");
    ResultRecord rec = run_experiment(cfg, dir);
    CHECK(rec.summary["period"].get<int>() == 2);
    CHECK(rec.summary["multiplier_abs"].get<double>() < 1e-10);
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: pliss from a sequence file") {
    fs::path dir = fresh_dir("lyaplab_pliss");
    {
        std::ofstream seq(dir / "seq.csv");
        seq << "2\n0.5\n0.5\n";
    }
    ExperimentConfig cfg;
    cfg.set("kind", "pliss");
    cfg.set("input", (dir / "seq.csv").string());
    cfg.set("B", 2.0);
    cfg.set("b1", 0.5);
    cfg.set("b2", 1.0);
    ResultRecord rec = run_experiment(cfg, dir);
    CHECK(rec.summary["times"] == nlohmann::json({1, 2, 3}));
    CHECK(rec.summary["hypothesis_ok"].get<bool>());
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: unknown kind and invalid fields raise ConfigError") {
    fs::path dir = fresh_dir("lyaplab_invalid");
    ExperimentConfig cfg;
    cfg.set("kind", "nonsense");
    CHECK_THROWS_AS(run_experiment(cfg, dir), ConfigError);
    ExperimentConfig neg;
    neg.set("kind", "slowrec");
    neg.set("alpha", -1.0);
    CHECK_THROWS_AS(run_experiment(neg, dir), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("sweep: per-point isolation and a complete aggregate") {
    ExperimentConfig base;
    base.set("kind", "lyapunov");
    base.set("family", "poly");
    base.set("n_max", 100L);
    base.set("burn_in", 10L);
    fs::path dir = fresh_dir("lyaplab_sweep");
    std::vector<ResultRecord> records =
        run_sweep(base, "c_re", {"-2", "-1.5", "bogus", "0.2"}, dir, true);
    REQUIRE(records.size() == 4);
    CHECK(records[0].error.empty());
    CHECK(records[1].error.empty());
    CHECK(!records[2].error.empty()); // isolated failure
    CHECK(records[3].error.empty());
    CHECK(fs::exists(dir / "aggregate.csv"));
    CHECK(fs::exists(dir / "point_0000" / "lyapunov.csv"));
    fs::remove_all(dir);
}

TEST_CASE("sweep: empty axis yields an empty collection") {
    ExperimentConfig base;
    base.set("kind", "orbit");
    base.set("family", "poly");
    fs::path dir = fresh_dir("lyaplab_sweep_empty");
    std::vector<ResultRecord> records = run_sweep(base, "c_re", {}, dir, false);
    CHECK(records.empty());
    CHECK(fs::exists(dir / "aggregate.csv")); // header-only table
    fs::remove_all(dir);
}

TEST_CASE("sweep: a single point matches the wrapped experiment") {
    ExperimentConfig base;
    base.set("kind", "lyapunov");
    base.set("family", "poly");
    base.set("n_max", 100L);
    base.set("burn_in", 10L);
    fs::path dir = fresh_dir("lyaplab_sweep_one");
    std::vector<ResultRecord> records = run_sweep(base, "c_re", {"-2"}, dir, false);
    REQUIRE(records.size() == 1);

    ExperimentConfig direct = base;
    direct.set("c_re", "-2");
    ResultRecord wrapped = run_experiment(direct, dir / "direct");
    CHECK(records[0].digest == wrapped.digest);
    CHECK(slurp(dir / "point_0000" / "lyapunov.csv") == slurp(dir / "direct" / "lyapunov.csv"));
    fs::remove_all(dir);
}

TEST_CASE("emit_report: plot files from records, empty input rejected") {
    ExperimentConfig cfg;
    cfg.set("kind", "lyapunov");
    cfg.set("family", "poly");
    cfg.set("c_re", -2.0);
    cfg.set("n_max", 50L);
    cfg.set("burn_in", 5L);
    fs::path dir = fresh_dir("lyaplab_report");
    ResultRecord rec = run_experiment(cfg, dir);
    emit_report({rec}, dir);
    CHECK(fs::exists(dir / "report.txt"));
    CHECK(fs::exists(dir / "plot_0000_lyapunov.dat"));
    {
        std::string plot = slurp(dir / "plot_0000_lyapunov.dat");
        CHECK(plot.find(' ') != std::string::npos); // two columns
    }
    CHECK_THROWS_AS(emit_report({}, dir), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("experiment kinds cover every CLI subcommand") {
    const std::vector<std::string>& kinds = experiment_kinds();
    for (const char* want :
         {"orbit", "cycle-detect", "lyapunov", "backward", "slowrec", "pliss", "hyptimes",
          "shadows", "density-report", "return-bound", "close-return", "fredholm", "area-scan",
          "porosity"}) {
        bool found = false;
        for (const std::string& k : kinds)
            if (k == want) found = true;
        CHECK(found);
    }
}
