#pragma once
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "otm/core.hpp"
#include "otm/opt.hpp"

namespace otm {

// Exit codes shared by every subcommand.
inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_PARSE = 2;     // unreadable / unparseable input
inline constexpr int EXIT_SEMANTIC = 3;  // well-formed but contract-violating

struct RunOpts {
    std::string instance_file;
    std::string policy = "lpt";  // lpt | sleepy2 | gsleepy-static | gsleepy-dynamic
    std::optional<double> alpha, lambda;  // explicit overrides
    std::string out;  // trace file; empty = don't write
};

struct GenOpts {
    std::string family = "one-one-two";  // one-one-two | case1 | case2 | random
    int m = 2;
    double eps = 1e-6;
    double alpha = 0.1;  // case2
    std::uint64_t seed = 1;
    int n = 6;
    double span = 1.0;
    std::string dist = "uniform";  // uniform | geometric | two-class
    double lo = 0.1, hi = 1.0, ratio = 0.8;
    double small = 0.1, large = 1.0, fraction = 0.5;
    std::string out;  // empty = stdout
};

struct OptOpts {
    std::string instance_file;
    long long node_budget = 10'000'000;
    std::string out;  // optimal trace file
};

struct StressOpts {
    std::vector<std::string> policies;  // empty = every policy applicable at m
    int m = 2;
    int n = 6;  // max random-instance size
    int trials = 100;
    std::uint64_t seed = 1;
    long long node_budget = 10'000'000;
    bool lower_bound_only = false;
    double eps = 1e-6;
    int threads = 0;  // 0 = pick from hardware
    std::string out_log;
};

struct PolicyStats {
    std::string policy;
    int trials = 0;
    int certified = 0;
    double worst_ratio = 0;       // over certified rows
    int worst_trial = -1;
    double worst_uncertified = 0;  // upper bounds only, when budget ran out
};

struct StressReport {
    int trials = 0;
    double worst_ratio = 0;  // worst certified ratio across policies
    Instance worst_instance;
    int certified_count = 0;
    std::vector<PolicyStats> per_policy;
};

struct AnalyzeOpts {
    std::string trace_file;
    std::optional<double> gamma;  // default: target_gamma(m)
    std::string instance_file;    // optional override / cross-check
    std::string opt_trace_file;   // enables the left-over check
    std::string out;              // empty = stdout
};

struct PlotOpts {
    std::string curve = "f_case2";
    std::string range = "0:0.1:1e-4";  // lo:hi:step
    int m = 6;          // for the alpha marker
    bool scan_m3 = false;
    std::string alpha_range = "0:0.25";
    std::string gamma_range = "0.3:0.6";
    int steps = 100;
    std::string out;  // empty = stdout
};

struct CondOpts {
    int m = 4;
    std::string alpha;  // exact rational string; empty = recommended
    std::string gamma;
    bool scan = false;
    std::string alpha_range = "0:0.25";
    std::string gamma_range = "0.3:0.6";
    int steps = 100;
    std::string out;
};

int cmd_run(const RunOpts& o, std::ostream& out, std::ostream& err);
int cmd_gen(const GenOpts& o, std::ostream& out, std::ostream& err);
int cmd_opt(const OptOpts& o, std::ostream& out, std::ostream& err);
int cmd_stress(const StressOpts& o, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOpts& o, std::ostream& out, std::ostream& err);
int cmd_plotdata(const PlotOpts& o, std::ostream& out, std::ostream& err);
int cmd_conditions(const CondOpts& o, std::ostream& out, std::ostream& err);

// The testable core of `stress`: runs the trials deterministically (worker
// pool, per-trial seeding) and returns the report; log rows, if requested,
// come back sorted by trial index.
StressReport run_stress(const StressOpts& o, std::vector<std::string>* log_rows);

// argv[1..] -> exit code. The binary's main() is a one-liner around this.
int dispatch(const std::vector<std::string>& args,
             std::ostream& out, std::ostream& err);

}  // namespace otm
