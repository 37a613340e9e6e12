#pragma once
#include <optional>
#include <vector>

#include "otm/core.hpp"

namespace otm {

struct OptResult {
    double value = 0;   // exact optimum, or a certified lower bound on it
    bool exact = false;
    std::optional<ScheduleTrace> trace;  // present iff exact
    long long nodes_explored = 0;
};

// Completion time of one machine processing the given jobs greedily in
// release order (ties by id), waiting only for releases. Release-order
// greedy is optimal for a fixed assigned set, which is what reduces the
// offline optimum to a pure assignment search. Empty set -> 0.
double single_machine_makespan(std::vector<Job> jobs);

// max of r_j + p_j over jobs, and r + (work released at or after r) / m over
// every distinct release r.
double lower_bound(const Instance& inst);

// Branch and bound over job -> machine assignments. Job order: descending
// proc, ties by release then id. Symmetry breaking: a job may open machine
// k+1 only if machines 1..k are nonempty. If the node budget runs out the
// result carries a certified lower bound with exact = false and no trace.
OptResult exact_opt(const Instance& inst, long long node_budget = 10'000'000);

// Reference oracle: full m^n assignment enumeration, no pruning. Small n only.
double brute_force_opt(const Instance& inst);

struct RatioResult {
    double alg = 0;
    OptResult opt;
    double ratio_or_bound = 0;  // alg / opt.value; an upper bound when not certified
    bool certified = false;
};

RatioResult ratio(const Instance& inst, const PolicyParams& params,
                  long long node_budget = 10'000'000);

}  // namespace otm
