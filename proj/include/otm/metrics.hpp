#pragma once
#include <string>
#include <vector>

#include "otm/core.hpp"

namespace otm {

struct IntervalReport {
    double t1 = 0, t2 = 0;
    double busy_work = 0;      // P: total busy machine-time in [t1, t2)
    double waste = 0;          // W: non-busy machine-time while a job pends
    double extended_work = 0;  // P-hat: full sizes of jobs started in the window
                               // plus post-t1 remainders of straddlers
};

struct BoundCheck {
    double lhs = 0;
    double rhs = 0;
    bool ok = false;
};

// Chain of locked starts traced backwards from the last job, plus the jobs
// running when the chain's root started. gamma_prime discounts gamma by the
// lock lengths the chain accumulated. theta_plus is the end of the final
// interval before s_n in which some machine sat idle (informational).
struct ChainReport {
    std::vector<int> chain;        // n_1 (last job) .. n_k (first non-locked)
    double chain_alpha_max = 0;    // largest alpha_j on the chain
    std::vector<int> critical_jobs;
    std::vector<int> early;        // critical jobs with s_j <  r_{n_1}
    std::vector<int> late;         // critical jobs with s_j >= r_{n_1}
    double gamma_prime = 0;
    double theta_plus = 0;
};

struct DiagnosisItem {
    std::string what;
    bool checked = false;  // false when a guard made the item inapplicable
    bool ok = true;
    double lhs = 0;
    double rhs = 0;
};

struct DiagnosisReport {
    bool triggered = false;
    double ratio = 0;
    std::vector<DiagnosisItem> items;
    std::string summary;
};

double busy_work(const ScheduleTrace& trace, double t1, double t2);
double waste(const ScheduleTrace& trace, double t1, double t2);
double extended_work(const ScheduleTrace& trace, double t1, double t2);

IntervalReport make_interval_report(const ScheduleTrace& trace, double t1, double t2);

// W(t1,t2) <= (m-1) * alpha * P-hat(t1,t2), alpha being the policy base value.
BoundCheck check_waste_bound(const ScheduleTrace& trace, double t1, double t2);

// P_opt(0,t) - P_alg(0,t) <= m*t/4 + W_alg(0,t), checked at every breakpoint
// of either trace up to t. The returned lhs/rhs belong to the worst
// breakpoint; ok means no breakpoint violated the inequality.
BoundCheck check_leftover(const ScheduleTrace& alg_trace,
                          const ScheduleTrace& opt_trace, double t);

ChainReport extract_chain(const ScheduleTrace& trace, double gamma);

// When makespan > (1 + gamma) * opt_value, re-checks the structural facts any
// genuine hard trace must satisfy; a violated item points at a bug in the
// engine or the analysis rather than at a real counterexample.
DiagnosisReport diagnose_counterexample(const ScheduleTrace& alg_trace,
                                        double opt_value, double gamma);

}  // namespace otm
