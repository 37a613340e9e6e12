#pragma once
#include <queue>
#include <vector>

#include "otm/core.hpp"

namespace otm {

// Per-machine view the simulator maintains. A machine can be busy and locked
// at the same time. busy_job / lock_setter keep the last responsible job so
// start reasons can be attributed; they are never cleared, only overwritten.
struct MachineState {
    double busy_until = 0;  // completion of the last started job; 0 if never used
    int busy_job = -1;      // job whose completion equals busy_until
    double lock_until = 0;  // expiry of the strongest lock seen so far
    int lock_setter = -1;   // job whose lock expires last
};

// Min-heap of decision epochs (releases, completions, lock expiries).
// pop_epoch() drains everything within TAU/2 of the earliest entry and
// returns the cluster maximum, so a job released inside the cluster still
// satisfies s_j >= r_j when it starts at the merged epoch. The half radius
// keeps events deliberately placed TAU apart on separate epochs.
class EventQueue {
   public:
    void push(double t) { heap_.push(t); }
    bool empty() const { return heap_.empty(); }
    double pop_epoch();

   private:
    std::priority_queue<double, std::vector<double>, std::greater<double>> heap_;
};

// alpha_j = lambda^(-s/p) * alpha. Always <= alpha since lambda >= 1, s >= 0.
double alpha_of(const PolicyParams& params, double s, double p);

// Classifies a start at time t on a machine in the given pre-start state.
// Immediate requires t ~ r_j and no recently binding constraint; otherwise the
// later of the busy/lock constraints wins, ties going to Locked.
StartReason classify_start(const MachineState& machine, const Job& job, double t);

// Runs the policy on the instance: at every decision epoch, while an idle
// machine and a pending job coexist, the longest pending job (ties: earlier
// release, then lower id) starts on the lowest-index idle machine, and its
// lock is applied to all machines before the next start is considered.
ScheduleTrace simulate(const Instance& inst, const PolicyParams& params);

}  // namespace otm
