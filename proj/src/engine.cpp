#include "otm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otm {

double EventQueue::pop_epoch() {
    double t = heap_.top();
    heap_.pop();
    // Drain the whole coincidence cluster; the canonical epoch time is the
    // cluster max so releases merged into the epoch never start "early". The
    // merge radius is half of TAU: clusters only need to absorb ulp-scale
    // accumulation noise, while features placed exactly TAU apart (a release
    // nudged eps = 1e-9 after a lock expiry, say) must keep their order even
    // when rounding pulls the computed gap a few ulps under TAU.
    while (!heap_.empty() && heap_.top() <= t + TAU / 2) {
        t = std::max(t, heap_.top());
        heap_.pop();
    }
    return t;
}

double alpha_of(const PolicyParams& params, double s, double p) {
    if (!(p > 0)) throw std::invalid_argument("alpha_of: processing time must be > 0");
    if (s < 0) throw std::invalid_argument("alpha_of: start time must be >= 0");
    if (params.lambda == 1.0 || params.alpha == 0.0) return params.alpha;
    return std::pow(params.lambda, -s / p) * params.alpha;
}

StartReason classify_start(const MachineState& machine, const Job& job, double t) {
    // On a fresh machine both constraints sit at 0, which the numeric test
    // below cannot tell apart from a constraint that just expired at t = 0;
    // the job ids disambiguate.
    bool fresh = machine.busy_job < 0 && machine.lock_setter < 0;
    double constraint = std::max(machine.busy_until, machine.lock_until);
    if (t <= job.release + TAU && (fresh || constraint < t - TAU))
        return {StartReason::Immediate, -1};
    // Whichever constraint released later explains the delay. A tie goes to
    // Locked: a release coinciding with an unlock counts as a locked start.
    if (machine.lock_setter >= 0 && machine.lock_until >= machine.busy_until - TAU)
        return {StartReason::Locked, machine.lock_setter};
    if (machine.busy_job >= 0) return {StartReason::Pushed, machine.busy_job};
    return {StartReason::Immediate, -1};  // nothing to attribute the delay to
}

ScheduleTrace simulate(const Instance& inst, const PolicyParams& params) {
    {
        auto violations = validate_instance(inst);
        if (!violations.empty())
            throw std::invalid_argument("simulate: invalid instance: " + violations.front());
        if (inst.jobs.empty()) throw std::invalid_argument("simulate: no jobs");
        if (params.alpha < 0 || params.lambda < 1)
            throw std::invalid_argument("simulate: invalid policy parameters");
    }

    const int m = inst.m;
    const int n = static_cast<int>(inst.jobs.size());

    std::vector<MachineState> mach(m);

    // Jobs indexed by release order for admission into the pending pool.
    std::vector<int> by_release(n);
    std::iota(by_release.begin(), by_release.end(), 0);
    std::sort(by_release.begin(), by_release.end(), [&](int a, int b) {
        const Job &ja = inst.jobs[a], &jb = inst.jobs[b];
        if (ja.release != jb.release) return ja.release < jb.release;
        return ja.id < jb.id;
    });

    EventQueue q;
    for (const Job& j : inst.jobs) q.push(j.release);

    ScheduleTrace tr;
    tr.instance = inst;
    tr.policy = params;
    tr.locks.assign(m, {});
    tr.starts.reserve(n);

    // The lock timeline is global (every start locks all machines), so one
    // merged interval list serves every machine; it is replicated at the end.
    std::vector<LockInterval> lock_timeline;

    std::vector<int> pending;  // indices into inst.jobs, released but not started
    std::size_t admit = 0;
    int started = 0;

    while (started < n) {
        if (q.empty()) throw std::logic_error("simulate: event queue drained early");
        double t = q.pop_epoch();
        while (admit < by_release.size() && inst.jobs[by_release[admit]].release <= t)
            pending.push_back(by_release[admit++]);

        // Dispatch fixpoint at this epoch. Each start updates the locks
        // before the next candidate machine is examined, so a positive lock
        // stops the loop; with alpha_j = 0 several jobs may start at once.
        for (;;) {
            if (pending.empty()) break;
            int mi = -1;
            for (int k = 0; k < m; ++k)
                if (mach[k].busy_until <= t + TAU && mach[k].lock_until <= t + TAU) {
                    mi = k;
                    break;
                }
            if (mi < 0) break;

            // Longest pending job; ties by earlier release, then lower id.
            std::size_t best = 0;
            for (std::size_t i = 1; i < pending.size(); ++i) {
                const Job &ja = inst.jobs[pending[i]], &jb = inst.jobs[pending[best]];
                if (ja.proc != jb.proc ? ja.proc > jb.proc
                    : ja.release != jb.release ? ja.release < jb.release
                                               : ja.id < jb.id)
                    best = i;
            }
            const Job& job = inst.jobs[pending[best]];
            pending.erase(pending.begin() + best);

            double aj = alpha_of(params, t, job.proc);
            StartRecord rec;
            rec.job_id = job.id;
            rec.machine = mi;
            rec.start = t;
            rec.completion = t + job.proc;
            rec.alpha_j = aj;
            rec.reason = classify_start(mach[mi], job, t);
            tr.starts.push_back(rec);
            ++started;

            mach[mi].busy_until = rec.completion;
            mach[mi].busy_job = job.id;
            q.push(rec.completion);

            double lock_end = t + aj * job.proc;
            if (lock_end > t) {  // zero-length locks are not locks
                for (int k = 0; k < m; ++k)
                    if (lock_end > mach[k].lock_until) {
                        mach[k].lock_until = lock_end;
                        mach[k].lock_setter = job.id;
                    }
                if (!lock_timeline.empty() && t <= lock_timeline.back().until + TAU)
                    lock_timeline.back().until = std::max(lock_timeline.back().until, lock_end);
                else
                    lock_timeline.push_back({t, lock_end});
                q.push(lock_end);
            }
        }
    }

    for (int k = 0; k < m; ++k) tr.locks[k] = lock_timeline;
    tr.makespan = makespan(tr);
    return tr;
}

}  // namespace otm
