#include "otm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace otm {

namespace {

void require_interval(double t1, double t2) {
    if (t1 > t2) throw std::invalid_argument("metrics: interval with t1 > t2");
}

// Release time per started job; metrics that need pending state require the
// trace to carry its instance.
std::map<int, double> release_of(const ScheduleTrace& tr) {
    std::map<int, double> rel;
    for (const Job& j : tr.instance.jobs) rel[j.id] = j.release;
    for (const StartRecord& s : tr.starts)
        if (!rel.count(s.job_id))
            throw std::invalid_argument("metrics: trace has no instance data for job " +
                                        std::to_string(s.job_id));
    return rel;
}

int machine_count(const ScheduleTrace& tr) {
    int m = tr.instance.m;
    for (const StartRecord& s : tr.starts) m = std::max(m, s.machine + 1);
    return m;
}

bool machine_busy_at(const ScheduleTrace& tr, int machine, double t) {
    for (const StartRecord& s : tr.starts)
        if (s.machine == machine && s.start <= t && t < s.completion) return true;
    return false;
}

bool machine_locked_at(const ScheduleTrace& tr, int machine, double t) {
    if (machine >= static_cast<int>(tr.locks.size())) return false;
    for (const LockInterval& L : tr.locks[machine])
        if (L.from <= t && t < L.until) return true;
    return false;
}

// Measure of [lo, hi) on which at least one machine is neither busy nor
// locked. Piecewise constant between trace breakpoints.
double idle_measure(const ScheduleTrace& tr, double lo, double hi) {
    if (hi <= lo) return 0;
    int m = machine_count(tr);
    std::set<double> pts{lo, hi};
    for (const StartRecord& s : tr.starts) {
        pts.insert(s.start);
        pts.insert(s.completion);
    }
    for (const auto& per_machine : tr.locks)
        for (const LockInterval& L : per_machine) {
            pts.insert(L.from);
            pts.insert(L.until);
        }
    double total = 0;
    double prev = lo;
    for (double b : pts) {
        if (b <= lo) continue;
        if (b > hi) b = hi;
        double a = prev;
        prev = b;
        if (b <= a) continue;
        bool idle = false;
        for (int k = 0; k < m && !idle; ++k)
            idle = !machine_busy_at(tr, k, a) && !machine_locked_at(tr, k, a);
        if (idle) total += b - a;
        if (b == hi) break;
    }
    return total;
}

}  // namespace

double busy_work(const ScheduleTrace& tr, double t1, double t2) {
    require_interval(t1, t2);
    double total = 0;
    for (const StartRecord& s : tr.starts) {
        double lo = std::max(s.start, t1);
        double hi = std::min(s.completion, t2);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

double waste(const ScheduleTrace& tr, double t1, double t2) {
    require_interval(t1, t2);
    if (t1 == t2) return 0;
    auto rel = release_of(tr);
    int m = machine_count(tr);

    std::set<double> pts{t1, t2};
    for (const StartRecord& s : tr.starts) {
        pts.insert(rel[s.job_id]);
        pts.insert(s.start);
        pts.insert(s.completion);
    }
    double total = 0;
    double prev = t1;
    for (double b : pts) {
        if (b <= t1) continue;
        if (b > t2) b = t2;
        double a = prev;
        prev = b;
        if (b <= a) continue;
        int pending = 0;
        for (const StartRecord& s : tr.starts)
            if (rel[s.job_id] <= a && a < s.start) ++pending;
        if (pending > 0) {
            int busy = 0;
            for (const StartRecord& s : tr.starts)
                if (s.start <= a && a < s.completion) ++busy;
            total += static_cast<double>(m - busy) * (b - a);
        }
        if (b == t2) break;
    }
    return total;
}

double extended_work(const ScheduleTrace& tr, double t1, double t2) {
    require_interval(t1, t2);
    double total = 0;
    for (const StartRecord& s : tr.starts) {
        if (t1 <= s.start && s.start < t2)
            total += s.completion - s.start;  // whole size counts at the start
        else if (s.start < t1 && t1 < s.completion)
            total += s.completion - t1;  // straddler: the part after t1
    }
    return total;
}

IntervalReport make_interval_report(const ScheduleTrace& tr, double t1, double t2) {
    IntervalReport r;
    r.t1 = t1;
    r.t2 = t2;
    r.busy_work = busy_work(tr, t1, t2);
    r.waste = waste(tr, t1, t2);
    r.extended_work = extended_work(tr, t1, t2);
    return r;
}

BoundCheck check_waste_bound(const ScheduleTrace& tr, double t1, double t2) {
    BoundCheck c;
    c.lhs = waste(tr, t1, t2);
    c.rhs = (machine_count(tr) - 1) * tr.policy.alpha * extended_work(tr, t1, t2);
    c.ok = c.lhs <= c.rhs + TAU;
    return c;
}

BoundCheck check_leftover(const ScheduleTrace& alg_trace, const ScheduleTrace& opt_trace,
                          double t) {
    if (t < 0) throw std::invalid_argument("check_leftover: t must be >= 0");
    auto key = [](const Instance& inst) {
        std::multiset<std::pair<double, double>> k;
        for (const Job& j : inst.jobs) k.insert({j.release, j.proc});
        return k;
    };
    if (alg_trace.instance.m != opt_trace.instance.m ||
        key(alg_trace.instance) != key(opt_trace.instance))
        throw std::invalid_argument("check_leftover: traces come from different instances");

    const int m = alg_trace.instance.m;
    std::set<double> pts{0.0, t};
    auto collect = [&](const ScheduleTrace& tr) {
        for (const Job& j : tr.instance.jobs) pts.insert(j.release);
        for (const StartRecord& s : tr.starts) {
            pts.insert(s.start);
            pts.insert(s.completion);
        }
        for (const auto& per_machine : tr.locks)
            for (const LockInterval& L : per_machine) pts.insert(L.until);
    };
    collect(alg_trace);
    collect(opt_trace);

    BoundCheck worst;
    worst.ok = true;
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (double b : pts) {
        if (b < 0 || b > t) continue;
        double lhs = busy_work(opt_trace, 0, b) - busy_work(alg_trace, 0, b);
        double rhs = m * b / 4.0 + waste(alg_trace, 0, b);
        if (lhs > rhs + TAU) worst.ok = false;
        if (lhs - rhs > worst_gap) {
            worst_gap = lhs - rhs;
            worst.lhs = lhs;
            worst.rhs = rhs;
        }
    }
    return worst;
}

ChainReport extract_chain(const ScheduleTrace& tr, double gamma) {
    makespan(tr);  // validates completeness
    ChainReport rep;

    // Last job: latest completion, ties by latest start, then highest id.
    const StartRecord* last = &tr.starts.front();
    for (const StartRecord& s : tr.starts) {
        if (s.completion != last->completion ? s.completion > last->completion
            : s.start != last->start         ? s.start > last->start
                                             : s.job_id > last->job_id)
            last = &s;
    }

    std::vector<const StartRecord*> chain{last};
    std::set<int> seen{last->job_id};
    while (chain.back()->reason.tag == StartReason::Locked) {
        const StartRecord* next = find_start(tr, chain.back()->reason.by);
        if (!next || seen.count(next->job_id)) break;  // malformed link; stop
        chain.push_back(next);
        seen.insert(next->job_id);
    }

    for (const StartRecord* s : chain) {
        rep.chain.push_back(s->job_id);
        rep.chain_alpha_max = std::max(rep.chain_alpha_max, s->alpha_j);
    }

    double s_nk = chain.back()->start;
    std::set<int> critical(rep.chain.begin(), rep.chain.end());
    for (const StartRecord& s : tr.starts)
        if (s.start <= s_nk && s_nk < s.completion) critical.insert(s.job_id);
    rep.critical_jobs.assign(critical.begin(), critical.end());

    const Job* job_n = find_job(tr.instance, last->job_id);
    if (!job_n)
        throw std::invalid_argument("extract_chain: trace has no instance data for job " +
                                    std::to_string(last->job_id));
    double r_n = job_n->release;
    for (int id : rep.critical_jobs) {
        const StartRecord* s = find_start(tr, id);
        (s->start < r_n ? rep.early : rep.late).push_back(id);
    }

    double chain_tail = 0;  // sizes of chain jobs beyond the last job itself
    for (std::size_t i = 1; i < chain.size(); ++i)
        chain_tail += chain[i]->completion - chain[i]->start;
    rep.gamma_prime = gamma - rep.chain_alpha_max * chain_tail;

    // Final interval before s_n in which some machine was neither busy nor
    // locked. Walk trace breakpoints and keep the last idle stretch.
    {
        int m = machine_count(tr);
        std::set<double> pts{0.0, last->start};
        for (const StartRecord& s : tr.starts) {
            pts.insert(s.start);
            pts.insert(s.completion);
        }
        for (const auto& per_machine : tr.locks)
            for (const LockInterval& L : per_machine) {
                pts.insert(L.from);
                pts.insert(L.until);
            }
        double prev = 0;
        for (double b : pts) {
            if (b <= 0) continue;
            if (b > last->start) b = last->start;
            double a = prev;
            prev = b;
            if (b <= a) continue;
            bool idle = false;
            for (int k = 0; k < m && !idle; ++k)
                idle = !machine_busy_at(tr, k, a) && !machine_locked_at(tr, k, a);
            if (idle) rep.theta_plus = b;
            if (b == last->start) break;
        }
    }
    return rep;
}

DiagnosisReport diagnose_counterexample(const ScheduleTrace& tr, double opt_value,
                                        double gamma) {
    DiagnosisReport rep;
    double ms = makespan(tr);
    rep.ratio = ms / opt_value;
    rep.triggered = ms > (1.0 + gamma) * opt_value;
    if (!rep.triggered) {
        rep.summary = "no violation; diagnostics skipped";
        return rep;
    }

    ChainReport chain = extract_chain(tr, gamma);
    const StartRecord* sn = find_start(tr, chain.chain.front());
    const Job* jn = find_job(tr.instance, chain.chain.front());

    {
        DiagnosisItem it;
        it.what = "last job delayed: s_n - r_n > gamma * opt";
        it.checked = true;
        it.lhs = sn->start - jn->release;
        it.rhs = gamma * opt_value;
        it.ok = it.lhs > it.rhs - TAU;
        rep.items.push_back(it);
    }
    {
        DiagnosisItem it;
        it.what = "no machine idle while any job pends: max idle measure over (r_j, s_j)";
        it.checked = true;
        it.lhs = 0;
        it.rhs = 0;
        for (const StartRecord& s : tr.starts) {
            const Job* j = find_job(tr.instance, s.job_id);
            it.lhs = std::max(it.lhs, idle_measure(tr, j->release, s.start));
        }
        it.ok = it.lhs <= TAU;
        rep.items.push_back(it);
    }
    {
        DiagnosisItem it;
        it.what = "last job size above the efficiency floor";
        double m = tr.instance.m;
        double alpha = tr.policy.alpha;
        double denom = 0.75 * m - 1.0 - (m - 1.0) * alpha;
        if (denom <= 0) {
            it.checked = false;
            it.ok = true;
        } else {
            it.checked = true;
            it.lhs = jn->proc;
            it.rhs = opt_value * (m * gamma - m / 4.0 - m * (m - 1.0) * alpha) / denom;
            it.ok = it.lhs > it.rhs - TAU;
        }
        rep.items.push_back(it);
    }

    std::string flagged;
    for (const DiagnosisItem& it : rep.items)
        if (it.checked && !it.ok) flagged += (flagged.empty() ? "" : "; ") + it.what;
    rep.summary = flagged.empty()
                      ? "ratio exceeds 1+gamma and all structural checks hold"
                      : "FLAGGED (likely engine or analysis bug): " + flagged;
    return rep;
}

}  // namespace otm
