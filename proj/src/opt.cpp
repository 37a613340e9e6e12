#include "otm/opt.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "otm/engine.hpp"

namespace otm {

double single_machine_makespan(std::vector<Job> jobs) {
    if (jobs.empty()) return 0;
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.release != b.release) return a.release < b.release;
        return a.id < b.id;
    });
    double c = 0;
    for (const Job& j : jobs) c = std::max(c, j.release) + j.proc;
    return c;
}

double lower_bound(const Instance& inst) {
    double bound = 0;
    for (const Job& j : inst.jobs) bound = std::max(bound, j.release + j.proc);

    // Load bound: work released at or after r cannot finish before r + work/m.
    std::vector<const Job*> by_release;
    by_release.reserve(inst.jobs.size());
    for (const Job& j : inst.jobs) by_release.push_back(&j);
    std::sort(by_release.begin(), by_release.end(),
              [](const Job* a, const Job* b) { return a->release < b->release; });
    double suffix = 0;
    for (const Job* j : by_release) suffix += j->proc;
    for (std::size_t i = 0; i < by_release.size(); ++i) {
        double r = by_release[i]->release;
        if (i == 0 || r != by_release[i - 1]->release)
            bound = std::max(bound, r + suffix / inst.m);
        suffix -= by_release[i]->proc;
    }
    return bound;
}

namespace {

// Shared by the branch-and-bound and the trace builder: completion of one
// machine given its jobs already sorted by (release, id).
double fold_completion(const std::vector<const Job*>& sorted) {
    double c = 0;
    for (const Job* j : sorted) c = std::max(c, j->release) + j->proc;
    return c;
}

struct Search {
    const Instance& inst;
    long long budget;

    std::vector<const Job*> order;        // descending proc, ties release then id
    std::vector<double> suffix_rp;        // max r+p over jobs not yet assigned
    double static_floor = 0;              // instance-level load bound

    std::vector<std::vector<const Job*>> assigned;  // per machine, (release, id) sorted
    std::vector<double> comp;                       // per machine completion

    double incumbent = std::numeric_limits<double>::infinity();
    std::vector<std::vector<const Job*>> best;

    long long nodes = 1;  // the root
    bool exhausted = false;
    double abandoned_min = std::numeric_limits<double>::infinity();

    Search(const Instance& i, long long b) : inst(i), budget(b) {
        order.reserve(inst.jobs.size());
        for (const Job& j : inst.jobs) order.push_back(&j);
        std::sort(order.begin(), order.end(), [](const Job* a, const Job* b) {
            if (a->proc != b->proc) return a->proc > b->proc;
            if (a->release != b->release) return a->release < b->release;
            return a->id < b->id;
        });
        suffix_rp.assign(order.size() + 1, 0);
        for (int i2 = static_cast<int>(order.size()) - 1; i2 >= 0; --i2)
            suffix_rp[i2] = std::max(suffix_rp[i2 + 1], order[i2]->release + order[i2]->proc);
        static_floor = lower_bound(inst);
        assigned.assign(inst.m, {});
        comp.assign(inst.m, 0.0);
    }

    std::size_t insert(int k, const Job* j) {
        auto& v = assigned[k];
        auto pos = std::lower_bound(v.begin(), v.end(), j, [](const Job* a, const Job* b) {
            if (a->release != b->release) return a->release < b->release;
            return a->id < b->id;
        });
        std::size_t idx = static_cast<std::size_t>(pos - v.begin());
        v.insert(pos, j);
        comp[k] = fold_completion(v);
        return idx;
    }

    void remove(int k, std::size_t idx, double old_comp) {
        assigned[k].erase(assigned[k].begin() + idx);
        comp[k] = old_comp;
    }

    double node_bound(std::size_t level) {
        double lb = std::max(static_floor, suffix_rp[level]);
        for (double c : comp) lb = std::max(lb, c);
        return lb;
    }

    // Greedy seed: each job to the machine whose completion grows least.
    // Gives the search a finite incumbent before the first descent.
    void seed_incumbent() {
        for (const Job* j : order) {
            int pick = 0;
            double pick_comp = std::numeric_limits<double>::infinity();
            for (int k = 0; k < inst.m; ++k) {
                double old = comp[k];
                std::size_t idx = insert(k, j);
                double now = comp[k];
                remove(k, idx, old);
                if (now < pick_comp) {
                    pick = k;
                    pick_comp = now;
                }
                if (assigned[k].empty()) break;  // further empty machines are symmetric
            }
            insert(pick, j);
        }
        incumbent = *std::max_element(comp.begin(), comp.end());
        best = assigned;
        assigned.assign(inst.m, {});
        comp.assign(inst.m, 0.0);
    }

    void dfs(std::size_t level, double entry_lb) {
        if (level == order.size()) {
            double v = *std::max_element(comp.begin(), comp.end());
            if (v < incumbent) {
                incumbent = v;
                best = assigned;
            }
            return;
        }
        // Symmetry breaking: identical machines, so only the first empty one
        // is a distinct choice.
        int kmax = inst.m - 1;
        for (int k = 0; k < inst.m; ++k)
            if (assigned[k].empty()) {
                kmax = k;
                break;
            }
        for (int k = 0; k <= kmax; ++k) {
            if (exhausted) {
                // Unvisited children inherit this node's bound: sound because
                // bounds only tighten down a branch.
                abandoned_min = std::min(abandoned_min, entry_lb);
                return;
            }
            if (++nodes > budget) {
                exhausted = true;
                abandoned_min = std::min(abandoned_min, entry_lb);
                return;
            }
            double old = comp[k];
            std::size_t idx = insert(k, order[level]);
            double lb = node_bound(level + 1);
            if (lb < incumbent) dfs(level + 1, lb);
            remove(k, idx, old);
        }
    }
};

ScheduleTrace trace_from_assignment(const Instance& inst,
                                    const std::vector<std::vector<const Job*>>& assigned) {
    ScheduleTrace tr;
    tr.instance = inst;
    tr.policy = {0.0, 1.0};
    tr.locks.assign(inst.m, {});
    for (int k = 0; k < inst.m; ++k) {
        double c = 0;
        const Job* prev = nullptr;
        for (const Job* j : assigned[k]) {
            StartRecord rec;
            rec.job_id = j->id;
            rec.machine = k;
            rec.start = std::max(c, j->release);
            rec.completion = rec.start + j->proc;
            rec.alpha_j = 0;
            if (rec.start <= j->release + TAU || prev == nullptr)
                rec.reason = {StartReason::Immediate, -1};
            else
                rec.reason = {StartReason::Pushed, prev->id};
            tr.starts.push_back(rec);
            c = rec.completion;
            prev = j;
        }
    }
    std::sort(tr.starts.begin(), tr.starts.end(), [](const StartRecord& a, const StartRecord& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.job_id < b.job_id;
    });
    tr.makespan = makespan(tr);
    return tr;
}

}  // namespace

OptResult exact_opt(const Instance& inst, long long node_budget) {
    if (node_budget <= 0) throw std::invalid_argument("exact_opt: node budget must be > 0");
    auto violations = validate_instance(inst);
    if (!violations.empty())
        throw std::invalid_argument("exact_opt: invalid instance: " + violations.front());
    if (inst.jobs.empty()) throw std::invalid_argument("exact_opt: no jobs");

    Search search(inst, node_budget);
    search.seed_incumbent();
    search.dfs(0, search.node_bound(0));

    OptResult out;
    out.nodes_explored = search.nodes;
    // Budget exhaustion leaves open subtrees; their folded bound is the best
    // certified lower bound unless it already matches or beats the incumbent,
    // in which case nothing open could improve and the incumbent is optimal.
    if (!search.exhausted || search.abandoned_min >= search.incumbent) {
        out.value = search.incumbent;
        out.exact = true;
        out.trace = trace_from_assignment(inst, search.best);
    } else {
        out.value = search.abandoned_min;
        out.exact = false;
    }
    return out;
}

double brute_force_opt(const Instance& inst) {
    auto violations = validate_instance(inst);
    if (!violations.empty())
        throw std::invalid_argument("brute_force_opt: invalid instance: " + violations.front());
    if (inst.jobs.empty()) throw std::invalid_argument("brute_force_opt: no jobs");
    const int n = static_cast<int>(inst.jobs.size());
    if (n > 12) throw std::invalid_argument("brute_force_opt: n too large for enumeration");

    // Enumerate in global release order so each machine receives its jobs in
    // release order and the completion fold stays incremental.
    std::vector<const Job*> order;
    order.reserve(n);
    for (const Job& j : inst.jobs) order.push_back(&j);
    std::sort(order.begin(), order.end(), [](const Job* a, const Job* b) {
        if (a->release != b->release) return a->release < b->release;
        return a->id < b->id;
    });

    std::vector<double> comp(inst.m, 0.0);
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, int level) -> void {
        if (level == n) {
            best = std::min(best, *std::max_element(comp.begin(), comp.end()));
            return;
        }
        const Job* j = order[level];
        for (int k = 0; k < inst.m; ++k) {
            double old = comp[k];
            comp[k] = std::max(old, j->release) + j->proc;
            self(self, level + 1);
            comp[k] = old;
        }
    };
    rec(rec, 0);
    return best;
}

RatioResult ratio(const Instance& inst, const PolicyParams& params, long long node_budget) {
    RatioResult out;
    out.alg = makespan(simulate(inst, params));
    out.opt = exact_opt(inst, node_budget);
    out.ratio_or_bound = out.alg / out.opt.value;
    out.certified = out.opt.exact;
    return out;
}

}  // namespace otm
