#include "otm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "otm/conditions.hpp"
#include "otm/engine.hpp"
#include "otm/instances.hpp"
#include "otm/metrics.hpp"
#include "otm/policies.hpp"

namespace otm {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot open " << path << " for writing\n";
        return false;
    }
    f << text;
    return true;
}

// Runs fn against the named file, or against the fallback stream when the
// name is empty. fn gets a usable ostream either way.
template <class Fn>
int with_output(const std::string& path, std::ostream& fallback, std::ostream& err, Fn&& fn) {
    if (path.empty()) return fn(fallback);
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot open " << path << " for writing\n";
        return EXIT_PARSE;
    }
    return fn(f);
}

int load_instance(const std::string& path, Instance& inst, std::ostream& err) {
    auto text = read_file(path);
    if (!text) {
        err << "cannot read " << path << "\n";
        return EXIT_PARSE;
    }
    try {
        inst = instance_from_json(*text);
    } catch (const std::exception& e) {
        err << path << ": " << e.what() << "\n";
        return EXIT_PARSE;
    }
    auto problems = validate_instance(inst);
    if (!problems.empty()) {
        for (const std::string& p : problems) err << path << ": " << p << "\n";
        return EXIT_SEMANTIC;
    }
    return EXIT_OK;
}

int load_trace(const std::string& path, ScheduleTrace& tr, std::ostream& err) {
    auto text = read_file(path);
    if (!text) {
        err << "cannot read " << path << "\n";
        return EXIT_PARSE;
    }
    try {
        tr = trace_from_json(*text);
    } catch (const std::exception& e) {
        err << path << ": " << e.what() << "\n";
        return EXIT_PARSE;
    }
    return EXIT_OK;
}

bool same_instance(const Instance& a, const Instance& b) {
    if (a.m != b.m || a.jobs.size() != b.jobs.size()) return false;
    auto key = [](const Instance& i) {
        std::vector<std::tuple<int, double, double>> v;
        for (const Job& j : i.jobs) v.emplace_back(j.id, j.release, j.proc);
        std::sort(v.begin(), v.end());
        return v;
    };
    return key(a) == key(b);
}

PolicyParams params_for(const std::string& name, int m) {
    if (name == "lpt") return lpt();
    if (name == "sleepy2") return sleepy_two();
    if (name == "gsleepy-static") return gsleepy(m, false);
    if (name == "gsleepy-dynamic") return gsleepy(m, true);
    throw std::invalid_argument("unknown policy: " + name);
}

int resolve_policy(const RunOpts& o, int m, PolicyParams& params, std::ostream& err) {
    try {
        params = params_for(o.policy, m);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_PARSE;
    }
    if (o.alpha) params.alpha = *o.alpha;
    if (o.lambda) params.lambda = *o.lambda;
    if (params.alpha < 0 || params.alpha >= 1 || params.lambda < 1) {
        err << "policy out of range: need 0 <= alpha < 1 and lambda >= 1\n";
        return EXIT_SEMANTIC;
    }
    return EXIT_OK;
}

// lo:hi or lo:hi:step
std::vector<double> parse_range(const std::string& text, std::size_t want) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(':', pos);
        std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
        std::size_t used = 0;
        parts.push_back(std::stod(piece, &used));
        if (used != piece.size()) throw std::invalid_argument("bad range: " + text);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() != want) throw std::invalid_argument("bad range: " + text);
    return parts;
}

std::pair<rational, rational> parse_rational_range(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
        throw std::invalid_argument("bad range: " + text);
    return {parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1))};
}

}  // namespace

int cmd_run(const RunOpts& o, std::ostream& out, std::ostream& err) {
    Instance inst;
    if (int rc = load_instance(o.instance_file, inst, err)) return rc;
    PolicyParams params;
    if (int rc = resolve_policy(o, inst.m, params, err)) return rc;
    ScheduleTrace tr = simulate(inst, params);
    out << "makespan=" << fmt(tr.makespan) << " policy=" << o.policy
        << " alpha=" << fmt(params.alpha) << " lambda=" << fmt(params.lambda)
        << " m=" << inst.m << " n=" << inst.jobs.size() << "\n";
    if (!o.out.empty() && !write_file(o.out, trace_to_json(tr), err)) return EXIT_PARSE;
    return EXIT_OK;
}

int cmd_gen(const GenOpts& o, std::ostream& out, std::ostream& err) {
    Instance inst;
    try {
        if (o.family == "one-one-two") {
            inst = gen_one_one_two(o.m, o.eps);
        } else if (o.family == "case1") {
            inst = gen_case1(o.m);
        } else if (o.family == "case2") {
            inst = gen_case2(o.m, o.alpha, o.eps);
        } else if (o.family == "random") {
            RandomSpec spec;
            spec.seed = o.seed;
            spec.n = o.n;
            spec.m = o.m;
            spec.release_span = o.span;
            if (o.dist == "uniform")
                spec.dist = RandomSpec::Dist::Uniform;
            else if (o.dist == "geometric")
                spec.dist = RandomSpec::Dist::GeometricLike;
            else if (o.dist == "two-class")
                spec.dist = RandomSpec::Dist::TwoClass;
            else {
                err << "unknown distribution: " << o.dist << "\n";
                return EXIT_PARSE;
            }
            spec.lo = o.lo;
            spec.hi = o.hi;
            spec.ratio = o.ratio;
            spec.small = o.small;
            spec.large = o.large;
            spec.fraction = o.fraction;
            inst = gen_random(spec);
        } else {
            err << "unknown family: " << o.family << "\n";
            return EXIT_PARSE;
        }
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_SEMANTIC;
    }
    return with_output(o.out, out, err, [&](std::ostream& os) {
        os << instance_to_json(inst);
        return EXIT_OK;
    });
}

int cmd_opt(const OptOpts& o, std::ostream& out, std::ostream& err) {
    Instance inst;
    if (int rc = load_instance(o.instance_file, inst, err)) return rc;
    OptResult res;
    try {
        res = exact_opt(inst, o.node_budget);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_SEMANTIC;
    }
    out << "value=" << fmt(res.value) << " exact=" << (res.exact ? "true" : "false")
        << " nodes=" << res.nodes_explored << "\n";
    if (!o.out.empty()) {
        if (!res.trace) {
            err << "no schedule to write: node budget exhausted before certification\n";
        } else if (!write_file(o.out, trace_to_json(*res.trace), err)) {
            return EXIT_PARSE;
        }
    }
    return EXIT_OK;
}

namespace {

// splitmix64 finalizer; decorrelates consecutive trial indices.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct TrialPlan {
    Instance inst;
    std::string family;
};

// Trial slots cycle through random shapes and the hard families; odd rounds
// jitter the hard families' releases by up to eps so near-coincident variants
// get covered too.
TrialPlan stress_instance(const StressOpts& o, int trial) {
    std::uint64_t s = mix64(o.seed ^ mix64(static_cast<std::uint64_t>(trial) + 1));
    std::mt19937_64 gen(s);
    auto u = [&gen]() { return (gen() >> 11) * 0x1.0p-53; };

    const int slot = trial % 8;
    TrialPlan plan;
    auto make_random = [&](RandomSpec::Dist dist, double span, double lo, double hi) {
        RandomSpec spec;
        spec.seed = mix64(s);
        spec.n = 2 + static_cast<int>(s % static_cast<std::uint64_t>(o.n - 1));
        spec.m = o.m;
        spec.release_span = span;
        spec.dist = dist;
        spec.lo = lo;
        spec.hi = hi;
        plan.family = "random";
        plan.inst = gen_random(spec);
    };

    switch (slot) {
        case 0: make_random(RandomSpec::Dist::Uniform, 1.0, 0.1, 1.0); break;
        case 1: make_random(RandomSpec::Dist::Uniform, 0.2, 0.5, 1.0); break;
        case 2: make_random(RandomSpec::Dist::TwoClass, 1.0, 0.1, 1.0); break;
        case 3: make_random(RandomSpec::Dist::GeometricLike, 0.5, 0.1, 1.0); break;
        case 4: make_random(RandomSpec::Dist::Uniform, 2.0, 0.1, 1.0); break;
        case 5:
            if (o.m >= 2) {
                plan.family = "one-one-two";
                plan.inst = gen_one_one_two(o.m, o.eps * (1 + trial % 3));
            } else {
                make_random(RandomSpec::Dist::Uniform, 1.0, 0.1, 1.0);
            }
            break;
        case 6:
            if (o.m >= 2) {
                plan.family = "case1";
                plan.inst = gen_case1(o.m);
            } else {
                make_random(RandomSpec::Dist::TwoClass, 1.0, 0.1, 1.0);
            }
            break;
        default:
            if (o.m >= 6) {
                plan.family = "case2";
                plan.inst = gen_case2(o.m, 0.8 / (2.0 * (o.m - 1)), o.eps);
            } else {
                make_random(RandomSpec::Dist::Uniform, 1.0, 0.1, 1.0);
            }
            break;
    }
    if (slot >= 5 && (trial / 8) % 2 == 1) {
        for (Job& j : plan.inst.jobs)
            j.release = std::max(0.0, j.release + (2 * u() - 1) * o.eps);
    }
    return plan;
}

struct TrialResult {
    TrialPlan plan;
    double opt_value = 0;
    bool opt_exact = false;
    struct Row {
        double alg = 0;
        double ratio = 0;
    };
    std::vector<Row> rows;  // aligned with the policy list
};

}  // namespace

StressReport run_stress(const StressOpts& o, std::vector<std::string>* log_rows) {
    if (o.trials < 1) throw std::invalid_argument("stress: trials must be >= 1");
    if (o.m < 1) throw std::invalid_argument("stress: m must be >= 1");
    if (o.n < 2) throw std::invalid_argument("stress: n must be >= 2");
    if (o.node_budget < 1) throw std::invalid_argument("stress: node budget must be >= 1");
    if (o.eps <= 0) throw std::invalid_argument("stress: eps must be > 0");

    std::vector<std::string> names = o.policies;
    if (names.empty()) {
        names.push_back("lpt");
        if (o.m == 2) names.push_back("sleepy2");
        if (o.m >= 3) {
            names.push_back("gsleepy-static");
            names.push_back("gsleepy-dynamic");
        }
    }
    std::vector<PolicyParams> params;
    for (const std::string& n : names) params.push_back(params_for(n, o.m));

    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = o.threads > 0 ? o.threads : static_cast<int>(std::min(hw ? hw : 1u, 8u));
    nthreads = std::min(nthreads, o.trials);

    std::vector<TrialResult> results(o.trials);
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= o.trials) return;
            try {
                TrialResult& res = results[t];
                res.plan = stress_instance(o, t);
                if (o.lower_bound_only) {
                    res.opt_value = lower_bound(res.plan.inst);
                    res.opt_exact = false;
                } else {
                    OptResult opt = exact_opt(res.plan.inst, o.node_budget);
                    res.opt_value = opt.value;
                    res.opt_exact = opt.exact;
                }
                for (const PolicyParams& p : params) {
                    TrialResult::Row row;
                    row.alg = makespan(simulate(res.plan.inst, p));
                    row.ratio = row.alg / res.opt_value;
                    res.rows.push_back(row);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    StressReport report;
    report.trials = o.trials;
    for (const std::string& n : names) {
        PolicyStats st;
        st.policy = n;
        report.per_policy.push_back(st);
    }
    for (int t = 0; t < o.trials; ++t) {
        const TrialResult& res = results[t];
        if (res.opt_exact) ++report.certified_count;
        for (std::size_t k = 0; k < names.size(); ++k) {
            const TrialResult::Row& row = res.rows[k];
            PolicyStats& st = report.per_policy[k];
            ++st.trials;
            if (res.opt_exact) {
                ++st.certified;
                if (row.ratio > st.worst_ratio) {
                    st.worst_ratio = row.ratio;
                    st.worst_trial = t;
                }
                if (row.ratio > report.worst_ratio) {
                    report.worst_ratio = row.ratio;
                    report.worst_instance = res.plan.inst;
                }
            } else {
                st.worst_uncertified = std::max(st.worst_uncertified, row.ratio);
            }
            if (log_rows) {
                std::ostringstream line;
                line << t << '\t' << names[k] << '\t' << res.plan.family << '\t'
                     << res.plan.inst.jobs.size() << '\t' << res.plan.inst.m << '\t'
                     << fmt(row.alg) << '\t' << fmt(res.opt_value) << '\t'
                     << (res.opt_exact ? 1 : 0) << '\t' << fmt(row.ratio);
                log_rows->push_back(line.str());
            }
        }
    }
    return report;
}

int cmd_stress(const StressOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> rows;
    StressReport report;
    try {
        report = run_stress(o, o.out_log.empty() ? nullptr : &rows);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_SEMANTIC;
    }
    out << "stress: trials=" << report.trials << " m=" << o.m
        << " certified_opt=" << report.certified_count << "\n";
    for (const PolicyStats& st : report.per_policy) {
        out << "  " << st.policy << ": certified=" << st.certified << "/" << st.trials
            << " worst=" << fmt(st.worst_ratio);
        if (st.worst_trial >= 0) out << " (trial " << st.worst_trial << ")";
        if (st.worst_uncertified > 0)
            out << " worst_bound=" << fmt(st.worst_uncertified);
        out << "\n";
    }
    out << "worst certified ratio " << fmt(report.worst_ratio) << "\n";
    if (!o.out_log.empty()) {
        std::string text = "trial\tpolicy\tfamily\tn\tm\talg\topt\texact\tratio\n";
        for (const std::string& r : rows) text += r + "\n";
        if (!write_file(o.out_log, text, err)) return EXIT_PARSE;
    }
    return EXIT_OK;
}

int cmd_analyze(const AnalyzeOpts& o, std::ostream& out, std::ostream& err) {
    ScheduleTrace tr;
    if (int rc = load_trace(o.trace_file, tr, err)) return rc;

    if (!o.instance_file.empty()) {
        Instance inst;
        if (int rc = load_instance(o.instance_file, inst, err)) return rc;
        if (!tr.instance.jobs.empty() && !same_instance(tr.instance, inst)) {
            err << "instance file does not match the instance embedded in the trace\n";
            return EXIT_SEMANTIC;
        }
        tr.instance = inst;
    }
    if (tr.instance.jobs.empty()) {
        err << "trace carries no instance; pass one with --instance\n";
        return EXIT_SEMANTIC;
    }
    double ms;
    try {
        ms = makespan(tr);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_SEMANTIC;
    }

    double gamma = o.gamma ? *o.gamma : target_gamma(tr.instance.m);

    std::optional<ScheduleTrace> opt_tr;
    if (!o.opt_trace_file.empty()) {
        ScheduleTrace loaded;
        if (int rc = load_trace(o.opt_trace_file, loaded, err)) return rc;
        if (loaded.instance.jobs.empty()) loaded.instance = tr.instance;
        if (!same_instance(loaded.instance, tr.instance)) {
            err << "reference trace belongs to a different instance\n";
            return EXIT_SEMANTIC;
        }
        try {
            makespan(loaded);
        } catch (const std::invalid_argument& e) {
            err << "reference trace: " << e.what() << "\n";
            return EXIT_SEMANTIC;
        }
        opt_tr = std::move(loaded);
    }

    ChainReport chain = extract_chain(tr, gamma);
    IntervalReport rep = make_interval_report(tr, 0, ms);
    BoundCheck wb = check_waste_bound(tr, 0, ms);

    return with_output(o.out, out, err, [&](std::ostream& os) {
        os << "n=" << tr.instance.jobs.size() << " m=" << tr.instance.m
           << " makespan=" << fmt(ms) << " alpha=" << fmt(tr.policy.alpha)
           << " lambda=" << fmt(tr.policy.lambda) << " gamma=" << fmt(gamma) << "\n";
        os << "chain:";
        for (int id : chain.chain) os << " " << id;
        os << "  (alpha_max=" << fmt(chain.chain_alpha_max)
           << " gamma_prime=" << fmt(chain.gamma_prime)
           << " theta_plus=" << fmt(chain.theta_plus) << ")\n";
        os << "critical:";
        for (int id : chain.critical_jobs) os << " " << id;
        os << "  early:";
        for (int id : chain.early) os << " " << id;
        os << "  late:";
        for (int id : chain.late) os << " " << id;
        os << "\n";
        os << "interval [0," << fmt(ms) << "): busy=" << fmt(rep.busy_work)
           << " waste=" << fmt(rep.waste) << " extended=" << fmt(rep.extended_work) << "\n";
        os << "waste bound: " << fmt(wb.lhs) << " <= " << fmt(wb.rhs) << " : "
           << (wb.ok ? "OK" : "VIOLATED") << "\n";
        if (opt_tr) {
            double opt_ms = makespan(*opt_tr);
            BoundCheck lo = check_leftover(tr, *opt_tr, ms);
            os << "reference makespan=" << fmt(opt_ms) << " ratio=" << fmt(ms / opt_ms) << "\n";
            os << "left-over bound (worst breakpoint): " << fmt(lo.lhs) << " <= " << fmt(lo.rhs)
               << " : " << (lo.ok ? "OK" : "VIOLATED") << "\n";
            DiagnosisReport diag = diagnose_counterexample(tr, opt_ms, gamma);
            os << "diagnosis: " << diag.summary << "\n";
            for (const DiagnosisItem& item : diag.items) {
                os << "  " << item.what << ": ";
                if (!item.checked)
                    os << "not applicable";
                else
                    os << fmt(item.lhs) << " vs " << fmt(item.rhs) << " : "
                       << (item.ok ? "OK" : "FAILED");
                os << "\n";
            }
        }
        return EXIT_OK;
    });
}

int cmd_plotdata(const PlotOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.scan_m3) {
            auto [alo, ahi] = parse_rational_range(o.alpha_range);
            auto [glo, ghi] = parse_rational_range(o.gamma_range);
            ScanGrid grid{alo, ahi, glo, ghi, o.steps};
            std::vector<ScanRow> rows = scan_m3_region(grid);
            return with_output(o.out, out, err, [&](std::ostream& os) {
                os << "# alpha\tgamma";
                for (const std::string& id : m3_condition_ids()) os << "\t" << id;
                os << "\tall\n";
                for (const ScanRow& r : rows) {
                    os << fmt(r.alpha.convert_to<double>()) << '\t'
                       << fmt(r.gamma.convert_to<double>());
                    for (bool p : r.passed) os << '\t' << (p ? 1 : 0);
                    os << '\t' << (r.all_pass ? 1 : 0) << "\n";
                }
                return EXIT_OK;
            });
        }
        if (o.curve != "f_case2") {
            err << "unknown curve: " << o.curve << "\n";
            return EXIT_PARSE;
        }
        std::vector<double> r = parse_range(o.range, 3);
        double lo = r[0], hi = r[1], step = r[2];
        if (step <= 0 || hi < lo) {
            err << "bad range: need lo <= hi and step > 0\n";
            return EXIT_SEMANTIC;
        }
        if (o.m < 2) {
            err << "plotdata: m must be >= 2\n";
            return EXIT_SEMANTIC;
        }
        double alpha_max = 1.0 / (2.0 * (o.m - 1));
        return with_output(o.out, out, err, [&](std::ostream& os) {
            os << "# limit ratio of the static policy on the six-then-equal family\n";
            os << "# generator valid for alpha < 1/(2(m-1)) = " << fmt(alpha_max)
               << " at m=" << o.m << "\n";
            os << "# alpha\tf\tref\n";
            long steps = static_cast<long>(std::floor((hi - lo) / step + 0.5));
            for (long i = 0; i <= steps; ++i) {
                double a = lo + i * step;
                if (a > hi + step * 1e-9) break;
                os << fmt(a) << '\t' << fmt(f_case2(a)) << '\t' << "1.5" << "\n";
            }
            return EXIT_OK;
        });
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_PARSE;
    }
}

int cmd_conditions(const CondOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.scan) {
            auto [alo, ahi] = parse_rational_range(o.alpha_range);
            auto [glo, ghi] = parse_rational_range(o.gamma_range);
            ScanGrid grid{alo, ahi, glo, ghi, o.steps};
            std::vector<ScanRow> rows = scan_m3_region(grid);
            return with_output(o.out, out, err, [&](std::ostream& os) {
                os << "# three-machine feasibility scan\n# alpha\tgamma";
                for (const std::string& id : m3_condition_ids()) os << "\t" << id;
                os << "\tall\n";
                for (const ScanRow& r : rows) {
                    os << rational_str(r.alpha) << '\t' << rational_str(r.gamma);
                    for (bool p : r.passed) os << '\t' << (p ? 1 : 0);
                    os << '\t' << (r.all_pass ? 1 : 0) << "\n";
                }
                return EXIT_OK;
            });
        }

        Recommended rec = recommended_params(o.m);
        rational alpha = o.alpha.empty() ? rec.params.alpha : parse_rational(o.alpha);
        rational gamma = o.gamma.empty() ? rec.gamma_feasible : parse_rational(o.gamma);

        return with_output(o.out, out, err, [&](std::ostream& os) {
            os << "m=" << o.m << " alpha=" << rational_str(alpha) << " ("
               << fmt(alpha.convert_to<double>()) << ") gamma=" << rational_str(gamma) << " ("
               << fmt(gamma.convert_to<double>()) << ")\n";
            if (o.m == 2 && o.alpha.empty() && o.gamma.empty()) {
                os << "no condition system covers m=2; the two-machine policy is analyzed "
                      "directly\n";
                return EXIT_OK;
            }
            ConditionReport rep =
                o.m == 3 ? check_m3(alpha, gamma)
                         : check_general(Params{o.m, alpha, gamma});
            for (const ConditionRow& row : rep.rows) {
                os << "  " << std::left << std::setw(6) << row.id << std::right
                   << (row.satisfied ? " pass " : " FAIL ") << "margin="
                   << fmt(row.margin.convert_to<double>());
                if (!row.authoritative) os << " [informational]";
                if (!row.note.empty()) os << "  (" << row.note << ")";
                os << "\n";
            }
            os << (rep.all_passed ? "all conditions satisfied\n"
                                  : "NOT all conditions satisfied\n");
            return EXIT_OK;
        });
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return EXIT_PARSE;
    }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"simulation lab for over-time makespan scheduling with locking policies"};
    app.require_subcommand(1);

    int rc = EXIT_OK;
    const std::vector<std::string> policy_names{"lpt", "sleepy2", "gsleepy-static",
                                                "gsleepy-dynamic"};

    RunOpts run;
    double run_alpha = 0, run_lambda = 0;
    CLI::App* c_run = app.add_subcommand("run", "simulate a policy on an instance file");
    c_run->add_option("instance", run.instance_file, "instance JSON file")->required();
    c_run->add_option("--policy", run.policy, "policy name")
        ->check(CLI::IsMember(policy_names));
    CLI::Option* o_alpha = c_run->add_option("--alpha", run_alpha,
                                             "override the locking parameter");
    CLI::Option* o_lambda = c_run->add_option("--lambda", run_lambda,
                                              "override the rescaling factor");
    c_run->callback([&]() {
        if (o_alpha->count()) run.alpha = run_alpha;
        if (o_lambda->count()) run.lambda = run_lambda;
        rc = cmd_run(run, out, err);
    });
    c_run->add_option("-o,--out", run.out, "write the trace JSON here");

    GenOpts gen;
    CLI::App* c_gen = app.add_subcommand("gen", "generate an instance");
    c_gen->add_option("--family", gen.family, "one-one-two | case1 | case2 | random")
        ->check(CLI::IsMember({"one-one-two", "case1", "case2", "random"}));
    c_gen->add_option("-m", gen.m, "machines");
    c_gen->add_option("--eps", gen.eps, "release offset for the hard families");
    c_gen->add_option("--alpha", gen.alpha, "locking parameter the case2 family targets");
    c_gen->add_option("--seed", gen.seed, "random seed");
    c_gen->add_option("-n", gen.n, "random job count");
    c_gen->add_option("--span", gen.span, "random release span");
    c_gen->add_option("--dist", gen.dist, "uniform | geometric | two-class")
        ->check(CLI::IsMember({"uniform", "geometric", "two-class"}));
    c_gen->add_option("--lo", gen.lo, "uniform size lower end");
    c_gen->add_option("--hi", gen.hi, "uniform size upper end");
    c_gen->add_option("--ratio", gen.ratio, "geometric size ratio");
    c_gen->add_option("--small", gen.small, "two-class small size");
    c_gen->add_option("--large", gen.large, "two-class large size");
    c_gen->add_option("--fraction", gen.fraction, "two-class large-job probability");
    c_gen->add_option("-o,--out", gen.out, "output file (default stdout)");
    c_gen->callback([&]() { rc = cmd_gen(gen, out, err); });

    OptOpts opt;
    CLI::App* c_opt = app.add_subcommand("opt", "exact offline optimum of an instance file");
    c_opt->add_option("instance", opt.instance_file, "instance JSON file")->required();
    c_opt->add_option("--budget", opt.node_budget, "search node budget");
    c_opt->add_option("-o,--out", opt.out, "write the optimal trace JSON here");
    c_opt->callback([&]() { rc = cmd_opt(opt, out, err); });

    StressOpts stress;
    CLI::App* c_stress = app.add_subcommand("stress", "randomized ratio stress test");
    c_stress->add_option("--policy", stress.policies, "policies to race (repeatable)")
        ->check(CLI::IsMember(policy_names));
    c_stress->add_option("-m", stress.m, "machines");
    c_stress->add_option("-n", stress.n, "max random job count");
    c_stress->add_option("--trials", stress.trials, "number of trials");
    c_stress->add_option("--seed", stress.seed, "base seed");
    c_stress->add_option("--budget", stress.node_budget, "optimum search node budget");
    c_stress->add_flag("--lb-only", stress.lower_bound_only,
                       "compare against the fast lower bound instead of the exact optimum");
    c_stress->add_option("--eps", stress.eps, "release offset / jitter scale");
    c_stress->add_option("--threads", stress.threads, "worker threads (0 = auto)");
    c_stress->add_option("--log", stress.out_log, "write per-trial TSV rows here");
    c_stress->callback([&]() { rc = cmd_stress(stress, out, err); });

    AnalyzeOpts analyze;
    double an_gamma = 0;
    CLI::App* c_an = app.add_subcommand("analyze", "structural report for a trace file");
    c_an->add_option("trace", analyze.trace_file, "trace JSON file")->required();
    CLI::Option* o_gamma = c_an->add_option(
        "--gamma", an_gamma, "target ratio minus one (default: recommended for m)");
    c_an->add_option("--instance", analyze.instance_file, "instance file cross-check/override");
    c_an->add_option("--opt-trace", analyze.opt_trace_file,
                     "reference optimal trace; enables the left-over check and diagnosis");
    c_an->add_option("-o,--out", analyze.out, "output file (default stdout)");
    c_an->callback([&]() {
        if (o_gamma->count()) analyze.gamma = an_gamma;
        rc = cmd_analyze(analyze, out, err);
    });

    PlotOpts plot;
    CLI::App* c_plot = app.add_subcommand("plotdata", "tabulated curves for plotting");
    c_plot->add_option("--curve", plot.curve, "curve name (f_case2)");
    c_plot->add_option("--range", plot.range, "lo:hi:step");
    c_plot->add_option("-m", plot.m, "machines the alpha cutoff comment refers to");
    c_plot->add_flag("--scan-m3", plot.scan_m3, "emit the three-machine feasibility grid");
    c_plot->add_option("--alpha-range", plot.alpha_range, "lo:hi (scan)");
    c_plot->add_option("--gamma-range", plot.gamma_range, "lo:hi (scan)");
    c_plot->add_option("--steps", plot.steps, "grid steps per axis (scan)");
    c_plot->add_option("-o,--out", plot.out, "output file (default stdout)");
    c_plot->callback([&]() { rc = cmd_plotdata(plot, out, err); });

    CondOpts cond;
    CLI::App* c_cond = app.add_subcommand("conditions", "exact feasibility condition checks");
    c_cond->add_option("-m", cond.m, "machines");
    c_cond->add_option("--alpha", cond.alpha, "exact rational, e.g. 7066/100000 or 0.07066");
    c_cond->add_option("--gamma", cond.gamma, "exact rational");
    c_cond->add_flag("--scan", cond.scan, "scan the three-machine grid instead");
    c_cond->add_option("--alpha-range", cond.alpha_range, "lo:hi (scan)");
    c_cond->add_option("--gamma-range", cond.gamma_range, "lo:hi (scan)");
    c_cond->add_option("--steps", cond.steps, "grid steps per axis (scan)");
    c_cond->add_option("-o,--out", cond.out, "output file (default stdout)");
    c_cond->callback([&]() { rc = cmd_conditions(cond, out, err); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("otm");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_PARSE;
    }
    return rc;
}

}  // namespace otm
