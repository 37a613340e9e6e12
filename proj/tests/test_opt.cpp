#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "otm/instances.hpp"
#include "otm/opt.hpp"
#include "otm/policies.hpp"

using namespace otm;

namespace {

Instance random_instance(std::uint64_t seed, int n, int m, double span = 1.0) {
    RandomSpec spec;
    spec.seed = seed;
    spec.n = n;
    spec.m = m;
    spec.release_span = span;
    return gen_random(spec);
}

}  // namespace

TEST_SUITE("opt") {

TEST_CASE("single machine: release-order greedy folds") {
    CHECK(single_machine_makespan({}) == 0.0);
    CHECK(single_machine_makespan({{1, 0, 1}, {2, 0, 1}}) == doctest::Approx(2.0));
    CHECK(single_machine_makespan({{1, 0, 1}, {2, 5, 1}}) == doctest::Approx(6.0));
    CHECK(single_machine_makespan({{1, 1e-6, 2}}) == doctest::Approx(2.0 + 1e-6));
    // order of the input list must not matter
    CHECK(single_machine_makespan({{2, 5, 1}, {1, 0, 1}}) == doctest::Approx(6.0));
}

TEST_CASE("lower bound covers both the tail job and the volume argument") {
    // single long job dominates
    Instance a{4, {{1, 3.0, 2.0}}};
    CHECK(lower_bound(a) == doctest::Approx(5.0));
    // volume dominates: 4 unit jobs on 2 machines
    Instance b{2, {{1, 0, 1}, {2, 0, 1}, {3, 0, 1}, {4, 0, 1}}};
    CHECK(lower_bound(b) == doctest::Approx(2.0));
    // volume released late: r + suffix work / m
    Instance c{2, {{1, 0, 0.1}, {2, 1, 1}, {3, 1, 1}, {4, 1, 1}, {5, 1, 1}}};
    CHECK(lower_bound(c) == doctest::Approx(3.0));
}

TEST_CASE("exact optimum of the hard families") {
    OptResult r = exact_opt(gen_one_one_two(2, 0.5));
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-12));
    REQUIRE(r.trace.has_value());
    CHECK(makespan(*r.trace) == doctest::Approx(2.5).epsilon(1e-12));

    CHECK(exact_opt(gen_case1(6)).value == doctest::Approx(1.0));
    CHECK(exact_opt(gen_case2(6, 0.1, 1e-6)).value == doctest::Approx(1.0 + 1e-6));
}

TEST_CASE("the returned trace is a valid schedule achieving the value") {
    Instance inst = random_instance(3, 8, 3);
    OptResult r = exact_opt(inst);
    REQUIRE(r.trace.has_value());
    const ScheduleTrace& tr = *r.trace;
    CHECK(makespan(tr) == doctest::Approx(r.value).epsilon(1e-12));
    for (const StartRecord& s : tr.starts) {
        const Job* j = find_job(inst, s.job_id);
        REQUIRE(j != nullptr);
        CHECK(s.start >= j->release - 1e-12);
        CHECK(s.completion == doctest::Approx(s.start + j->proc).epsilon(1e-12));
    }
    // machines never overlap
    for (int k = 0; k < inst.m; ++k) {
        std::vector<const StartRecord*> on;
        for (const StartRecord& s : tr.starts)
            if (s.machine == k) on.push_back(&s);
        std::sort(on.begin(), on.end(),
                  [](auto* a, auto* b) { return a->start < b->start; });
        for (std::size_t i = 0; i + 1 < on.size(); ++i)
            CHECK(on[i]->completion <= on[i + 1]->start + 1e-12);
    }
}

TEST_CASE("matches brute-force enumeration on seeded instances") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(gen() % 6);  // 3..8
        int m = 2 + static_cast<int>(gen() % 3);  // 2..4
        Instance inst = random_instance(gen(), n, m, trial % 2 ? 0.5 : 2.0);
        OptResult r = exact_opt(inst);
        REQUIRE(r.exact);
        double ref = brute_force_opt(inst);
        CHECK(r.value == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("value is invariant under job permutation") {
    Instance inst = random_instance(17, 7, 3);
    double base = exact_opt(inst).value;
    std::mt19937_64 gen(5);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(inst.jobs.begin(), inst.jobs.end(), gen);
        CHECK(exact_opt(inst).value == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("more machines never hurt") {
    Instance inst = random_instance(23, 8, 2);
    double prev = exact_opt(inst).value;
    for (int m = 3; m <= 5; ++m) {
        inst.m = m;
        double cur = exact_opt(inst).value;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("budget exhaustion yields a certified bound, not a wrong answer") {
    Instance inst = random_instance(41, 11, 3);
    OptResult full = exact_opt(inst);
    REQUIRE(full.exact);
    OptResult starved = exact_opt(inst, 5);
    if (!starved.exact) {
        CHECK_FALSE(starved.trace.has_value());
        CHECK(starved.value <= full.value + 1e-12);
        CHECK(starved.value >= lower_bound(inst) - 1e-12);
    } else {
        // a budget of 5 may still suffice if pruning closed the tree
        CHECK(starved.value == doctest::Approx(full.value).epsilon(1e-12));
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(exact_opt(gen_case1(2), 0), std::invalid_argument);
    CHECK_THROWS_AS(exact_opt(Instance{0, {{1, 0, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(exact_opt(Instance{2, {}}), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_opt(random_instance(1, 13, 2)), std::invalid_argument);
}

TEST_CASE("ratio: LPT on one-one-two approaches 3/2") {
    RatioResult r = ratio(gen_one_one_two(2, 1e-6), lpt());
    CHECK(r.certified);
    CHECK(r.alg == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.opt.value == doctest::Approx(2.0 + 1e-6).epsilon(1e-12));
    CHECK(r.ratio_or_bound == doctest::Approx(3.0 / (2.0 + 1e-6)).epsilon(1e-9));
}

TEST_CASE("ratio: simultaneous unit jobs under static locking") {
    RatioResult r = ratio(gen_case1(6), PolicyParams{0.25, 1.0});
    CHECK(r.certified);
    CHECK(r.alg == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(r.opt.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ratio_or_bound == doctest::Approx(2.25).epsilon(1e-12));
}

}
