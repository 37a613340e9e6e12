#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "otm/conditions.hpp"

using namespace otm;
using boost::multiprecision::cpp_int;

namespace {

const ConditionRow& row_of(const ConditionReport& rep, const std::string& id) {
    for (const ConditionRow& r : rep.rows)
        if (r.id == id) return r;
    throw std::logic_error("no row " + id);
}

}  // namespace

TEST_SUITE("conditions") {

TEST_CASE("recommended m = 4 point satisfies every gating condition") {
    Recommended rec = recommended_params(4);
    REQUIRE(rec.conditions_applicable);
    CHECK(rec.params.alpha == rational(1, 64));
    CHECK(rec.params.gamma == rational(1, 2) - rational(1, (cpp_int(1) << 40) * 16));

    ConditionReport rep = check_general(rec.params);
    CHECK(rep.all_passed);

    // condition 6 passes on a razor-thin but strictly positive margin;
    // the alternate printed form of the same condition genuinely fails here
    const ConditionRow& c6 = row_of(rep, "6");
    CHECK(c6.satisfied);
    CHECK(c6.margin > 0);
    CHECK(c6.margin < rational(1, cpp_int(10'000'000'000)));
    const ConditionRow& c6a = row_of(rep, "6-alt");
    CHECK_FALSE(c6a.satisfied);
    CHECK_FALSE(c6a.authoritative);
    CHECK(row_of(rep, "10-alt").satisfied);
    CHECK_FALSE(row_of(rep, "10-alt").authoritative);
    CHECK(row_of(rep, "13-alt").satisfied);
    CHECK_FALSE(row_of(rep, "13-alt").authoritative);
}

TEST_CASE("general conditions reject bad points") {
    Params p;
    p.m = 4;
    p.alpha = rational(1, 64);
    p.gamma = rational(3, 10);  // far below the working range
    ConditionReport rep = check_general(p);
    CHECK_FALSE(rep.all_passed);
    CHECK_FALSE(row_of(rep, "2").satisfied);

    // alpha = 0 makes the gamma/alpha ratio in condition 1 meaningless
    p.alpha = 0;
    p.gamma = rational(1, 2);
    ConditionReport zero = check_general(p);
    CHECK_FALSE(row_of(zero, "1").satisfied);
    CHECK_FALSE(row_of(zero, "1").note.empty());

    // alpha large enough to break the load bound in condition 10
    Params big{4, rational(18, 100), recommended_params(4).params.gamma};
    ConditionReport wide = check_general(big);
    CHECK_FALSE(wide.all_passed);
    CHECK_FALSE(row_of(wide, "10").satisfied);

    Params mid{6, rational(11, 100), recommended_params(6).params.gamma};
    ConditionReport six = check_general(mid);
    CHECK_FALSE(six.all_passed);
    CHECK_FALSE(row_of(six, "12").satisfied);
}

TEST_CASE("recommended points pass across a spread of machine counts") {
    for (int m : {4, 5, 17, 100, 999, 1000}) {
        CAPTURE(m);
        Recommended rec = recommended_params(m);
        CHECK(check_general(rec.params).all_passed);
    }
    // m = 100 gamma is written down exactly, not via a double detour
    CHECK(recommended_params(100).params.gamma ==
          rational(1, 2) - rational(1, (cpp_int(1) << 40) * 100 * 100));
}

TEST_CASE("large m: exact arithmetic is not optional") {
    // At m = 1000 condition 6 holds by a margin around 7e-19. Every double
    // rendition of the same expression collapses to exactly zero, and a strict
    // inequality on zero is a fail. This is why the checker runs on rationals.
    Recommended rec = recommended_params(1000);
    ConditionReport rep = check_general(rec.params);
    const ConditionRow& c6 = row_of(rep, "6");
    CHECK(c6.satisfied);
    CHECK(c6.margin > 0);
    CHECK(c6.margin < rational(1, cpp_int("1000000000000000000")));

    double gamma_d = rec.params.gamma.convert_to<double>();
    CHECK(gamma_d == 0.5);  // the 4^-20/m^2 offset is below double resolution
    double coef_d = 1414213562.0 / 1e9 / std::pow(2.0, 36);
    double alpha_d = rec.params.alpha.convert_to<double>();
    CHECK((2.0 + coef_d * alpha_d) * gamma_d - 1.0 == 0.0);
}

TEST_CASE("three-machine conditions at the published point") {
    ConditionReport rep = check_m3(rational(7066, 100000), rational(4817, 10000));
    CHECK(rep.all_passed);
    CHECK(rep.rows.size() == m3_condition_ids().size());

    // alpha = 1/12 is outside the region: the first specific condition breaks
    ConditionReport far = check_m3(rational(1, 12), rational(45, 100));
    CHECK_FALSE(row_of(far, "m3-1").satisfied);
    CHECK_FALSE(far.all_passed);

    // the degenerate corner (alpha 0, gamma 1/2) still satisfies everything
    CHECK(check_m3(0, rational(1, 2)).all_passed);
}

TEST_CASE("three-machine region scan") {
    ScanGrid point;
    point.alpha_lo = point.alpha_hi = rational(7066, 100000);
    point.gamma_lo = point.gamma_hi = rational(4817, 10000);
    point.steps = 1;
    for (const ScanRow& r : scan_m3_region(point)) {
        CHECK(r.alpha == rational(7066, 100000));
        CHECK(r.all_pass);
    }

    ScanGrid off;
    off.alpha_lo = off.alpha_hi = rational(2, 10);
    off.gamma_lo = off.gamma_hi = rational(49, 100);
    off.steps = 1;
    std::vector<ScanRow> rows = scan_m3_region(off);
    REQUIRE_FALSE(rows.empty());
    size_t idx13 = 0;
    for (size_t i = 0; i < m3_condition_ids().size(); ++i)
        if (m3_condition_ids()[i] == "13") idx13 = i;
    CHECK_FALSE(rows.front().passed[idx13]);  // 1/2 - 6 alpha < 0 at alpha 0.2
    CHECK_FALSE(rows.front().all_pass);
}

TEST_CASE("recommended parameters: edge machine counts") {
    Recommended two = recommended_params(2);
    CHECK_FALSE(two.conditions_applicable);
    CHECK(two.params.alpha.convert_to<double>() == doctest::Approx(0.3819660112501051).epsilon(1e-15));
    CHECK(two.lambda == 1.0);

    Recommended three = recommended_params(3);
    CHECK(three.params.alpha == rational(7066, 100000));
    CHECK(three.params.gamma == rational(482, 1000));
    CHECK(three.gamma_feasible == rational(4817, 10000));

    CHECK(recommended_params(4).lambda == doctest::Approx(std::pow(4.0, 25.0 / 6.0)).epsilon(1e-15));
    CHECK_THROWS_AS(recommended_params(1), std::invalid_argument);
}

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("7066/100000") == parse_rational("0.07066"));
    CHECK(parse_rational("-3/4") == rational(-3, 4));
    CHECK(parse_rational("2") == 2);
    CHECK(parse_rational(" 1/2 ") == rational(1, 2));
    CHECK(parse_rational("0.5") == rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1e-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
    CHECK(rational_str(rational(1, 3)) == "1/3");
    CHECK(rational_str(rational(2)) == "2");
    CHECK(rational_str(parse_rational("0.07066")) == "3533/50000");
}

}
