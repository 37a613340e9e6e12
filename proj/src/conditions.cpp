#include "otm/conditions.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace otm {

using boost::multiprecision::cpp_int;

namespace {

enum class Sense { Ge, Gt, Le };  // canonical margin: LHS - RHS; Le passes when <= 0

ConditionRow row(std::string id, Sense sense, const rational& margin, bool authoritative = true,
                 std::string note = {}) {
    ConditionRow r;
    r.id = std::move(id);
    r.margin = margin;
    r.authoritative = authoritative;
    r.note = std::move(note);
    switch (sense) {
        case Sense::Ge: r.satisfied = margin >= 0; break;
        case Sense::Gt: r.satisfied = margin > 0; break;
        case Sense::Le: r.satisfied = margin <= 0; break;
    }
    return r;
}

ConditionRow unsatisfiable(std::string id, std::string note, bool authoritative = true) {
    ConditionRow r;
    r.id = std::move(id);
    r.satisfied = false;
    r.margin = 0;
    r.authoritative = authoritative;
    r.note = std::move(note);
    return r;
}

// Conservative rational stand-ins for the irrational coefficients
// 4^-17.75 = sqrt(2) * 2^-36 and 4^-18.75 = sqrt(2) * 2^-38. Both round
// sqrt(2) down (1.414213562 < sqrt(2)), so a strict ">" that passes with the
// substitute also passes with the true value.
const rational kCoefExact{cpp_int(1414213562), cpp_int(1000000000) << 36};
const rational kCoefAlt{cpp_int(1414213562), cpp_int(1000000000) << 38};

void finish(ConditionReport& rep) {
    rep.all_passed = true;
    for (const ConditionRow& r : rep.rows)
        if (r.authoritative && !r.satisfied) rep.all_passed = false;
}

}  // namespace

ConditionReport check_general(const Params& P) {
    const rational a = P.alpha, g = P.gamma;
    const int m = P.m;
    const rational ma1 = (m - 1) * a;  // (m-1) * alpha, used everywhere
    ConditionReport rep;

    if (a == 0)
        rep.rows.push_back(unsatisfiable("1", "gamma/alpha undefined at alpha = 0"));
    else
        rep.rows.push_back(row("1", Sense::Gt, g / a - m));
    rep.rows.push_back(row("2", Sense::Ge, g - ma1 - rational(2, 5)));

    // Conditions 3 and 8 share the denominator (3/4)m - 1 - (m-1)alpha.
    const rational D = rational(3 * m, 4) - 1 - ma1;
    if (D <= 0) {
        rep.rows.push_back(unsatisfiable("3", "denominator (3/4)m - 1 - (m-1)alpha <= 0"));
    } else {
        rational lhs3 = (m * g - rational(m, 4) - m * ma1) / D;
        rep.rows.push_back(row("3", Sense::Gt, lhs3 - rational(1, 3)));
    }
    rep.rows.push_back(row("4", Sense::Ge, g - (1 + rational(7, 2) * ma1) / rational(5, 2)));
    rep.rows.push_back(row("5", Sense::Ge, 4 * g - 2 * (2 * m - 3) * a - 1));
    rep.rows.push_back(row("6", Sense::Gt, (2 + kCoefExact * a) * g - 1, true,
                           "irrational coefficient replaced by a rational lower bound"));
    rep.rows.push_back(row("6-alt", Sense::Gt, (2 + kCoefAlt * a) * g - 1, false,
                           "variant with the exponent implied by the fixed rescaling"));
    rep.rows.push_back(row("7", Sense::Ge, 1 - m * a / (1 + ma1)));
    if (D <= 0)
        rep.rows.push_back(unsatisfiable("8", "denominator (3/4)m - 1 - (m-1)alpha <= 0"));
    else
        rep.rows.push_back(
            row("8", Sense::Ge, 2 * g / (1 + ma1) + (g - rational(1, 4) - ma1) / D - 1));
    rep.rows.push_back(row("9", Sense::Ge, 1 - ma1));
    rep.rows.push_back(row("10", Sense::Ge, rational(3 * m, 4) - 1 - m * ma1));
    rep.rows.push_back(row("10-alt", Sense::Ge, rational(3 * m, 4) - 1 - m * ma1 + 1, false,
                           "weaker printed form with the extra +1"));
    rep.rows.push_back(row("11", Sense::Ge, 1 + a - 2 * m * a * (1 - ma1)));
    rep.rows.push_back(row("12", Sense::Le, m * (1 - 2 * g) + (2 * m * ma1 + 1) * g - 1));
    rep.rows.push_back(row("13", Sense::Le, -rational(m, 2) + ma1 + 1));
    rep.rows.push_back(row("13-alt", Sense::Ge, rational(m, 2) - 1 - m * ma1, false,
                           "m-scaled printed form"));
    rep.rows.push_back(row("14", Sense::Ge, 1 - m * a * (1 - ma1)));
    rep.rows.push_back(
        row("15", Sense::Le, m * (rational(1, 2) - g) + m * ma1 * (rational(1, 2) + g) -
                                 rational(1, 2)));
    finish(rep);
    return rep;
}

ConditionReport check_m3(const rational& alpha, const rational& gamma) {
    const rational a = alpha, g = gamma;
    ConditionReport rep;
    rep.rows.push_back(row("m3-1", Sense::Gt, 3 * g - 5 * a - 1));
    if (a == 1)
        rep.rows.push_back(unsatisfiable("m3-2", "division by 1 - alpha at alpha = 1"));
    else
        rep.rows.push_back(row("m3-2", Sense::Ge, (2 - a) / (1 - a) * g - 1));
    rep.rows.push_back(row("m3-3", Sense::Ge, g * (rational(6) / (1 + 2 * a) - 1) - 2));
    rep.rows.push_back(row("9", Sense::Ge, 1 - 2 * a));
    rep.rows.push_back(row("10", Sense::Ge, rational(5, 4) - 6 * a));
    rep.rows.push_back(row("11", Sense::Ge, 1 - 5 * a + 12 * a * a));
    rep.rows.push_back(row("12", Sense::Le, 3 * (1 - 2 * g) + (12 * a + 1) * g - 1));
    rep.rows.push_back(row("13", Sense::Ge, rational(1, 2) - 6 * a));
    rep.rows.push_back(row("14", Sense::Ge, 1 - 3 * a * (1 - 2 * a)));
    rep.rows.push_back(row("15", Sense::Le,
                           3 * (rational(1, 2) - g) + 6 * a * (rational(1, 2) + g) -
                               rational(1, 2)));
    finish(rep);
    return rep;
}

Recommended recommended_params(int m) {
    if (m < 2) throw std::invalid_argument("recommended_params: m must be >= 2");
    Recommended rec;
    rec.params.m = m;
    if (m == 2) {
        // The two-machine point is irrational; expose the float policy values
        // as exact rationals of those floats. The condition system does not
        // cover m = 2.
        double a = (3.0 - std::sqrt(5.0)) / 2.0;
        double g = (std::sqrt(5.0) - 1.0) / 2.0;
        rec.params.alpha = rational(a);
        rec.params.gamma = rational(g);
        rec.gamma_feasible = rec.params.gamma;
        rec.lambda = 1;
        rec.conditions_applicable = false;
        return rec;
    }
    if (m == 3) {
        rec.params.alpha = rational(7066, 100000);
        rec.params.gamma = rational(482, 1000);       // the stated ratio minus one
        rec.gamma_feasible = rational(4817, 10000);   // the verified point
        rec.lambda = 1;
        return rec;
    }
    rec.params.alpha = rational(1, 4 * cpp_int(m) * m);
    rec.params.gamma = rational(1, 2) - rational(1, (cpp_int(1) << 40) * m * m);
    rec.gamma_feasible = rec.params.gamma;
    rec.lambda = std::pow(4.0, 25.0 / 6.0);
    return rec;
}

const std::vector<std::string>& m3_condition_ids() {
    static const std::vector<std::string> ids{"m3-1", "m3-2", "m3-3", "9",  "10",
                                              "11",   "12",   "13",   "14", "15"};
    return ids;
}

std::vector<ScanRow> scan_m3_region(const ScanGrid& grid) {
    if (grid.steps < 1) throw std::invalid_argument("scan_m3_region: steps must be >= 1");
    std::vector<ScanRow> rows;
    rows.reserve((grid.steps + 1) * (grid.steps + 1));
    for (int i = 0; i <= grid.steps; ++i) {
        rational a = grid.alpha_lo + (grid.alpha_hi - grid.alpha_lo) * i / grid.steps;
        for (int j = 0; j <= grid.steps; ++j) {
            rational g = grid.gamma_lo + (grid.gamma_hi - grid.gamma_lo) * j / grid.steps;
            ConditionReport rep = check_m3(a, g);
            ScanRow r;
            r.alpha = a;
            r.gamma = g;
            for (const ConditionRow& c : rep.rows) r.passed.push_back(c.satisfied);
            r.all_pass = rep.all_passed;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        pos = 1;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from == to) throw std::invalid_argument("parse_rational: missing digits in " + text);
        cpp_int v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("parse_rational: bad character in " + text);
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };

    rational value;
    std::size_t slash = s.find('/', pos);
    std::size_t dot = s.find('.', pos);
    if (slash != std::string::npos) {
        if (dot != std::string::npos)
            throw std::invalid_argument("parse_rational: mixed forms in " + text);
        cpp_int num = digits(pos, slash);
        cpp_int den = digits(slash + 1, s.size());
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in " + text);
        value = rational(num, den);
    } else if (dot != std::string::npos) {
        cpp_int ip = dot > pos ? digits(pos, dot) : cpp_int(0);
        cpp_int fp = digits(dot + 1, s.size());
        cpp_int scale = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
        value = rational(ip * scale + fp, scale);
    } else {
        value = rational(digits(pos, s.size()));
    }
    return negative ? -value : value;
}

std::string rational_str(const rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

}  // namespace otm
