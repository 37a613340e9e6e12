#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "otm/core.hpp"

namespace otm {

// The whole module computes in exact rationals. The recommended gamma differs
// from 1/2 by 4^-20 / m^2, far below double resolution for large m, and the
// strict inequalities would silently saturate in floats.
using rational = boost::multiprecision::cpp_rational;

struct Params {
    int m = 2;
    rational alpha;
    rational gamma;
};

struct ConditionRow {
    std::string id;       // "1".."15", "6-alt", "m3-1", ...
    bool satisfied = false;
    rational margin;      // LHS - RHS in the condition's canonical form
    bool authoritative = true;  // "-alt" variants are reported but not gating
    std::string note;
};

struct ConditionReport {
    std::vector<ConditionRow> rows;
    bool all_passed = false;  // over authoritative rows only
};

// The fifteen general-m conditions, plus the alternate printed forms of
// conditions 6, 10 and 13 under "-alt" ids. The irrational coefficient
// 4^-17.75 in condition 6 is replaced by a rational lower bound so a strict
// ">" pass stays sound.
ConditionReport check_general(const Params& params);

// The ten three-machine conditions: three specific ones plus conditions 9-15
// specialized to m = 3 exactly as printed.
ConditionReport check_m3(const rational& alpha, const rational& gamma);

struct Recommended {
    Params params;            // exact values the checker consumes
    double lambda = 1;        // policy-facing rescaling factor
    rational gamma_feasible;  // feasibility is additionally checked here
                              // (differs from params.gamma only at m = 3)
    bool conditions_applicable = true;
};

// m >= 4: alpha = 1/(4m^2), gamma = 1/2 - 4^-20/m^2, lambda = 4^(25/6).
// m = 3: alpha = 0.07066 with gamma 0.482 reported and 0.4817 checked.
// m = 2: the closed-form two-machine point; conditions not applicable.
Recommended recommended_params(int m);

struct ScanGrid {
    rational alpha_lo, alpha_hi;
    rational gamma_lo, gamma_hi;
    int steps = 100;  // steps+1 exact grid points per axis
};

struct ScanRow {
    rational alpha, gamma;
    std::vector<bool> passed;  // aligned with m3_condition_ids()
    bool all_pass = false;
};

const std::vector<std::string>& m3_condition_ids();
std::vector<ScanRow> scan_m3_region(const ScanGrid& grid);

// Accepts "p/q", integers and plain decimals ("0.07066"), parsed exactly.
rational parse_rational(const std::string& text);  // throws std::invalid_argument
std::string rational_str(const rational& value);

}  // namespace otm
