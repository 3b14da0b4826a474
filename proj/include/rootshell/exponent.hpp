#pragma once

#include <string>
#include <vector>

#include "rootshell/root_system.hpp"
#include "rootshell/subsystems.hpp"
#include "rootshell/weyl.hpp"

namespace rootshell {

// Counting calculus along descending orthogonal-complement chains, and the
// ordered-cone integrals it controls.
//
// For a base ordering sigma, level i of the chain keeps the roots orthogonal
// to the first i fundamental weights (equivalently: the standard subsystem on
// the not-yet-removed nodes).  Level 0 is the whole system, level r is empty.
SubsystemMask phi_sigma_i(const RootSystem& rs, const std::vector<int>& sigma,
                          int i);

// Per (sigma, w), the integer profile along the chain:
//   n[i-1]  outside-the-Levi positives hit by w on the level-(i-1) minus
//           level-i difference set, i = 1..r
//   s[i-1]  = |pos level i-1| - |pos level i| - 2 n[i-1]
//   S[i]    = |pos level i| - 2 |outside-positives hit on level i|, i = 0..r
//   e[l]    = #{ 1 <= i <= l : S[i] + r == i },  e[0] = 0
struct ExponentProfile {
    int sigma_index = 0;
    int w_index = 0;
    std::vector<int> n, s, S, e;
};

struct ExponentTable {
    const RootSystem* rs = nullptr;
    std::vector<char> m_member;  // per root index: lies in M
    int m_positive = 0;          // number of positive roots of M
    std::vector<std::vector<int>> sigmas;  // all orderings, lexicographic
    std::vector<WeylElement> elements;     // fixes w_index
    std::vector<ExponentProfile> rows;     // rows[sigma_index * |W| + w_index]
    int max_abs_s = 0;
    int k = 0;  // max over rows of e[r]

    const ExponentProfile& row(int sigma_index, int w_index) const;
};

// Full profile table over orderings x Weyl group.  Rank is capped at 5; the
// cap is a contract (full W enumeration), larger ranks are rejected, never
// sampled.
ExponentTable exponent_table(const RootSystem& rs, const SubsystemMask& M);

struct TableIssue {
    int sigma_index = 0;
    int i = 0;
    int w_index = 0;
    std::string what;
};

struct TableReport {
    bool ok = true;
    long long rows_checked = 0;
    std::vector<TableIssue> issues;
};

// Exact integer checks, row by row: the recursion S(i) + s(i) = S(i-1), an
// independent set-counting recomputation of S, the telescoping sum of s, and
// the endpoint values of S.
TableReport check_S_identities(const ExponentTable& tbl);

// S(i) + r >= i for every (sigma, i, w).  Violations are reported per triple;
// they appear exactly when M fails the density inequality for some chain-tail
// shape (e.g. the A1xA1 Levi inside B3 violates at i = 0).
TableReport check_S_lower_bound(const ExponentTable& tbl);

// max_l e[l] over the whole table.  Throws domain_error naming a violating
// triple when the lower bound fails, since the count is then meaningless.
int log_exponent_k(const RootSystem& rs, const SubsystemMask& M);

// Ordered-cone integral
//   int_{x_1 > x_2 > ... > x_l > 1/t} (1 + x_1)^{-N} prod_i x_i^{s(i)} dx,
// evaluated axis by axis (outermost axis mapped to a finite interval, inner
// axes by adaptive panels, the innermost bare power in closed form).
// l = 0 returns 1 exactly.
double nested_power_integral(const std::vector<int>& s, double t, int N,
                             double abs_tol);

// Same integral addressed by (sigma, l, w).  N < 0 selects the default
// rank + max|s| + 2 with the max taken over the whole table, the smallest
// margin that keeps every axis of every row integrable.
double I_integral(const RootSystem& rs, const SubsystemMask& M,
                  const std::vector<int>& sigma, int l, const WeylElement& w,
                  double t, int N = -1);

struct PowerKRow {
    int sigma_index = 0;
    int l = 0;
    int w_index = 0;
    std::vector<int> s_prefix;
    int S_l = 0;
    int e_l = 0;
    std::vector<double> lhs;    // t^{-S(l)+l-r} I_l(t), per grid point
    std::vector<double> ratio;  // lhs / (log t)^{e_l}
    bool nonincreasing = true;  // observed trend across the grid
};

struct PowerKReport {
    std::vector<double> t_grid;
    int N = 0;
    double tol_low_dim = 0.0;  // quadrature tolerance, dimension <= 2
    double tol_dim3 = 0.0;     // quadrature tolerance, dimension 3
    int k = 0;
    std::vector<PowerKRow> rows;
    double max_ratio = 0.0;
    std::vector<double> max_ratio_per_t;
};

// Normalized-ratio scan over every (sigma, l, w) and the t grid.  Requires
// the lower bound to hold (the normalization presumes it) and rank <= 3 for
// quadrature cost.  Integrals are deduplicated across rows sharing a power
// prefix.
PowerKReport verify_power_k(const RootSystem& rs, const SubsystemMask& M,
                            const std::vector<double>& t_grid = {10.0, 1e2, 1e3,
                                                                 1e4});

}  // namespace rootshell
