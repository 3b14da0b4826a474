#include "rootshell/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rootshell/quad.hpp"

namespace rootshell {

namespace {

void validate_sigma(const RootSystem& rs, const std::vector<int>& sigma) {
    if ((int)sigma.size() != rs.rank)
        throw std::invalid_argument(
            "sigma must be a permutation of the base positions");
    std::vector<char> seen(rs.rank, 0);
    for (int v : sigma) {
        if (v < 0 || v >= rs.rank || seen[v])
            throw std::invalid_argument(
                "sigma must be a permutation of the base positions");
        seen[v] = 1;
    }
}

// Chain data for one ordering: level membership, the difference sets between
// consecutive levels, and positive counts.  A root sits at every level up to
// the first sigma-position where its simple coordinate is nonzero.
struct Chain {
    std::vector<std::vector<int>> level;  // level[i], i = 0..r
    std::vector<std::vector<int>> diff;   // diff[i-1] = level[i-1] \ level[i]
    std::vector<int> pos_count;
};

Chain build_chain(const RootSystem& rs, const std::vector<int>& sigma) {
    const int r = rs.rank;
    Chain c;
    c.level.assign(r + 1, {});
    c.diff.assign(r, {});
    c.pos_count.assign(r + 1, 0);
    for (int idx = 0; idx < rs.num_roots(); ++idx) {
        int depth = 0;
        while (depth < r && rs.simple_coords[idx][sigma[depth]] == 0) ++depth;
        for (int i = 0; i <= depth; ++i) {
            c.level[i].push_back(idx);
            if (rs.is_positive[idx]) ++c.pos_count[i];
        }
        if (depth < r) c.diff[depth].push_back(idx);
    }
    return c;
}

ExponentProfile make_profile(const Chain& c, const std::vector<char>& outside_pos,
                             const std::vector<int>& perm, int r) {
    ExponentProfile p;
    p.n.assign(r, 0);
    p.s.assign(r, 0);
    p.S.assign(r + 1, 0);
    p.e.assign(r + 1, 0);
    for (int i = 1; i <= r; ++i) {
        int hit = 0;
        for (int idx : c.diff[i - 1]) hit += outside_pos[perm[idx]];
        p.n[i - 1] = hit;
        p.s[i - 1] = c.pos_count[i - 1] - c.pos_count[i] - 2 * hit;
    }
    for (int i = 0; i <= r; ++i) {
        int hit = 0;
        for (int idx : c.level[i]) hit += outside_pos[perm[idx]];
        p.S[i] = c.pos_count[i] - 2 * hit;
    }
    for (int l = 1; l <= r; ++l)
        p.e[l] = p.e[l - 1] + (p.S[l] + r == l ? 1 : 0);
    return p;
}

std::vector<char> outside_positives(const RootSystem& rs,
                                    const std::vector<char>& m_member) {
    std::vector<char> out(rs.num_roots(), 0);
    for (int idx = 0; idx < rs.num_roots(); ++idx)
        out[idx] = rs.is_positive[idx] && !m_member[idx];
    return out;
}

void validate_mask(const RootSystem& rs, const SubsystemMask& M,
                   const char* who) {
    if (M.parent != &rs)
        throw std::invalid_argument(std::string(who) +
                                    ": subsystem belongs to a different root system");
}

}  // namespace

SubsystemMask phi_sigma_i(const RootSystem& rs, const std::vector<int>& sigma,
                          int i) {
    validate_sigma(rs, sigma);
    if (i < 0 || i > rs.rank)
        throw std::invalid_argument("phi_sigma_i: level out of range");
    const std::vector<RatVec> weights = fundamental_weights(rs);
    std::vector<RatVec> normals;
    for (int j = 0; j < i; ++j) normals.push_back(weights[sigma[j]]);
    return orthogonal_subsystem(rs, normals);
}

const ExponentProfile& ExponentTable::row(int sigma_index, int w_index) const {
    if (sigma_index < 0 || sigma_index >= (int)sigmas.size() || w_index < 0 ||
        w_index >= (int)elements.size())
        throw std::out_of_range("ExponentTable::row");
    return rows[(size_t)sigma_index * elements.size() + w_index];
}

ExponentTable exponent_table(const RootSystem& rs, const SubsystemMask& M) {
    validate_mask(rs, M, "exponent_table");
    if (rs.rank > 5)
        throw std::invalid_argument(
            "exponent_table: rank capped at 5 (full Weyl enumeration)");
    ExponentTable tbl;
    tbl.rs = &rs;
    tbl.m_member.assign(rs.num_roots(), 0);
    for (int idx : M.member_roots) {
        tbl.m_member[idx] = 1;
        if (rs.is_positive[idx]) ++tbl.m_positive;
    }
    const std::vector<char> outside = outside_positives(rs, tbl.m_member);

    std::vector<int> sig(rs.rank);
    std::iota(sig.begin(), sig.end(), 0);
    do {
        tbl.sigmas.push_back(sig);
    } while (std::next_permutation(sig.begin(), sig.end()));

    tbl.elements = weyl_enumerate(rs);
    tbl.rows.reserve(tbl.sigmas.size() * tbl.elements.size());
    for (int si = 0; si < (int)tbl.sigmas.size(); ++si) {
        const Chain c = build_chain(rs, tbl.sigmas[si]);
        for (int wi = 0; wi < (int)tbl.elements.size(); ++wi) {
            ExponentProfile p =
                make_profile(c, outside, tbl.elements[wi].perm, rs.rank);
            p.sigma_index = si;
            p.w_index = wi;
            for (int v : p.s) tbl.max_abs_s = std::max(tbl.max_abs_s, std::abs(v));
            tbl.k = std::max(tbl.k, p.e[rs.rank]);
            tbl.rows.push_back(std::move(p));
        }
    }
    return tbl;
}

TableReport check_S_identities(const ExponentTable& tbl) {
    const RootSystem& rs = *tbl.rs;
    const int r = rs.rank;
    TableReport rep;
    for (int si = 0; si < (int)tbl.sigmas.size(); ++si) {
        const Chain c = build_chain(rs, tbl.sigmas[si]);
        for (int wi = 0; wi < (int)tbl.elements.size(); ++wi) {
            const ExponentProfile& p = tbl.row(si, wi);
            ++rep.rows_checked;
            auto flag = [&](int i, const std::string& what) {
                rep.ok = false;
                rep.issues.push_back({si, i, wi, what});
            };
            if (p.S[0] != 2 * tbl.m_positive - rs.num_positive())
                flag(0, "S(0) != 2|M+| - |Phi+|");
            if (p.S[r] != 0) flag(r, "S(r) != 0");
            int telescoped = 0;
            for (int i = 1; i <= r; ++i) {
                telescoped += p.s[i - 1];
                if (p.s[i - 1] != p.S[i - 1] - p.S[i])
                    flag(i, "recursion S(i) + s(i) = S(i-1) fails");
            }
            if (telescoped != p.S[0] - p.S[r])
                flag(r, "telescoping sum of s fails");
            // independent recomputation: S(i) = |M meet w(level i)| - |pos level i|
            const std::vector<int>& perm = tbl.elements[wi].perm;
            for (int i = 0; i <= r; ++i) {
                int in_m = 0;
                for (int idx : c.level[i]) in_m += tbl.m_member[perm[idx]];
                if (p.S[i] != in_m - c.pos_count[i])
                    flag(i, "set recomputation of S fails");
            }
        }
    }
    return rep;
}

TableReport check_S_lower_bound(const ExponentTable& tbl) {
    const int r = tbl.rs->rank;
    TableReport rep;
    for (int si = 0; si < (int)tbl.sigmas.size(); ++si) {
        for (int wi = 0; wi < (int)tbl.elements.size(); ++wi) {
            const ExponentProfile& p = tbl.row(si, wi);
            ++rep.rows_checked;
            for (int i = 0; i <= r; ++i) {
                if (p.S[i] + r < i) {
                    rep.ok = false;
                    std::ostringstream os;
                    os << "S(" << i << ") + " << r << " = " << p.S[i] + r
                       << " < " << i;
                    rep.issues.push_back({si, i, wi, os.str()});
                }
            }
        }
    }
    return rep;
}

int log_exponent_k(const RootSystem& rs, const SubsystemMask& M) {
    const ExponentTable tbl = exponent_table(rs, M);
    const TableReport bound = check_S_lower_bound(tbl);
    if (!bound.ok) {
        const TableIssue& first = bound.issues.front();
        std::ostringstream os;
        os << "log_exponent_k: level bound fails (ordering #" << first.sigma_index
           << ", i = " << first.i << ", w #" << first.w_index << ": "
           << first.what << ")";
        throw std::domain_error(os.str());
    }
    return tbl.k;
}

double nested_power_integral(const std::vector<int>& s, double t, int N,
                             double abs_tol) {
    const int l = (int)s.size();
    if (l == 0) return 1.0;
    if (!(t > 1.0))
        throw std::invalid_argument("nested_power_integral: t must exceed 1");
    const double a = 1.0 / t;
    // Worst-case polynomial growth of the inner nest at large x; the damping
    // must beat it by more than one power for the outer tail to converge.
    int growth = 0;
    for (int j = l - 1; j >= 1; --j) growth = std::max(0, s[j] + 1 + growth);
    if (s[0] + growth - N >= -1)
        throw std::invalid_argument(
            "nested_power_integral: N too small for convergence");

    // innermost axis: a bare power, integrated in closed form
    auto inner_exact = [&](double y) -> double {
        const int p = s[l - 1];
        if (p == -1) return std::log(y) - std::log(a);
        return (std::pow(y, p + 1) - std::pow(a, p + 1)) / (p + 1);
    };
    std::function<double(int, double)> level = [&](int j, double y) -> double {
        if (j == l) return inner_exact(y);
        return adaptive_integrate(
            [&](double x) { return std::pow(x, s[j - 1]) * level(j + 1, x); }, a,
            y, abs_tol * 1e-2);
    };
    auto outer = [&](double x) -> double {
        const double damped = std::pow(1.0 + x, -N) * std::pow(x, s[0]);
        return l == 1 ? damped : damped * level(2, x);
    };
    return integrate_semi_infinite(outer, a, abs_tol);
}

double I_integral(const RootSystem& rs, const SubsystemMask& M,
                  const std::vector<int>& sigma, int l, const WeylElement& w,
                  double t, int N) {
    validate_mask(rs, M, "I_integral");
    validate_sigma(rs, sigma);
    if (l < 0 || l > rs.rank)
        throw std::invalid_argument("I_integral: l out of range");
    if (!(t > 1.0)) throw std::invalid_argument("I_integral: t must exceed 1");
    if ((int)w.perm.size() != rs.num_roots())
        throw std::invalid_argument(
            "I_integral: element does not act on this root system");
    if (l == 0) return 1.0;

    std::vector<char> m_member(rs.num_roots(), 0);
    for (int idx : M.member_roots) m_member[idx] = 1;
    const Chain c = build_chain(rs, sigma);
    const ExponentProfile p =
        make_profile(c, outside_positives(rs, m_member), w.perm, rs.rank);

    if (N < 0) N = rs.rank + exponent_table(rs, M).max_abs_s + 2;
    int row_max = 0;
    for (int v : p.s) row_max = std::max(row_max, std::abs(v));
    if (N <= rs.rank + row_max)
        throw std::invalid_argument("I_integral: N too small for convergence");

    const std::vector<int> prefix(p.s.begin(), p.s.begin() + l);
    const double tol = l <= 2 ? 1e-8 : 1e-6;
    return nested_power_integral(prefix, t, N, tol);
}

PowerKReport verify_power_k(const RootSystem& rs, const SubsystemMask& M,
                            const std::vector<double>& t_grid) {
    if (rs.rank > 3)
        throw std::invalid_argument(
            "verify_power_k: rank capped at 3 (nested quadrature cost)");
    if (t_grid.empty())
        throw std::invalid_argument("verify_power_k: empty t grid");
    for (double t : t_grid)
        if (!(t > 1.0))
            throw std::invalid_argument("verify_power_k: every t must exceed 1");

    const ExponentTable tbl = exponent_table(rs, M);
    const TableReport bound = check_S_lower_bound(tbl);
    if (!bound.ok)
        throw std::domain_error(
            "verify_power_k: level bound fails; the normalization presumes it");

    const int r = rs.rank;
    PowerKReport rep;
    rep.t_grid = t_grid;
    rep.N = r + tbl.max_abs_s + 2;
    rep.tol_low_dim = 1e-8;
    rep.tol_dim3 = 1e-6;
    rep.k = tbl.k;
    rep.max_ratio_per_t.assign(t_grid.size(), 0.0);

    std::map<std::vector<int>, std::vector<double>> cache;
    for (const ExponentProfile& p : tbl.rows) {
        for (int l = 0; l <= r; ++l) {
            const std::vector<int> prefix(p.s.begin(), p.s.begin() + l);
            auto it = cache.find(prefix);
            if (it == cache.end()) {
                std::vector<double> vals;
                const double tol = l <= 2 ? rep.tol_low_dim : rep.tol_dim3;
                for (double t : t_grid)
                    vals.push_back(nested_power_integral(prefix, t, rep.N, tol));
                it = cache.emplace(prefix, std::move(vals)).first;
            }
            PowerKRow row;
            row.sigma_index = p.sigma_index;
            row.l = l;
            row.w_index = p.w_index;
            row.s_prefix = prefix;
            row.S_l = p.S[l];
            row.e_l = p.e[l];
            for (size_t ti = 0; ti < t_grid.size(); ++ti) {
                const double t = t_grid[ti];
                const double lhs =
                    std::pow(t, (double)(-p.S[l] + l - r)) * it->second[ti];
                const double ratio = lhs / std::pow(std::log(t), (double)p.e[l]);
                row.lhs.push_back(lhs);
                row.ratio.push_back(ratio);
                rep.max_ratio = std::max(rep.max_ratio, ratio);
                rep.max_ratio_per_t[ti] = std::max(rep.max_ratio_per_t[ti], ratio);
            }
            for (size_t ti = 0; ti + 1 < row.ratio.size(); ++ti)
                if (row.ratio[ti + 1] > row.ratio[ti] * (1.0 + 1e-9) + 1e-15)
                    row.nonincreasing = false;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

}  // namespace rootshell
