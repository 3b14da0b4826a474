#include "rootshell/subsystems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "rootshell/linalg.hpp"

namespace rootshell {

bool SubsystemMask::contains(int root_idx) const {
    return std::binary_search(member_roots.begin(), member_roots.end(), root_idx);
}

std::vector<int> SubsystemMask::positive_members() const {
    std::vector<int> out;
    for (int i : member_roots)
        if (parent->is_positive[i]) out.push_back(i);
    return out;
}

int SubsystemMask::rank() const {
    RatMat rows;
    for (int i : member_roots) rows.push_back(parent->roots[i]);
    return (int)rootshell::rank(rows);
}

SubsystemMask standard_subsystem(const RootSystem& rs, const std::vector<int>& nodes) {
    RatMat gens;
    for (int j : nodes) gens.push_back(rs.simple(j));
    SubsystemMask mask;
    mask.parent = &rs;
    mask.generator_nodes = nodes;
    for (int i = 0; i < rs.num_roots(); ++i)
        if (!gens.empty() && linearly_dependent(gens, rs.roots[i]))
            mask.member_roots.push_back(i);
    return mask;
}

SubsystemMask orthogonal_subsystem(const RootSystem& rs,
                                   const std::vector<RatVec>& normals) {
    SubsystemMask mask;
    mask.parent = &rs;
    mask.generator_normals = normals;
    for (int i = 0; i < rs.num_roots(); ++i) {
        bool ok = true;
        for (const auto& n : normals)
            if (!dot(rs.roots[i], n).is_zero()) { ok = false; break; }
        if (ok) mask.member_roots.push_back(i);
    }
    return mask;
}

namespace {

// Does some product of the reflections at `nodes` send root #idx negative?
// BFS over the (small) orbit of the root under those reflections.
bool orbit_reaches_negative(const RootSystem& rs, const std::vector<int>& nodes, int idx) {
    std::deque<int> queue{idx};
    std::vector<char> seen(rs.num_roots(), 0);
    seen[idx] = 1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (!rs.is_positive[cur]) return true;
        for (int j : nodes) {
            int nxt = rs.root_index(reflect(rs, rs.simple_roots[j], rs.roots[cur]));
            if (!seen[nxt]) {
                seen[nxt] = 1;
                queue.push_back(nxt);
            }
        }
    }
    return false;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> levi_split(const RootSystem& rs,
                                                         const std::vector<int>& nodes) {
    RatMat gens;
    for (int j : nodes) gens.push_back(rs.simple(j));
    std::vector<int> levi, rest;
    for (int p : rs.positive_roots) {
        bool by_orbit = orbit_reaches_negative(rs, nodes, p);
        bool by_span = !gens.empty() && linearly_dependent(gens, rs.roots[p]);
        if (by_orbit != by_span)
            throw std::logic_error("levi_split: orbit and span criteria disagree");
        (by_orbit ? levi : rest).push_back(p);
    }
    return {levi, rest};
}

bool in_WI(const RootSystem& rs, const std::vector<int>& nodes, const WeylElement& w) {
    auto [levi, rest] = levi_split(rs, nodes);
    std::vector<char> allowed(rs.num_roots(), 0);
    for (int p : levi) {
        allowed[p] = 1;
        allowed[rs.neg_index[p]] = 1;  // the full levi subsystem, both signs
    }
    for (int p : rest) allowed[p] = 1;  // complement positives only
    for (int p : rs.positive_roots)
        if (!allowed[w.perm[p]]) return false;
    return true;
}

std::vector<std::pair<char, int>> classify_type(const SubsystemMask& mask) {
    if (mask.member_roots.empty()) return {};
    const RootSystem& rs = *mask.parent;

    // Base of the subsystem: positive members that are not the sum of two
    // positive members.
    std::vector<int> pos = mask.positive_members();
    std::vector<int> base;
    for (int p : pos) {
        bool decomposable = false;
        for (int q : pos) {
            if (q == p) continue;
            int r = rs.root_index(rs.roots[p] - rs.roots[q]);
            if (r >= 0 && rs.is_positive[r] && mask.contains(r)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) base.push_back(p);
    }

    int n = (int)base.size();
    // bond[i][j] = <a_i, a_j~> <a_j, a_i~>  (0, 1, 2 or 3 for finite diagrams)
    std::vector<std::vector<int>> bond(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Rat b = coroot_pairing(rs, base[i], rs.roots[base[j]]) *
                    coroot_pairing(rs, base[j], rs.roots[base[i]]);
            if (b.den() != 1 || b.num() < 0 || b.num() > 3)
                throw std::logic_error("classify_type: invalid bond");
            bond[i][j] = (int)b.num();
        }

    // split into connected components
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<int> queue{s};
        comp[s] = ncomp;
        while (!queue.empty()) {
            int cur = queue.front();
            queue.pop_front();
            for (int j = 0; j < n; ++j)
                if (bond[cur][j] > 0 && comp[j] < 0) {
                    comp[j] = ncomp;
                    queue.push_back(j);
                }
        }
        ++ncomp;
    }

    std::vector<std::pair<char, int>> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> nodes;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) nodes.push_back(i);
        int r = (int)nodes.size();

        auto fail = [] { throw std::logic_error("classify_type: diagram not of finite type"); };

        if (r == 1) { out.push_back({'A', 1}); continue; }

        int max_bond = 0, double_edges = 0, triple_edges = 0, edges = 0;
        std::vector<int> deg(r, 0);
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) {
                int bb = bond[nodes[a]][nodes[b]];
                if (bb == 0) continue;
                ++edges;
                ++deg[a];
                ++deg[b];
                max_bond = std::max(max_bond, bb);
                if (bb == 2) ++double_edges;
                if (bb == 3) ++triple_edges;
            }
        if (edges != r - 1) fail();  // finite diagrams are trees

        if (triple_edges > 0) {
            if (r != 2) fail();
            out.push_back({'G', 2});
            continue;
        }

        int branch = -1;
        for (int a = 0; a < r; ++a) {
            if (deg[a] > 3) fail();
            if (deg[a] == 3) {
                if (branch >= 0) fail();
                branch = a;
            }
        }

        if (max_bond == 1) {
            if (branch < 0) { out.push_back({'A', r}); continue; }
            // arm lengths from the trivalent node
            std::vector<int> arms;
            for (int b = 0; b < r; ++b) {
                if (bond[nodes[branch]][nodes[b]] == 0 || b == branch) continue;
                int len = 1, prev = branch, cur = b;
                while (true) {
                    int nxt = -1;
                    for (int k = 0; k < r; ++k)
                        if (k != prev && k != cur && bond[nodes[cur]][nodes[k]] > 0) nxt = k;
                    if (nxt < 0) break;
                    prev = cur;
                    cur = nxt;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms.size() != 3) fail();
            if (arms[0] == 1 && arms[1] == 1) out.push_back({'D', r});
            else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
                out.push_back({'E', r});
            else fail();
            continue;
        }

        // exactly one double edge on a chain: B, C or F4
        if (branch >= 0 || double_edges != 1) fail();
        if (r == 2) { out.push_back({'B', 2}); continue; }
        Rat long_norm(0);
        for (int a = 0; a < r; ++a) {
            Rat nn = dot(rs.roots[base[nodes[a]]], rs.roots[base[nodes[a]]]);
            if (long_norm < nn) long_norm = nn;
        }
        int longs = 0;
        for (int a = 0; a < r; ++a)
            if (dot(rs.roots[base[nodes[a]]], rs.roots[base[nodes[a]]]) == long_norm) ++longs;
        int shorts = r - longs;
        if (r == 4 && longs == 2 && shorts == 2) out.push_back({'F', 4});
        else if (shorts == 1) out.push_back({'B', r});
        else if (longs == 1) out.push_back({'C', r});
        else fail();
    }

    std::sort(out.begin(), out.end());
    return out;
}

std::string type_to_string(const std::vector<std::pair<char, int>>& components) {
    if (components.empty()) return "empty";
    std::string s;
    for (size_t i = 0; i < components.size(); ++i) {
        if (i) s += " x ";
        s += components[i].first;
        s += std::to_string(components[i].second);
    }
    return s;
}

}  // namespace rootshell
