#include "rootshell/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rootshell {

namespace {

// exact map key for arbitrary rational vectors
std::vector<std::pair<long long, long long>> vec_key(const RatVec& v) {
    std::vector<std::pair<long long, long long>> k(v.size());
    for (size_t i = 0; i < v.size(); ++i) k[i] = {v[i].num(), v[i].den()};
    return k;
}

}  // namespace

RatVec apply_word(const RootSystem& rs, const std::vector<int>& word, const RatVec& v) {
    RatVec u = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        u = reflect(rs, rs.simple_roots[*it], u);
    return u;
}

std::vector<int> identity_perm(const RootSystem& rs) {
    std::vector<int> p(rs.num_roots());
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::vector<int> simple_reflection_perm(const RootSystem& rs, int simple_idx) {
    std::vector<int> p(rs.num_roots());
    for (int i = 0; i < rs.num_roots(); ++i) {
        int j = rs.root_index(reflect(rs, rs.simple_roots[simple_idx], rs.roots[i]));
        if (j < 0) throw std::logic_error("reflection did not permute the roots");
        p[i] = j;
    }
    return p;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(b.size());
    for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[p[i]] = (int)i;
    return q;
}

WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word) {
    WeylElement w;
    w.word = word;
    w.perm = identity_perm(rs);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        w.perm = compose(simple_reflection_perm(rs, *it), w.perm);
    return w;
}

std::vector<OrbitElement> weyl_orbit(const RootSystem& rs, const RatVec& v, long long cap) {
    std::map<std::vector<std::pair<long long, long long>>, int> seen;
    std::vector<OrbitElement> orbit;
    std::deque<int> queue;
    orbit.push_back({v, {}});
    seen[vec_key(v)] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int j = 0; j < rs.rank; ++j) {
            RatVec u = reflect(rs, rs.simple_roots[j], orbit[cur].v);
            auto key = vec_key(u);
            if (seen.count(key)) continue;
            if ((long long)orbit.size() >= cap)
                throw std::runtime_error("weyl_orbit: cap " + std::to_string(cap) +
                                         " exceeded");
            std::vector<int> word;
            word.reserve(orbit[cur].word.size() + 1);
            word.push_back(j);
            word.insert(word.end(), orbit[cur].word.begin(), orbit[cur].word.end());
            seen[key] = (int)orbit.size();
            queue.push_back((int)orbit.size());
            orbit.push_back({std::move(u), std::move(word)});
        }
    }
    return orbit;
}

namespace {

// orbit size of v under the reflections indexed by subset (vectors only)
long long orbit_size_under(const RootSystem& rs, const std::vector<int>& subset,
                           const RatVec& v) {
    std::map<std::vector<std::pair<long long, long long>>, bool> seen;
    std::deque<RatVec> queue;
    seen[vec_key(v)] = true;
    queue.push_back(v);
    while (!queue.empty()) {
        RatVec cur = queue.front();
        queue.pop_front();
        for (int j : subset) {
            RatVec u = reflect(rs, rs.simple_roots[j], cur);
            auto key = vec_key(u);
            if (seen.count(key)) continue;
            seen[key] = true;
            queue.push_back(u);
        }
    }
    return (long long)seen.size();
}

}  // namespace

long long weyl_order_subset(const RootSystem& rs, const std::vector<int>& subset) {
    if (subset.empty()) return 1;
    // relative fundamental coweight of the first node: <v, alpha_i> = delta_{i,first}
    // within span{alpha_i : i in subset}
    int m = (int)subset.size();
    RatMat rows;
    for (int i : subset) rows.push_back(rs.simple(i));
    RatMat g = gram(rows);
    RatVec rhs(m, Rat(0));
    rhs[0] = Rat(1);
    RatVec c = solve(g, rhs);
    RatVec v(rs.ambient_dim, Rat(0));
    for (int k = 0; k < m; ++k) v = v + c[k] * rows[k];

    // the stabilizer of this dominant vector inside the subsystem's group is
    // generated by the simple reflections fixing it, i.e. the rest of the subset
    long long orbit = orbit_size_under(rs, subset, v);
    std::vector<int> rest(subset.begin() + 1, subset.end());
    return orbit * weyl_order_subset(rs, rest);
}

long long weyl_order(const RootSystem& rs) {
    std::vector<int> all(rs.rank);
    std::iota(all.begin(), all.end(), 0);
    return weyl_order_subset(rs, all);
}

std::vector<WeylElement> weyl_enumerate(const RootSystem& rs, long long cap) {
    if (weyl_order(rs) > cap)
        throw std::runtime_error("weyl_enumerate: group order exceeds cap " +
                                 std::to_string(cap));
    std::vector<std::vector<int>> simple_perms;
    for (int j = 0; j < rs.rank; ++j) simple_perms.push_back(simple_reflection_perm(rs, j));

    std::map<std::vector<int>, bool> seen;
    std::vector<WeylElement> out;
    std::deque<int> queue;
    WeylElement id{{}, identity_perm(rs)};
    seen[id.perm] = true;
    out.push_back(id);
    queue.push_back(0);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int j = 0; j < rs.rank; ++j) {
            WeylElement next;
            next.perm = compose(simple_perms[j], out[cur].perm);
            if (seen.count(next.perm)) continue;
            next.word.reserve(out[cur].word.size() + 1);
            next.word.push_back(j);
            next.word.insert(next.word.end(), out[cur].word.begin(), out[cur].word.end());
            seen[next.perm] = true;
            queue.push_back((int)out.size());
            out.push_back(std::move(next));
        }
    }
    return out;
}

std::pair<RatVec, WeylElement> dominant_representative(const RootSystem& rs,
                                                       const RatVec& H) {
    RatVec cur = H;
    std::vector<int> word;  // built so that apply_word(word, H) == result
    for (;;) {
        int neg = -1;
        for (int j = 0; j < rs.rank; ++j)
            if (dot(cur, rs.simple(j)).sign() < 0) {
                neg = j;
                break;
            }
        if (neg < 0) break;
        cur = reflect(rs, rs.simple_roots[neg], cur);
        word.insert(word.begin(), neg);  // newest reflection acts last (outermost)
    }
    return {cur, element_from_word(rs, word)};
}

WeylElement longest_element(const RootSystem& rs) {
    // send a regular dominant vector to the antidominant chamber greedily
    RatVec v(rs.ambient_dim, Rat(0));
    for (auto& cw : fundamental_coweights(rs)) v = v + cw;
    std::vector<int> word;
    for (;;) {
        int pos = -1;
        for (int j = 0; j < rs.rank; ++j)
            if (dot(v, rs.simple(j)).sign() > 0) {
                pos = j;
                break;
            }
        if (pos < 0) break;
        v = reflect(rs, rs.simple_roots[pos], v);
        word.insert(word.begin(), pos);
    }
    WeylElement w0 = element_from_word(rs, word);
    for (int i : rs.positive_roots)
        if (rs.is_positive[w0.perm[i]])
            throw std::logic_error("longest element failed to negate the positive system");
    return w0;
}

bool conv_dominance(const RootSystem& rs, const RatVec& H, const RatVec& Y) {
    for (int j = 0; j < rs.rank; ++j)
        if (dot(Y, rs.simple(j)).sign() < 0)
            throw std::invalid_argument("conv_dominance: Y is not dominant");
    RatVec hplus = dominant_representative(rs, H).first;
    RatVec d = Y - hplus;
    // must lie in span(Delta)...
    RatMat rows;
    for (int j = 0; j < rs.rank; ++j) rows.push_back(rs.simple(j));
    if (!in_span(rows, d)) return false;
    // ...with nonnegative coweight pairings (= nonnegative simple-root coordinates)
    for (auto& cw : fundamental_coweights(rs))
        if (dot(d, cw).sign() < 0) return false;
    return true;
}

bool conv_dominance_double(const RootSystem& rs, const std::vector<double>& H,
                           const std::vector<double>& Y, double tol) {
    if ((int)H.size() != rs.ambient_dim || (int)Y.size() != rs.ambient_dim)
        throw std::invalid_argument("conv_dominance_double: dimension mismatch");
    auto simple_d = [&](int j) { return to_double(rs.simple(j)); };
    auto ddot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    // greedy dominant representative in floats
    std::vector<double> cur = H;
    for (int guard = 0; guard < 4 * rs.num_roots(); ++guard) {
        int neg = -1;
        for (int j = 0; j < rs.rank; ++j)
            if (ddot(cur, simple_d(j)) < -tol * 1e-3) {
                neg = j;
                break;
            }
        if (neg < 0) break;
        auto a = simple_d(neg);
        double c = 2.0 * ddot(cur, a) / ddot(a, a);
        for (size_t i = 0; i < cur.size(); ++i) cur[i] -= c * a[i];
    }
    std::vector<double> d(Y.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = Y[i] - cur[i];
    // coordinates of d in the simple basis come from the coweight pairings;
    // they must be nonnegative, and reassembling them must recover d (i.e. d
    // lies in span(Delta) up to tolerance)
    auto coweights = fundamental_coweights(rs);
    std::vector<double> resid = d;
    double scale = 1.0;
    for (double x : d) scale = std::max(scale, std::abs(x));
    for (int j = 0; j < rs.rank; ++j) {
        double cj = ddot(d, to_double(coweights[j]));
        if (cj < -tol * scale) return false;
        auto a = simple_d(j);
        for (size_t i = 0; i < resid.size(); ++i) resid[i] -= cj * a[i];
    }
    for (double x : resid)
        if (std::abs(x) > tol * scale) return false;
    return true;
}

}  // namespace rootshell
