#include "rootshell/root_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootshell {

namespace {

RatVec basis_vec(int dim, int i, Rat c = Rat(1)) {
    RatVec v(dim, Rat(0));
    v[i] = c;
    return v;
}

std::vector<long long> key_of(const RatVec& v) {
    // every model's coordinates are multiples of 1/6
    std::vector<long long> k(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(6);
        if (s.den() != 1) throw std::logic_error("root coordinate not a multiple of 1/6");
        k[i] = s.num();
    }
    return k;
}

void append_pm_pairs(std::vector<RatVec>& out, int dim, int i, int j) {
    // +-e_i +- e_j, all four signs
    for (int si : {1, -1})
        for (int sj : {1, -1}) {
            RatVec v(dim, Rat(0));
            v[i] = Rat(si);
            v[j] = Rat(sj);
            out.push_back(v);
        }
}

std::vector<RatVec> roots_A(int n) {
    std::vector<RatVec> r;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j) {
                RatVec v(n + 1, Rat(0));
                v[i] = Rat(1);
                v[j] = Rat(-1);
                r.push_back(v);
            }
    return r;
}

std::vector<RatVec> roots_B(int n) {
    std::vector<RatVec> r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) append_pm_pairs(r, n, i, j);
    for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) r.push_back(basis_vec(n, i, Rat(s)));
    return r;
}

std::vector<RatVec> roots_C(int n) {
    std::vector<RatVec> r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) append_pm_pairs(r, n, i, j);
    for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) r.push_back(basis_vec(n, i, Rat(2 * s)));
    return r;
}

std::vector<RatVec> roots_D(int n) {
    std::vector<RatVec> r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) append_pm_pairs(r, n, i, j);
    return r;
}

std::vector<RatVec> roots_E8() {
    std::vector<RatVec> r = roots_D(8);  // 112 integer roots
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;  // even number of minus signs
        RatVec v(8);
        for (int i = 0; i < 8; ++i) v[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        r.push_back(v);
    }
    return r;
}

std::vector<RatVec> roots_E7_standalone() {
    // inside the sum-zero hyperplane of R^8: e_i - e_j plus the half-integer
    // vectors with four +1/2 and four -1/2
    std::vector<RatVec> r = roots_A(7);
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4) continue;
        RatVec v(8);
        for (int i = 0; i < 8; ++i) v[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        r.push_back(v);
    }
    return r;
}

std::vector<RatVec> roots_E6_inside_e8() {
    // E8 roots orthogonal to both e1-e2 and e1-e8
    std::vector<RatVec> r;
    for (auto& v : roots_E8())
        if (v[0] == v[1] && v[0] == v[7]) r.push_back(v);
    return r;
}

std::vector<RatVec> roots_E6_triple_a2() {
    // three A2 blocks {0,1,2},{3,4,5},{6,7,8} plus the "tri-diagonal" vectors
    // (A;B;C) with each block pattern a permutation of (2/3,-1/3,-1/3), and
    // their negatives
    std::vector<RatVec> r;
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) {
                    RatVec v(9, Rat(0));
                    v[3 * b + i] = Rat(1);
                    v[3 * b + j] = Rat(-1);
                    r.push_back(v);
                }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int s : {1, -1}) {
                    RatVec v(9, Rat(s) * Rat(-1, 3));
                    v[a] = Rat(s) * Rat(2, 3);
                    v[3 + b] = Rat(s) * Rat(2, 3);
                    v[6 + c] = Rat(s) * Rat(2, 3);
                    r.push_back(v);
                }
    return r;
}

std::vector<RatVec> roots_F4() {
    std::vector<RatVec> r = roots_B(4);  // 32: +-e_i+-e_j and +-e_i
    for (int mask = 0; mask < 16; ++mask) {
        RatVec v(4);
        for (int i = 0; i < 4; ++i) v[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        r.push_back(v);
    }
    return r;
}

std::vector<RatVec> roots_G2() {
    std::vector<RatVec> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                RatVec v(3, Rat(0));
                v[i] = Rat(1);
                v[j] = Rat(-1);
                r.push_back(v);
            }
    for (int i = 0; i < 3; ++i)
        for (int s : {1, -1}) {
            RatVec v(3, Rat(-s));
            v[i] = Rat(2 * s);
            r.push_back(v);
        }
    return r;
}

RatVec half_sum(int dim, std::vector<int> minus) {
    RatVec v(dim, Rat(1, 2));
    for (int i : minus) v[i] = Rat(-1, 2);
    return v;
}

std::vector<RatVec> base_of(char t, int n, E6Model e6m) {
    std::vector<RatVec> b;
    auto e = [&](int i, int dim) { return basis_vec(dim, i); };
    auto diff = [&](int i, int j, int dim) {
        RatVec v(dim, Rat(0));
        v[i] = Rat(1);
        v[j] = Rat(-1);
        return v;
    };
    switch (t) {
        case 'A':
            for (int i = 0; i < n; ++i) b.push_back(diff(i, i + 1, n + 1));
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) b.push_back(diff(i, i + 1, n));
            b.push_back(e(n - 1, n));
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) b.push_back(diff(i, i + 1, n));
            b.push_back(basis_vec(n, n - 1, Rat(2)));
            break;
        case 'D':
            for (int i = 0; i + 1 < n; ++i) b.push_back(diff(i, i + 1, n));
            {
                RatVec v(n, Rat(0));
                v[n - 2] = Rat(1);
                v[n - 1] = Rat(1);
                b.push_back(v);
            }
            break;
        case 'E':
            if (n == 8) {
                for (int i = 0; i < 6; ++i) b.push_back(diff(i, i + 1, 8));
                {
                    RatVec v(8, Rat(0));
                    v[5] = Rat(1);
                    v[6] = Rat(1);
                    b.push_back(v);
                }
                b.push_back(Rat(-1) * half_sum(8, {}));
            } else if (n == 7) {
                for (int i = 1; i < 7; ++i) b.push_back(diff(i + 1, i, 8));  // -e_{i+1}+e_{i+2}
                b.push_back(half_sum(8, {4, 5, 6, 7}));
            } else if (e6m == E6Model::inside_e8) {
                for (int i = 2; i < 6; ++i) b.push_back(diff(i, i + 1, 8));
                {
                    RatVec v(8, Rat(0));
                    v[5] = Rat(1);
                    v[6] = Rat(1);
                    b.push_back(v);
                }
                b.push_back(Rat(-1) * half_sum(8, {}));
            } else {
                b.push_back(diff(7, 8, 9));
                b.push_back(diff(6, 7, 9));
                b.push_back(diff(4, 5, 9));
                b.push_back(diff(3, 4, 9));
                b.push_back(diff(1, 2, 9));
                RatVec theta(9, Rat(1, 3));
                theta[1] = theta[3] = theta[6] = Rat(-2, 3);
                b.push_back(theta);
            }
            break;
        case 'F':
            b.push_back(diff(1, 2, 4));
            b.push_back(diff(2, 3, 4));
            b.push_back(e(3, 4));
            b.push_back(half_sum(4, {1, 2, 3}));
            break;
        case 'G': {
            b.push_back(diff(0, 1, 3));
            RatVec v(3, Rat(1));
            v[0] = Rat(-2);
            b.push_back(v);
            break;
        }
        default:
            throw std::invalid_argument("unknown type label");
    }
    return b;
}

size_t expected_count(char t, int n) {
    switch (t) {
        case 'A': return (size_t)n * (n + 1);
        case 'B':
        case 'C': return 2ull * n * n;
        case 'D': return 2ull * n * (n - 1);
        case 'E': return n == 6 ? 72 : (n == 7 ? 126 : 240);
        case 'F': return 48;
        case 'G': return 12;
    }
    return 0;
}

}  // namespace

bool valid_cartan_type(char t, int n) {
    switch (t) {
        case 'A': return n >= 1;
        case 'B': return n >= 2;
        case 'C': return n >= 3;
        case 'D': return n >= 4;
        case 'E': return n >= 6 && n <= 8;
        case 'F': return n == 4;
        case 'G': return n == 2;
    }
    return false;
}

int RootSystem::root_index(const RatVec& v) const {
    auto it = index_of_.find(key_of(v));
    return it == index_of_.end() ? -1 : it->second;
}

std::string RootSystem::type_string() const {
    return std::string(1, type_label) + std::to_string(rank);
}

RootSystem build_root_system(char t, int n, Form form, E6Model e6m) {
    if (!valid_cartan_type(t, n))
        throw std::invalid_argument("invalid Cartan type " + std::string(1, t) +
                                    std::to_string(n) +
                                    " (valid: A>=1, B>=2, C>=3, D>=4, E6..E8, F4, G2)");
    RootSystem rs;
    rs.type_label = t;
    rs.rank = n;
    rs.e6_model = e6m;

    switch (t) {
        case 'A': rs.roots = roots_A(n); break;
        case 'B': rs.roots = roots_B(n); break;
        case 'C': rs.roots = roots_C(n); break;
        case 'D': rs.roots = roots_D(n); break;
        case 'E':
            rs.roots = n == 8   ? roots_E8()
                       : n == 7 ? roots_E7_standalone()
                                : (e6m == E6Model::inside_e8 ? roots_E6_inside_e8()
                                                             : roots_E6_triple_a2());
            break;
        case 'F': rs.roots = roots_F4(); break;
        case 'G': rs.roots = roots_G2(); break;
    }
    rs.ambient_dim = (int)rs.roots.at(0).size();
    if (rs.roots.size() != expected_count(t, n))
        throw std::logic_error("root count mismatch for " + rs.type_string());

    for (int i = 0; i < (int)rs.roots.size(); ++i) rs.index_of_[key_of(rs.roots[i])] = i;

    auto base = base_of(t, n, e6m);
    for (auto& b : base) {
        int idx = rs.root_index(b);
        if (idx < 0) throw std::logic_error("simple root not in root list");
        rs.simple_roots.push_back(idx);
    }

    // expansion of every root in the simple basis: solve the Gram system
    // G c = (<alpha_i, root>); coefficients must come out integral and of a
    // single sign, which doubles as a validation of the base
    RatMat base_rows;
    for (int si : rs.simple_roots) base_rows.push_back(rs.roots[si]);
    RatMat g = gram(base_rows);
    rs.is_positive.assign(rs.roots.size(), false);
    rs.neg_index.assign(rs.roots.size(), -1);
    rs.simple_coords.resize(rs.roots.size());
    for (int i = 0; i < (int)rs.roots.size(); ++i) {
        RatVec rhs(n);
        for (int j = 0; j < n; ++j) rhs[j] = dot(base_rows[j], rs.roots[i]);
        RatVec c = solve(g, rhs);
        bool pos = true, neg = true;
        std::vector<long long> ic(n);
        for (int j = 0; j < n; ++j) {
            if (c[j].den() != 1) throw std::logic_error("non-integral simple coordinate");
            ic[j] = c[j].num();
            if (ic[j] > 0) neg = false;
            if (ic[j] < 0) pos = false;
        }
        if (pos == neg) throw std::logic_error("mixed-sign simple coordinates");
        rs.simple_coords[i] = std::move(ic);
        rs.is_positive[i] = pos;
        if (pos) rs.positive_roots.push_back(i);
        rs.neg_index[i] = rs.root_index(Rat(-1) * rs.roots[i]);
        if (rs.neg_index[i] < 0) throw std::logic_error("root set not symmetric");
    }
    if (rs.positive_roots.size() * 2 != rs.roots.size())
        throw std::logic_error("positive system size mismatch");

    rs.mult.assign(rs.roots.size(), form == Form::complex_form ? 2 : 1);
    rs.mult2.assign(rs.roots.size(), 0);
    return rs;
}

RatVec reflect(const RootSystem& rs, int alpha_idx, const RatVec& v) {
    const RatVec& a = rs.roots.at(alpha_idx);
    Rat c = dot(v, a) * Rat(2) / dot(a, a);
    return v - c * a;
}

Rat coroot_pairing(const RootSystem& rs, int alpha_idx, const RatVec& v) {
    const RatVec& a = rs.roots.at(alpha_idx);
    return dot(v, a) * Rat(2) / dot(a, a);
}

RatVec rho(const RootSystem& rs) {
    RatVec s(rs.ambient_dim, Rat(0));
    for (int i : rs.positive_roots) {
        Rat w(rs.mult[i] + 2 * rs.mult2[i], 2);
        s = s + w * rs.roots[i];
    }
    return s;
}

std::vector<RatVec> fundamental_weights(const RootSystem& rs) {
    // w_j = sum_k c_k alpha_k with sum_k c_k <alpha_k, alpha_i> = delta_ij <alpha_i,alpha_i>/2
    int n = rs.rank;
    RatMat base_rows;
    for (int si : rs.simple_roots) base_rows.push_back(rs.roots[si]);
    RatMat g = gram(base_rows);
    std::vector<RatVec> out;
    for (int j = 0; j < n; ++j) {
        RatVec rhs(n, Rat(0));
        rhs[j] = dot(base_rows[j], base_rows[j]) / Rat(2);
        RatVec c = solve(g, rhs);
        RatVec w(rs.ambient_dim, Rat(0));
        for (int k = 0; k < n; ++k) w = w + c[k] * base_rows[k];
        out.push_back(w);
    }
    return out;
}

std::vector<RatVec> fundamental_coweights(const RootSystem& rs) {
    // w_j^vee in span(Delta) with <w_j^vee, alpha_i> = delta_ij
    int n = rs.rank;
    RatMat base_rows;
    for (int si : rs.simple_roots) base_rows.push_back(rs.roots[si]);
    RatMat g = gram(base_rows);
    std::vector<RatVec> out;
    for (int j = 0; j < n; ++j) {
        RatVec rhs(n, Rat(0));
        rhs[j] = Rat(1);
        RatVec c = solve(g, rhs);
        RatVec w(rs.ambient_dim, Rat(0));
        for (int k = 0; k < n; ++k) w = w + c[k] * base_rows[k];
        out.push_back(w);
    }
    return out;
}

std::vector<std::vector<long long>> cartan_matrix(const RootSystem& rs) {
    int n = rs.rank;
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = coroot_pairing(rs, rs.simple_roots[i], rs.simple(j));
            if (v.den() != 1) throw std::logic_error("non-integral Cartan entry");
            a[i][j] = v.num();
        }
    return a;
}

}  // namespace rootshell
