#include "rootshell/semidense.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rootshell/linalg.hpp"

namespace rootshell {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(int nbits) { return Bits((size_t)(nbits + 63) / 64, 0); }

void set_bit(Bits& b, int i) { b[(size_t)i >> 6] |= 1ull << (i & 63); }

int and_popcount(const Bits& a, const Bits& b) {
    int c = 0;
    for (size_t i = 0; i < a.size(); ++i)
        c += __builtin_popcountll(a[i] & b[i]);
    return c;
}

// phi0 must be exactly the set of roots inside its own span
void validate_cut_by_subspace(const RootSystem& rs, const SubsystemMask& phi0) {
    RatMat rows;
    for (int i : phi0.member_roots) rows.push_back(rs.roots[i]);
    for (int i = 0; i < rs.num_roots(); ++i)
        if (in_span(rows, rs.roots[i]) && !phi0.contains(i))
            throw std::invalid_argument(
                "check_semidense: phi0 is not the full root intersection with its span");
}

// standard subsystem membership by simple-coordinate support (equivalent to
// the span test: the expansion over the base is unique)
Bits standard_mask(const RootSystem& rs, unsigned node_mask, int* size_out) {
    Bits b = make_bits(rs.num_roots());
    int size = 0;
    for (int i = 0; i < rs.num_roots(); ++i) {
        bool ok = true;
        for (int j = 0; j < rs.rank; ++j)
            if (rs.simple_coords[i][j] != 0 && !(node_mask & (1u << j))) {
                ok = false;
                break;
            }
        if (ok) {
            set_bit(b, i);
            ++size;
        }
    }
    *size_out = size;
    return b;
}

struct OrbitSet {
    Bits mask;
    std::vector<int> word;
};

}  // namespace

std::vector<int> extremal_coweights(const RootSystem& rs) {
    switch (rs.type_label) {
        case 'A':
            return rs.rank == 1 ? std::vector<int>{0} : std::vector<int>{0, rs.rank - 1};
        case 'B':
        case 'C':
        case 'D':
            return {0};
        case 'E':
            if (rs.rank == 6)
                return rs.e6_model == E6Model::inside_e8 ? std::vector<int>{0, 5}
                                                         : std::vector<int>{0, 2};
            return rs.rank == 7 ? std::vector<int>{5} : std::vector<int>{0};
        case 'F':
            return {0, 3};
        default:  // G
            return {0, 1};
    }
}

SubsystemMask centralizer_subsystem(const RootSystem& rs, const RatVec& H0) {
    for (int j = 0; j < rs.rank; ++j)
        if (dot(H0, rs.simple(j)).sign() < 0)
            throw std::invalid_argument("centralizer_subsystem: H0 not dominant");
    return orthogonal_subsystem(rs, {H0});
}

SemidenseVerdict check_semidense(const RootSystem& rs, const SubsystemMask& phi0,
                                 long long orbit_cap) {
    validate_cut_by_subspace(rs, phi0);

    // conjugates of phi0, each as a membership mask plus a producing word
    std::vector<OrbitSet> conjugates;

    // corank detection in the coweight coordinate system: a normal vector
    // written over the fundamental coweights pairs with a root through the
    // root's simple coordinates
    RatMat coeff_rows;
    for (int i : phi0.member_roots) {
        RatVec row(rs.rank);
        for (int j = 0; j < rs.rank; ++j) row[j] = Rat(rs.simple_coords[i][j]);
        coeff_rows.push_back(row);
    }
    auto normal_coeffs = nullspace(coeff_rows, rs.rank);

    if (normal_coeffs.size() == 1) {
        auto cw = fundamental_coweights(rs);
        RatVec n(rs.ambient_dim, Rat(0));
        for (int j = 0; j < rs.rank; ++j) n = n + normal_coeffs[0][j] * cw[j];
        for (auto& el : weyl_orbit(rs, n, orbit_cap)) {
            OrbitSet o;
            o.mask = make_bits(rs.num_roots());
            for (int i = 0; i < rs.num_roots(); ++i)
                if (dot(rs.roots[i], el.v).is_zero()) set_bit(o.mask, i);
            o.word = el.word;
            conjugates.push_back(std::move(o));
        }
    } else {
        // orbit of the member set itself
        std::vector<std::vector<int>> perms;
        for (int j = 0; j < rs.rank; ++j) perms.push_back(simple_reflection_perm(rs, j));
        Bits start = make_bits(rs.num_roots());
        for (int i : phi0.member_roots) set_bit(start, i);
        std::map<Bits, std::vector<int>> seen;
        seen[start] = {};
        std::deque<Bits> queue{start};
        conjugates.push_back({start, {}});
        while (!queue.empty()) {
            Bits cur = queue.front();
            queue.pop_front();
            const auto& word = seen[cur];
            for (int j = 0; j < rs.rank; ++j) {
                Bits img = make_bits(rs.num_roots());
                for (int i = 0; i < rs.num_roots(); ++i)
                    if (cur[(size_t)i >> 6] & (1ull << (i & 63)))
                        set_bit(img, perms[j][i]);
                if (seen.count(img)) continue;
                if ((long long)seen.size() >= orbit_cap)
                    throw std::runtime_error("check_semidense: orbit cap " +
                                             std::to_string(orbit_cap) + " exceeded");
                std::vector<int> w{j};
                w.insert(w.end(), word.begin(), word.end());
                seen[img] = w;
                conjugates.push_back({img, std::move(w)});
                queue.push_back(img);
            }
        }
    }

    // standard subsystems, biggest first so a witness favors psi = Phi
    struct Psi {
        unsigned node_mask;
        int rank;
        int size;
        Bits bits;
    };
    std::vector<Psi> psis;
    for (unsigned m = 0; m < (1u << rs.rank); ++m) {
        Psi p;
        p.node_mask = m;
        p.rank = __builtin_popcount(m);
        p.bits = standard_mask(rs, m, &p.size);
        psis.push_back(std::move(p));
    }
    std::stable_sort(psis.begin(), psis.end(),
                     [](const Psi& a, const Psi& b) { return a.size > b.size; });

    SemidenseVerdict verdict;
    verdict.standard_count = (long long)psis.size();
    verdict.orbit_count = (long long)conjugates.size();
    for (const auto& p : psis)
        for (const auto& o : conjugates) {
            int inter = and_popcount(p.bits, o.mask);
            if (2 * (inter + p.rank) < p.size) {
                SemidenseWitness w;
                w.w_word = o.word;
                std::vector<int> nodes;
                for (int j = 0; j < rs.rank; ++j)
                    if (p.node_mask & (1u << j)) nodes.push_back(j);
                w.psi = standard_subsystem(rs, nodes);
                w.intersection = inter;
                w.lhs = inter + p.rank;
                w.psi_size = p.size;
                verdict.holds = false;
                verdict.witness = std::move(w);
                return verdict;
            }
        }
    verdict.holds = true;
    return verdict;
}

std::vector<ExtremalScanEntry> scan_extremal_classical(int max_rank) {
    std::vector<ExtremalScanEntry> out;
    auto run = [&out](char t, int lo, int hi) {
        for (int n = lo; n <= hi; ++n) {
            auto rs = build_root_system(t, n);
            auto cw = fundamental_coweights(rs);
            for (int node : extremal_coweights(rs)) {
                auto phi0 = centralizer_subsystem(rs, cw[node]);
                ExtremalScanEntry e;
                e.type = t;
                e.rank = n;
                e.node = node;
                e.phi0_type = type_to_string(classify_type(phi0));
                e.phi_size = rs.num_roots();
                e.phi0_size = (int)phi0.member_roots.size();
                e.base_inequality = 2 * (e.phi0_size + rs.rank) >= e.phi_size;
                auto v = check_semidense(rs, phi0);
                e.holds = v.holds;
                e.standard_count = v.standard_count;
                e.orbit_count = v.orbit_count;
                out.push_back(std::move(e));
            }
        }
    };
    run('A', 2, max_rank);
    run('B', 2, max_rank);
    run('C', 3, max_rank);
    run('D', 4, max_rank);
    return out;
}

namespace {

RatVec coords8(std::initializer_list<std::pair<int, int>> entries) {
    RatVec v(8, Rat(0));
    for (auto [idx, val] : entries) v[idx] = Rat(val);
    return v;
}

// evaluate one recorded (reflection, standard psi) pair against the conjugated
// corank-one subsystem with the given normal
ExceptionalCase witness_case(const RootSystem& rs, const std::string& system,
                             const RatVec& normal, const RatVec& reflection_root,
                             const std::vector<int>& psi_nodes) {
    ExceptionalCase c;
    c.system = system;
    c.mode = "explicit-witness";
    auto phi0 = orthogonal_subsystem(rs, {normal});
    c.phi0_type = type_to_string(classify_type(phi0));
    int refl = rs.root_index(reflection_root);
    if (refl < 0) throw std::logic_error("witness_case: reflection vector is not a root");
    RatVec moved = reflect(rs, refl, normal);
    auto psi = standard_subsystem(rs, psi_nodes);
    int inter = 0;
    for (int i : psi.member_roots)
        if (dot(rs.roots[i], moved).is_zero()) ++inter;
    c.witness_intersection = inter;
    c.witness_rank = (int)psi_nodes.size();
    c.witness_psi_size = (int)psi.member_roots.size();
    c.violates = 2 * (inter + c.witness_rank) < c.witness_psi_size;
    auto v = check_semidense(rs, phi0);
    c.scan_holds = v.holds;
    return c;
}

void full_set_cases(const RootSystem& rs, const std::string& system,
                    std::vector<ExceptionalCase>& out, bool with_scan) {
    for (int node = 0; node < rs.rank; ++node) {
        std::vector<int> keep;
        for (int j = 0; j < rs.rank; ++j)
            if (j != node) keep.push_back(j);
        auto phi0 = standard_subsystem(rs, keep);
        ExceptionalCase c;
        c.system = system;
        c.phi0_type = type_to_string(classify_type(phi0));
        c.mode = "full-set";
        c.lhs = (long long)phi0.member_roots.size() + rs.rank;
        c.phi_size = rs.num_roots();
        c.violates = 2 * c.lhs < c.phi_size;
        if (with_scan) c.scan_holds = check_semidense(rs, phi0).holds;
        out.push_back(std::move(c));
    }
}

}  // namespace

std::vector<ExceptionalCase> verify_exceptional_failures() {
    std::vector<ExceptionalCase> out;

    auto g2 = build_root_system('G', 2);
    full_set_cases(g2, "G2", out, true);

    auto f4 = build_root_system('F', 4);
    full_set_cases(f4, "F4", out, true);

    auto e8 = build_root_system('E', 8);
    full_set_cases(e8, "E8", out, false);
    // the one subsystem that survives psi = Phi: the recorded reflection swaps
    // the third and eighth coordinates and psi is the A2 on the first two nodes
    out.push_back(witness_case(e8, "E8", coords8({{0, 1}, {7, -1}}),
                               coords8({{2, 1}, {7, -1}}), {0, 1}));

    auto e6 = build_root_system('E', 6);
    full_set_cases(e6, "E6", out, false);
    // corank-one cut by e1+e2-3e3+e8; the reflection swaps coordinates 3 and 6
    // and psi is the A2 on the last two nodes
    out.push_back(witness_case(e6, "E6", coords8({{0, 1}, {1, 1}, {2, -3}, {7, 1}}),
                               coords8({{2, 1}, {5, -1}}), {4, 5}));

    auto e6t = build_root_system('E', 6, Form::split, E6Model::triple_a2);
    RatVec n9(9, Rat(0)), r9(9, Rat(0));
    n9[0] = Rat(1);
    n9[2] = Rat(-1);  // cut by e1 - e3
    r9[0] = Rat(1);
    r9[1] = Rat(-1);  // reflection in e1 - e2
    out.push_back(witness_case(e6t, "E6/triple-A2", n9, r9, {4, 5}));

    return out;
}

RatVec primitive_direction(const RatVec& v) {
    long long l = 1;
    for (const auto& x : v) l = std::lcm(l, x.den());
    std::vector<long long> w;
    for (const auto& x : v) w.push_back(x.num() * (l / x.den()));
    long long g = 0;
    for (long long x : w) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw std::invalid_argument("primitive_direction: zero vector");
    for (auto& x : w) x /= g;
    for (long long x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : w) y = -y;
        break;
    }
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(w[i]);
    return out;
}

std::vector<RatVec> bad_hyperplanes(const RootSystem& rs, const RatVec& H0) {
    bool zero = true;
    for (const auto& x : H0) zero = zero && x.is_zero();
    if (zero) throw std::invalid_argument("bad_hyperplanes: H0 is zero");
    for (int j = 0; j < rs.rank; ++j)
        if (dot(H0, rs.simple(j)).sign() < 0)
            throw std::invalid_argument("bad_hyperplanes: H0 not dominant");

    auto orbit = weyl_orbit(rs, H0);
    std::map<std::vector<long long>, RatVec> lines;
    for (size_t i = 0; i < orbit.size(); ++i)
        for (size_t j = i + 1; j < orbit.size(); ++j) {
            RatVec d = orbit[i].v - orbit[j].v;
            bool dz = true;
            for (const auto& x : d) dz = dz && x.is_zero();
            if (dz) continue;
            RatVec p = primitive_direction(d);
            std::vector<long long> key;
            for (const auto& x : p) key.push_back(x.num());
            lines.emplace(std::move(key), std::move(p));
        }
    std::vector<RatVec> out;
    for (auto& [k, v] : lines) out.push_back(v);
    return out;
}

}  // namespace rootshell
