#pragma once

#include <vector>

#include "rootshell/root_system.hpp"

namespace rootshell {

// A Weyl group element.  The canonical form is the induced permutation of the
// root list; the word is a witness only.  Product convention:
// w = s_{word[0]} o s_{word[1]} o ... o s_{word.back()}, i.e. the last entry
// is applied to the vector first.
struct WeylElement {
    std::vector<int> word;  // w = s_{word[0]} s_{word[1]} ... s_{word.back()}
    std::vector<int> perm;  // perm[i] = index of w(root_i)

    bool operator==(const WeylElement& o) const { return perm == o.perm; }
    bool is_identity() const {
        for (int i = 0; i < (int)perm.size(); ++i)
            if (perm[i] != i) return false;
        return true;
    }
};

// v -> w(v) for the product convention above: s_{word[0]}( s_{word[1]}( ... (v)))
RatVec apply_word(const RootSystem& rs, const std::vector<int>& word, const RatVec& v);

std::vector<int> identity_perm(const RootSystem& rs);
std::vector<int> simple_reflection_perm(const RootSystem& rs, int simple_idx);
// composition a o b (first b, then a), both as root permutations
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> invert(const std::vector<int>& p);
WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word);

struct OrbitElement {
    RatVec v;
    std::vector<int> word;  // witness with apply_word(word, seed) == v
};

inline constexpr long long kDefaultOrbitCap = 1000000;

// BFS closure of {v} under the simple reflections
std::vector<OrbitElement> weyl_orbit(const RootSystem& rs, const RatVec& v,
                                     long long cap = kDefaultOrbitCap);

// |W| by a stabilizer chain: orbit of the first fundamental coweight times the
// order of the group generated by the remaining simple reflections
long long weyl_order(const RootSystem& rs);
// same, for the standard subsystem on the given simple-root subset
long long weyl_order_subset(const RootSystem& rs, const std::vector<int>& subset);

// full enumeration (BFS over words, dedup by permutation); throws above cap
std::vector<WeylElement> weyl_enumerate(const RootSystem& rs,
                                        long long cap = kDefaultOrbitCap);

// (H_plus, w) with w(H) = H_plus dominant
std::pair<RatVec, WeylElement> dominant_representative(const RootSystem& rs,
                                                       const RatVec& H);

// w0, characterized by w0(Phi+) = Phi-
WeylElement longest_element(const RootSystem& rs);

// H in Conv(W.Y), for dominant Y: dominance criterion
// Y - H_plus must lie in the nonnegative span of the simple roots
bool conv_dominance(const RootSystem& rs, const RatVec& H, const RatVec& Y);

// float version (tolerance on both the cone pairings and the span component)
bool conv_dominance_double(const RootSystem& rs, const std::vector<double>& H,
                           const std::vector<double>& Y, double tol);

}  // namespace rootshell
