#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootshell/linalg.hpp"
#include "rootshell/rat.hpp"

namespace rootshell {

enum class Form { split, complex_form };
enum class E6Model { inside_e8, triple_a2 };  // two standard realizations of E6

// A reduced root system in one of the classical coordinate models:
//   A_n in R^{n+1}, B/C/D_n in R^n, E7/E8 in R^8 (E6 in R^8 or R^9),
//   F4 in R^4, G2 in R^3.
// All coordinates are exact rationals; this layer never touches floats.
struct RootSystem {
    char type_label = 'A';
    int rank = 0;
    int ambient_dim = 0;
    E6Model e6_model = E6Model::inside_e8;

    std::vector<RatVec> roots;        // closed under negation
    std::vector<int> simple_roots;    // indices into roots, in base order
    std::vector<int> positive_roots;  // indices, ascending
    std::vector<bool> is_positive;    // per root
    std::vector<int> neg_index;       // index of -alpha per root
    std::vector<int> mult;            // m_alpha
    std::vector<int> mult2;           // m_{2alpha} slots (0 for reduced data)

    // expansion of each root in the simple basis (integer coefficients)
    std::vector<std::vector<long long>> simple_coords;

    int num_roots() const { return (int)roots.size(); }
    int num_positive() const { return (int)positive_roots.size(); }

    const RatVec& root(int i) const { return roots[i]; }
    const RatVec& simple(int i) const { return roots[simple_roots[i]]; }

    // index of a root vector, -1 if absent
    int root_index(const RatVec& v) const;

    std::string type_string() const;  // e.g. "B3"

    // internal: exact lookup key (coordinates scaled by 6 are always integers
    // in every shipped model)
    std::map<std::vector<long long>, int> index_of_;
};

// Cartan-type validation: A>=1, B>=2, C>=3, D>=4, E in {6,7,8}, F=4, G=2.
bool valid_cartan_type(char type_label, int rank);

RootSystem build_root_system(char type_label, int rank, Form form = Form::split,
                             E6Model e6_model = E6Model::inside_e8);

// reflection of an arbitrary vector in the hyperplane of root alpha_idx
RatVec reflect(const RootSystem& rs, int alpha_idx, const RatVec& v);

// 2<v,alpha>/<alpha,alpha>
Rat coroot_pairing(const RootSystem& rs, int alpha_idx, const RatVec& v);

// rho = 1/2 sum over positive reduced roots of (m_a + 2 m_{2a}) alpha
RatVec rho(const RootSystem& rs);

// dual bases in span(Delta): <w_i, a_j^vee> = delta resp. <w_i^vee, a_j> = delta
std::vector<RatVec> fundamental_weights(const RootSystem& rs);
std::vector<RatVec> fundamental_coweights(const RootSystem& rs);

// Cartan matrix  A_ij = <alpha_j, alpha_i^vee>  (convention: row i = coroot)
std::vector<std::vector<long long>> cartan_matrix(const RootSystem& rs);

}  // namespace rootshell
