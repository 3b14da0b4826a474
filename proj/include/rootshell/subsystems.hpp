#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rootshell/root_system.hpp"
#include "rootshell/weyl.hpp"

namespace rootshell {

// A root subsystem stored extensionally as indices into the parent's root list.
// Always closed under negation.  Exactly one of the generator fields is filled,
// recording how the mask was produced (simple-node subset or normal vectors).
struct SubsystemMask {
    const RootSystem* parent = nullptr;
    std::vector<int> member_roots;          // ascending root indices
    std::vector<int> generator_nodes;       // base positions, when standard
    std::vector<RatVec> generator_normals;  // normals, when cut out by a subspace

    bool contains(int root_idx) const;
    std::vector<int> positive_members() const;
    int rank() const;  // dimension of the span of the member roots
};

// Roots lying in the span of the simple roots at the given base positions.
// Membership uses the Gram-determinant dependence test.
SubsystemMask standard_subsystem(const RootSystem& rs, const std::vector<int>& nodes);

// Roots orthogonal to every vector in `normals`.
SubsystemMask orthogonal_subsystem(const RootSystem& rs,
                                   const std::vector<RatVec>& normals);

// Partition of the positive roots into those some W_I element makes negative
// and the rest.  Returns (levi positives, complement positives).  The orbit
// criterion is cross-checked internally against span membership.
std::pair<std::vector<int>, std::vector<int>> levi_split(const RootSystem& rs,
                                                         const std::vector<int>& nodes);

// Membership of w in the parabolic subgroup generated by the reflections at
// `nodes`, decided by where w sends the positive roots.
bool in_WI(const RootSystem& rs, const std::vector<int>& nodes, const WeylElement& w);

// Irreducible components of a subsystem as (family letter, rank) pairs, sorted
// by letter then rank.  Conventions: a doubled-edge rank-2 component reports as
// B2, and the rank-3 branchless simply-laced chain as A3.  Throws if the
// component diagram is not one of the finite shapes (that would be a bug).
std::vector<std::pair<char, int>> classify_type(const SubsystemMask& mask);

// "A1 x A2", "B3", or "empty".
std::string type_to_string(const std::vector<std::pair<char, int>>& components);

}  // namespace rootshell
