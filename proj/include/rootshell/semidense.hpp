#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootshell/subsystems.hpp"

namespace rootshell {

// A violation of the density inequality: for the recorded w and standard psi,
//   |psi ∩ w(phi0)| + rank(psi) < |psi| / 2.
struct SemidenseWitness {
    std::vector<int> w_word;  // reflection word producing the conjugate of phi0
    SubsystemMask psi;
    int intersection = 0;
    int lhs = 0;        // intersection + rank(psi)
    int psi_size = 0;   // compare 2*lhs against psi_size
};

struct SemidenseVerdict {
    bool holds = false;
    std::optional<SemidenseWitness> witness;
    long long standard_count = 0;  // standard subsystems visited
    long long orbit_count = 0;     // conjugates of phi0 visited
};

// Base positions of the distinguished coweights: the nodes whose centralizer
// drops the rank by one inside the same family (both endpoints for type A,
// the first node for B/C/D, and the marked nodes of the exceptional diagrams).
std::vector<int> extremal_coweights(const RootSystem& rs);

// Roots vanishing on H0.  H0 must be dominant.
SubsystemMask centralizer_subsystem(const RootSystem& rs, const RatVec& H0);

// Decide the density inequality for every subsystem cut out by a subspace, by
// scanning standard subsystems against the W-orbit of phi0.  phi0 itself must
// be cut out by a subspace (checked); corank-one orbits run over the normal
// vector, everything else over the member sets.  Larger standard subsystems
// are visited first, so a reported witness favors psi = the whole system.
SemidenseVerdict check_semidense(const RootSystem& rs, const SubsystemMask& phi0,
                                 long long orbit_cap = 1000000);

struct ExtremalScanEntry {
    char type = 'A';
    int rank = 0;
    int node = 0;                // base position of the extremal coweight
    std::string phi0_type;
    int phi_size = 0;            // |Phi|
    int phi0_size = 0;           // |Phi0|
    bool base_inequality = false;  // |Phi0| + rank >= |Phi|/2
    bool holds = false;
    long long standard_count = 0;
    long long orbit_count = 0;
};

// Run check_semidense over every extremal centralizer of the classical types
// (A from rank 2, B from 2, C from 3, D from 4) up to max_rank.
std::vector<ExtremalScanEntry> scan_extremal_classical(int max_rank = 7);

// One evaluated failure (or non-failure) case in the exceptional systems.
struct ExceptionalCase {
    std::string system;     // "G2", "F4", "E8", "E6", "E6/triple-A2"
    std::string phi0_type;  // classification of the subsystem under test
    std::string mode;       // "full-set" or "explicit-witness"
    // full-set mode: the inequality at psi = Phi
    long long lhs = 0;       // |phi0| + rank(Phi)
    long long phi_size = 0;  // compare 2*lhs against |Phi|
    // explicit-witness mode: the recorded (w, psi) evaluation
    int witness_intersection = -1;
    int witness_rank = -1;
    int witness_psi_size = -1;
    bool violates = false;  // this particular (psi, w) breaks the inequality
    // full verdict over all conjugates and standard psi, where we ran it
    std::optional<bool> scan_holds;
};

// Evaluate the distinguished failure cases in G2, F4, E8 and both E6 models:
// every maximal standard subsystem against psi = Phi, plus the three recorded
// explicit (w, psi) pairs for the subsystems that survive that first test.
std::vector<ExceptionalCase> verify_exceptional_failures();

// Directions (primitive, sign-normalized, deduplicated) of all lines spanned
// by differences of two points of the W-orbit of H0.
std::vector<RatVec> bad_hyperplanes(const RootSystem& rs, const RatVec& H0);

// Primitive sign-normalized direction of v (helper shared with bad_hyperplanes
// consumers; throws on the zero vector).
RatVec primitive_direction(const RatVec& v);

}  // namespace rootshell
