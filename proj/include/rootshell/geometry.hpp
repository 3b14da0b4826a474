#pragma once

#include <cstdint>
#include <vector>

#include "rootshell/rat.hpp"
#include "rootshell/rng.hpp"
#include "rootshell/root_system.hpp"

namespace rootshell {

// Monte Carlo geometry on SL_n(R).  The group realizes type A_{n-1} with
// every root multiplicity 1, and the Cartan projection is computable from
// singular values, which is why it is the only real form modelled here.
// The flat coordinates on the diagonal subalgebra use the trace form; the
// Killing normalization differs by the scalar 2n, which report emitters
// record so exponents stay comparable.

// Dense n x n real matrix of determinant 1 (checked to 1e-8 on construction).
struct GroupPoint {
    int n = 0;
    std::vector<double> entries;  // row-major

    GroupPoint(int n_, std::vector<double> entries_);
    double at(int i, int j) const { return entries[i * n + j]; }
};

// Bi-K-invariant shell K exp(B(t*H0, eps0)) K.  H0 is a trace-zero diagonal
// direction with non-increasing entries.  t_min is the smallest scale at
// which the ball clears every chamber wall that H0 is not itself on; walls
// through H0 are fixed by the corresponding reflections, so the shell is
// still well defined there and sampling restricts to the dominant part.
struct ShellSpec {
    int n = 0;
    std::vector<double> H0;
    double t = 0.0;
    double eps0 = 0.1;
    double t_min = 0.0;

    ShellSpec(std::vector<double> H0_, double t_, double eps0_ = 0.1);
};

// Haar-distributed element of SO(n): Gaussian matrix, Gram-Schmidt with the
// positive-diagonal convention, determinant fixed by flipping one column.
// Row-major; consumes ceil(n^2/2) normal pairs.
std::vector<double> haar_special_orthogonal(int n, CounterRng& rng);

// kappa(g): logarithms of the singular values, sorted descending (dominant by
// construction).  Throws domain_error when g is numerically singular.
std::vector<double> cartan_projection(int n, const std::vector<double>& entries);
std::vector<double> cartan_projection(const GroupPoint& g);

// J(H) = prod_{i<j} sinh(h_i - h_j) for non-increasing H (all multiplicities
// are 1 in SL_n).
double radial_density(int n, const std::vector<double>& H);

// One Haar point of the shell: k1, k2 Haar on SO(n), radial part proportional
// to J over the dominant part of the ball, by rejection against the ball's
// J maximum.  Throws runtime_error if the acceptance rate drops below 1e-4
// (the fix is a larger t).  Draw counts are all taken from `rng`, so giving
// each sample its own counter stream makes runs reproducible bit for bit.
GroupPoint sample_shell(const ShellSpec& spec, CounterRng& rng);

struct McIntersect {
    double ratio = 0.0;       // P[kappa(e^{-H} g) in B(t*H0, eps0)]
    double std_error = 0.0;   // binomial
    double bound_quotient = 0.0;  // ratio / ((log t)^k e^{-rho(H)})
    int k = 0;                // log exponent of the wall subsystem of H0
    // whether the wall subsystem satisfies the density hypothesis behind the
    // (log t)^k bound; false for generic directions in SL3 and beyond, where
    // the quotient is reported but the bound is not predicted
    bool k_density_ok = true;
    long long samples = 0;
    long long hits = 0;
};

// Relative intersection volume vol(e^H S_t cap S_t) / vol(S_t) by Monte
// Carlo over the shell.  H must be dominant and trace-zero.  Identical
// (seed, parameters) give identical results for every thread count: sample
// s always uses counter stream s and hits merge by integer summation.
McIntersect mc_intersection_ratio(const ShellSpec& spec,
                                  const std::vector<double>& H,
                                  long long samples, std::uint64_t seed = 1,
                                  int threads = 1);

struct AnkerRow {
    std::vector<double> H;
    double ratio = 0.0;
    double std_error = 0.0;
    double envelope = 0.0;  // e^{-rho(H)} prod_{alpha>0} (1 + alpha(H))
    double quotient = 0.0;  // ratio / envelope
};

struct AnkerReport {
    double C = 0.0;  // max quotient over the grid
    double bound_const = 0.0;
    bool pass = false;  // C <= bound_const
    std::vector<AnkerRow> rows;
    // soft nesting check: when the grid sits on one ray through 0, the ratio
    // should be non-increasing along it to within 3 combined standard errors
    bool ray_comparable = false;
    bool ray_monotone_soft = false;
};

// Sanity envelope: the measured ratio against the product bound
// C e^{-rho(H)} prod (1 + alpha(H)).  Row r draws its samples from counter
// streams r*samples .. (r+1)*samples - 1, so rows are independent and the
// whole report is seed-reproducible.
AnkerReport anker_upper_check(const ShellSpec& spec,
                              const std::vector<std::vector<double>>& H_grid,
                              long long samples, std::uint64_t seed = 1,
                              int threads = 1, double bound_const = 2.0);

// P = Conv(W.(H0 - w0 H0)) intersected with the closed dominant chamber,
// computed exactly.  In simple-root coordinates y (H = sum y_j alpha_j) the
// polytope is  { Gram y >= 0,  y_j <= yhat_j }  where yhat_j > 0 are the
// simple-root coordinates of Y = H0 - w0 H0; vertices come from enumerating
// the rank-subsets of those 2*rank constraints.  The gauge is
// ||H||_P = max_j y_j(H) / yhat_j on dominant H.
struct SupportPolytope {
    const RootSystem* rs = nullptr;
    RatVec Y;                              // H0 - w0 H0, ambient
    RatVec yhat;                           // root coordinates of Y
    std::vector<RatVec> vertices;          // ambient, exact; 0 and Y included
    std::vector<RatVec> facet_functionals; // ell_j = coweight_j / yhat_j
    std::vector<std::vector<double>> facet_d;  // float copies of ell_j
};

SupportPolytope support_polytope(const RootSystem& rs, const RatVec& H0);

// max_j ell_j(H) for dominant H (throws on a non-dominant argument).
double polytopal_norm(const SupportPolytope& P, const std::vector<double>& H);

struct TriangleReport {
    long long trials = 0;
    long long violations = 0;
    double worst_margin = 0.0;  // min over trials of the slack in the cone order
    bool pass = false;
};

// kappa(g^-1 h) <= kappa(g^-1 m) + kappa(m^-1 h) in the convex-orbit order,
// for triples of determinant-normalized Gaussian matrices (tolerance 1e-6).
TriangleReport triangle_check(int n, long long trials, std::uint64_t seed = 1);

struct BrionRow {
    double tau = 0.0;
    double value = 0.0;  // integral over P_{2 tau}
    double ratio = 0.0;  // value / tau
};

struct BrionReport {
    double theta = 0.0;
    std::vector<BrionRow> rows;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double spread = 0.0;  // max_ratio / min_ratio
    // exact statement rho(Y) = 2 rho(H0): the exponent below vanishes at the
    // vertex Y as it does at 0
    bool vertex_exponent_zero = false;
};

// Quadrature check that int_{P_{2 tau}} exp(2 theta rho(H - 2||H||_P H0)) dH
// grows linearly: value/tau should stay within a bounded band over the grid.
// Rank <= 2; theta in (0, 1/2].
BrionReport brion_consequence_check(const RootSystem& rs, const RatVec& H0,
                                    double theta,
                                    std::vector<double> tau_grid = {4, 8, 16,
                                                                    32, 64});

}  // namespace rootshell
