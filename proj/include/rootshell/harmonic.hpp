#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rootshell/root_system.hpp"
#include "rootshell/subsystems.hpp"
#include "rootshell/weyl.hpp"

namespace rootshell {

// Spectral parameter, stored as coefficients in the fundamental-weight basis.
struct SpectralParam {
    std::vector<double> re;
    std::vector<double> im;  // may be empty, meaning real
};

// ambient coordinates of the parameter
std::vector<std::complex<double>> spectral_vector(const RootSystem& rs,
                                                  const SpectralParam& lam);

// <v, alpha> / <alpha, alpha> for the root at index `root`
std::complex<double> root_bracket(const RootSystem& rs,
                                  const std::vector<std::complex<double>>& v, int root);

// One factor of the scattering product: 2^{-s} G(s) / (G((m/2+1+s)/2) G((m/2+m2+s)/2))
// with G the Gamma function.  Arguments within 1e-8 of a pole of the numerator
// are rejected.
std::complex<double> c_alpha(std::complex<double> s, int m_alpha, int m_2alpha);

// Product of c_alpha over the reduced positive roots, evaluated at
// i<lam,alpha>/<alpha,alpha>; unit leading constant.
std::complex<double> c_fn(const RootSystem& rs, const SpectralParam& lam);

// Same product, rescaled so the value at the half-sum point is 1.  This is the
// normalization under which the flat-direction expansion of the spherical
// function has the product as its literal coefficient.
std::complex<double> c_fn_anchored(const RootSystem& rs, const SpectralParam& lam);

// |c|^{-2}
double plancherel_density(const RootSystem& rs, const SpectralParam& lam);

// min(|alpha(H)| + 1, |<lam,alpha>|^{-1} + 1), the two-regime factor
double f_alpha(double alpha_H, std::complex<double> bracket);

// Sum over the Weyl group of products of f_alpha over reduced positive roots.
// Construction enumerates W, hence the rank cap; evaluation is cheap and safe
// to call inside quadrature loops.
class ThetaEvaluator {
public:
    explicit ThetaEvaluator(const RootSystem& rs);  // rank <= 4

    double theta(const std::vector<double>& H, const SpectralParam& lam) const;

    // Levi variant: sum over the reflection subgroup of `nodes`, product over
    // the reduced positive roots they generate.
    double theta_levi(const std::vector<int>& nodes, const std::vector<double>& H,
                      const SpectralParam& lam) const;

    const RootSystem& system() const { return *rs_; }

private:
    double theta_over(const std::vector<const std::vector<int>*>& inv_perms,
                      const std::vector<int>& pos_roots, const std::vector<double>& H,
                      const SpectralParam& lam) const;

    const RootSystem* rs_ = nullptr;
    std::vector<std::vector<int>> inv_perms_;       // all of W, as inverse root permutations
    std::vector<std::vector<double>> roots_d_;      // ambient doubles per root
    std::vector<double> inv_norm2_;                 // 1/<alpha,alpha> per root
    std::vector<std::vector<double>> weights_d_;    // fundamental weights
    std::vector<int> positive_;                     // positive root indices
};

double theta_majorant(const RootSystem& rs, const std::vector<double>& H,
                      const SpectralParam& lam);
double theta_majorant_L(const RootSystem& rs, const std::vector<int>& nodes,
                        const std::vector<double>& H, const SpectralParam& lam);

// ---------------------------------------------------------------------------
// rank-one groups: split and complex
// ---------------------------------------------------------------------------

enum class Rank1Group { split, complex_form };

// identification throughout: lam is the coefficient of the parameter in the
// basis {alpha}, t the coefficient of H in the basis {alpha^vee / 2}; so
// rho(H) = t/2 on the split group and t on the complex one.

// sin(lam t) / (lam sinh t), with series branches near lam = 0 and t = 0
std::complex<double> spherical_sl2c(std::complex<double> lam, double t);

// Conical-function integral, adaptive quadrature, absolute error well under
// 1e-9 on the verification ranges.  Requires |Im lam| < 1/2.
std::complex<double> spherical_sl2r(std::complex<double> lam, double t);

struct McEstimate {
    std::complex<double> value;
    double std_error = 0;
};

// Monte Carlo over the maximal compact via QR-orthonormalized Gaussians,
// radial part read off the triangular factorization.  n in {2, 3}; lam and H
// are ambient sum-zero vectors.  Deterministic for fixed (seed, samples).
McEstimate spherical_mc(int n, const std::vector<double>& lam,
                        const std::vector<double>& H, long long samples,
                        std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// bound verification on grids
// ---------------------------------------------------------------------------

struct SphGrid {
    std::vector<double> lam_re;
    std::vector<double> lam_im;  // empty means {0}
    std::vector<double> t;
};

struct GridPoint {
    double lam_re = 0;
    double lam_im = 0;
    double t = 0;
};

struct SphBoundReport {
    double a = 1;
    double kappa = 0.2;
    double bound_const = 10;
    double sup_ratio = 0;
    GridPoint argmax;
    long long points = 0;
    bool pass = false;
};

// |phi_lam(e^t)| against (1+|lam|)^a Theta(t,lam) max_w e^{-(rho + w Im lam)(t)}
SphBoundReport verify_sph_bound(Rank1Group g, const SphGrid& grid, double a = 1,
                                double kappa = 0.2, double bound_const = 10);

struct CxBoundReport {
    double upper_const = 10;
    double lower_const = 0.1;
    double sup_ratio = 0;
    GridPoint argmax;
    // restriction to t*lam <= 1, where the bound is conjecturally sharp both ways
    double inf_small = 0;
    double sup_small = 0;
    GridPoint argmin_small;
    long long points = 0;
    long long small_points = 0;
    bool pass = false;
};

// two-sided check of e^{-t}(t+1) * sum_w (1 + t|lam|)^{-1} on the complex group;
// real lam only
CxBoundReport verify_cx_bound(const SphGrid& grid, double upper_const = 10,
                              double lower_const = 0.1);

struct EquivReport {
    double radius = 0;
    double lower = 0;  // min of f/g over the grid
    double upper = 0;  // max
    long long points = 0;
};

// f_alpha against its rational stand-in (|alpha(H)|+1)/(|alpha(H)<lam,alpha>|+1)
// over the part of the grid with |lam| <= radius
EquivReport majorant_equivalence(const SphGrid& grid, double radius);

// ---------------------------------------------------------------------------
// windowed transforms along a ray and the two-exponential model
// ---------------------------------------------------------------------------

// integral of phi_{-lam}(e^h) J(h) over the window (t - eps0, t + eps0), where
// J is the radial density of the group; requires t > eps0 > 0
std::complex<double> hc_transform_shell(Rank1Group g, std::complex<double> lam,
                                        double t, double eps0);

struct ShellExpansion {
    std::complex<double> lhs;   // e^{-t rho} * windowed transform
    std::complex<double> main;  // C_M sum_{w=+-} c(-w lam) B(w lam) e^{-i t w lam}
    double residual = 0;
};

ShellExpansion shell_expansion(Rank1Group g, std::complex<double> lam, double t,
                               double eps0);

struct TimeAverageRow {
    double tau = 0;
    double lam = 0;
    double average = 0;     // (1/tau) int_tau^{2tau} |e^{-t rho} transform|^2 dt
    double diagonal = 0;    // phase-free part of the two-exponential model
    double error_term = 0;  // average - diagonal
};

struct TimeAverageReport {
    double eps0 = 0;
    double min_average = 0;
    std::vector<TimeAverageRow> rows;
};

TimeAverageReport time_average_lower_bound(Rank1Group g,
                                           const std::vector<double>& lam_grid,
                                           const std::vector<double>& tau_grid,
                                           double eps0);

struct GvTerms {
    std::complex<double> exact;
    std::complex<double> main;
    double residual = 0;
};

// split rank one: exact value vs e^{-t/2}(c(lam) e^{i lam t} + c(-lam) e^{-i lam t})
// with the anchored normalization; |lam| >= 1e-3 keeps the two poles apart
GvTerms gv_main_term_rank1(std::complex<double> lam, double t);

// ---------------------------------------------------------------------------
// constructive disk selection away from the root hyperplanes
// ---------------------------------------------------------------------------

struct DiskCertificate {
    double tau = 0;          // geometric base from the half-sum brackets
    double sigma = 0;        // allowed range for the multiplier is [1, sigma]
    double C = 0;            // chosen multiplier, tau^{2k+1}
    int interval = -1;       // pigeonhole slot k
    double min_bracket = 0;  // min over 64 circle points and reduced roots
    double max_im_norm = 0;  // max over the circle points
    bool ok = false;
};

// Finds C in [1, sigma] such that every point lam + z rho with |z| = C s stays
// at bracket-distance >= s from all root hyperplanes while Im remains inside
// the kappa-tube.  Requires ||Im lam|| <= kappa' < kappa and s below the tube
// margin; the pigeonhole step cannot fail and throws logic_error if it does.
DiskCertificate disk_choice(const RootSystem& rs, const SpectralParam& lam, double s,
                            double kappa, double kappa_prime);

// ---------------------------------------------------------------------------
// elementary spectral integral
// ---------------------------------------------------------------------------

// (1 + |x|)^{-N} Theta(tH0, lam(x))^2 Theta(H, lam(x)) |c(lam(x))|^{-2}
// integrated over the positive weight-coordinate orthant, cell by cell in the
// order/threshold decomposition at scale 1/t.  H0 is the sum of fundamental
// coweights at the nodes missing from m.  Rank <= 2.
double spectral_integral(const RootSystem& rs, const SubsystemMask& m, double t,
                         const std::vector<double>& H, int N);

}  // namespace rootshell
