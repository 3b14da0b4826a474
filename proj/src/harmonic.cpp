#include "rootshell/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "rootshell/cgamma.hpp"
#include "rootshell/quad.hpp"
#include "rootshell/rng.hpp"

namespace rootshell {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_param(const RootSystem& rs, const SpectralParam& lam, const char* who) {
    if ((int)lam.re.size() != rs.rank)
        throw std::invalid_argument(std::string(who) + ": parameter has " +
                                    std::to_string(lam.re.size()) + " coefficients, rank is " +
                                    std::to_string(rs.rank));
    if (!lam.im.empty() && (int)lam.im.size() != rs.rank)
        throw std::invalid_argument(std::string(who) + ": im part length mismatch");
}

}  // namespace

std::vector<cd> spectral_vector(const RootSystem& rs, const SpectralParam& lam) {
    check_param(rs, lam, "spectral_vector");
    auto weights = fundamental_weights(rs);
    std::vector<cd> out(rs.ambient_dim, cd(0, 0));
    for (int j = 0; j < rs.rank; ++j) {
        auto w = to_double(weights[j]);
        cd coef(lam.re[j], lam.im.empty() ? 0.0 : lam.im[j]);
        for (int d = 0; d < rs.ambient_dim; ++d) out[d] += coef * w[d];
    }
    return out;
}

cd root_bracket(const RootSystem& rs, const std::vector<cd>& v, int root) {
    auto a = to_double(rs.root(root));
    cd num(0, 0);
    double den = 0;
    for (size_t d = 0; d < a.size(); ++d) {
        num += v[d] * a[d];
        den += a[d] * a[d];
    }
    return num / den;
}

cd c_alpha(cd s, int m_alpha, int m_2alpha) {
    if (gamma_pole_distance(s) < 1e-8)
        throw std::invalid_argument("c_alpha: argument within 1e-8 of a pole");
    cd num = std::exp(-s * std::log(2.0)) * cgamma(s);
    cd a = 0.5 * (0.5 * m_alpha + 1.0 + s);
    cd b = 0.5 * (0.5 * m_alpha + m_2alpha + s);
    return num / (cgamma(a) * cgamma(b));
}

namespace {

// shared by c_fn and its anchored variant
cd c_product(const RootSystem& rs, const SpectralParam& lam) {
    auto v = spectral_vector(rs, lam);
    cd prod(1, 0);
    for (int idx : rs.positive_roots) {
        cd s = kI * root_bracket(rs, v, idx);
        prod *= c_alpha(s, rs.mult[idx], rs.mult2[idx]);
    }
    return prod;
}

}  // namespace

cd c_fn(const RootSystem& rs, const SpectralParam& lam) { return c_product(rs, lam); }

cd c_fn_anchored(const RootSystem& rs, const SpectralParam& lam) {
    auto rho_d = to_double(rho(rs));
    cd at_rho(1, 0);
    for (int idx : rs.positive_roots) {
        auto a = to_double(rs.root(idx));
        double s = dot(rho_d, a) / dot(a, a);
        at_rho *= c_alpha(cd(s, 0), rs.mult[idx], rs.mult2[idx]);
    }
    return c_product(rs, lam) / at_rho;
}

double plancherel_density(const RootSystem& rs, const SpectralParam& lam) {
    return 1.0 / std::norm(c_fn(rs, lam));
}

double f_alpha(double alpha_H, cd bracket) {
    double p = std::abs(bracket);
    return std::min(std::abs(alpha_H) + 1.0, 1.0 / p + 1.0);
}

// ---------------------------------------------------------------------------
// Theta
// ---------------------------------------------------------------------------

ThetaEvaluator::ThetaEvaluator(const RootSystem& rs) : rs_(&rs) {
    if (rs.rank > 4)
        throw std::invalid_argument("ThetaEvaluator: rank capped at 4, got " +
                                    std::to_string(rs.rank));
    for (const auto& e : weyl_enumerate(rs)) inv_perms_.push_back(invert(e.perm));
    roots_d_.reserve(rs.num_roots());
    inv_norm2_.reserve(rs.num_roots());
    for (int i = 0; i < rs.num_roots(); ++i) {
        roots_d_.push_back(to_double(rs.root(i)));
        inv_norm2_.push_back(1.0 / dot(roots_d_[i], roots_d_[i]));
    }
    for (const auto& w : fundamental_weights(rs)) weights_d_.push_back(to_double(w));
    positive_ = rs.positive_roots;
}

double ThetaEvaluator::theta_over(const std::vector<const std::vector<int>*>& inv_perms,
                                  const std::vector<int>& pos_roots,
                                  const std::vector<double>& H,
                                  const SpectralParam& lam) const {
    check_param(*rs_, lam, "theta");
    if ((int)H.size() != rs_->ambient_dim)
        throw std::invalid_argument("theta: H has wrong dimension");

    int nr = rs_->num_roots();
    std::vector<double> br_abs(nr);
    for (int a = 0; a < nr; ++a) {
        double re = 0, im = 0;
        for (int j = 0; j < rs_->rank; ++j) {
            double p = dot(weights_d_[j], roots_d_[a]) * inv_norm2_[a];
            re += lam.re[j] * p;
            if (!lam.im.empty()) im += lam.im[j] * p;
        }
        br_abs[a] = std::hypot(re, im);
    }
    std::vector<double> aH(pos_roots.size());
    for (size_t k = 0; k < pos_roots.size(); ++k)
        aH[k] = std::abs(dot(roots_d_[pos_roots[k]], H)) + 1.0;

    double total = 0;
    for (const auto* ip : inv_perms) {
        double prod = 1;
        for (size_t k = 0; k < pos_roots.size(); ++k) {
            double p = br_abs[(*ip)[pos_roots[k]]];
            prod *= std::min(aH[k], 1.0 / p + 1.0);
        }
        total += prod;
    }
    return total;
}

double ThetaEvaluator::theta(const std::vector<double>& H, const SpectralParam& lam) const {
    std::vector<const std::vector<int>*> ptrs;
    ptrs.reserve(inv_perms_.size());
    for (const auto& p : inv_perms_) ptrs.push_back(&p);
    return theta_over(ptrs, positive_, H, lam);
}

double ThetaEvaluator::theta_levi(const std::vector<int>& nodes,
                                  const std::vector<double>& H,
                                  const SpectralParam& lam) const {
    // reflection subgroup of the chosen nodes, closed under composition
    std::set<std::vector<int>> group;
    std::vector<std::vector<int>> gens;
    for (int n : nodes) {
        if (n < 0 || n >= rs_->rank)
            throw std::invalid_argument("theta_levi: node out of range");
        gens.push_back(simple_reflection_perm(*rs_, n));
    }
    std::vector<std::vector<int>> frontier{identity_perm(*rs_)};
    group.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                auto q = compose(g, p);
                if (group.insert(q).second) next.push_back(std::move(q));
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> inv;
    inv.reserve(group.size());
    for (const auto& p : group) inv.push_back(invert(p));
    std::vector<const std::vector<int>*> ptrs;
    for (const auto& p : inv) ptrs.push_back(&p);

    auto pos = standard_subsystem(*rs_, nodes).positive_members();
    return theta_over(ptrs, pos, H, lam);
}

double theta_majorant(const RootSystem& rs, const std::vector<double>& H,
                      const SpectralParam& lam) {
    return ThetaEvaluator(rs).theta(H, lam);
}

double theta_majorant_L(const RootSystem& rs, const std::vector<int>& nodes,
                        const std::vector<double>& H, const SpectralParam& lam) {
    return ThetaEvaluator(rs).theta_levi(nodes, H, lam);
}

// ---------------------------------------------------------------------------
// rank-one spherical functions
// ---------------------------------------------------------------------------

cd spherical_sl2c(cd lam, double t) {
    if (t < 0) throw std::invalid_argument("spherical_sl2c: t must be >= 0");
    double ts = (t < 1e-8) ? 1.0 - t * t / 6.0 : t / std::sinh(t);
    cd u = lam * t;
    cd snc;
    if (std::abs(u) < 1e-4) {
        cd u2 = u * u;
        snc = 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    } else {
        snc = std::sin(u) / u;
    }
    return snc * ts;
}

cd spherical_sl2r(cd lam, double t) {
    if (std::abs(lam.imag()) >= 0.5)
        throw std::invalid_argument("spherical_sl2r: |Im lam| must be < 1/2");
    if (t < 0) throw std::invalid_argument("spherical_sl2r: t must be >= 0");
    if (t < 1e-14) return cd(1, 0);

    // conical-function integral over the slab, desingularized at the outer
    // endpoint by s = t - w^2; the difference of cosh values is expanded into
    // a product of sinh factors so nothing cancels for small w
    double sq = std::sqrt(t);
    auto weight = [t](double w) {
        double h = 2.0 * std::sinh(t - 0.5 * w * w) * std::sinh(0.5 * w * w);
        return 2.0 * w / std::sqrt(h);
    };
    double scale = (1.0 + t) * std::exp((std::min(std::abs(lam.imag()), 0.499) - 0.5) * t);
    double tol = 1e-11 * scale;

    double re = adaptive_integrate(
        [&](double w) {
            cd c = std::cos(lam * (t - w * w));
            return c.real() * weight(w);
        },
        0.0, sq, tol);
    double im = 0;
    if (lam.imag() != 0) {
        im = adaptive_integrate(
            [&](double w) {
                cd c = std::cos(lam * (t - w * w));
                return c.imag() * weight(w);
            },
            0.0, sq, tol);
    }
    return std::numbers::sqrt2 / kPi * cd(re, im);
}

// ---------------------------------------------------------------------------
// Monte Carlo spherical values
// ---------------------------------------------------------------------------

namespace {

// modified Gram-Schmidt in place; returns the diagonal of the triangular factor
void mgs(int n, double* m, double* diag) {
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            double p = 0;
            for (int r = 0; r < n; ++r) p += m[r * n + i] * m[r * n + j];
            for (int r = 0; r < n; ++r) m[r * n + j] -= p * m[r * n + i];
        }
        double nrm = 0;
        for (int r = 0; r < n; ++r) nrm += m[r * n + j] * m[r * n + j];
        nrm = std::sqrt(nrm);
        diag[j] = nrm;
        for (int r = 0; r < n; ++r) m[r * n + j] /= nrm;
    }
}

double det_small(int n, const double* m) {
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

McEstimate spherical_mc(int n, const std::vector<double>& lam,
                        const std::vector<double>& H, long long samples,
                        std::uint64_t seed) {
    if (n != 2 && n != 3) throw std::invalid_argument("spherical_mc: n must be 2 or 3");
    if ((int)lam.size() != n || (int)H.size() != n)
        throw std::invalid_argument("spherical_mc: lam and H must have length n");
    if (samples < 1) throw std::invalid_argument("spherical_mc: need samples >= 1");

    std::vector<double> rho_vec(n);
    for (int i = 0; i < n; ++i) rho_vec[i] = 0.5 * (n - 1) - i;
    std::vector<double> eH(n);
    for (int i = 0; i < n; ++i) eH[i] = std::exp(H[i]);

    double sr = 0, si = 0, sr2 = 0, si2 = 0;
    double k[9], diag[3], m[9];
    for (long long s = 0; s < samples; ++s) {
        CounterRng rng(seed, (std::uint64_t)s);
        // Haar element of the rotation group: orthonormalize a Gaussian
        // matrix, then fix the determinant sign on the last column
        for (int i = 0; i < n * n; i += 2) {
            double a, b;
            rng.normal_pair(a, b);
            k[i] = a;
            if (i + 1 < n * n) k[i + 1] = b;
        }
        mgs(n, k, diag);
        if (det_small(n, k) < 0)
            for (int r = 0; r < n; ++r) k[r * n + (n - 1)] = -k[r * n + (n - 1)];

        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m[r * n + c] = eH[r] * k[r * n + c];
        mgs(n, m, diag);

        double er = 0, ang = 0;
        for (int i = 0; i < n; ++i) {
            double d = std::log(diag[i]);
            er -= rho_vec[i] * d;
            ang += lam[i] * d;
        }
        double wv = std::exp(er);
        double vr = wv * std::cos(ang), vi = wv * std::sin(ang);
        sr += vr;
        si += vi;
        sr2 += vr * vr;
        si2 += vi * vi;
    }
    double inv = 1.0 / (double)samples;
    double mr = sr * inv, mi = si * inv;
    double var = std::max(0.0, sr2 * inv - mr * mr) + std::max(0.0, si2 * inv - mi * mi);
    return {cd(mr, mi), std::sqrt(var * inv)};
}

// ---------------------------------------------------------------------------
// grid verification
// ---------------------------------------------------------------------------

namespace {

double rho_coord(Rank1Group g) { return g == Rank1Group::split ? 0.5 : 1.0; }

cd rank1_value(Rank1Group g, cd lam, double t) {
    return g == Rank1Group::split ? spherical_sl2r(lam, t) : spherical_sl2c(lam, t);
}

std::vector<double> im_axis(const SphGrid& grid) {
    return grid.lam_im.empty() ? std::vector<double>{0.0} : grid.lam_im;
}

}  // namespace

SphBoundReport verify_sph_bound(Rank1Group g, const SphGrid& grid, double a,
                                double kappa, double bound_const) {
    SphBoundReport rep;
    rep.a = a;
    rep.kappa = kappa;
    rep.bound_const = bound_const;
    double rc = rho_coord(g);
    for (double li : im_axis(grid)) {
        if (std::abs(li) > kappa + 1e-12)
            throw std::invalid_argument("verify_sph_bound: grid leaves the Im-tube");
        for (double lr : grid.lam_re)
            for (double t : grid.t) {
                cd lam(lr, li);
                double phi = std::abs(rank1_value(g, lam, t));
                double mod = std::abs(lam);
                double th = 2.0 * std::min(t + 1.0, 1.0 / mod + 1.0);
                double maj =
                    std::pow(1.0 + mod, a) * th * std::exp(-rc * t + std::abs(li) * t);
                double ratio = phi / maj;
                ++rep.points;
                if (ratio > rep.sup_ratio) {
                    rep.sup_ratio = ratio;
                    rep.argmax = {lr, li, t};
                }
            }
    }
    rep.pass = rep.sup_ratio <= bound_const;
    return rep;
}

CxBoundReport verify_cx_bound(const SphGrid& grid, double upper_const,
                              double lower_const) {
    for (double li : im_axis(grid))
        if (li != 0.0)
            throw std::invalid_argument("verify_cx_bound: real parameters only");
    CxBoundReport rep;
    rep.upper_const = upper_const;
    rep.lower_const = lower_const;
    rep.inf_small = std::numeric_limits<double>::infinity();
    for (double lr : grid.lam_re)
        for (double t : grid.t) {
            double phi = std::abs(spherical_sl2c(cd(lr, 0), t));
            double bound = std::exp(-t) * (t + 1.0) * 2.0 / (1.0 + t * std::abs(lr));
            double ratio = phi / bound;
            ++rep.points;
            if (ratio > rep.sup_ratio) {
                rep.sup_ratio = ratio;
                rep.argmax = {lr, 0, t};
            }
            if (t * std::abs(lr) <= 1.0) {
                ++rep.small_points;
                rep.sup_small = std::max(rep.sup_small, ratio);
                if (ratio < rep.inf_small) {
                    rep.inf_small = ratio;
                    rep.argmin_small = {lr, 0, t};
                }
            }
        }
    rep.pass = rep.sup_ratio <= upper_const && rep.inf_small >= lower_const;
    return rep;
}

EquivReport majorant_equivalence(const SphGrid& grid, double radius) {
    EquivReport rep;
    rep.radius = radius;
    rep.lower = std::numeric_limits<double>::infinity();
    for (double li : im_axis(grid))
        for (double lr : grid.lam_re)
            for (double t : grid.t) {
                double mod = std::hypot(lr, li);
                if (mod > radius) continue;
                double f = std::min(t + 1.0, 1.0 / mod + 1.0);
                double gq = (t + 1.0) / (t * mod + 1.0);
                double ratio = f / gq;
                ++rep.points;
                rep.lower = std::min(rep.lower, ratio);
                rep.upper = std::max(rep.upper, ratio);
            }
    return rep;
}

// ---------------------------------------------------------------------------
// windowed transforms
// ---------------------------------------------------------------------------

namespace {

double radial_density_rank1(Rank1Group g, double h) {
    double s = std::sinh(h);
    return g == Rank1Group::split ? s : s * s;
}

// e^{-t rho} int_{t-eps0}^{t+eps0} phi_{-lam}(e^h) J(h) dh; the prefactor keeps
// every intermediate O(eps0)
cd shell_shifted(Rank1Group g, cd lam, double t, double eps0) {
    if (!(eps0 > 0) || !(t > eps0))
        throw std::invalid_argument("hc_transform_shell: need t > eps0 > 0");
    double shift = std::exp(-rho_coord(g) * t);
    double tol = 1e-10 * eps0;
    double re = adaptive_integrate(
        [&](double h) {
            return (shift * radial_density_rank1(g, h) * rank1_value(g, -lam, h)).real();
        },
        t - eps0, t + eps0, tol);
    double im = adaptive_integrate(
        [&](double h) {
            return (shift * radial_density_rank1(g, h) * rank1_value(g, -lam, h)).imag();
        },
        t - eps0, t + eps0, tol);
    return cd(re, im);
}

cd c_anchored_rank1(Rank1Group g, cd lam) {
    if (g == Rank1Group::split) return c_alpha(kI * lam, 1, 0) / c_alpha(cd(0.5, 0), 1, 0);
    return c_alpha(kI * lam, 2, 0) / c_alpha(cd(1.0, 0), 2, 0);
}

cd window_hat(cd lam, double eps0) {
    cd u = lam * eps0;
    if (std::abs(u) < 1e-6) return 2.0 * eps0 * (1.0 - u * u / 6.0);
    return 2.0 * std::sin(u) / lam;
}

}  // namespace

cd hc_transform_shell(Rank1Group g, cd lam, double t, double eps0) {
    return std::exp(rho_coord(g) * t) * shell_shifted(g, lam, t, eps0);
}

ShellExpansion shell_expansion(Rank1Group g, cd lam, double t, double eps0) {
    ShellExpansion out;
    out.lhs = shell_shifted(g, lam, t, eps0);
    double cm = g == Rank1Group::split ? 0.5 : 0.25;
    out.main = cd(0, 0);
    for (int w : {1, -1}) {
        cd wl = double(w) * lam;
        out.main += cm * c_anchored_rank1(g, -wl) * window_hat(wl, eps0) *
                    std::exp(-kI * t * wl);
    }
    out.residual = std::abs(out.lhs - out.main);
    return out;
}

TimeAverageReport time_average_lower_bound(Rank1Group g,
                                           const std::vector<double>& lam_grid,
                                           const std::vector<double>& tau_grid,
                                           double eps0) {
    if (!(eps0 > 0)) throw std::invalid_argument("time_average_lower_bound: eps0 > 0");
    for (double tau : tau_grid)
        if (!(tau > 2 * eps0 + 1))
            throw std::invalid_argument("time_average_lower_bound: tau too small");
    TimeAverageReport rep;
    rep.eps0 = eps0;
    rep.min_average = std::numeric_limits<double>::infinity();
    double cm = g == Rank1Group::split ? 0.5 : 0.25;
    for (double tau : tau_grid)
        for (double lm : lam_grid) {
            cd lam(lm, 0);
            double avg = adaptive_integrate(
                             [&](double t) { return std::norm(shell_shifted(g, lam, t, eps0)); },
                             tau, 2 * tau, 1e-10 * tau) /
                         tau;
            double diag = 0;
            for (int w : {1, -1}) {
                cd wl = double(w) * lam;
                diag += cm * cm * std::norm(c_anchored_rank1(g, -wl)) *
                        std::norm(window_hat(wl, eps0));
            }
            rep.rows.push_back({tau, lm, avg, diag, avg - diag});
            rep.min_average = std::min(rep.min_average, avg);
        }
    return rep;
}

GvTerms gv_main_term_rank1(cd lam, double t) {
    if (std::abs(lam) < 1e-3)
        throw std::invalid_argument(
            "gv_main_term_rank1: |lam| < 1e-3 (pole cancellation not implemented)");
    GvTerms out;
    out.exact = spherical_sl2r(lam, t);
    cd cp = c_anchored_rank1(Rank1Group::split, lam);
    cd cm = c_anchored_rank1(Rank1Group::split, -lam);
    out.main = std::exp(-0.5 * t) * (cp * std::exp(kI * lam * t) + cm * std::exp(-kI * lam * t));
    out.residual = std::abs(out.exact - out.main);
    return out;
}

// ---------------------------------------------------------------------------
// disk selection
// ---------------------------------------------------------------------------

DiskCertificate disk_choice(const RootSystem& rs, const SpectralParam& lam, double s,
                            double kappa, double kappa_prime) {
    if (!(0 < kappa_prime && kappa_prime < kappa))
        throw std::invalid_argument("disk_choice: need 0 < kappa' < kappa");
    if (!(s > 0)) throw std::invalid_argument("disk_choice: need s > 0");
    check_param(rs, lam, "disk_choice");

    auto v = spectral_vector(rs, lam);
    double im_norm = 0;
    for (const auto& z : v) im_norm += z.imag() * z.imag();
    im_norm = std::sqrt(im_norm);
    if (im_norm > kappa_prime + 1e-12)
        throw std::invalid_argument("disk_choice: Im lam exceeds kappa'");

    auto rho_d = to_double(rho(rs));
    int p = rs.num_positive();
    std::vector<double> rho_br(p), lam_br(p);
    double tau = 1.0;
    for (int k = 0; k < p; ++k) {
        int idx = rs.positive_roots[k];
        auto a = to_double(rs.root(idx));
        double n2 = dot(a, a);
        rho_br[k] = std::abs(dot(rho_d, a)) / n2;
        cd b(0, 0);
        for (size_t d = 0; d < a.size(); ++d) b += v[d] * a[d];
        lam_br[k] = std::abs(b) / n2;
        tau = std::max({tau, 2.0 / rho_br[k], rho_br[k] + 1.0});
    }
    tau *= 1.0 + 1e-12;

    DiskCertificate cert;
    cert.tau = tau;
    cert.sigma = std::pow(tau, 2.0 * p + 2.0);

    double rho_norm = std::sqrt(dot(rho_d, rho_d));
    double margin = (kappa - kappa_prime) / (cert.sigma * rho_norm);
    if (!(s < margin))
        throw std::invalid_argument("disk_choice: s too large for the tube margin");

    // one of the p+1 dyadic-style slots must be free of bracket values
    for (int k = 0; k <= p && cert.interval < 0; ++k) {
        double lo = std::pow(tau, 2.0 * k) * s, hi = std::pow(tau, 2.0 * k + 2.0) * s;
        bool empty = true;
        for (double b : lam_br)
            if (b > lo && b < hi) empty = false;
        if (empty) cert.interval = k;
    }
    if (cert.interval < 0)
        throw std::logic_error("disk_choice: pigeonhole failed, this cannot happen");
    cert.C = std::pow(tau, 2.0 * cert.interval + 1.0);

    cert.min_bracket = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 64; ++j) {
        cd z = cert.C * s * std::exp(kI * (2.0 * kPi * j / 64.0));
        double imn = 0;
        for (size_t d = 0; d < v.size(); ++d) {
            double iw = (v[d] + z * rho_d[d]).imag();
            imn += iw * iw;
        }
        cert.max_im_norm = std::max(cert.max_im_norm, std::sqrt(imn));
        for (int k = 0; k < p; ++k) {
            int idx = rs.positive_roots[k];
            auto a = to_double(rs.root(idx));
            double n2 = dot(a, a);
            cd b(0, 0);
            for (size_t d = 0; d < a.size(); ++d) b += (v[d] + z * rho_d[d]) * a[d];
            cert.min_bracket = std::min(cert.min_bracket, std::abs(b) / n2);
        }
    }
    cert.ok = cert.min_bracket >= s * (1.0 - 1e-9) && cert.max_im_norm < kappa;
    return cert;
}

// ---------------------------------------------------------------------------
// elementary spectral integral
// ---------------------------------------------------------------------------

namespace {

struct SpectralCtx {
    int rank = 0;
    int npos = 0;
    std::vector<std::vector<double>> wb;  // wb[j][k]: <w_j, a_k>/<a_k,a_k>
    std::vector<double> a_tH0, a_H;       // |alpha(tH0)|+1, |alpha(H)|+1
    std::vector<std::vector<int>> inv_perms;
    std::vector<int> mult;
    // workspace
    mutable std::vector<double> br;

    double integrand(const double* x, int N) const {
        double nrm2 = 0;
        for (int j = 0; j < rank; ++j) nrm2 += x[j] * x[j];
        for (int k = 0; k < npos; ++k) {
            double b = 0;
            for (int j = 0; j < rank; ++j) b += x[j] * wb[j][k];
            br[k] = b;
        }
        double th0 = 0, thH = 0;
        for (const auto& ip : inv_perms) {
            double p0 = 1, pH = 1;
            for (int k = 0; k < npos; ++k) {
                double inv_b = 1.0 / br[pos_slot(ip, k)] + 1.0;
                p0 *= std::min(a_tH0[k], inv_b);
                pH *= std::min(a_H[k], inv_b);
            }
            th0 += p0;
            thH += pH;
        }
        double dens = 1;
        for (int k = 0; k < npos; ++k) {
            double b = br[k];
            dens *= (mult[k] == 1) ? 2.0 * kPi * b * std::tanh(kPi * b) : kPi * b * b;
        }
        return std::pow(1.0 + std::sqrt(nrm2), -N) * th0 * th0 * thH * dens;
    }

    // positive-root slot of the image root; brackets of negatives agree in
    // absolute value with their positives
    std::vector<int> slot_of_root;
    int pos_slot(const std::vector<int>& ip, int k) const { return slot_of_root[ip[pos_idx[k]]]; }
    std::vector<int> pos_idx;
};

}  // namespace

double spectral_integral(const RootSystem& rs, const SubsystemMask& m, double t,
                         const std::vector<double>& H, int N) {
    if (rs.rank > 2) throw std::invalid_argument("spectral_integral: rank capped at 2");
    if (m.parent != &rs) throw std::invalid_argument("spectral_integral: mask is foreign");
    if (!(t > 1)) throw std::invalid_argument("spectral_integral: need t > 1");
    if ((int)H.size() != rs.ambient_dim)
        throw std::invalid_argument("spectral_integral: H has wrong dimension");
    if (N < 1) throw std::invalid_argument("spectral_integral: need N >= 1");

    // direction: fundamental coweights of the nodes outside the subsystem
    auto cw = fundamental_coweights(rs);
    std::vector<double> H0(rs.ambient_dim, 0.0);
    for (int j = 0; j < rs.rank; ++j) {
        if (m.contains(rs.simple_roots[j])) continue;
        auto w = to_double(cw[j]);
        for (int d = 0; d < rs.ambient_dim; ++d) H0[d] += w[d];
    }

    SpectralCtx ctx;
    ctx.rank = rs.rank;
    ctx.npos = rs.num_positive();
    ctx.pos_idx = rs.positive_roots;
    ctx.slot_of_root.assign(rs.num_roots(), -1);
    for (int k = 0; k < ctx.npos; ++k) {
        int idx = rs.positive_roots[k];
        ctx.slot_of_root[idx] = k;
        ctx.slot_of_root[rs.neg_index[idx]] = k;
    }
    auto weights = fundamental_weights(rs);
    ctx.wb.assign(rs.rank, std::vector<double>(ctx.npos));
    ctx.a_tH0.resize(ctx.npos);
    ctx.a_H.resize(ctx.npos);
    ctx.mult.resize(ctx.npos);
    for (int k = 0; k < ctx.npos; ++k) {
        int idx = rs.positive_roots[k];
        auto a = to_double(rs.root(idx));
        double n2 = dot(a, a);
        for (int j = 0; j < rs.rank; ++j)
            ctx.wb[j][k] = dot(to_double(weights[j]), a) / n2;
        ctx.a_tH0[k] = std::abs(t * dot(a, H0)) + 1.0;
        ctx.a_H[k] = std::abs(dot(a, H)) + 1.0;
        ctx.mult[k] = rs.mult[idx];
        if (ctx.mult[k] != 1 && ctx.mult[k] != 2)
            throw std::invalid_argument("spectral_integral: unsupported multiplicity");
    }
    for (const auto& e : weyl_enumerate(rs)) ctx.inv_perms.push_back(invert(e.perm));
    ctx.br.resize(ctx.npos);

    double cut = 1.0 / t;

    if (rs.rank == 1) {
        auto f = [&](double x) { return ctx.integrand(&x, N); };
        auto piece = [&](bool tail) {
            auto run = [&](double tol) {
                return tail ? integrate_semi_infinite(f, cut, tol)
                            : adaptive_integrate(f, 0.0, cut, tol);
            };
            double v0 = run(1e-4);
            return run(std::max(1e-10, 1e-8 * std::abs(v0)));
        };
        return piece(false) + piece(true);
    }

    // rank two: for each coordinate order, the three cells cut at 1/t
    double total = 0;
    for (int outer = 0; outer < 2; ++outer) {
        int inner = 1 - outer;
        auto eval = [&](double xo, double xi) {
            double x[2];
            x[outer] = xo;
            x[inner] = xi;
            return ctx.integrand(x, N);
        };
        auto cell = [&](int which, double tol) {
            double itol = tol * 1e-2;
            if (which == 0)  // both below the cut, ordered
                return adaptive_integrate(
                    [&](double xo) {
                        return adaptive_integrate([&](double xi) { return eval(xo, xi); },
                                                  0.0, xo, itol);
                    },
                    0.0, cut, tol);
            if (which == 1)  // outer above, inner below
                return integrate_semi_infinite(
                    [&](double xo) {
                        return adaptive_integrate([&](double xi) { return eval(xo, xi); },
                                                  0.0, cut, itol);
                    },
                    cut, tol);
            return integrate_semi_infinite(  // both above, ordered
                [&](double xo) {
                    return adaptive_integrate([&](double xi) { return eval(xo, xi); }, cut,
                                              xo, itol);
                },
                cut, tol);
        };
        for (int which = 0; which < 3; ++which) {
            double v0 = cell(which, 1e-3);
            total += cell(which, std::max(1e-9, 1e-7 * std::abs(v0)));
        }
    }
    return total;
}

}  // namespace rootshell
