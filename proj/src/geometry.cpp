#include "rootshell/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rootshell/exponent.hpp"
#include "rootshell/linalg.hpp"
#include "rootshell/quad.hpp"
#include "rootshell/subsystems.hpp"
#include "rootshell/weyl.hpp"

namespace rootshell {

namespace {

constexpr double kMembershipGuard = 1e-9;  // boundary band counted as a miss

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

// log sinh(x) for x > 0 without overflow
double log_sinh(double x) {
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

double rho_pairing(int n, const std::vector<double>& H) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (0.5 * (n - 1) - i) * H[i];
    return s;
}

// orthonormal Helmert-style basis of the trace-zero diagonal subspace
std::vector<std::vector<double>> tracezero_basis(int n) {
    std::vector<std::vector<double>> b;
    for (int k = 1; k < n; ++k) {
        std::vector<double> u(n, 0.0);
        double s = 1.0 / std::sqrt((double)k * (k + 1));
        for (int i = 0; i < k; ++i) u[i] = s;
        u[k] = -k * s;
        b.push_back(std::move(u));
    }
    return b;
}

struct ShellCtx {
    int n = 0;
    std::vector<double> center;  // t * H0
    double r_max = 0.0;          // ball radius minus the guard band
    double log_j_max = 0.0;      // envelope: log prod sinh(alpha(center) + sqrt2 eps0)
    std::vector<std::vector<double>> basis;
};

ShellCtx make_ctx(const ShellSpec& spec) {
    ShellCtx c;
    c.n = spec.n;
    c.center.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) c.center[i] = spec.t * spec.H0[i];
    c.r_max = spec.eps0 - 2.0 * kMembershipGuard;
    c.log_j_max = 0.0;
    const double pad = std::numbers::sqrt2 * spec.eps0;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            c.log_j_max += log_sinh(c.center[i] - c.center[j] + pad);
    c.basis = tracezero_basis(spec.n);
    return c;
}

// radial part: density proportional to J on the dominant part of the ball
std::vector<double> draw_radial(const ShellCtx& c, CounterRng& rng) {
    const int d = c.n - 1;
    std::vector<double> z(d + (d & 1));
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (int i = 0; i < (int)z.size(); i += 2) rng.normal_pair(z[i], z[i + 1]);
        double u_r = rng.uniform();
        double u_a = rng.uniform_open();
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) nrm += z[i] * z[i];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-150) continue;
        double radius = c.r_max * std::pow(u_r, 1.0 / d);
        std::vector<double> H = c.center;
        for (int i = 0; i < d; ++i) {
            double coef = radius * z[i] / nrm;
            for (int j = 0; j < c.n; ++j) H[j] += coef * c.basis[i][j];
        }
        bool dominant = true;
        double log_j = 0.0;
        for (int i = 0; i < c.n && dominant; ++i)
            for (int j = i + 1; j < c.n; ++j) {
                double a = H[i] - H[j];
                if (a <= 0.0) { dominant = false; break; }
                log_j += log_sinh(a);
            }
        if (!dominant) continue;
        if (std::log(u_a) < log_j - c.log_j_max) return H;
    }
    throw std::runtime_error(
        "sample_shell: acceptance rate below 1e-4; increase t so the ball "
        "clears the chamber walls");
}

void haar_so_eigen(int n, CounterRng& rng, Eigen::MatrixXd& q) {
    std::vector<double> z(n * n + ((n * n) & 1));
    for (int i = 0; i < (int)z.size(); i += 2) rng.normal_pair(z[i], z[i + 1]);
    q.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = z[i * n + j];
    // Gram-Schmidt on rows = QR with positive diagonal, so q is Haar on O(n)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) q.row(i) -= q.row(i).dot(q.row(j)) * q.row(j);
        q.row(i) /= q.row(i).norm();
    }
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
}

std::vector<double> kappa_of(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    std::vector<double> out(s.size());
    for (int i = 0; i < (int)s.size(); ++i) {
        if (!(s[i] > 1e-300) || !std::isfinite(s[i]))
            throw std::domain_error("cartan_projection: numerically singular matrix");
        out[i] = std::log(s[i]);
    }
    return out;  // Eigen returns singular values sorted descending
}

// shared Monte Carlo core; sample s draws from counter stream stream_base + s
long long mc_hits(const ShellSpec& spec, const ShellCtx& ctx,
                  const std::vector<double>& H, long long samples,
                  std::uint64_t seed, std::uint64_t stream_base, int threads) {
    const int n = spec.n;
    std::vector<double> scale(n);
    for (int i = 0; i < n; ++i) scale[i] = std::exp(-H[i]);
    const double rad2 = (spec.eps0 - kMembershipGuard) * (spec.eps0 - kMembershipGuard);

    threads = std::max(1, std::min<int>(threads, 256));
    std::vector<long long> hits(threads, 0);
    std::vector<std::exception_ptr> errs(threads);
    auto work = [&](int w) {
        try {
            long long lo = samples * w / threads, hi = samples * (w + 1) / threads;
            Eigen::MatrixXd k1, k2, m(n, n);
            long long local = 0;
            for (long long s = lo; s < hi; ++s) {
                CounterRng rng(seed, stream_base + (std::uint64_t)s);
                haar_so_eigen(n, rng, k1);
                haar_so_eigen(n, rng, k2);
                std::vector<double> Hs = draw_radial(ctx, rng);
                for (double& x : Hs) x = std::exp(x);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double acc = 0.0;
                        for (int l = 0; l < n; ++l) acc += k1(i, l) * Hs[l] * k2(l, j);
                        m(i, j) = scale[i] * acc;
                    }
                std::vector<double> kap = kappa_of(m);
                double d2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    double di = kap[i] - ctx.center[i];
                    d2 += di * di;
                }
                if (d2 < rad2) ++local;
            }
            hits[w] = local;
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    long long total = 0;
    for (long long h : hits) total += h;
    return total;
}

void check_dominant_tracezero(int n, const std::vector<double>& H, const char* who) {
    if ((int)H.size() != n) throw std::invalid_argument(std::string(who) + ": H has wrong dimension");
    check_finite(H, who);
    double tr = 0.0;
    for (double x : H) tr += x;
    if (std::fabs(tr) > 1e-8) throw std::invalid_argument(std::string(who) + ": H is not trace-zero");
    for (int i = 0; i + 1 < n; ++i)
        if (H[i] < H[i + 1] - 1e-12)
            throw std::invalid_argument(std::string(who) + ": H must have non-increasing entries");
}

// log power for the intersection bound, from the subsystem of roots vanishing
// on H0.  When that subsystem is too sparse for the density hypothesis the
// bound is not predicted to hold (generic directions in SL3 and beyond); the
// raw tie count is still the right normalization to report against, so return
// it and flag the failed hypothesis.
std::pair<int, bool> wall_exponent_k(const ShellSpec& spec) {
    RootSystem rs = build_root_system('A', spec.n - 1);
    std::vector<int> nodes;
    for (int i = 0; i + 1 < spec.n; ++i)
        if (std::fabs(spec.H0[i] - spec.H0[i + 1]) < 1e-9) nodes.push_back(i);
    SubsystemMask mask = standard_subsystem(rs, nodes);
    ExponentTable tbl = exponent_table(rs, mask);
    return {tbl.k, check_S_lower_bound(tbl).ok};
}

}  // namespace

GroupPoint::GroupPoint(int n_, std::vector<double> entries_) : n(n_), entries(std::move(entries_)) {
    if (n < 2) throw std::invalid_argument("GroupPoint: n must be at least 2");
    if ((int)entries.size() != n * n)
        throw std::invalid_argument("GroupPoint: entry count does not match n");
    check_finite(entries, "GroupPoint");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        entries.data(), n, n);
    double det = Eigen::MatrixXd(m).determinant();
    if (std::fabs(det - 1.0) > 1e-8)
        throw std::invalid_argument("GroupPoint: determinant is not 1 (got " +
                                    std::to_string(det) + ")");
}

ShellSpec::ShellSpec(std::vector<double> H0_, double t_, double eps0_)
    : n((int)H0_.size()), H0(std::move(H0_)), t(t_), eps0(eps0_) {
    if (n < 2) throw std::invalid_argument("ShellSpec: need at least SL_2");
    check_finite(H0, "ShellSpec");
    if (!(eps0 >= 1e-6))
        throw std::invalid_argument("ShellSpec: eps0 below 1e-6 is meaningless against the 1e-9 membership guard");
    if (!(t > 0.0)) throw std::invalid_argument("ShellSpec: t must be positive");
    double tr = 0.0, nrm = 0.0;
    for (double x : H0) tr += x;
    if (std::fabs(tr) > 1e-8) throw std::invalid_argument("ShellSpec: H0 is not trace-zero");
    for (auto& x : H0) x -= tr / n;  // re-center exactly
    for (double x : H0) nrm += x * x;
    if (nrm < 1e-24) throw std::invalid_argument("ShellSpec: H0 is zero");
    for (int i = 0; i + 1 < n; ++i)
        if (H0[i] < H0[i + 1] - 1e-12)
            throw std::invalid_argument("ShellSpec: H0 entries must be non-increasing");
    // the ball must clear every wall H0 is not on; walls through H0 are fixed
    // by their reflections and only cost a dominance rejection when sampling
    t_min = 20.0 * eps0;
    for (int i = 0; i + 1 < n; ++i) {
        double a = H0[i] - H0[i + 1];
        if (a > 1e-12) t_min = std::max(t_min, std::numbers::sqrt2 * eps0 / a);
    }
    if (t < t_min)
        throw std::invalid_argument("ShellSpec: t below t_min = " + std::to_string(t_min));
}

std::vector<double> haar_special_orthogonal(int n, CounterRng& rng) {
    if (n < 1) throw std::invalid_argument("haar_special_orthogonal: n must be positive");
    Eigen::MatrixXd q;
    haar_so_eigen(n, rng, q);
    std::vector<double> out(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = q(i, j);
    return out;
}

std::vector<double> cartan_projection(int n, const std::vector<double>& entries) {
    if ((int)entries.size() != n * n)
        throw std::invalid_argument("cartan_projection: entry count does not match n");
    check_finite(entries, "cartan_projection");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
    return kappa_of(m);
}

std::vector<double> cartan_projection(const GroupPoint& g) {
    return cartan_projection(g.n, g.entries);
}

double radial_density(int n, const std::vector<double>& H) {
    if ((int)H.size() != n) throw std::invalid_argument("radial_density: H has wrong dimension");
    check_finite(H, "radial_density");
    double j = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) j *= std::sinh(H[a] - H[b]);
    return j;
}

GroupPoint sample_shell(const ShellSpec& spec, CounterRng& rng) {
    ShellCtx ctx = make_ctx(spec);
    Eigen::MatrixXd k1, k2;
    haar_so_eigen(spec.n, rng, k1);
    haar_so_eigen(spec.n, rng, k2);
    std::vector<double> H = draw_radial(ctx, rng);
    for (double& x : H) x = std::exp(x);
    const int n = spec.n;
    std::vector<double> e(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l) acc += k1(i, l) * H[l] * k2(l, j);
            e[i * n + j] = acc;
        }
    return GroupPoint(n, std::move(e));
}

McIntersect mc_intersection_ratio(const ShellSpec& spec, const std::vector<double>& H,
                                  long long samples, std::uint64_t seed, int threads) {
    check_dominant_tracezero(spec.n, H, "mc_intersection_ratio");
    if (samples < 1000)
        throw std::invalid_argument("mc_intersection_ratio: need at least 1000 samples");
    ShellCtx ctx = make_ctx(spec);
    McIntersect r;
    r.samples = samples;
    auto [k, ok] = wall_exponent_k(spec);
    r.k = k;
    r.k_density_ok = ok;
    r.hits = mc_hits(spec, ctx, H, samples, seed, 0, threads);
    r.ratio = (double)r.hits / (double)samples;
    r.std_error = std::sqrt(std::max(0.0, r.ratio * (1.0 - r.ratio)) / (double)samples);
    r.bound_quotient =
        r.ratio / (std::pow(std::log(spec.t), r.k) * std::exp(-rho_pairing(spec.n, H)));
    return r;
}

AnkerReport anker_upper_check(const ShellSpec& spec,
                              const std::vector<std::vector<double>>& H_grid,
                              long long samples, std::uint64_t seed, int threads,
                              double bound_const) {
    if (H_grid.empty()) throw std::invalid_argument("anker_upper_check: empty grid");
    if (samples < 1000)
        throw std::invalid_argument("anker_upper_check: need at least 1000 samples");
    ShellCtx ctx = make_ctx(spec);
    AnkerReport rep;
    rep.bound_const = bound_const;
    for (size_t r = 0; r < H_grid.size(); ++r) {
        const auto& H = H_grid[r];
        check_dominant_tracezero(spec.n, H, "anker_upper_check");
        AnkerRow row;
        row.H = H;
        long long hits =
            mc_hits(spec, ctx, H, samples, seed, (std::uint64_t)r * (std::uint64_t)samples, threads);
        row.ratio = (double)hits / (double)samples;
        row.std_error = std::sqrt(std::max(0.0, row.ratio * (1.0 - row.ratio)) / (double)samples);
        double env = std::exp(-rho_pairing(spec.n, H));
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j) env *= 1.0 + (H[i] - H[j]);
        row.envelope = env;
        row.quotient = row.ratio / env;
        rep.C = std::max(rep.C, row.quotient);
        rep.rows.push_back(std::move(row));
    }
    rep.pass = rep.C <= bound_const;

    // soft nesting check along a common ray through 0, when the grid is one
    std::vector<double> ref;
    double ref_n2 = 0.0;
    for (const auto& row : rep.rows) {
        double n2 = 0.0;
        for (double x : row.H) n2 += x * x;
        if (n2 > ref_n2) { ref_n2 = n2; ref = row.H; }
    }
    rep.ray_comparable = ref_n2 > 0.0;
    std::vector<std::pair<double, size_t>> order;
    for (size_t r = 0; r < rep.rows.size() && rep.ray_comparable; ++r) {
        double s = 0.0;
        for (int i = 0; i < spec.n; ++i) s += rep.rows[r].H[i] * ref[i];
        s /= ref_n2;
        double dev = 0.0;
        for (int i = 0; i < spec.n; ++i) {
            double d = rep.rows[r].H[i] - s * ref[i];
            dev += d * d;
        }
        if (std::sqrt(dev) > 1e-9 * (1.0 + std::sqrt(ref_n2))) rep.ray_comparable = false;
        order.emplace_back(s, r);
    }
    if (rep.ray_comparable) {
        std::sort(order.begin(), order.end());
        rep.ray_monotone_soft = true;
        for (size_t i = 0; i + 1 < order.size(); ++i) {
            const auto& a = rep.rows[order[i].second];
            const auto& b = rep.rows[order[i + 1].second];
            double slack = 3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
            if (b.ratio > a.ratio + slack) rep.ray_monotone_soft = false;
        }
    }
    return rep;
}

SupportPolytope support_polytope(const RootSystem& rs, const RatVec& H0) {
    if ((int)H0.size() != rs.ambient_dim)
        throw std::invalid_argument("support_polytope: H0 has wrong dimension");
    const int r = rs.rank;
    RatMat simples;
    for (int i = 0; i < r; ++i) {
        if (dot(rs.simple(i), H0) < Rat(0))
            throw std::invalid_argument("support_polytope: H0 must be dominant");
        simples.push_back(rs.simple(i));
    }
    WeylElement w0 = longest_element(rs);
    RatVec Y = H0 - apply_word(rs, w0.word, H0);
    if (is_zero(Y))
        throw std::invalid_argument("support_polytope: H0 - w0 H0 = 0, empty polytope");

    SupportPolytope P;
    P.rs = &rs;
    P.Y = Y;
    std::vector<RatVec> cw = fundamental_coweights(rs);
    P.yhat.resize(r);
    for (int j = 0; j < r; ++j) {
        P.yhat[j] = dot(Y, cw[j]);
        if (!(P.yhat[j] > Rat(0)))
            throw std::logic_error("support_polytope: nonzero dominant Y needs positive root coordinates");
        P.facet_functionals.push_back((Rat(1) / P.yhat[j]) * cw[j]);
        P.facet_d.push_back(to_double(P.facet_functionals.back()));
    }

    // constraints a.y + b >= 0 in simple-root coordinates: Gram y >= 0 (the
    // chamber) and y_j <= yhat_j (the orbit-hull caps)
    RatMat G = gram(simples);
    std::vector<RatVec> A;
    RatVec B;
    for (int i = 0; i < r; ++i) { A.push_back(G[i]); B.push_back(Rat(0)); }
    for (int i = 0; i < r; ++i) {
        RatVec a(r, Rat(0));
        a[i] = Rat(-1);
        A.push_back(a);
        B.push_back(P.yhat[i]);
    }

    std::vector<RatVec> ys;
    const int m = 2 * r;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        RatMat sys;
        RatVec rhs;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) { sys.push_back(A[i]); rhs.push_back(-B[i]); }
        RatVec y;
        try {
            y = solve(sys, rhs);
        } catch (const std::domain_error&) {
            continue;  // singular subset
        }
        bool feasible = true;
        for (int i = 0; i < m && feasible; ++i)
            if (dot(A[i], y) + B[i] < Rat(0)) feasible = false;
        if (!feasible) continue;
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
    }
    std::sort(ys.begin(), ys.end(), [](const RatVec& a, const RatVec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    });
    for (const auto& y : ys) {
        RatVec H(rs.ambient_dim, Rat(0));
        for (int j = 0; j < r; ++j) H = H + y[j] * simples[j];
        P.vertices.push_back(H);
    }
    return P;
}

double polytopal_norm(const SupportPolytope& P, const std::vector<double>& H) {
    const RootSystem& rs = *P.rs;
    if ((int)H.size() != rs.ambient_dim)
        throw std::invalid_argument("polytopal_norm: H has wrong dimension");
    check_finite(H, "polytopal_norm");
    double scale = 1.0;
    for (double x : H) scale = std::max(scale, std::fabs(x));
    for (int i = 0; i < rs.rank; ++i) {
        std::vector<double> a = to_double(rs.simple(i));
        double p = 0.0;
        for (int j = 0; j < rs.ambient_dim; ++j) p += a[j] * H[j];
        if (p < -1e-9 * scale)
            throw std::invalid_argument("polytopal_norm: H must be dominant");
    }
    double v = 0.0;
    for (const auto& f : P.facet_d) {
        double p = 0.0;
        for (int j = 0; j < rs.ambient_dim; ++j) p += f[j] * H[j];
        v = std::max(v, p);
    }
    return v;
}

TriangleReport triangle_check(int n, long long trials, std::uint64_t seed) {
    if (n != 2 && n != 3) throw std::invalid_argument("triangle_check: n must be 2 or 3");
    if (trials < 1) throw std::invalid_argument("triangle_check: need at least one trial");
    RootSystem rs = build_root_system('A', n - 1);
    std::vector<std::vector<double>> cw;
    for (const auto& w : fundamental_coweights(rs)) cw.push_back(to_double(w));

    auto draw_sl = [&](CounterRng& rng, Eigen::MatrixXd& m) {
        std::vector<double> z(n * n + ((n * n) & 1));
        for (;;) {
            for (int i = 0; i < (int)z.size(); i += 2) rng.normal_pair(z[i], z[i + 1]);
            m.resize(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = z[i * n + j];
            double d = m.determinant();
            if (std::fabs(d) < 1e-12) continue;
            if (d < 0) m.row(n - 1) = -m.row(n - 1);
            m *= std::pow(std::fabs(d), -1.0 / n);
            return;
        }
    };

    TriangleReport rep;
    rep.trials = trials;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd g, mm, h;
    for (long long s = 0; s < trials; ++s) {
        CounterRng rng(seed, (std::uint64_t)s);
        draw_sl(rng, g);
        draw_sl(rng, mm);
        draw_sl(rng, h);
        std::vector<double> t1 = kappa_of(g.inverse() * h);
        std::vector<double> t2 = kappa_of(g.inverse() * mm);
        std::vector<double> t3 = kappa_of(mm.inverse() * h);
        std::vector<double> sum(n);
        for (int i = 0; i < n; ++i) sum[i] = t2[i] + t3[i];
        if (!conv_dominance_double(rs, t1, sum, 1e-6)) ++rep.violations;
        for (const auto& w : cw) {
            double p = 0.0;
            for (int i = 0; i < n; ++i) p += w[i] * (sum[i] - t1[i]);
            rep.worst_margin = std::min(rep.worst_margin, p);
        }
    }
    rep.pass = rep.violations == 0;
    return rep;
}

BrionReport brion_consequence_check(const RootSystem& rs, const RatVec& H0, double theta,
                                    std::vector<double> tau_grid) {
    if (rs.rank > 2)
        throw std::invalid_argument("brion_consequence_check: quadrature is rank <= 2 only");
    if (!(theta > 0.0 && theta <= 0.5))
        throw std::invalid_argument("brion_consequence_check: theta must be in (0, 1/2]");
    if (tau_grid.empty()) throw std::invalid_argument("brion_consequence_check: empty tau grid");
    for (double tau : tau_grid)
        if (!(tau > 0.0)) throw std::invalid_argument("brion_consequence_check: tau must be positive");
    if ((int)H0.size() != rs.ambient_dim)
        throw std::invalid_argument("brion_consequence_check: H0 has wrong dimension");
    const int r = rs.rank;
    RatMat simples;
    for (int i = 0; i < r; ++i) {
        if (dot(rs.simple(i), H0) < Rat(0))
            throw std::invalid_argument("brion_consequence_check: H0 must be dominant");
        simples.push_back(rs.simple(i));
    }
    WeylElement w0 = longest_element(rs);
    RatVec Y = H0 - apply_word(rs, w0.word, H0);
    if (is_zero(Y))
        throw std::invalid_argument("brion_consequence_check: H0 - w0 H0 = 0");
    std::vector<RatVec> cw = fundamental_coweights(rs);
    RatVec rv = rho(rs);

    BrionReport rep;
    rep.theta = theta;
    rep.vertex_exponent_zero = dot(rv, Y) == Rat(2) * dot(rv, H0);

    std::vector<double> yhat(r);
    for (int j = 0; j < r; ++j) {
        Rat yj = dot(Y, cw[j]);
        if (!(yj > Rat(0)))
            throw std::logic_error("brion_consequence_check: Y needs positive root coordinates");
        yhat[j] = yj.to_double();
    }
    RatMat G = gram(simples);
    std::vector<double> rho_c(r);  // <rho, alpha_j> = |alpha_j|^2 / 2
    for (int j = 0; j < r; ++j) rho_c[j] = dot(rv, simples[j]).to_double();
    const double rho_H0 = dot(rv, H0).to_double();

    for (double tau : tau_grid) {
        double value = 0.0;
        if (r == 1) {
            double len = std::sqrt(dot(simples[0], simples[0]).to_double());
            double a = 2.0 * theta * (rho_c[0] - 2.0 * rho_H0 / yhat[0]);
            double hi = 2.0 * tau * yhat[0];
            value = len * adaptive_integrate([&](double y) { return std::exp(a * y); }, 0.0,
                                             hi, 1e-9 * (1.0 + hi), 40);
        } else {
            double sqrtdet = std::sqrt(det(G).to_double());
            // split the chamber at the ray through Y: on each piece the gauge
            // ||H||_P is linear and the inner integral is a closed form
            for (int a = 0; a < 2; ++a) {
                int b = 1 - a;
                double gaa = G[a][a].to_double(), gab = G[a][b].to_double(),
                       gbb = G[b][b].to_double();
                if (!(gab < 0.0))
                    throw std::logic_error("brion_consequence_check: rank-2 system must be irreducible");
                double lo = -gab / gbb;                      // chamber wall below
                double hi = std::min(-gaa / gab, yhat[b] / yhat[a]);  // wall or the split ray
                double A = 2.0 * theta * (rho_c[a] - 2.0 * rho_H0 / yhat[a]);
                double Bc = 2.0 * theta * rho_c[b];
                double span = 2.0 * tau * yhat[a];
                value += sqrtdet *
                         adaptive_integrate(
                             [&](double x) {
                                 return (std::exp(A * x + Bc * hi * x) - std::exp(A * x + Bc * lo * x)) / Bc;
                             },
                             0.0, span, 1e-9 * (1.0 + span), 48);
            }
        }
        BrionRow row;
        row.tau = tau;
        row.value = value;
        row.ratio = value / tau;
        rep.rows.push_back(row);
    }
    rep.min_ratio = rep.rows[0].ratio;
    rep.max_ratio = rep.rows[0].ratio;
    for (const auto& row : rep.rows) {
        rep.min_ratio = std::min(rep.min_ratio, row.ratio);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    }
    rep.spread = rep.max_ratio / rep.min_ratio;
    return rep;
}

}  // namespace rootshell
