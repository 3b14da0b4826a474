// Acceptance gate: twelve standalone checks covering the quantitative claims
// this library ships.  Each prints exactly one PASS/FAIL line; the process
// exit code is the number of failures.  Thresholds are pinned here on
// purpose — change them only with a written justification next to the change.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rootshell/exponent.hpp"
#include "rootshell/geometry.hpp"
#include "rootshell/harmonic.hpp"
#include "rootshell/report.hpp"
#include "rootshell/root_system.hpp"
#include "rootshell/semidense.hpp"
#include "rootshell/subsystems.hpp"
#include "rootshell/weyl.hpp"

using namespace rootshell;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double spread_factor(const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
}

double rel_spread(const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    return hi > 0 ? (hi - lo) / hi : 0.0;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

// every extremal centralizer direction of every reduced system of rank <= cap
std::vector<std::pair<RootSystem, int>> extremal_cases(int cap) {
    std::vector<std::pair<RootSystem, int>> out;
    auto add = [&](char t, int r) {
        RootSystem rs = build_root_system(t, r);
        for (int node : extremal_coweights(rs)) out.emplace_back(rs, node);
    };
    for (int r = 1; r <= cap; ++r) add('A', r);
    for (int r = 2; r <= cap; ++r) add('B', r);
    for (int r = 3; r <= cap; ++r) add('C', r);
    for (int r = 4; r <= cap; ++r) add('D', r);
    add('G', 2);
    if (cap >= 4) add('F', 4);
    return out;
}

// random volume-one matrix with a well-separated inverse, for the Cartan
// projection symmetry check
void random_sl(int n, CounterRng& rng, std::vector<double>& g, std::vector<double>& ginv) {
    Eigen::MatrixXd m(n, n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; j += 2) {
                double a, b;
                rng.normal_pair(a, b);
                m(i, j) = a;
                if (j + 1 < n) m(i, j + 1) = b;
            }
        double det = m.determinant();
        if (std::fabs(det) < 1e-6) continue;
        if (det < 0) m.row(0) *= -1.0;
        m *= std::pow(std::fabs(det), -1.0 / n);
        break;
    }
    Eigen::MatrixXd inv = m.inverse();
    g.resize(n * n);
    ginv.resize(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g[i * n + j] = m(i, j);
            ginv[i * n + j] = inv(i, j);
        }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_quiet(const std::string& cmd) {
    int status = std::system((cmd + " > /dev/null 2> /dev/null").c_str());
    return (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

Outcome criterion_weyl_table() {
    // the shipped binary must reproduce the closed-form table, and the E8
    // order must come out of the orbit-stabilizer count itself
    std::string json = "/tmp/acceptance_weyl.json";
    std::string cmd = std::string("\"") + ROOTSHELL_BIN + "\" tables weyl --json " + json;
    if (run_quiet(cmd) != 0) return {false, "tables weyl exited nonzero"};
    Json j = Json::parse(slurp(json));
    if (j["verdicts"]["all_rows_exact"] != true)
        return {false, "closed-form mismatch in the table"};
    if (j["results"]["rows"].size() != 9) return {false, "expected 9 family rows"};
    bool e8 = false;
    for (const auto& row : j["results"]["rows"])
        if (row["family"] == "E8") {
            const Json& e = row["entries"][0];
            e8 = e["weyl_order"] == 696729600 && e["levi_order"] == 2903040 &&
                 e["index"] == 240 && e["roots"] == 240 && e["levi_roots"] == 126 &&
                 e["outside_positive"] == 57;
        }
    if (!e8) return {false, "E8 row wrong"};
    if (weyl_order(build_root_system('E', 8)) != 696729600)
        return {false, "direct E8 order disagrees"};
    return {true, "9/9 family rows exact incl. |W(E8)| = 696729600"};
}

Outcome criterion_semidense_positive() {
    auto entries = scan_extremal_classical(7);
    int checked = 0;
    for (const auto& e : entries) {
        ++checked;
        if (!e.holds)
            return {false, std::string(1, e.type) + std::to_string(e.rank) + " node " +
                               std::to_string(e.node + 1) + " not semi-dense"};
    }
    auto t0 = std::chrono::steady_clock::now();
    RootSystem e7 = build_root_system('E', 7);
    for (int node : extremal_coweights(e7)) {
        std::vector<int> levi;
        for (int j = 0; j < e7.rank; ++j)
            if (j != node) levi.push_back(j);
        auto v = check_semidense(e7, standard_subsystem(e7, levi));
        ++checked;
        if (!v.holds) return {false, "E7 extremal case failed"};
    }
    double e7s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e7s >= 5.0) return {false, "E7 case took " + fmt(e7s) + "s (budget 5s)"};
    return {true, std::to_string(checked) + " extremal cases semi-dense, E7 in " +
                      fmt(e7s) + "s"};
}

Outcome criterion_semidense_negative() {
    auto cases = verify_exceptional_failures();
    int full_set = 0;
    std::vector<std::string> bad;
    for (const auto& e : cases) {
        if (e.mode == "full-set") {
            // G2 and F4 must break the inequality with the whole system as
            // the probe; the larger systems are informational here
            if ((e.system == "G2" || e.system == "F4") && !e.violates)
                bad.push_back(e.system + "/" + e.phi0_type + " full-set");
            if (e.system == "G2" || e.system == "F4") ++full_set;
        } else {
            // every recorded witness must have the documented shape and break
            // the inequality: empty intersection, rank 2, six roots
            bool shape = e.witness_intersection == 0 && e.witness_rank == 2 &&
                         e.witness_psi_size == 6;
            if (!shape || !e.violates)
                bad.push_back(e.system + "/" + e.phi0_type + " witness (|cap|=" +
                              std::to_string(e.witness_intersection) + ")");
        }
    }
    if (full_set != 6) bad.push_back("expected 6 G2/F4 maximal cases");
    if (!bad.empty()) {
        std::string d = "violation shape not reproduced:";
        for (const auto& b : bad) d += " " + b + ";";
        return {false, d};
    }
    return {true, "G2/F4 full-set and all recorded witnesses violate as documented"};
}

Outcome criterion_exponent_exact() {
    int tables = 0;
    for (const auto& [rs, node] : extremal_cases(4)) {
        // extremal Levi: every base node except the marked one
        std::vector<int> levi;
        for (int j = 0; j < rs.rank; ++j)
            if (j != node) levi.push_back(j);
        SubsystemMask m = standard_subsystem(rs, levi);
        ExponentTable tbl = exponent_table(rs, m);
        if (!check_S_identities(tbl).ok)
            return {false, rs.type_string() + " node " + std::to_string(node + 1) +
                               ": telescoping identities broken"};
        // the non-negativity consequence needs the density hypothesis, which
        // the G2/F4 extremal Levis are the designated counterexamples to
        bool classical = rs.type_label == 'A' || rs.type_label == 'B' ||
                         rs.type_label == 'C' || rs.type_label == 'D';
        if (classical && !check_S_lower_bound(tbl).ok)
            return {false, rs.type_string() + " node " + std::to_string(node + 1) +
                               ": density lower bound broken"};
        ++tables;
    }
    // the designated counterexample: B3 with the A1 x A1 Levi must violate
    RootSystem b3 = build_root_system('B', 3);
    SubsystemMask bad = standard_subsystem(b3, {0, 2});
    ExponentTable tbl = exponent_table(b3, bad);
    if (!check_S_identities(tbl).ok) return {false, "B3 A1xA1: identities must still hold"};
    TableReport lower = check_S_lower_bound(tbl);
    if (lower.ok || lower.issues.empty())
        return {false, "B3 A1xA1: expected a lower-bound violation"};
    return {true, std::to_string(tables) + " extremal tables exact; B3 A1xA1 shows " +
                      std::to_string(lower.issues.size()) + " violating triples"};
}

Outcome criterion_power_log_flat() {
    const std::vector<double> grid = {1e2, 1e3, 1e4};
    const double band = 0.25;  // pinned: quarter variation across two decades
    std::string detail;
    bool ok = true;
    struct Case {
        const char* name;
        char type;
        int rank;
        std::vector<int> levi;
    };
    for (const Case& cse : {Case{"A1", 'A', 1, {}}, Case{"A2", 'A', 2, {1}}}) {
        RootSystem rs = build_root_system(cse.type, cse.rank);
        SubsystemMask m = standard_subsystem(rs, cse.levi);
        PowerKReport pk = verify_power_k(rs, m, grid);
        double sp = rel_spread(pk.max_ratio_per_t);
        detail += std::string(cse.name) + " max-ratio spread " + fmt(100 * sp) + "%; ";
        if (sp >= band) ok = false;
    }
    return {ok, detail + "band " + fmt(100 * band) + "%"};
}

Outcome criterion_spectral_integral() {
    RootSystem a1 = build_root_system('A', 1);
    SubsystemMask m1 = standard_subsystem(a1, {});
    std::vector<double> v1;
    for (double t : {10.0, 100.0, 1000.0})
        v1.push_back(spectral_integral(a1, m1, t, {t / 2, -t / 2}, 5) / std::log(t));

    RootSystem a2 = build_root_system('A', 2);
    SubsystemMask m2 = standard_subsystem(a2, {1});
    std::vector<double> v2;
    for (double t : {10.0, 100.0, 1000.0})
        v2.push_back(spectral_integral(a2, m2, t, {2 * t / 3, -t / 3, -t / 3}, 7) /
                     std::pow(std::log(t), 2));

    double s1 = spread_factor(v1), s2 = spread_factor(v2);
    bool ok = s1 < 3.0 && s2 < 3.0;
    return {ok, "normalized integral spread: rank1 " + fmt(s1) + "x, rank2 " + fmt(s2) +
                    "x (budget 3x)"};
}

Outcome criterion_spherical_bounds() {
    SphGrid g;
    for (int i = 0; i <= 20; ++i) g.lam_re.push_back(i);
    g.lam_im = {-0.2, 0.0, 0.2};
    g.t = {0.1, 0.25, 0.5, 1, 2, 4, 8, 12, 16, 20};

    SphBoundReport split = verify_sph_bound(Rank1Group::split, g, 1.0, 0.2, 10.0);
    SphBoundReport cplx = verify_sph_bound(Rank1Group::complex_form, g, 1.0, 0.2, 10.0);
    SphGrid greal = g;
    greal.lam_im.clear();
    CxBoundReport cx = verify_cx_bound(greal, 10.0, 0.1);
    bool ok = split.pass && cplx.pass && cx.pass;
    return {ok, "sup ratios: split " + fmt(split.sup_ratio) + ", complex " +
                    fmt(cplx.sup_ratio) + " (<= 10); two-sided inf " + fmt(cx.inf_small) +
                    " (>= 0.1), sup " + fmt(cx.sup_ratio)};
}

Outcome criterion_time_average() {
    TimeAverageReport rep = time_average_lower_bound(
        Rank1Group::split, {1.0, 1.5, 2.0, 2.5, 3.0}, {20.0, 40.0}, 0.1);
    if (!(rep.min_average > 0)) return {false, "time average not strictly positive"};
    std::vector<double> worst = {0.0, 0.0};
    for (const auto& row : rep.rows) {
        int i = row.tau == 20.0 ? 0 : 1;
        worst[i] = std::max(worst[i], std::fabs(row.error_term) * row.tau);
    }
    double sp = spread_factor(worst);
    bool ok = sp < 3.0;
    return {ok, "min average " + fmt(rep.min_average) + " > 0; |error|*tau spread " +
                    fmt(sp) + "x (budget 3x)"};
}

Outcome criterion_mc_geometry() {
    // (a) ordering of paired distances on random triples
    TriangleReport tri = triangle_check(3, 10000, 20240823);
    if (!tri.pass)
        return {false, "triangle comparison: " + std::to_string(tri.violations) +
                           " violations"};

    // (b) the projection of an inverse is the flipped projection
    for (int n : {2, 3}) {
        RootSystem rs = build_root_system('A', n - 1);
        WeylElement w0 = longest_element(rs);
        for (int s = 0; s < 1000; ++s) {
            CounterRng rng(20240823, 500000 + 1000 * n + s);
            std::vector<double> g, ginv;
            random_sl(n, rng, g, ginv);
            std::vector<double> kg = cartan_projection(n, g);
            std::vector<double> ki = cartan_projection(n, ginv);
            // -w0 acts on the diagonal by reversal with sign flip
            for (int i = 0; i < n; ++i)
                if (std::fabs(ki[i] + kg[n - 1 - i]) > 1e-6)
                    return {false, "kappa(g^-1) != -w0 kappa(g) at n=" +
                                       std::to_string(n)};
        }
    }

    // (c) no mass beyond the polytope range t+1 at 1e5 samples
    {
        std::vector<double> H0 = {0.5, -0.5};
        ShellSpec spec(H0, 8.0);
        for (double s : {9.05, 9.6, 12.0}) {
            McIntersect r = mc_intersection_ratio(spec, {s, -s}, 100000, 11, 4);
            if (r.hits != 0)
                return {false, "SL2 support leak at |H|=" + fmt(2 * s * 0.5)};
        }
        std::vector<double> G0 = {2.0 / 3, -1.0 / 3, -1.0 / 3};
        ShellSpec spec3(G0, 6.0);
        for (double s : {7.05, 8.0, 10.0}) {
            McIntersect r =
                mc_intersection_ratio(spec3, {s, 0.0, -s}, 100000, 11, 4);
            if (r.hits != 0) return {false, "SL3 support leak at |H|=" + fmt(s)};
        }
    }

    // (d) quotient against (log t)^k e^{-rho(H)} over the 3x3 sweep at 1e6.
    // The quotient is not one constant across the whole grid: at H = 0 the
    // ratio is exactly 1, so the quotient is 1/log t, an order of magnitude
    // above the interior plateau.  The pinned reading: every quotient stays
    // under the absolute cap 4, and each translation column is flat in t
    // within the same factor.
    std::vector<std::vector<double>> bq(3, std::vector<double>(3, 0.0));
    const std::vector<double> ts = {6.0, 8.0, 10.0};
    const std::vector<double> fr = {0.0, 0.5, 1.0};
    double grid_max = 0.0, grid_min = 1e300;
    for (size_t a = 0; a < ts.size(); ++a) {
        ShellSpec spec({0.5, -0.5}, ts[a]);
        for (size_t b = 0; b < fr.size(); ++b) {
            std::vector<double> H = {fr[b] * ts[a] * 0.5, -fr[b] * ts[a] * 0.5};
            McIntersect r = mc_intersection_ratio(spec, H, 1000000, 20240823, 4);
            bq[a][b] = r.bound_quotient;
            grid_max = std::max(grid_max, r.bound_quotient);
            grid_min = std::min(grid_min, r.bound_quotient);
            if (!(r.bound_quotient <= 4.0))
                return {false, "quotient " + fmt(r.bound_quotient) + " above 4 at t=" +
                                   fmt(ts[a]) + " frac=" + fmt(fr[b])};
        }
    }
    for (size_t b = 0; b < fr.size(); ++b) {
        std::vector<double> col = {bq[0][b], bq[1][b], bq[2][b]};
        double sp = spread_factor(col);
        if (!(sp <= 4.0))
            return {false, "column frac=" + fmt(fr[b]) + " spread " + fmt(sp) + "x"};
    }
    return {true, "triples 0/10000; inverse symmetry 2000/2000; support tight; "
                  "quotients <= " +
                      fmt(grid_max) + ", column-flat (full grid " +
                      fmt(grid_max / grid_min) + "x: the H=0 cells sit on 1/log t)"};
}

Outcome criterion_brion() {
    std::string detail;
    bool ok = true;
    for (int rank : {1, 2}) {
        RootSystem rs = build_root_system('A', rank);
        RatVec H0 = fundamental_coweights(rs)[0];
        BrionReport b = brion_consequence_check(rs, H0, 0.25, {4, 8, 16, 32, 64});
        detail += "A" + std::to_string(rank) + " spread " + fmt(b.spread) + "x; ";
        if (!(b.spread < 3.0) || !b.vertex_exponent_zero) ok = false;
    }
    return {ok, detail + "budget 3x, vertex exponents all zero"};
}

Outcome criterion_gv_decay() {
    const double floor = 1e-18;
    std::string detail;
    for (double lam : {1.0, 2.0, 4.0}) {
        std::vector<double> xs, ys;
        for (double t = 5.0; t <= 30.0 + 1e-9; t += 2.5) {
            GvTerms g = gv_main_term_rank1({lam, 0.0}, t);
            if (g.residual > floor) {
                xs.push_back(t);
                ys.push_back(std::log(g.residual));
            }
        }
        if (xs.size() < 2) return {false, "residual window empty"};
        double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
        double num = 0, den = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        double slope = num / den;
        detail += "lam=" + fmt(lam) + " slope " + fmt(slope) + "; ";
        // at least e^{-0.55 t}: half from the leading exponential plus margin
        if (!(slope <= -0.55)) return {false, detail + "decay too slow"};
    }
    return {true, detail + "all <= -0.55"};
}

Outcome criterion_determinism() {
    const std::string bin = std::string("\"") + ROOTSHELL_BIN + "\"";
    struct Probe {
        std::string args;
        std::string env;
    };
    const std::vector<Probe> probes = {
        {" mc intersect --n 2 --t 8 --H 4,-4 --samples 50000 --seed 31 --threads 3",
         "SOURCE_DATE_EPOCH=1700000000 "},
        {" mc triangle --n 3 --samples 5000 --seed 17", ""},
        {" mc anker --n 2 --t 6 --samples 20000 --seed 9 --threads 2", ""},
    };
    int idx = 0;
    for (const auto& p : probes) {
        std::string f1 = "/tmp/acceptance_det_a" + std::to_string(idx) + ".json";
        std::string f2 = "/tmp/acceptance_det_b" + std::to_string(idx) + ".json";
        if (run_quiet(p.env + bin + p.args + " --json " + f1) < 0)
            return {false, "probe did not run"};
        if (run_quiet(p.env + bin + p.args + " --json " + f2) < 0)
            return {false, "probe did not run"};
        if (slurp(f1) != slurp(f2) || slurp(f1).empty())
            return {false, "rerun differs for:" + p.args};
        ++idx;
    }
    return {true, std::to_string(probes.size()) + " command reruns byte-identical"};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries = {
        {"weyl table reproduction", criterion_weyl_table},
        {"semi-dense positive cases", criterion_semidense_positive},
        {"semi-dense negative cases", criterion_semidense_negative},
        {"exponent identities + counterexample", criterion_exponent_exact},
        {"power-log flatness", criterion_power_log_flat},
        {"spectral integral growth", criterion_spectral_integral},
        {"spherical function bounds", criterion_spherical_bounds},
        {"time-average lower bound", criterion_time_average},
        {"Monte Carlo geometry", criterion_mc_geometry},
        {"polytope integral linear growth", criterion_brion},
        {"main-term residual decay", criterion_gv_decay},
        {"report determinism", criterion_determinism},
    };
    int failures = 0;
    auto total0 = std::chrono::steady_clock::now();
    for (size_t i = 0; i < entries.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entries[i].fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%2zu] %s  %-38s (%6.2fs)  %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                    entries[i].name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - total0).count();
    std::printf("%d/%zu criteria passed in %.1fs\n", (int)entries.size() - failures,
                entries.size(), total);
    return failures;
}
