// End-to-end tests of the command-line binary: spawn it, parse the JSON it
// prints, check exit codes, and pin the byte-identity contract for Monte
// Carlo reruns.  The binary path comes in through ROOTSHELL_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rootshell/harmonic.hpp"
#include "rootshell/report.hpp"

using rootshell::Json;

namespace {

namespace fs = std::filesystem;

const std::string kBin = ROOTSHELL_BIN;

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("rootshell_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// run through the shell with stdout captured; env prefixes like
// "SOURCE_DATE_EPOCH=1 " can be baked into args
RunResult run_cli(const std::string& args, const std::string& env = "") {
    fs::path out = scratch_dir() / "stdout.txt";
    std::string cmd = env + "\"" + kBin + "\" " + args + " > \"" + out.string() +
                      "\" 2> /dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_CASE("weyl table is exact and carries the known exceptional rows") {
    RunResult r = run_cli("tables weyl");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    CHECK(j["verdicts"]["all_rows_exact"] == true);
    CHECK(j["pass"] == true);

    auto find_family = [&](const std::string& name) {
        for (const auto& row : j["results"]["rows"])
            if (row["family"] == name) return row;
        return Json();
    };
    Json e7 = find_family("E7");
    REQUIRE(e7.is_object());
    const Json& e = e7["entries"][0];
    CHECK(e["weyl_order"] == 2903040);
    CHECK(e["levi_order"] == 51840);
    CHECK(e["index"] == 56);
    CHECK(e["roots"] == 126);
    CHECK(e["levi_roots"] == 72);
    CHECK(e["outside_positive"] == 27);

    Json e8 = find_family("E8");
    CHECK(e8["entries"][0]["weyl_order"] == 696729600);
    Json g2 = find_family("G2");
    CHECK(g2["entries"].size() == 2);  // both simple directions
    CHECK(g2["entries"][0]["index"] == 6);
}

TEST_CASE("rootsys reports counts and exact rational data") {
    RunResult r = run_cli("rootsys --type G --rank 2");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    CHECK(j["results"]["num_roots"] == 12);
    CHECK(j["results"]["num_positive"] == 6);
    CHECK(j["results"]["weyl_order"] == 12);
    CHECK(j["results"]["rho_exact"].size() == 3);
    CHECK(j["results"]["cartan_matrix"][0][1] == -3);
    CHECK(j["results"]["w0_node_involution"] == Json::array({0, 1}));

    // CSV side channel: one line per root plus the header
    fs::path csv = scratch_dir() / "roots.csv";
    RunResult rc = run_cli("rootsys --type A --rank 2 --json /dev/null --csv \"" +
                           csv.string() + "\"");
    REQUIRE(rc.code == 0);
    std::string table = slurp(csv);
    CHECK(std::count(table.begin(), table.end(), '\n') == 7);
    CHECK(table.rfind("index,positive,x0,x1,x2", 0) == 0);
}

TEST_CASE("semidense check surfaces the known small failure") {
    RunResult r = run_cli("semidense check --type B --rank 3 --nodes 1,3");
    CHECK(r.code == 1);  // verdict failed, report still emitted
    Json j = parse(r.out);
    CHECK(j["results"]["holds"] == false);
    CHECK(j["results"]["phi0_type"] == "A1 x A1");
    const Json& w = j["results"]["witness"];
    CHECK(w["psi_is_whole_system"] == true);
    CHECK(w["psi_size"] == 18);
    CHECK(w["w_word"] == Json::array());
    CHECK(j["verdicts"]["semidense"] == false);

    // and a positive case exits 0
    RunResult ok = run_cli("semidense check --type A --rank 2 --nodes 1");
    CHECK(ok.code == 0);
    CHECK(parse(ok.out)["results"]["holds"] == true);
}

TEST_CASE("exponent commands: reporting failure vs verdict") {
    RunResult k = run_cli("exponent k --type B --rank 3 --nodes 1,3");
    CHECK(k.code == 1);
    Json jk = parse(k.out);
    CHECK(jk["results"]["density_ok"] == false);
    CHECK(jk["results"]["k"] == 3);
    CHECK(jk["results"]["lower_bound_issues"].size() > 0);

    RunResult v = run_cli("exponent verify --type A --rank 1");
    CHECK(v.code == 0);
    Json jv = parse(v.out);
    CHECK(jv["verdicts"]["ratio_flat_25"] == true);
    CHECK(jv["results"]["k"] == 1);

    RunResult tb = run_cli("exponent table --type A --rank 2 --nodes 1");
    CHECK(tb.code == 0);
    CHECK(parse(tb.out)["verdicts"]["identities_exact"] == true);
}

TEST_CASE("spherical eval matches the library closed form") {
    RunResult r = run_cli("spherical eval --lambda-grid 1 --t 2 --group split");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    const Json& row = j["results"]["rows"][0];
    auto v = rootshell::spherical_sl2r({1.0, 0.0}, 2.0);
    // values go through shortest-round-trip formatting, so doubles survive
    CHECK(row["re"].get<double>() == v.real());
    CHECK(row["im"].get<double>() == v.imag());
}

TEST_CASE("mc reports are byte-identical for identical invocations") {
    const std::string args =
        "mc intersect --n 2 --t 8 --H 4,-4 --samples 50000 --seed 20240823 "
        "--threads 2";
    const std::string env = "SOURCE_DATE_EPOCH=1700000000 ";
    RunResult a = run_cli(args, env);
    RunResult b = run_cli(args, env);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"timestamp\": \"2023-11-14T22:13:20Z\"") != std::string::npos);

    // changing only the worker count must leave the results payload intact
    RunResult c = run_cli(
        "mc intersect --n 2 --t 8 --H 4,-4 --samples 50000 --seed 20240823 "
        "--threads 5",
        env);
    REQUIRE(c.code == 0);
    Json ja = parse(a.out), jc = parse(c.out);
    CHECK(ja["results"] == jc["results"]);
    CHECK(ja["results"]["hits"].get<long long>() > 0);

    // without the env pin the timestamp field degrades gracefully
    RunResult d = run_cli(args);
    CHECK(parse(d.out)["timestamp"] == "unset");
    CHECK(parse(d.out)["results"] == ja["results"]);
}

TEST_CASE("baseline comparison gates the exit code") {
    fs::path base = scratch_dir() / "triangle_base.json";
    RunResult first =
        run_cli("mc triangle --samples 3000 --seed 11 --json \"" + base.string() + "\"");
    REQUIRE(first.code == 0);

    // a previous report is directly usable as a baseline
    RunResult again = run_cli("mc triangle --samples 3000 --seed 11 --baseline \"" +
                              base.string() + "\"");
    CHECK(again.code == 0);
    Json j = parse(again.out);
    CHECK(j["verdicts"]["baseline_match"] == true);
    CHECK(j["results"]["baseline"]["match"] == true);

    // perturb one number; the rerun must flag it and exit 1
    Json tampered = Json::parse(slurp(base));
    tampered["results"]["worst_margin"] = 0.5;
    fs::path bad = scratch_dir() / "triangle_bad.json";
    std::ofstream(bad) << tampered.dump();
    RunResult miss = run_cli("mc triangle --samples 3000 --seed 11 --baseline \"" +
                             bad.string() + "\"");
    CHECK(miss.code == 1);
    Json jm = parse(miss.out);
    CHECK(jm["verdicts"]["baseline_match"] == false);
    CHECK(jm["results"]["baseline"]["mismatches"].size() == 1);
}

TEST_CASE("config files merge under explicit flags") {
    fs::path cfg = scratch_dir() / "run.ini";
    std::ofstream(cfg) << "[mc.triangle]\nsamples=4000\nseed=42\n";
    RunResult r = run_cli("--config \"" + cfg.string() + "\" mc triangle");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    CHECK(j["parameters"]["samples"] == 4000);
    CHECK(j["parameters"]["seed"] == 42);

    RunResult over = run_cli("--config \"" + cfg.string() + "\" mc triangle --samples 2500");
    CHECK(parse(over.out)["parameters"]["samples"] == 2500);
    CHECK(parse(over.out)["parameters"]["seed"] == 42);
}

TEST_CASE("invalid invocations exit 2 without a report") {
    CHECK(run_cli("does-not-exist").code == 2);
    CHECK(run_cli("mc intersect --n 5 --t 8").code == 2);
    CHECK(run_cli("mc intersect --n 3 --t 8 --H0 1,2,3").code == 2);  // trace != 0
    CHECK(run_cli("mc intersect --n 2").code == 2);                   // --t required
    CHECK(run_cli("semidense check --type B --rank 3 --nodes 9").code == 2);
    CHECK(run_cli("exponent verify --type B --rank 3 --nodes 1,3").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("sweep mode emits rows and the support verdict") {
    RunResult r = run_cli(
        "mc intersect --n 2 --t 6 --H-frac 0,1 --samples 20000 --seed 5 --threads 2");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    const Json& rows = j["results"]["rows"];
    REQUIRE(rows.size() == 2);
    CHECK(rows[0]["ratio"].get<double>() == 1.0);  // centered shell is all hits
    CHECK(j["verdicts"]["support_range"] == true);
    // the far translation sits outside the shell's reach
    RunResult far = run_cli(
        "mc intersect --n 2 --t 8 --H 9.6,-9.6 --samples 20000 --seed 5");
    Json jf = parse(far.out);
    CHECK(jf["results"]["hits"] == 0);
    CHECK(jf["verdicts"]["support_range"] == true);
}
