#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "domany/io.hpp"
#include "json.hpp"

#ifndef DOMANY_CLI_BIN
#define DOMANY_CLI_BIN "domany"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& tmp_root() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("domany_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = tmp_root() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err = tmp_root() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string("\"") + DOMANY_CLI_BIN + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int rc = std::system(cmd.c_str());
    CliResult res;
    if (WIFEXITED(rc)) res.code = WEXITSTATUS(rc);
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

std::vector<domany::ObservationRecord> parse_csv(const std::string& text) {
    std::istringstream is(text);
    return domany::read_observations_csv(is);
}

} // namespace

TEST_CASE("simulate writes a deterministic trace") {
    CliResult r = run_cli("simulate --p 1 --L 8 --seed 3");
    CHECK(r.code == 0);
    // All-plus is already fixated: one quiet A sweep, one quiet B sweep.
    CHECK(r.out == "n,sublattice,flips,energy\n"
                   "0,-,0,-192\n"
                   "1,A,0,-192\n"
                   "2,B,0,-192\n");

    CliResult a = run_cli("simulate --p 0.5 --L 16 --seed 9");
    CliResult b = run_cli("simulate --p 0.5 --L 16 --seed 9");
    CliResult c = run_cli("simulate --p 0.5 --L 16 --seed 10");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("simulate fans replicates out into numbered files") {
    const fs::path base = tmp_root() / "trace.csv";
    CliResult r = run_cli("simulate --p 1 --L 8 --replicates 3 --seed 4 --out \"" +
                          base.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out == "replicates=3 fixated=3 max_fixation_time=0\n");
    for (const char* name : {"trace_0.csv", "trace_1.csv", "trace_2.csv"}) {
        const fs::path p = tmp_root() / name;
        REQUIRE(fs::exists(p));
        CHECK(slurp(p) == "n,sublattice,flips,energy\n0,-,0,-192\n1,A,0,-192\n2,B,0,-192\n");
    }
    // Multiple replicates with nowhere to put them is a usage error.
    CHECK(run_cli("simulate --p 1 --L 8 --replicates 3").code == 2);
}

TEST_CASE("measure emits the canonical CSV") {
    CliResult r = run_cli("measure --observable theta --p 1 --L 8 --n 1 --replicates 10 "
                          "--seed 5");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("observable,model,p,n,L,boundary,param,value,stderr,replicates,seed\n",
                      0) == 0);
    std::vector<domany::ObservationRecord> recs = parse_csv(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].observable == "theta");
    CHECK(recs[0].model == "domany");
    CHECK(recs[0].value == 1.0);
    CHECK(recs[0].std_error == 0.1); // certainty floored at 1/R
    CHECK(recs[0].replicates == 10);
    CHECK(recs[0].L == 8);
    CHECK(recs[0].seed == 5);
    CHECK(recs[0].param.rfind("sub=B;graph=hex;r=", 0) == 0);

    SUBCASE("worker count does not change a byte") {
        const std::string args = "measure --observable theta --p 0.5 --L 16 --n 1 "
                                 "--replicates 50 --seed 7 --workers ";
        CliResult w1 = run_cli(args + "1");
        CliResult w3 = run_cli(args + "3");
        CHECK(w1.code == 0);
        CHECK(w1.out == w3.out);
    }

    SUBCASE("p sweeps arrive sorted") {
        CliResult sweep = run_cli("measure --observable theta --p 0.7 --p 0.3 --p 0.5 "
                                  "--L 8 --n 1 --replicates 20 --seed 6");
        CHECK(sweep.code == 0);
        std::vector<domany::ObservationRecord> rows = parse_csv(sweep.out);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].p == 0.3);
        CHECK(rows[1].p == 0.5);
        CHECK(rows[2].p == 0.7);
    }
}

TEST_CASE("tau at zero separation reports the plus density") {
    CliResult r = run_cli("measure --observable tau --model independent --p 0.6 --L 8 "
                          "--n 0 --separations 0 --replicates 300 --seed 9");
    CHECK(r.code == 0);
    std::vector<domany::ObservationRecord> recs = parse_csv(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].param == "k=0;pair=BB;graph=tri");
    CHECK(recs[0].value > 0.45);
    CHECK(recs[0].value < 0.75);
}

TEST_CASE("plan files configure a run and flags override them") {
    const fs::path plan = tmp_root() / "plan.json";
    {
        std::ofstream os(plan);
        os << R"({"observable":"theta","p":[0.6],"L":[8],"n":["1"],"replicates":40})";
    }
    CliResult from_plan = run_cli("measure --plan \"" + plan.string() + "\" --seed 5");
    CHECK(from_plan.code == 0);
    std::vector<domany::ObservationRecord> recs = parse_csv(from_plan.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].p == 0.6);
    CHECK(recs[0].replicates == 40);

    CliResult overridden =
        run_cli("measure --plan \"" + plan.string() + "\" --seed 5 --replicates 25");
    recs = parse_csv(overridden.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].replicates == 25);

    const fs::path bad = tmp_root() / "bad_plan.json";
    {
        std::ofstream os(bad);
        os << R"({"observable":"theta","banana":3})";
    }
    CHECK(run_cli("measure --plan \"" + bad.string() + "\"").code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("measure --observable banana --p 0.5 --L 8").code == 2);
    CHECK(run_cli("measure --bogus-flag").code == 2);
    CHECK(run_cli("verify --suite banana").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("measure --observable theta --p 0.5 --L 8 --emit-plot-data").code == 2);
}

TEST_CASE("starved estimators exit with code 3") {
    CliResult r = run_cli("measure --observable xi --p 0.05 --L 16 --n 1 "
                          "--separations 5,6,7 --replicates 30 --seed 3");
    CHECK(r.code == 3);
}

TEST_CASE("plot sidecars land next to the CSV") {
    const fs::path out = tmp_root() / "theta.csv";
    CliResult r = run_cli("measure --observable theta --p 0.4 --p 0.6 --L 8 --n 1 "
                          "--replicates 20 --seed 8 --emit-plot-data --out \"" +
                          out.string() + "\"");
    CHECK(r.code == 0);
    REQUIRE(fs::exists(out));
    const fs::path dat = tmp_root() / "theta.dat";
    REQUIRE(fs::exists(dat));
    CHECK(slurp(dat).rfind("# ", 0) == 0);
    CHECK(parse_csv(slurp(out)).size() == 2);
}

TEST_CASE("verify reports every check as passing") {
    CliResult r = run_cli("verify --seed 3");
    CHECK(r.code == 0);
    json report = json::parse(r.out);
    REQUIRE(report.is_array());
    REQUIRE(report.size() >= 10);
    for (const json& entry : report) {
        REQUIRE(entry.contains("check"));
        REQUIRE(entry.contains("paper_ref"));
        REQUIRE(entry.contains("status"));
        REQUIRE(entry.contains("detail"));
        CHECK(entry["status"] == "pass");
    }
    CHECK(r.err.find("checks passed") != std::string::npos);
}

TEST_CASE("exponents compares the two models through one pipeline") {
    CliResult r = run_cli("exponents --which eta --n 1 --L 64 --replicates 300 --seed 7");
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc.contains("estimates"));
    REQUIRE(doc["estimates"].contains("eta"));
    REQUIRE(doc["estimates"]["eta"].contains("independent"));
    REQUIRE(doc["estimates"]["eta"].contains("n=1"));
    CHECK(doc["estimates"]["eta"]["independent"]["value"].is_number());
    REQUIRE(doc["differences"]["eta"].contains("n=1"));
    CHECK(doc["differences"]["eta"]["n=1"]["within_3_sigma"] == true);
    CHECK(doc["insufficient"].empty());
}
