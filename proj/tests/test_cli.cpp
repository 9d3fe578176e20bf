#include <doctest.h>

#include "cli.hpp"

#include <fstream>
#include <sstream>

using teamdim::cli::run_cli;

namespace {

const std::string kData = TEAMDIM_TEST_DIR "/data/";
const std::string kGolden = TEAMDIM_TEST_DIR "/golden/";

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("dims of the three-element even family") {
    auto r = run({"dims", kData + "even3.fam"});
    CHECK(r.code == 0);
    CHECK(r.out == slurp(kGolden + "dims_even3.txt"));
    CHECK(r.out.find("measure=cd value=4 status=exact") != std::string::npos);
    CHECK(run({"--format", "table", "dims", kData + "even3.fam"}).out == slurp(kGolden + "dims_even3_table.txt"));
    CHECK(run({"--format", "tsv", "dims", kData + "even3.fam", "--which", "dd,cd"}).out ==
          slurp(kGolden + "dims_even3_tsv.txt"));
}

TEST_CASE("eval") {
    auto t = run({"eval", kData + "bare2.model", kData + "diag.team", "dep(x ; y)"});
    CHECK(t.code == 0);
    CHECK(t.out == "true\n");
    auto f = run({"eval", kData + "bare2.model", kData + "split.team", "dep(x ; y)"});
    CHECK(f.code == 1);
    CHECK(f.out == "false\n");
    CHECK(run({"eval", kData + "bare2.model", kData + "swap.team", "inc(x ; y)"}).code == 0);
    CHECK(run({"eval", kData + "bare2.model", kData + "empty.team", "NE"}).code == 1);
    CHECK(run({"eval", kData + "swap2.model", kData + "swap.team", "R(x, y)"}).code == 0);
}

TEST_CASE("family, dnf and atom output") {
    CHECK(run({"family", "x = y", "--vars", "x,y", "--n", "2"}).out == slurp(kGolden + "family_eq.txt"));
    auto c = run({"family", "x = y", "--vars", "x,y", "--n", "2", "--compose"});
    CHECK(c.code == 0);
    CHECK(c.out == slurp(kGolden + "family_eq.txt"));
    CHECK(run({"family", "dep(x ; y)", "--vars", "x,y", "--dims"}).out == slurp(kGolden + "family_dep_dims.txt"));
    CHECK(run({"dnf", kData + "parity3.bf"}).out == slurp(kGolden + "dnf_parity3.txt"));
    auto a = run({"atom", "--kind", "dep", "--m", "1", "--n", "2", "--verify"});
    CHECK(a.code == 0);
    CHECK(a.out == slurp(kGolden + "atom_dep.txt"));
}

TEST_CASE("verify suites") {
    auto d = run({"verify", "dnf", "--n", "5", "--samples", "10"});
    CHECK(d.code == 0);
    CHECK(d.out.find("summary=PASS pass=10") != std::string::npos);
    // the inclusion row disagrees with its closed form
    auto t = run({"verify", "theorem-dims", "--l", "2", "--n", "2"});
    CHECK(t.code == 4);
    CHECK(t.out.find("summary=FAIL pass=13 fail=2") != std::string::npos);
    auto o = run({"verify", "operators", "--n", "2", "--samples", "2"});
    CHECK(o.code == 0);
}

TEST_CASE("exit codes for bad input and budgets") {
    auto s = run({"--strict", "eval", kData + "bare2.model", kData + "empty.team", "NE"});
    CHECK(s.code == 2);
    CHECK(s.err.find("lax semantics only") != std::string::npos);
    CHECK(run({"dims", kData + "dup.fam"}).code == 2);
    CHECK(run({"dims", kData + "nosuch.fam"}).code == 2);
    CHECK(run({"eval", kData + "bare2.model", kData + "swap.team", "dep(x ; y"}).code == 2);
    CHECK(run({"eval", kData + "bare2.model", kData + "swap.team", "dep(x ; z)"}).code == 2);
    CHECK(run({"family", "R(x)", "--vars", "x", "--model", kData + "swap2.model", "--dims"}).code == 2);
    CHECK(run({"nosuch"}).code == 2);
    CHECK(run({"--format", "xml", "dims", kData + "even3.fam"}).code == 2);
    auto b = run({"--budget-nodes", "3", "dims", kData + "random10.fam", "--which", "cd"});
    CHECK(b.code == 3);
    CHECK(b.out.find("status=upperBoundBudget") != std::string::npos);
}
