#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "abcl/cli.hpp"

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "abcl");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int const code = abcl::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string golden(std::string const& name)
{
    std::ifstream f(std::string(ABCL_GOLDEN_DIR) + "/" + name);
    REQUIRE(f.good());
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("invariants output")
{
    CHECK(run_cli({"invariants", "sqrt:2"}).out == "delta=1 w=8 r2=0\n");
    CHECK(run_cli({"invariants", "zeta+:9"}).out == "delta=0 w=9 r2=0\n");
    CHECK(run_cli({"invariants", "zeta:4"}).out == "delta=0 w=4 r2=1\n");
    CHECK(run_cli({"invariants", "sqrt:-7", "--json"}).out ==
          "{\"field\":\"sqrt:-7\",\"delta\":0,\"w\":1,\"w_p\":{},\"r2\":1,\"known_layer\":\"Zhat^2 x prod_{n>=1} Z/nZ\"}\n");
}

TEST_CASE("exit codes")
{
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"invariants"}).code == 2);
    CHECK(run_cli({"invariants", "sqrt:"}).code == 2);
    CHECK(run_cli({"invariants", "sqrt:4"}).code != 0);
    CHECK(run_cli({"scan-residues", "sqrt:2", "--p", "2"}).code == 2);
    CHECK(run_cli({"scan-residues", "sqrt:2", "--p", "4", "--bound", "1000"}).code == 1);
    CHECK(run_cli({"scan-prational", "sqrt:-2", "--bound", "1000"}).code == 1);
    CHECK(run_cli({"test-prational", "sqrt:2", "--p", "6"}).code == 1);
    CHECK(run_cli({"classify-footnote3", "-12"}).code == 1);
    CHECK(run_cli({"log-ideal", "sqrt:-5", "--ideal", "7", "--p", "7", "--precision", "6"}).code == 1);
    auto const bad = run_cli({"report"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("scan outputs")
{
    CHECK(run_cli({"scan-prational", "sqrt:2", "--bound", "100000"}).out == "13 31\n");
    auto const a = run_cli({"scan-residues", "sqrt:2", "--p", "2", "--bound", "30000", "--json", "--threads", "1"});
    auto const b = run_cli({"scan-residues", "sqrt:2", "--p", "2", "--bound", "30000", "--json", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"verdict\":\"PASS\"") != std::string::npos);
    auto const c = run_cli({"scan-prational", "sqrt:5", "--bound", "50000", "--threads", "1"});
    auto const d = run_cli({"scan-prational", "sqrt:5", "--bound", "50000", "--threads", "4"});
    CHECK(c.out == d.out);
    auto const t = run_cli({"scan-residues", "zeta:4", "--p", "2", "--bound", "5000"});
    CHECK(t.out.find("PASS") != std::string::npos);
    CHECK(t.err.find("scanning") != std::string::npos);
}

TEST_CASE("classifier and log-ideal")
{
    CHECK(run_cli({"classify-footnote3", "-84"}).out == "false\n");
    CHECK(run_cli({"classify-footnote3", "-20"}).out == "true\n");
    auto const l = run_cli({"log-ideal", "sqrt:-5", "--ideal", "3", "--p", "7", "--precision", "6", "--json"});
    CHECK(l.code == 0);
    CHECK(l.out.find("\"precision\":6") != std::string::npos);
}

TEST_CASE("precision from the environment")
{
    ::setenv("ABCL_PRECISION", "7", 1);
    auto const a = run_cli({"test-prational", "sqrt:-5", "--p", "2", "--json"});
    ::setenv("ABCL_PRECISION", "x", 1);
    auto const b = run_cli({"test-prational", "sqrt:-5", "--p", "2"});
    ::unsetenv("ABCL_PRECISION");
    auto const c = run_cli({"test-prational", "sqrt:-5", "--p", "2", "--json"});
    CHECK(a.out.find("\"precision\":7") != std::string::npos);
    CHECK(b.code == 2);
    CHECK(c.out.find("\"precision\":12") != std::string::npos);
}

TEST_CASE("golden reports")
{
    CHECK(run_cli({"report", "sqrt:-7"}).out == golden("report_sqrt-7.txt"));
    CHECK(run_cli({"report", "sqrt:-7", "--json"}).out == golden("report_sqrt-7.json"));
    CHECK(run_cli({"report", "sqrt:3"}).out == golden("report_sqrt3.txt"));
    CHECK(run_cli({"report", "sqrt:3", "--json"}).out == golden("report_sqrt3.json"));
    CHECK(run_cli({"report", "sqrt:2"}).out == golden("report_sqrt2.txt"));
    CHECK(run_cli({"compare", "sqrt:3", "sqrt:7"}).out == golden("compare_sqrt3_sqrt7.txt"));
    CHECK(run_cli({"compare", "sqrt:3", "sqrt:7", "--json"}).out == golden("compare_sqrt3_sqrt7.json"));
}
