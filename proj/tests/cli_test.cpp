#include <gtest/gtest.h>

#include <cstdio>
#include <regex>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(TOURANK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    CliResult result;
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) result.out += buf;
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(TOURANK_FIXTURES_DIR) + "/" + name;
}

std::string strip_elapsed(std::string s) {
    return std::regex_replace(s, std::regex("elapsed_ms=[0-9]+"), "elapsed_ms=#");
}

}  // namespace

TEST(CliRank, LeastSquaresExactOutput) {
    CliResult r = run_cli("rank --method least-squares " + fixture("ex41c.trn"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "X1 -5/24\nX2 -1/8\nX3 3/8\nX4 -1/24\n");
}

TEST(CliRank, ScoreOnEx31) {
    CliResult r = run_cli("rank --method score " + fixture("ex31.trn"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "X1 1\nX2 0\nX3 0\nX4 -1\n");
}

TEST(CliRank, UsageErrors) {
    EXPECT_EQ(run_cli("rank --method nosuch " + fixture("ex31.trn")).code, 2);
    EXPECT_EQ(run_cli("rank --method score /nonexistent.trn").code, 2);
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("bogus-verb").code, 2);
}

TEST(CliCheck, ScReportsBothModesAndExitsOne) {
    CliResult r = run_cli("check --axiom sc --method score " + fixture("ex41c.trn"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("mode:respect-rounds"), std::string::npos);
    EXPECT_NE(r.out.find("mode:pooled"), std::string::npos);
    EXPECT_NE(r.out.find("status=FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("pair:(X2,X1)"), std::string::npos);
}

TEST(CliCheck, ExplicitModeGivesOneVerdict) {
    CliResult r = run_cli("check --axiom sc --method least-squares --respect-rounds true " +
                          fixture("ex41c.trn"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "axiom=sc method=least-squares status=PASS witness=-\n");
}

TEST(CliCheck, OpPairFails) {
    CliResult r = run_cli("check --axiom op --method least-squares " + fixture("ex41a.trn") +
                          " " + fixture("ex41b.trn"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("pair:(X1,X2)"), std::string::npos);
}

TEST(CliCheck, SymInapplicableExitsZero) {
    CliResult r = run_cli("check --axiom sym --method score " + fixture("ex41b.trn"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("status=INAPPLICABLE"), std::string::npos);
}

TEST(CliCheck, MissingSecondFileIsUsageError) {
    EXPECT_EQ(run_cli("check --axiom op --method score " + fixture("ex41a.trn")).code, 2);
    EXPECT_EQ(run_cli("check --axiom sym --method score " + fixture("ex41a.trn") + " " +
                      fixture("ex41b.trn"))
                  .code,
              2);
    EXPECT_EQ(run_cli("check --axiom bogus --method score " + fixture("ex41a.trn")).code, 2);
}

TEST(CliFalsify, ExhaustiveWitnessAndByteStableOutput) {
    std::string args = "falsify --axiom sym --method index --players 2 --rounds 1 --exhaustive";
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    EXPECT_EQ(a.code, 1);
    EXPECT_EQ(strip_elapsed(a.out), strip_elapsed(b.out));
    EXPECT_NE(a.out.find("outcome=witness-found"), std::string::npos);
    EXPECT_NE(a.out.find("# witness instance 1"), std::string::npos);
    EXPECT_NE(a.out.find("players: X1 X2"), std::string::npos);
}

TEST(CliFalsify, CleanSweepExitsZero) {
    CliResult r =
        run_cli("falsify --axiom sop --method score --players 3 --rounds 2 --exhaustive");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("outcome=corpus-exhausted"), std::string::npos);
    EXPECT_NE(r.out.find("tested=4096"), std::string::npos);
}

TEST(CliFalsify, RandomRequiresSeed) {
    EXPECT_EQ(run_cli("falsify --axiom neu --method index --players 3 --rounds 1").code, 2);
    CliResult r = run_cli(
        "falsify --axiom neu --method index --players 3 --rounds 1 --seed 5 --trials 20");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("seed:5"), std::string::npos);
}

TEST(CliPaper, Example41RowsAllMatch) {
    CliResult r = run_cli("paper --example 4.1");
    EXPECT_EQ(r.code, 1);  // FAIL rows are the point
    EXPECT_EQ(r.out.find("matches_expected=no"), std::string::npos);
    EXPECT_NE(r.out.find("axiom=sc method=score status=FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("axiom=op method=least-squares status=FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("axiom=op method=score status=PASS"), std::string::npos);
}

TEST(CliPaper, Example31And42) {
    CliResult r31 = run_cli("paper --example 3.1");
    EXPECT_EQ(r31.code, 1);
    EXPECT_NE(r31.out.find("axiom=ano method=round-sum status=PASS"), std::string::npos);
    EXPECT_NE(r31.out.find("axiom=sc method=round-sum status=FAIL"), std::string::npos);
    EXPECT_EQ(r31.out.find("matches_expected=no"), std::string::npos);

    CliResult r42 = run_cli("paper --example 4.2");
    EXPECT_EQ(r42.code, 1);
    EXPECT_NE(r42.out.find("axiom=sc method=index status=PASS"), std::string::npos);
    EXPECT_EQ(r42.out.find("matches_expected=no"), std::string::npos);

    EXPECT_EQ(run_cli("paper --example 9.9").code, 2);
}
