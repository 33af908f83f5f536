#include "tourank/fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace tourank;

namespace {

const Method& m(const std::string& name) { return *find_method(name); }

Tournament ex(const std::string& id) { return fixtures::example(id).tournament; }

Tournament from_file(const std::string& name) {
    std::ifstream in(std::string(TOURANK_FIXTURES_DIR) + "/" + name);
    EXPECT_TRUE(in.good()) << name;
    return parse_tournament(in);
}

}  // namespace

TEST(Fixtures, KnownIdsParse) {
    for (const auto& id : fixtures::example_ids()) {
        fixtures::PaperExample pe = fixtures::example(id);
        EXPECT_EQ(pe.id, id);
        EXPECT_EQ(pe.tournament.roster.size(), 4);
        EXPECT_FALSE(pe.notes.empty());
    }
    EXPECT_THROW(fixtures::example("9.9"), std::invalid_argument);
}

TEST(Fixtures, Ex31Structure) {
    Tournament t = ex("3.1");
    EXPECT_EQ(t.matches.size(), 3u);
    EXPECT_EQ(match_value(t, 1, 0, 3), Rational(1));
    EXPECT_EQ(match_value(t, 2, 0, 1), Rational(1, 2));
    EXPECT_EQ(match_value(t, 2, 2, 3), Rational(1, 2));
}

TEST(Fixtures, Ex41bSemantics) {
    Tournament t = ex("4.1b");
    EXPECT_EQ(match_value(t, 1, 2, 0), Rational(1));  // X3 beats X1
    EXPECT_EQ(match_value(t, 1, 2, 1), Rational(1));  // X3 beats X2
    EXPECT_EQ(match_value(t, 1, 0, 3), Rational(1, 2));
    EXPECT_EQ(match_value(t, 1, 1, 3), Rational(1, 2));
}

TEST(Fixtures, Ex42IsTheDrawPath) {
    Tournament t = ex("4.2");
    EXPECT_EQ(t.matches.size(), 3u);
    for (const auto& mr : t.matches) EXPECT_EQ(mr.value, Rational(1, 2));
}

TEST(Fixtures, HalvesSumToTheUnion) {
    EXPECT_EQ(sum_problems(aggregate(ex("4.1a")), aggregate(ex("4.1b"))),
              aggregate(ex("4.1c")));
    // 4.1c carries the two halves as round labels 1 and 2
    Tournament c = ex("4.1c");
    EXPECT_EQ(c.rounds, 2);
    auto [a, b] = detail::split_by_rounds(c);
    EXPECT_EQ(aggregate(a), aggregate(ex("4.1a")));
    EXPECT_EQ(aggregate(b), aggregate(ex("4.1b")));
}

TEST(Fixtures, FilesOnDiskMatchTheEmbeddedTexts) {
    EXPECT_EQ(from_file("ex31.trn"), ex("3.1"));
    EXPECT_EQ(from_file("ex41a.trn"), ex("4.1a"));
    EXPECT_EQ(from_file("ex41b.trn"), ex("4.1b"));
    EXPECT_EQ(from_file("ex41c.trn"), ex("4.1c"));
    EXPECT_EQ(from_file("ex42.trn"), ex("4.2"));
}

TEST(VerdictTable, EveryRowReplays) {
    for (const auto& row : fixtures::verdict_table()) {
        AxiomVerdict actual = fixtures::replay(row);
        EXPECT_TRUE(fixtures::row_matches(row, actual))
            << row.method << "/" << to_string(row.axiom) << " on " << row.instance
            << " expected " << to_string(row.expected) << ", got " << actual.serialize();
    }
}

TEST(VerdictTable, CoversTheHeadlineResults) {
    // one FAIL row per impossibility mechanism
    bool sc_score = false, op_ls = false, sc_roundsum = false, neu_index = false;
    for (const auto& row : fixtures::verdict_table()) {
        if (row.method == "score" && row.axiom == Axiom::sc && row.expected == Status::FAIL)
            sc_score = true;
        if (row.method == "least-squares" && row.axiom == Axiom::op &&
            row.expected == Status::FAIL)
            op_ls = true;
        if (row.method == "round-sum" && row.axiom == Axiom::sc &&
            row.expected == Status::FAIL)
            sc_roundsum = true;
        if (row.method == "index" && row.axiom == Axiom::neu && row.expected == Status::FAIL)
            neu_index = true;
    }
    EXPECT_TRUE(sc_score && op_ls && sc_roundsum && neu_index);
}

// No registry method passes both SC on the union and OP on the halves.
TEST(Impossibility, NoMethodSurvivesTheTriple) {
    RankingProblem a = aggregate(ex("4.1a"));
    RankingProblem b = aggregate(ex("4.1b"));
    Tournament c = ex("4.1c");
    for (const auto& method : method_registry()) {
        AxiomVerdict sc = check_sc(method, c, true);
        AxiomVerdict op = check_op(method, a, b, false);
        EXPECT_FALSE(sc.status == Status::PASS && op.status == Status::PASS)
            << method.name() << " passes both SC on the union and OP on the halves";
    }
}

// No registry method passes NEU, SYM, SOP and SC together; the fixture set
// plus a small exhaustive corpus is enough to break every one of them.
TEST(Impossibility, NoMethodMeetsAllFourOnFixturesAndSmallCorpus) {
    for (const auto& method : method_registry()) {
        bool broken = false;
        // fixture-level attempts first
        for (const auto& id : fixtures::example_ids()) {
            Tournament t = ex(id);
            if (check_sc(method, t, true).status == Status::FAIL) broken = true;
            if (check_sym(method, aggregate(t)).status == Status::FAIL) broken = true;
            for (const auto& sigma : player_generators(4))
                if (check_neu(method, t, sigma).status == Status::FAIL) broken = true;
            if (broken) break;
        }
        if (!broken) {
            AxiomVerdict sop =
                check_op(method, aggregate(ex("4.1a")), aggregate(ex("4.1b")), true);
            broken = sop.status == Status::FAIL;
        }
        if (!broken) {
            for (Axiom axiom : {Axiom::sym, Axiom::neu, Axiom::sop, Axiom::sc}) {
                FalsifyReport r =
                    falsify(method, axiom, ExhaustiveCorpus{3, 2, default_alphabet()});
                if (r.outcome == FalsifyOutcome::witness_found) {
                    broken = true;
                    break;
                }
            }
        }
        EXPECT_TRUE(broken) << method.name() << " passed NEU, SYM, SOP and SC everywhere";
    }
}
