#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tourank/axioms.hpp"
#include "tourank/core.hpp"
#include "tourank/methods.hpp"
#include "tourank/search.hpp"

namespace tourank::fixtures {

/// Canonical texts of the bundled examples; the copies shipped under
/// fixtures/ parse to the same tournaments (a test keeps them in sync).
inline std::string example_text(const std::string& id) {
    if (id == "3.1")
        return "players: X1 X2 X3 X4\n"
               "match: 1 X1 X4 1\n"
               "match: 2 X1 X2 1/2\n"
               "match: 2 X3 X4 1/2\n";
    if (id == "4.1a")
        return "players: X1 X2 X3 X4\n"
               "match: 1 X1 X2 1/2\n"
               "match: 1 X1 X4 1/2\n"
               "match: 1 X2 X3 1/2\n"
               "match: 1 X3 X4 1/2\n";
    if (id == "4.1b")
        return "players: X1 X2 X3 X4\n"
               "match: 1 X1 X3 0\n"
               "match: 1 X1 X4 1/2\n"
               "match: 1 X2 X3 0\n"
               "match: 1 X2 X4 1/2\n";
    if (id == "4.1c")
        return "players: X1 X2 X3 X4\n"
               "match: 1 X1 X2 1/2\n"
               "match: 1 X1 X4 1/2\n"
               "match: 1 X2 X3 1/2\n"
               "match: 1 X3 X4 1/2\n"
               "match: 2 X1 X3 0\n"
               "match: 2 X1 X4 1/2\n"
               "match: 2 X2 X3 0\n"
               "match: 2 X2 X4 1/2\n";
    if (id == "4.2")
        return "players: X1 X2 X3 X4\n"
               "match: 1 X1 X2 1/2\n"
               "match: 1 X2 X3 1/2\n"
               "match: 1 X3 X4 1/2\n";
    throw std::invalid_argument("unknown example id: " + id);
}

inline const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids = {"3.1", "4.1a", "4.1b", "4.1c", "4.2"};
    return ids;
}

struct PaperExample {
    std::string id;
    Tournament tournament;
    std::string notes;
};

inline PaperExample example(const std::string& id) {
    PaperExample ex;
    ex.id = id;
    ex.tournament = parse_tournament(example_text(id));
    if (id == "3.1")
        ex.notes = "round 1: X1 beats X4; round 2: X1-X2 and X3-X4 drawn";
    else if (id == "4.1a")
        ex.notes = "single round of draws on the 4-cycle X1-X2-X3-X4-X1";
    else if (id == "4.1b")
        ex.notes = "X3 beats X1 and X2; X4 draws with X1 and X2";
    else if (id == "4.1c")
        ex.notes = "the two halves above as rounds 1 and 2";
    else
        ex.notes = "draw path X1-X2, X2-X3, X3-X4";
    return ex;
}

/// One expected-verdict row. `instance` is an example id, or "a+b" for the
/// two-problem axioms. `sigma` pins an explicit permutation for neu/ano;
/// without it the row is checked under every generator permutation and the
/// first FAIL (if any) decides.
struct VerdictRow {
    std::string method;
    Axiom axiom;
    std::string instance;
    std::optional<std::vector<int>> sigma;
    Status expected = Status::PASS;
    std::string expected_witness;  // "pair:(..)" prefix match, empty = any
};

inline std::vector<VerdictRow> verdict_table() {
    std::vector<VerdictRow> rows;
    rows.push_back({"round-sum", Axiom::sc, "3.1", std::nullopt, Status::FAIL, "pair:(X2,X3)"});
    rows.push_back({"round-sum", Axiom::ano, "3.1", std::nullopt, Status::PASS, ""});
    rows.push_back({"round-sum", Axiom::neu, "3.1", std::nullopt, Status::PASS, ""});
    rows.push_back({"score", Axiom::sc, "4.1c", std::nullopt, Status::FAIL, "pair:(X2,X1)"});
    rows.push_back({"score", Axiom::op, "4.1a+4.1b", std::nullopt, Status::PASS, ""});
    rows.push_back(
        {"least-squares", Axiom::sc, "4.1c", std::nullopt, Status::PASS, ""});
    rows.push_back({"least-squares", Axiom::op, "4.1a+4.1b", std::nullopt, Status::FAIL,
                    "pair:(X1,X2)"});
    rows.push_back({"index", Axiom::sc, "4.2", std::nullopt, Status::PASS, ""});
    rows.push_back({"index", Axiom::neu, "4.2", std::vector<int>{3, 2, 1, 0}, Status::FAIL,
                    "player:X1"});
    rows.push_back({"index", Axiom::sym, "4.2", std::nullopt, Status::FAIL, "pair:(X1,X2)"});
    return rows;
}

/// Run a table row through the axioms module and return the actual verdict.
inline AxiomVerdict replay(const VerdictRow& row) {
    const Method* method = find_method(row.method);
    if (!method) throw std::invalid_argument("unknown method: " + row.method);
    switch (row.axiom) {
        case Axiom::sc:
            return check_sc(*method, example(row.instance).tournament, true);
        case Axiom::sym:
            return check_sym(*method, aggregate(example(row.instance).tournament));
        case Axiom::inv:
            return check_inv(*method, aggregate(example(row.instance).tournament));
        case Axiom::op:
        case Axiom::sop: {
            auto plus = row.instance.find('+');
            if (plus == std::string::npos)
                throw std::invalid_argument("op rows need \"a+b\" instances");
            RankingProblem a = aggregate(example(row.instance.substr(0, plus)).tournament);
            RankingProblem b = aggregate(example(row.instance.substr(plus + 1)).tournament);
            return check_op(*method, a, b, row.axiom == Axiom::sop);
        }
        case Axiom::neu: {
            Tournament t = example(row.instance).tournament;
            if (row.sigma) return check_neu(*method, t, *row.sigma);
            for (const auto& sigma : player_generators(t.roster.size())) {
                AxiomVerdict v = check_neu(*method, t, sigma);
                if (v.status == Status::FAIL) return v;
            }
            return AxiomVerdict{"neu", method->name(), Status::PASS, {}};
        }
        case Axiom::ano: {
            Tournament t = example(row.instance).tournament;
            if (row.sigma) return check_ano(*method, t, *row.sigma);
            for (const auto& sigma : round_generators(t.rounds)) {
                AxiomVerdict v = check_ano(*method, t, sigma);
                if (v.status == Status::FAIL) return v;
            }
            return AxiomVerdict{"ano", method->name(), Status::PASS, {}};
        }
        case Axiom::iim:
            throw std::invalid_argument("iim rows are not part of the fixture table");
    }
    throw std::logic_error("unreachable");
}

/// True when the actual verdict matches the row's expectation.
inline bool row_matches(const VerdictRow& row, const AxiomVerdict& actual) {
    if (actual.status != row.expected) return false;
    if (row.expected_witness.empty()) return true;
    return actual.witness.str().rfind(row.expected_witness, 0) == 0;
}

}  // namespace tourank::fixtures
