// Command line surface: rank | check | falsify | paper.
//
// Exit codes: 0 success / all PASS, 1 a FAIL verdict or witness was produced,
// 2 usage or input errors. Everything on stdout is deterministic for fixed
// inputs and seeds except the elapsed_ms field of falsify summaries.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tourank/axioms.hpp"
#include "tourank/core.hpp"
#include "tourank/fixtures.hpp"
#include "tourank/methods.hpp"
#include "tourank/search.hpp"

namespace {

using namespace tourank;

Tournament load_tournament(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_tournament(in);
}

std::vector<Rational> parse_alphabet(const std::string& spec) {
    std::vector<Rational> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(Rational::parse(item));
    }
    if (out.empty()) throw std::runtime_error("empty alphabet");
    return out;
}

const Method& require_method(const std::string& name) {
    const Method* m = find_method(name);
    if (!m) {
        std::string names;
        for (const auto& method : method_registry()) {
            if (!names.empty()) names += ", ";
            names += method.name();
        }
        throw std::runtime_error("unknown method '" + name + "' (available: " + names + ")");
    }
    return *m;
}

Axiom require_axiom(const std::string& name) {
    auto a = axiom_from_name(name);
    if (!a)
        throw std::runtime_error(
            "unknown axiom '" + name + "' (available: ano, neu, sym, inv, iim, op, sop, sc)");
    return *a;
}

int run_rank(const std::string& method_name, const std::string& file) {
    const Method& method = require_method(method_name);
    Tournament t = load_tournament(file);
    std::cout << format_scores(t.roster, method(t));
    return 0;
}

int exit_for(const std::vector<AxiomVerdict>& verdicts) {
    for (const auto& v : verdicts)
        if (v.status == Status::FAIL) return 1;
    return 0;
}

int run_check(const std::string& axiom_name, const std::string& method_name,
              const std::string& file1, const std::string& file2,
              const std::string& respect_rounds) {
    const Method& method = require_method(method_name);
    Axiom axiom = require_axiom(axiom_name);
    const bool two_files = axiom == Axiom::iim || axiom == Axiom::op || axiom == Axiom::sop;
    if (two_files && file2.empty())
        throw std::runtime_error(std::string(to_string(axiom)) + " needs two tournament files");
    if (!two_files && !file2.empty())
        throw std::runtime_error(std::string(to_string(axiom)) + " takes a single file");

    Tournament t = load_tournament(file1);
    std::vector<AxiomVerdict> verdicts;
    switch (axiom) {
        case Axiom::sym:
            verdicts.push_back(check_sym(method, aggregate(t)));
            break;
        case Axiom::inv:
            verdicts.push_back(check_inv(method, aggregate(t)));
            break;
        case Axiom::sc: {
            // Without an explicit mode both verdicts are reported once the
            // instance actually has round structure.
            if (respect_rounds.empty() && t.rounds > 1) {
                verdicts.push_back(check_sc(method, t, true));
                verdicts.back().witness.add("mode", "respect-rounds");
                verdicts.push_back(check_sc(method, t, false));
                verdicts.back().witness.add("mode", "pooled");
            } else {
                bool respect = respect_rounds.empty() || respect_rounds == "true";
                verdicts.push_back(check_sc(method, t, respect));
            }
            break;
        }
        case Axiom::iim:
            verdicts.push_back(check_iim(method, aggregate(t), aggregate(load_tournament(file2))));
            break;
        case Axiom::op:
        case Axiom::sop:
            verdicts.push_back(check_op(method, aggregate(t), aggregate(load_tournament(file2)),
                                        axiom == Axiom::sop));
            break;
        case Axiom::neu: {
            bool failed = false;
            for (const auto& sigma : player_generators(t.roster.size())) {
                AxiomVerdict v = check_neu(method, t, sigma);
                if (v.status == Status::FAIL) {
                    verdicts.push_back(std::move(v));
                    failed = true;
                    break;
                }
            }
            if (!failed) {
                AxiomVerdict v{"neu", method.name(), Status::PASS, {}};
                v.witness.add("note", "all generator permutations agree");
                verdicts.push_back(std::move(v));
            }
            break;
        }
        case Axiom::ano: {
            bool failed = false;
            for (const auto& sigma : round_generators(t.rounds)) {
                AxiomVerdict v = check_ano(method, t, sigma);
                if (v.status == Status::FAIL) {
                    verdicts.push_back(std::move(v));
                    failed = true;
                    break;
                }
            }
            if (!failed) {
                AxiomVerdict v{"ano", method.name(), Status::PASS, {}};
                v.witness.add("note", "all generator permutations agree");
                verdicts.push_back(std::move(v));
            }
            break;
        }
    }
    for (const auto& v : verdicts) std::cout << v.serialize() << "\n";
    return exit_for(verdicts);
}

int run_falsify(const std::string& axiom_name, const std::string& method_name, int players,
                int rounds, bool exhaustive, bool has_seed, std::uint64_t seed,
                std::uint64_t trials, const std::string& alphabet_spec,
                unsigned long long cap, int threads, bool exhaust_all) {
    const Method& method = require_method(method_name);
    Axiom axiom = require_axiom(axiom_name);
    std::vector<Rational> alphabet =
        alphabet_spec.empty() ? default_alphabet() : parse_alphabet(alphabet_spec);

    CorpusSpec corpus;
    if (exhaustive) {
        corpus = ExhaustiveCorpus{players, rounds, alphabet, cap};
    } else {
        if (!has_seed) throw std::runtime_error("random campaigns require an explicit --seed");
        GeneratorConfig cfg;
        cfg.n = players;
        cfg.rounds = rounds;
        cfg.alphabet = alphabet;
        cfg.seed = seed;
        cfg.schedule = Schedule::free;
        corpus = RandomCorpus{cfg, trials};
    }
    FalsifyOptions opt;
    opt.threads = threads;
    opt.exhaust_all = exhaust_all;
    FalsifyReport report = falsify(method, axiom, corpus, opt);
    std::cout << report.serialize() << "\n";
    if (report.witness) {
        for (std::size_t k = 0; k < report.witness->instances.size(); ++k) {
            std::cout << "# witness instance " << (k + 1) << "\n"
                      << report.witness->instances[k];
        }
    }
    return report.outcome == FalsifyOutcome::witness_found ? 1 : 0;
}

int run_paper(const std::string& example) {
    if (example != "3.1" && example != "4.1" && example != "4.2")
        throw std::runtime_error("unknown example '" + example + "' (use 3.1, 4.1 or 4.2)");
    bool any_fail = false;
    for (const auto& row : fixtures::verdict_table()) {
        if (row.instance.rfind(example, 0) != 0) continue;
        AxiomVerdict actual = fixtures::replay(row);
        std::cout << actual.serialize() << " instance=" << row.instance
                  << " expected=" << to_string(row.expected)
                  << " matches_expected=" << (fixtures::row_matches(row, actual) ? "yes" : "no")
                  << "\n";
        if (actual.status == Status::FAIL) any_fail = true;
    }
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tournament ranking toolkit: scoring methods, axiom checkers, falsifiers"};
    app.require_subcommand(1);

    std::string method_name, axiom_name, file1, file2, respect_rounds, alphabet_spec, example;
    int players = 4, rounds = 1, threads = 0;
    std::uint64_t seed = 0, trials = 1000;
    unsigned long long cap = 10'000'000ULL;
    bool exhaustive = false, exhaust_all = false;

    auto* rank = app.add_subcommand("rank", "score the players of a tournament file");
    rank->add_option("--method", method_name, "scoring method")->required();
    rank->add_option("file", file1, "tournament file")->required();

    auto* check = app.add_subcommand("check", "run one axiom checker on explicit instances");
    check->add_option("--axiom", axiom_name, "axiom name")->required();
    check->add_option("--method", method_name, "scoring method")->required();
    check->add_option("--respect-rounds", respect_rounds, "true|false (sc only)")
        ->check(CLI::IsMember({"true", "false"}));
    check->add_option("file", file1, "tournament file")->required();
    check->add_option("file2", file2, "second tournament file (iim/op/sop)");

    auto* fals = app.add_subcommand("falsify", "search a corpus for an axiom violation");
    fals->add_option("--axiom", axiom_name, "axiom name")->required();
    fals->add_option("--method", method_name, "scoring method")->required();
    fals->add_option("--players", players, "player count")->required();
    fals->add_option("--rounds", rounds, "round count")->required();
    fals->add_flag("--exhaustive", exhaustive, "enumerate the whole corpus");
    auto* seed_opt = fals->add_option("--seed", seed, "random corpus seed");
    fals->add_option("--trials", trials, "random corpus size");
    fals->add_option("--alphabet", alphabet_spec, "comma separated values, default 0,1/2,1");
    fals->add_option("--cap", cap, "exhaustive enumeration cap");
    fals->add_option("--threads", threads, "worker threads (0 = hardware)");
    fals->add_flag("--exhaust-all", exhaust_all, "count every violation instead of stopping");

    auto* paper = app.add_subcommand("paper", "replay the bundled worked examples");
    paper->add_option("--example", example, "3.1, 4.1 or 4.2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rank->parsed()) return run_rank(method_name, file1);
        if (check->parsed()) return run_check(axiom_name, method_name, file1, file2, respect_rounds);
        if (fals->parsed())
            return run_falsify(axiom_name, method_name, players, rounds, exhaustive,
                               seed_opt->count() > 0, seed, trials, alphabet_spec, cap, threads,
                               exhaust_all);
        if (paper->parsed()) return run_paper(example);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
