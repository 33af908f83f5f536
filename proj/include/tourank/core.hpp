#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tourank/rational.hpp"

namespace tourank {

/// Error raised by the tournament file parser, with a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct Player {
    int index = 0;
    std::string label;
};

/// Contiguous, uniquely labelled player set.
class Roster {
public:
    Roster() = default;
    explicit Roster(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty())
            throw std::invalid_argument("Roster: needs at least one player");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty())
                throw std::invalid_argument("Roster: empty label");
            auto [it, fresh] = by_label_.emplace(labels_[i], static_cast<int>(i));
            if (!fresh)
                throw std::invalid_argument("Roster: duplicate label " + labels_[i]);
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    Player player(int i) const { return Player{i, label(i)}; }

    std::optional<int> find(std::string_view label) const {
        auto it = by_label_.find(std::string(label));
        if (it == by_label_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const Roster& a, const Roster& b) {
        return a.labels_ == b.labels_;
    }
    friend bool operator!=(const Roster& a, const Roster& b) { return !(a == b); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> by_label_;
};

/// One paired comparison: t_ij for the stored orientation. Records are kept
/// with i < j; the reverse value 1 - t is implied, never stored.
struct MatchRecord {
    int round = 1;  // 1-based
    int i = 0;
    int j = 0;
    Rational value;  // t_ij in [0, 1]

    friend bool operator==(const MatchRecord& a, const MatchRecord& b) {
        return a.round == b.round && a.i == b.i && a.j == b.j && a.value == b.value;
    }
};

/// A general ranking problem: roster plus round-labelled match records.
struct Tournament {
    Roster roster;
    int rounds = 1;  // m >= 1; every record round is in 1..rounds
    std::vector<MatchRecord> matches;  // sorted by (round, i, j), i < j

    friend bool operator==(const Tournament& a, const Tournament& b) {
        return a.roster == b.roster && a.rounds == b.rounds && a.matches == b.matches;
    }
};

namespace detail {

inline void sort_matches(std::vector<MatchRecord>& ms) {
    std::sort(ms.begin(), ms.end(), [](const MatchRecord& a, const MatchRecord& b) {
        if (a.round != b.round) return a.round < b.round;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
}

}  // namespace detail

/// Validate and normalize raw records into a Tournament. Orientation is
/// canonicalized to i < j (flipping t to 1 - t), records are sorted, and the
/// one-comparison-per-pair-per-round rule is enforced. `rounds` is the max
/// round label (at least 1).
inline Tournament make_tournament(Roster roster, std::vector<MatchRecord> matches) {
    Tournament t;
    t.roster = std::move(roster);
    const int n = t.roster.size();
    int max_round = 1;
    for (auto& m : matches) {
        if (m.round < 1) throw std::invalid_argument("match: round must be positive");
        if (m.i < 0 || m.i >= n || m.j < 0 || m.j >= n)
            throw std::invalid_argument("match: player index out of range");
        if (m.i == m.j) throw std::invalid_argument("match: a player cannot meet itself");
        if (m.value < Rational(0) || m.value > Rational(1))
            throw std::invalid_argument("match: value outside [0,1]");
        if (m.i > m.j) {
            std::swap(m.i, m.j);
            m.value = Rational(1) - m.value;
        }
        max_round = std::max(max_round, m.round);
    }
    detail::sort_matches(matches);
    for (std::size_t k = 1; k < matches.size(); ++k) {
        const auto& a = matches[k - 1];
        const auto& b = matches[k];
        if (a.round == b.round && a.i == b.i && a.j == b.j)
            throw std::invalid_argument("match: pair " + t.roster.label(a.i) + "-" +
                                        t.roster.label(a.j) + " appears twice in round " +
                                        std::to_string(a.round));
    }
    t.rounds = max_round;
    t.matches = std::move(matches);
    return t;
}

/// Lowest-terms value of t_ij for an arbitrary orientation (i, j), or nullopt
/// if the pair did not meet in the given round.
inline std::optional<Rational> match_value(const Tournament& t, int round, int i, int j) {
    for (const auto& m : t.matches) {
        if (m.round != round) continue;
        if (m.i == std::min(i, j) && m.j == std::max(i, j)) {
            return i < j ? m.value : Rational(1) - m.value;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tournament file format
//
//   # comment
//   players: X1 X2 X3 X4
//   match: <round> <Li> <Lj> <t>      with t one of 0, 1, p/q in [0,1]
// ---------------------------------------------------------------------------

inline Tournament parse_tournament(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::optional<Roster> roster;
    std::vector<MatchRecord> matches;

    auto fail = [&](const std::string& msg) -> void { throw ParseError(lineno, msg); };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;

        if (head == "players:") {
            if (roster) fail("duplicate players: line");
            std::vector<std::string> labels;
            std::string lab;
            while (ls >> lab) labels.push_back(lab);
            if (labels.empty()) fail("players: needs at least one label");
            try {
                roster = Roster(std::move(labels));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        } else if (head == "match:") {
            if (!roster) fail("match: before players:");
            int round;
            std::string li, lj, tv;
            if (!(ls >> round >> li >> lj >> tv)) fail("match: expected <round> <Li> <Lj> <t>");
            std::string extra;
            if (ls >> extra) fail("match: trailing token '" + extra + "'");
            if (round < 1) fail("match: round must be a positive integer");
            auto pi = roster->find(li);
            auto pj = roster->find(lj);
            if (!pi) fail("unknown player label '" + li + "'");
            if (!pj) fail("unknown player label '" + lj + "'");
            if (*pi == *pj) fail("match: players must differ");
            Rational v;
            try {
                v = Rational::parse(tv);
            } catch (const std::invalid_argument& e) {
                fail(std::string("match: ") + e.what());
            }
            if (v < Rational(0) || v > Rational(1)) fail("match: value " + tv + " outside [0,1]");
            matches.push_back(MatchRecord{round, *pi, *pj, v});
        } else {
            fail("unrecognized directive '" + head + "'");
        }
    }
    if (!roster) throw ParseError(lineno, "missing players: line");
    try {
        return make_tournament(std::move(*roster), std::move(matches));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

inline Tournament parse_tournament(const std::string& text) {
    std::istringstream in(text);
    return parse_tournament(in);
}

/// Canonical serializer: players line, then matches sorted by (round, i, j).
/// parse(format(t)) == t for every valid tournament.
inline std::string format_tournament(const Tournament& t) {
    std::ostringstream out;
    out << "players:";
    for (const auto& l : t.roster.labels()) out << ' ' << l;
    out << '\n';
    for (const auto& m : t.matches) {
        out << "match: " << m.round << ' ' << t.roster.label(m.i) << ' '
            << t.roster.label(m.j) << ' ' << m.value.str() << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Ranking problems
// ---------------------------------------------------------------------------

/// Aggregated view (N, R, M): skew-symmetric results matrix R over exact
/// rationals and symmetric non-negative integer matches matrix M. The
/// aggregated tournament matrix is A = (R + M) / 2.
struct RankingProblem {
    Roster roster;
    std::vector<Rational> r;   // n*n, row-major; r[i*n+j] = r_ij
    std::vector<long long> m;  // n*n, row-major

    int size() const { return roster.size(); }
    const Rational& R(int i, int j) const { return r[i * size() + j]; }
    long long M(int i, int j) const { return m[i * size() + j]; }
    Rational A(int i, int j) const { return (R(i, j) + Rational(M(i, j))) / Rational(2); }

    friend bool operator==(const RankingProblem& a, const RankingProblem& b) {
        return a.roster == b.roster && a.r == b.r && a.m == b.m;
    }
};

/// Build a problem from explicit matrices, checking every invariant:
/// skew-symmetry, symmetry, zero diagonal, |r_ij| <= m_ij.
inline RankingProblem make_ranking_problem(Roster roster, std::vector<Rational> r,
                                           std::vector<long long> m) {
    const int n = roster.size();
    if (r.size() != static_cast<std::size_t>(n) * n || m.size() != r.size())
        throw std::invalid_argument("RankingProblem: matrix size mismatch");
    for (int i = 0; i < n; ++i) {
        if (m[i * n + i] != 0 || !r[i * n + i].is_zero())
            throw std::invalid_argument("RankingProblem: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (m[i * n + j] < 0)
                throw std::invalid_argument("RankingProblem: negative match count");
            if (m[i * n + j] != m[j * n + i])
                throw std::invalid_argument("RankingProblem: M not symmetric");
            if (r[i * n + j] != -r[j * n + i])
                throw std::invalid_argument("RankingProblem: R not skew-symmetric");
            if (r[i * n + j].abs() > Rational(m[i * n + j]))
                throw std::invalid_argument("RankingProblem: |r_ij| > m_ij");
        }
    }
    return RankingProblem{std::move(roster), std::move(r), std::move(m)};
}

/// Sum the per-match contributions into (R, M): a match with value t adds
/// 2t - 1 to r_ij and 1 to m_ij (and symmetrically). Reuses the buffers in
/// `out`; the value-returning overload below is the everyday entry point.
inline void aggregate_into(const Tournament& t, RankingProblem& out) {
    const int n = t.roster.size();
    out.roster = t.roster;
    out.r.assign(static_cast<std::size_t>(n) * n, Rational(0));
    out.m.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& mr : t.matches) {
        Rational c = Rational(2) * mr.value - Rational(1);
        out.r[mr.i * n + mr.j] += c;
        out.r[mr.j * n + mr.i] -= c;
        out.m[mr.i * n + mr.j] += 1;
        out.m[mr.j * n + mr.i] += 1;
    }
}

inline RankingProblem aggregate(const Tournament& t) {
    RankingProblem p;
    aggregate_into(t, p);
    return p;
}

inline RankingProblem sum_problems(const RankingProblem& a, const RankingProblem& b) {
    if (a.roster != b.roster)
        throw std::invalid_argument("sum_problems: roster mismatch");
    RankingProblem out;
    out.roster = a.roster;
    out.r.resize(a.r.size());
    out.m.resize(a.m.size());
    for (std::size_t k = 0; k < a.r.size(); ++k) out.r[k] = a.r[k] + b.r[k];
    for (std::size_t k = 0; k < a.m.size(); ++k) out.m[k] = a.m[k] + b.m[k];
    return out;
}

/// (N, -R, M): every result flipped, match counts untouched.
inline RankingProblem negate(const RankingProblem& p) {
    RankingProblem out;
    out.roster = p.roster;
    out.m = p.m;
    out.r.resize(p.r.size());
    for (std::size_t k = 0; k < p.r.size(); ++k) out.r[k] = -p.r[k];
    return out;
}

namespace detail {

inline void check_permutation(const std::vector<int>& sigma, int n,
                              const char* what) {
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument(std::string(what) + ": wrong size");
    std::vector<char> seen(n, 0);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument(std::string(what) + ": not a bijection");
        seen[v] = 1;
    }
}

}  // namespace detail

/// Relabel players: the match (p, i, j, t) becomes (p, sigma[i], sigma[j], t).
/// sigma maps old index -> new index over the (unchanged) roster.
inline Tournament permute_players(const Tournament& t, const std::vector<int>& sigma) {
    detail::check_permutation(sigma, t.roster.size(), "permute_players");
    std::vector<MatchRecord> ms = t.matches;
    for (auto& m : ms) {
        m.i = sigma[m.i];
        m.j = sigma[m.j];
        if (m.i > m.j) {
            std::swap(m.i, m.j);
            m.value = Rational(1) - m.value;
        }
    }
    detail::sort_matches(ms);
    Tournament out;
    out.roster = t.roster;
    out.rounds = t.rounds;
    out.matches = std::move(ms);
    return out;
}

/// Simultaneous row/column permutation of (R, M).
inline RankingProblem permute_problem(const RankingProblem& p, const std::vector<int>& sigma) {
    detail::check_permutation(sigma, p.size(), "permute_problem");
    const int n = p.size();
    RankingProblem out;
    out.roster = p.roster;
    out.r.resize(p.r.size());
    out.m.resize(p.m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.r[sigma[i] * n + sigma[j]] = p.r[i * n + j];
            out.m[sigma[i] * n + sigma[j]] = p.m[i * n + j];
        }
    return out;
}

/// Remap round labels: a round-p record gets label sigma[p-1] (1-based image).
inline Tournament permute_rounds(const Tournament& t, const std::vector<int>& sigma) {
    std::vector<int> zero_based(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) zero_based[k] = sigma[k] - 1;
    detail::check_permutation(zero_based, t.rounds, "permute_rounds");
    std::vector<MatchRecord> ms = t.matches;
    for (auto& m : ms) m.round = sigma[m.round - 1];
    detail::sort_matches(ms);
    Tournament out;
    out.roster = t.roster;
    out.rounds = t.rounds;
    out.matches = std::move(ms);
    return out;
}

// ---------------------------------------------------------------------------
// Opponent multisets (Def. of O_i and O_i^(p))
// ---------------------------------------------------------------------------

struct OpponentEntry {
    int round = 1;
    int opponent = 0;
    Rational value;  // t_{owner,opponent} in that round

    friend bool operator==(const OpponentEntry& a, const OpponentEntry& b) {
        return a.round == b.round && a.opponent == b.opponent && a.value == b.value;
    }
};

/// Opponents of one player with multiplicity m_ij, each entry carrying the
/// match value from the owner's perspective. Entries are ordered by
/// (round, opponent, value) so downstream pairings are reproducible.
struct OpponentMultiset {
    int owner = 0;
    std::vector<OpponentEntry> entries;
};

inline OpponentMultiset opponent_multiset(const Tournament& t, int player,
                                          std::optional<int> round = std::nullopt) {
    if (player < 0 || player >= t.roster.size())
        throw std::invalid_argument("opponent_multiset: unknown player");
    if (round && (*round < 1 || *round > t.rounds))
        throw std::invalid_argument("opponent_multiset: unknown round");
    OpponentMultiset out;
    out.owner = player;
    for (const auto& m : t.matches) {
        if (round && m.round != *round) continue;
        if (m.i == player)
            out.entries.push_back(OpponentEntry{m.round, m.j, m.value});
        else if (m.j == player)
            out.entries.push_back(OpponentEntry{m.round, m.i, Rational(1) - m.value});
    }
    // matches are already (round, i, j)-sorted; re-sort by (round, opponent, value)
    std::sort(out.entries.begin(), out.entries.end(),
              [](const OpponentEntry& a, const OpponentEntry& b) {
                  if (a.round != b.round) return a.round < b.round;
                  if (a.opponent != b.opponent) return a.opponent < b.opponent;
                  return a.value < b.value;
              });
    return out;
}

}  // namespace tourank
