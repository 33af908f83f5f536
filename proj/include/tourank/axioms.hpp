#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tourank/core.hpp"
#include "tourank/methods.hpp"

namespace tourank {

enum class Status { PASS, FAIL, INAPPLICABLE };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::PASS: return "PASS";
        case Status::FAIL: return "FAIL";
        default: return "INAPPLICABLE";
    }
}

/// Ordered key:value payload; field order is part of the format so verdicts
/// diff cleanly.
struct Witness {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    bool empty() const { return fields.empty(); }
    std::string str() const {
        std::string out;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) out += ';';
            out += fields[k].first + ":" + fields[k].second;
        }
        return out;
    }
    std::optional<std::string> get(std::string_view key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return v;
        return std::nullopt;
    }
};

struct AxiomVerdict {
    std::string axiom;
    std::string method;
    Status status = Status::PASS;
    Witness witness;

    /// Line-keyed record: axiom= method= status= witness=
    std::string serialize() const {
        std::string out = "axiom=" + axiom + " method=" + method +
                          " status=" + to_string(status) + " witness=";
        out += witness.empty() ? "-" : witness.str();
        return out;
    }
};

// ---------------------------------------------------------------------------
// Self-consistency dominance certificates
// ---------------------------------------------------------------------------

enum class DomStrength { none, weak, strict };

inline const char* to_string(DomStrength s) {
    switch (s) {
        case DomStrength::none: return "none";
        case DomStrength::weak: return "weak";
        default: return "strict";
    }
}

/// One round's bijection O_i^(p) -> O_j^(p). round == 0 means the pooled
/// (rounds ignored) mode.
struct RoundPairing {
    int round = 0;
    std::vector<std::pair<OpponentEntry, OpponentEntry>> pairs;
};

struct StrictEdge {
    int round = 0;
    OpponentEntry k;  // entry of O_i
    OpponentEntry l;  // entry of O_j
};

/// Witness for the self-consistency premise: a bijection family pairing
/// X_i's matches with X_j's so that every pair has t_ik >= t_jl and
/// s_k >= s_l, plus one strict comparison when strength is strict.
struct DominanceCertificate {
    int i = 0;
    int j = 0;
    bool respect_rounds = true;
    DomStrength strength = DomStrength::none;
    std::vector<RoundPairing> bijections;
    std::optional<StrictEdge> strict_witness;

    std::string str(const Roster& roster) const {
        std::ostringstream out;
        out << to_string(strength);
        for (const auto& rp : bijections) {
            out << ';' << (rp.round == 0 ? std::string("all") : "r" + std::to_string(rp.round))
                << ":[";
            for (std::size_t k = 0; k < rp.pairs.size(); ++k) {
                if (k) out << ',';
                out << entry_str(roster, rp.pairs[k].first) << "->"
                    << entry_str(roster, rp.pairs[k].second);
            }
            out << ']';
        }
        if (strict_witness) {
            out << ";strict_edge:"
                << (strict_witness->round == 0 ? std::string("all")
                                               : "r" + std::to_string(strict_witness->round))
                << ":" << entry_str(roster, strict_witness->k) << "->"
                << entry_str(roster, strict_witness->l);
        }
        return out.str();
    }

private:
    std::string entry_str(const Roster& roster, const OpponentEntry& e) const {
        if (respect_rounds) return roster.label(e.opponent);
        return roster.label(e.opponent) + "@" + std::to_string(e.round);
    }
};

namespace detail {

/// Augmenting-path test: can the left vertices without a pinned partner all
/// be matched, avoiding the pinned rights?
inline bool matching_completes(const std::vector<std::vector<int>>& adj, int n_right,
                               const std::vector<int>& pinned) {
    std::vector<char> banned(n_right, 0);
    for (int b : pinned)
        if (b >= 0) banned[b] = 1;
    std::vector<int> match_right(n_right, -1);
    auto augment = [&](auto&& self, int a, std::vector<char>& visited) -> bool {
        for (int b : adj[a]) {
            if (banned[b] || visited[b]) continue;
            visited[b] = 1;
            if (match_right[b] < 0 || self(self, match_right[b], visited)) {
                match_right[b] = a;
                return true;
            }
        }
        return false;
    };
    for (int a = 0; a < static_cast<int>(adj.size()); ++a) {
        if (pinned[a] >= 0) continue;
        std::vector<char> visited(n_right, 0);
        if (!augment(augment, a, visited)) return false;
    }
    return true;
}

/// Lexicographically first perfect matching: left entries in index order
/// each take the smallest right entry that still allows the rest to match.
/// `forced` pins one edge up front (it must be present in the adjacency).
inline std::optional<std::vector<int>> lex_first_matching(
    const std::vector<std::vector<int>>& adj, int n_right,
    std::optional<std::pair<int, int>> forced = std::nullopt) {
    const int n_left = static_cast<int>(adj.size());
    std::vector<int> pinned(n_left, -1);
    if (forced) {
        const auto& row = adj[forced->first];
        if (std::find(row.begin(), row.end(), forced->second) == row.end())
            return std::nullopt;
        pinned[forced->first] = forced->second;
    }
    if (!matching_completes(adj, n_right, pinned)) return std::nullopt;
    for (int a = 0; a < n_left; ++a) {
        if (pinned[a] >= 0) continue;
        for (int b : adj[a]) {
            if (std::find(pinned.begin(), pinned.end(), b) != pinned.end()) continue;
            pinned[a] = b;
            if (matching_completes(adj, n_right, pinned)) break;
            pinned[a] = -1;
        }
        if (pinned[a] < 0) return std::nullopt;  // cannot happen after the pre-check
    }
    return pinned;
}

struct DomGroup {
    int round = 0;  // 0 in pooled mode
    std::vector<OpponentEntry> left;   // entries of O_i
    std::vector<OpponentEntry> right;  // entries of O_j
};

/// Group the opponent multisets by round (or pool them); empty if the
/// premise is structurally unsatisfiable because some group's sizes differ.
inline std::optional<std::vector<DomGroup>> dominance_groups(const Tournament& t, int i,
                                                             int j, bool respect_rounds) {
    OpponentMultiset oi = opponent_multiset(t, i);
    OpponentMultiset oj = opponent_multiset(t, j);
    std::vector<DomGroup> groups;
    if (respect_rounds) {
        for (int p = 1; p <= t.rounds; ++p) {
            DomGroup g;
            g.round = p;
            for (const auto& e : oi.entries)
                if (e.round == p) g.left.push_back(e);
            for (const auto& e : oj.entries)
                if (e.round == p) g.right.push_back(e);
            if (g.left.size() != g.right.size()) return std::nullopt;
            if (!g.left.empty()) groups.push_back(std::move(g));
        }
    } else {
        DomGroup g;
        g.round = 0;
        g.left = oi.entries;
        g.right = oj.entries;
        if (g.left.size() != g.right.size()) return std::nullopt;
        if (!g.left.empty()) groups.push_back(std::move(g));
    }
    return groups;
}

inline bool dom_edge_ok(const ScoreVector& s, const OpponentEntry& k, const OpponentEntry& l) {
    if (k.value < l.value) return false;
    return s.compare_values(s.values[k.opponent], s.values[l.opponent]) != Ord::lt;
}

inline bool dom_edge_strict(const ScoreVector& s, const OpponentEntry& k,
                            const OpponentEntry& l) {
    if (k.value > l.value) return true;
    return s.compare_values(s.values[k.opponent], s.values[l.opponent]) == Ord::gt;
}

inline std::vector<std::vector<int>> build_adjacency(const DomGroup& g, const ScoreVector& s) {
    std::vector<std::vector<int>> adj(g.left.size());
    for (int a = 0; a < static_cast<int>(g.left.size()); ++a)
        for (int b = 0; b < static_cast<int>(g.right.size()); ++b)
            if (dom_edge_ok(s, g.left[a], g.right[b])) adj[a].push_back(b);
    return adj;
}

inline RoundPairing pairing_from(const DomGroup& g, const std::vector<int>& matching) {
    RoundPairing rp;
    rp.round = g.round;
    for (int a = 0; a < static_cast<int>(g.left.size()); ++a)
        rp.pairs.emplace_back(g.left[a], g.right[matching[a]]);
    return rp;
}

}  // namespace detail

/// Decide whether X_i dominates X_j under score vector s, in the sense of the
/// self-consistency premise. Feasibility per group is a bipartite perfect
/// matching over the edge predicate t_ik >= t_jl and s_k >= s_l; strictness
/// is decided by forcing each strict edge in turn and re-testing. The
/// returned bijections always satisfy the edge predicate.
inline DominanceCertificate sc_dominance(const Tournament& t, const ScoreVector& s, int i,
                                         int j, bool respect_rounds = true) {
    if (i == j) throw std::invalid_argument("sc_dominance: players must differ");
    DominanceCertificate cert;
    cert.i = i;
    cert.j = j;
    cert.respect_rounds = respect_rounds;

    auto groups = detail::dominance_groups(t, i, j, respect_rounds);
    if (!groups) return cert;  // size mismatch: premise unsatisfiable

    std::vector<std::vector<std::vector<int>>> adjacency;
    adjacency.reserve(groups->size());
    for (std::size_t gi = 0; gi < groups->size(); ++gi) {
        adjacency.push_back(detail::build_adjacency((*groups)[gi], s));
        auto matching = detail::lex_first_matching(adjacency.back(),
                                                   (*groups)[gi].right.size());
        if (!matching) {  // no feasible bijection family
            cert.bijections.clear();
            return cert;
        }
        cert.bijections.push_back(detail::pairing_from((*groups)[gi], *matching));
    }
    cert.strength = DomStrength::weak;

    // Strictness: the first strict edge (group, left, right order) that still
    // admits a perfect matching of its group becomes the witness.
    for (std::size_t gi = 0; gi < groups->size(); ++gi) {
        const auto& g = (*groups)[gi];
        for (int a = 0; a < static_cast<int>(g.left.size()); ++a) {
            for (int b = 0; b < static_cast<int>(g.right.size()); ++b) {
                if (!detail::dom_edge_ok(s, g.left[a], g.right[b])) continue;
                if (!detail::dom_edge_strict(s, g.left[a], g.right[b])) continue;
                auto forced = detail::lex_first_matching(adjacency[gi], g.right.size(),
                                                         std::make_pair(a, b));
                if (!forced) continue;
                cert.strength = DomStrength::strict;
                cert.strict_witness = StrictEdge{g.round, g.left[a], g.right[b]};
                cert.bijections[gi] = detail::pairing_from(g, *forced);
                return cert;
            }
        }
    }
    return cert;
}

/// Exhaustive oracle for sc_dominance: enumerates every bijection family per
/// group (the groups are independent). Certificate semantics are identical;
/// group sizes are capped at 7 to bound the factorial enumeration.
inline DominanceCertificate sc_dominance_bruteforce(const Tournament& t,
                                                    const ScoreVector& s, int i, int j,
                                                    bool respect_rounds = true) {
    if (i == j) throw std::invalid_argument("sc_dominance_bruteforce: players must differ");
    DominanceCertificate cert;
    cert.i = i;
    cert.j = j;
    cert.respect_rounds = respect_rounds;

    auto groups = detail::dominance_groups(t, i, j, respect_rounds);
    if (!groups) return cert;

    struct GroupScan {
        std::vector<int> first_valid;            // right indices in left order
        std::optional<std::vector<int>> strict;  // first valid perm containing a strict edge
    };
    std::vector<GroupScan> scans;
    for (const auto& g : *groups) {
        const int sz = static_cast<int>(g.left.size());
        if (sz > 7)
            throw std::invalid_argument("sc_dominance_bruteforce: multiset size above 7");
        std::vector<int> perm(sz);
        std::iota(perm.begin(), perm.end(), 0);
        GroupScan scan;
        bool any = false;
        do {
            bool ok = true, strict = false;
            for (int a = 0; a < sz && ok; ++a) {
                if (!detail::dom_edge_ok(s, g.left[a], g.right[perm[a]])) ok = false;
                else if (detail::dom_edge_strict(s, g.left[a], g.right[perm[a]])) strict = true;
            }
            if (!ok) continue;
            if (!any) {
                any = true;
                scan.first_valid = perm;
            }
            if (strict && !scan.strict) scan.strict = perm;
            if (scan.strict) break;  // strongest outcome for this group settled
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!any) return cert;  // this group kills every family
        scans.push_back(std::move(scan));
    }
    cert.strength = DomStrength::weak;
    for (std::size_t gi = 0; gi < groups->size(); ++gi) {
        const auto& g = (*groups)[gi];
        RoundPairing rp;
        rp.round = g.round;
        for (int a = 0; a < static_cast<int>(g.left.size()); ++a)
            rp.pairs.emplace_back(g.left[a], g.right[scans[gi].first_valid[a]]);
        cert.bijections.push_back(std::move(rp));
    }
    for (std::size_t gi = 0; gi < groups->size(); ++gi) {
        if (!scans[gi].strict) continue;
        const auto& g = (*groups)[gi];
        const auto& perm = *scans[gi].strict;
        cert.strength = DomStrength::strict;
        cert.bijections[gi].pairs.clear();
        for (int a = 0; a < static_cast<int>(g.left.size()); ++a) {
            cert.bijections[gi].pairs.emplace_back(g.left[a], g.right[perm[a]]);
            if (!cert.strict_witness &&
                detail::dom_edge_strict(s, g.left[a], g.right[perm[a]]))
                cert.strict_witness = StrictEdge{g.round, g.left[a], g.right[perm[a]]};
        }
        break;
    }
    return cert;
}

/// Re-verify a certificate edge by edge against the tournament and scores:
/// bijection completeness per group, the edge predicate on every pair, and a
/// valid strict edge iff strength is strict. Certificates with strength none
/// verify trivially (they claim nothing).
inline bool verify_certificate(const Tournament& t, const ScoreVector& s,
                               const DominanceCertificate& cert) {
    if (cert.strength == DomStrength::none)
        return cert.bijections.empty() && !cert.strict_witness;
    auto groups = detail::dominance_groups(t, cert.i, cert.j, cert.respect_rounds);
    if (!groups) return false;
    if (groups->size() != cert.bijections.size()) return false;
    auto entry_key = [](const OpponentEntry& e) {
        return std::make_pair(e.round, e.opponent);
    };
    for (std::size_t gi = 0; gi < groups->size(); ++gi) {
        const auto& g = (*groups)[gi];
        const auto& rp = cert.bijections[gi];
        if (rp.round != g.round || rp.pairs.size() != g.left.size()) return false;
        std::vector<std::pair<int, int>> lefts, rights, gl, gr;
        for (const auto& [k, l] : rp.pairs) {
            if (!detail::dom_edge_ok(s, k, l)) return false;
            lefts.push_back(entry_key(k));
            rights.push_back(entry_key(l));
        }
        for (const auto& e : g.left) gl.push_back(entry_key(e));
        for (const auto& e : g.right) gr.push_back(entry_key(e));
        std::sort(lefts.begin(), lefts.end());
        std::sort(rights.begin(), rights.end());
        std::sort(gl.begin(), gl.end());
        std::sort(gr.begin(), gr.end());
        if (lefts != gl || rights != gr) return false;
    }
    if (cert.strength == DomStrength::strict) {
        if (!cert.strict_witness) return false;
        const auto& sw = *cert.strict_witness;
        if (!detail::dom_edge_strict(s, sw.k, sw.l)) return false;
        bool found = false;
        for (const auto& rp : cert.bijections)
            for (const auto& [k, l] : rp.pairs)
                if (rp.round == sw.round && entry_key(k) == entry_key(sw.k) &&
                    entry_key(l) == entry_key(sw.l))
                    found = true;
        if (!found) return false;
    } else if (cert.strict_witness) {
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Axiom checkers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string pair_str(const Roster& roster, int i, int j) {
    return "(" + roster.label(i) + "," + roster.label(j) + ")";
}

inline std::string score_pair_str(const ScoreVector& s, int i, int j) {
    return "(" + s.values[i].str() + "," + s.values[j].str() + ")";
}

inline std::string sigma_str(const Roster& roster, const std::vector<int>& sigma) {
    std::string out = "(";
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (k) out += ',';
        out += roster.label(sigma[k]);
    }
    return out + ")";
}

inline void add_note(AxiomVerdict& v, const ScoreVector& s) {
    if (!s.note.empty()) v.witness.add("note", s.note);
}

}  // namespace detail

/// SYM: an all-draw results matrix (R = O) forces a flat ranking.
inline AxiomVerdict check_sym(const Method& method, const RankingProblem& p) {
    AxiomVerdict v{"sym", method.name(), Status::PASS, {}};
    const int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!p.R(i, j).is_zero()) {
                v.status = Status::INAPPLICABLE;
                v.witness.add("precondition", "R!=O at " + detail::pair_str(p.roster, i, j));
                return v;
            }
    ScoreVector s = method(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!s.tie(i, j)) {
                v.status = Status::FAIL;
                v.witness.add("pair", detail::pair_str(p.roster, i, j));
                v.witness.add("scores", detail::score_pair_str(s, i, j));
                detail::add_note(v, s);
                return v;
            }
    return v;
}

/// INV: f_i(N,R,M) >= f_j(N,R,M) iff f_i(N,-R,M) <= f_j(N,-R,M), over all
/// ordered pairs.
inline AxiomVerdict check_inv(const Method& method, const RankingProblem& p) {
    AxiomVerdict v{"inv", method.name(), Status::PASS, {}};
    ScoreVector s = method(p);
    ScoreVector sn = method(negate(p));
    const int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            bool geq = s.compare(i, j) != Ord::lt;
            bool leq_neg = sn.compare(i, j) != Ord::gt;
            if (geq != leq_neg) {
                v.status = Status::FAIL;
                v.witness.add("pair", detail::pair_str(p.roster, i, j));
                v.witness.add("scores", detail::score_pair_str(s, i, j));
                v.witness.add("negated_scores", detail::score_pair_str(sn, i, j));
                detail::add_note(v, s);
                return v;
            }
        }
    return v;
}

/// IIM: problems identical except in one pair slot (k, l); the pairwise
/// ranking of every (i, j) disjoint from {k, l} must agree between them.
/// Throws when the slot precondition fails or n < 4.
inline AxiomVerdict check_iim(const Method& method, const RankingProblem& p,
                              const RankingProblem& q) {
    if (p.roster != q.roster)
        throw std::invalid_argument("check_iim: roster mismatch");
    const int n = p.size();
    if (n < 4) throw std::invalid_argument("check_iim: needs at least 4 players");
    int sk = -1, sl = -1, diffs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (p.R(i, j) != q.R(i, j) || p.M(i, j) != q.M(i, j)) {
                ++diffs;
                sk = i;
                sl = j;
            }
    if (diffs != 1)
        throw std::invalid_argument("check_iim: problems must differ in exactly one slot (" +
                                    std::to_string(diffs) + " differ)");
    AxiomVerdict v{"iim", method.name(), Status::PASS, {}};
    ScoreVector sp = method(p);
    ScoreVector sq = method(q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || i == sk || i == sl || j == sk || j == sl) continue;
            bool geq_p = sp.compare(i, j) != Ord::lt;
            bool geq_q = sq.compare(i, j) != Ord::lt;
            if (geq_p != geq_q) {
                v.status = Status::FAIL;
                v.witness.add("pair", detail::pair_str(p.roster, i, j));
                v.witness.add("slot", detail::pair_str(p.roster, sk, sl));
                v.witness.add("scores", detail::score_pair_str(sp, i, j));
                v.witness.add("edited_scores", detail::score_pair_str(sq, i, j));
                return v;
            }
        }
    return v;
}

namespace detail {

inline bool equal_match_counts(const RankingProblem& p) {
    const int n = p.size();
    long long first = 0;
    for (int j = 0; j < n; ++j) first += p.M(0, j);
    for (int i = 1; i < n; ++i) {
        long long total = 0;
        for (int j = 0; j < n; ++j) total += p.M(i, j);
        if (total != first) return false;
    }
    return true;
}

}  // namespace detail

/// OP / SOP: pairwise rankings agreed on by both summands survive in the sum,
/// strictly when strict in either. strong=false demands equal per-player
/// match counts within each summand and is INAPPLICABLE otherwise;
/// strong=true (SOP) has no precondition.
inline AxiomVerdict check_op(const Method& method, const RankingProblem& a,
                             const RankingProblem& b, bool strong) {
    AxiomVerdict v{strong ? "sop" : "op", method.name(), Status::PASS, {}};
    if (!strong && (!detail::equal_match_counts(a) || !detail::equal_match_counts(b))) {
        v.status = Status::INAPPLICABLE;
        v.witness.add("precondition", "unequal per-player match counts in a summand");
        return v;
    }
    RankingProblem sum = sum_problems(a, b);  // throws on roster mismatch
    ScoreVector sa = method(a);
    ScoreVector sb = method(b);
    ScoreVector ss = method(sum);
    const int n = a.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Ord oa = sa.compare(i, j);
            Ord ob = sb.compare(i, j);
            if (oa == Ord::lt || ob == Ord::lt) continue;
            Ord os = ss.compare(i, j);
            bool strict_premise = oa == Ord::gt || ob == Ord::gt;
            if (os == Ord::lt || (strict_premise && os != Ord::gt)) {
                v.status = Status::FAIL;
                v.witness.add("pair", detail::pair_str(a.roster, i, j));
                v.witness.add("a_scores", detail::score_pair_str(sa, i, j));
                v.witness.add("b_scores", detail::score_pair_str(sb, i, j));
                v.witness.add("sum_scores", detail::score_pair_str(ss, i, j));
                return v;
            }
        }
    return v;
}

/// ANO: permuting the round labels leaves every score unchanged. Aggregate
/// methods satisfy this by construction; the comparison still runs and the
/// verdict carries a note.
inline AxiomVerdict check_ano(const Method& method, const Tournament& t,
                              const std::vector<int>& sigma_rounds) {
    AxiomVerdict v{"ano", method.name(), Status::PASS, {}};
    ScoreVector s = method(t);
    ScoreVector s2 = method(permute_rounds(t, sigma_rounds));
    for (int i = 0; i < t.roster.size(); ++i)
        if (!scores_tie(s, i, s2, i)) {
            v.status = Status::FAIL;
            v.witness.add("player", t.roster.label(i));
            v.witness.add("scores", "(" + s.values[i].str() + "," + s2.values[i].str() + ")");
            return v;
        }
    if (method.kind() == MethodKind::aggregate)
        v.witness.add("note", "aggregate method ignores round labels");
    return v;
}

namespace detail {

inline AxiomVerdict neu_verdict(const Method& method, const Roster& roster,
                                const ScoreVector& s, const ScoreVector& s2,
                                const std::vector<int>& sigma) {
    AxiomVerdict v{"neu", method.name(), Status::PASS, {}};
    for (int i = 0; i < roster.size(); ++i)
        if (!scores_tie(s, i, s2, sigma[i])) {
            v.status = Status::FAIL;
            v.witness.add("player", roster.label(i));
            v.witness.add("image", roster.label(sigma[i]));
            v.witness.add("scores",
                          "(" + s.values[i].str() + "," + s2.values[sigma[i]].str() + ")");
            v.witness.add("sigma", sigma_str(roster, sigma));
            return v;
        }
    return v;
}

}  // namespace detail

/// NEU at the aggregated-problem level: for aggregate methods this decides
/// the same verdict as check_neu on any tournament with that aggregate, and
/// it is what corpus sweeps run to avoid re-aggregating per permutation.
inline AxiomVerdict check_neu_problem(const Method& method, const RankingProblem& p,
                                      const std::vector<int>& sigma) {
    detail::check_permutation(sigma, p.size(), "check_neu");
    ScoreVector s = method(p);
    ScoreVector s2 = method(permute_problem(p, sigma));
    return detail::neu_verdict(method, p.roster, s, s2, sigma);
}

/// NEU: g_i(N,T) = g_sigma(i)(sigma(N),T) for the given player permutation.
inline AxiomVerdict check_neu(const Method& method, const Tournament& t,
                              const std::vector<int>& sigma) {
    detail::check_permutation(sigma, t.roster.size(), "check_neu");
    if (method.kind() == MethodKind::aggregate)
        return check_neu_problem(method, aggregate(t), sigma);
    ScoreVector s = method(t);
    ScoreVector s2 = method(permute_players(t, sigma));
    return detail::neu_verdict(method, t.roster, s, s2, sigma);
}

/// SC: whenever sc_dominance certifies weak dominance of i over j the method
/// must not rank i below j, and strict dominance forces a strictly higher
/// rank. The FAIL witness embeds the replayable certificate.
inline AxiomVerdict check_sc(const Method& method, const Tournament& t,
                             bool respect_rounds = true) {
    AxiomVerdict v{"sc", method.name(), Status::PASS, {}};
    ScoreVector s = method(t);
    const int n = t.roster.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            DominanceCertificate cert = sc_dominance(t, s, i, j, respect_rounds);
            if (cert.strength == DomStrength::none) continue;
            Ord o = s.compare(i, j);
            bool bad = cert.strength == DomStrength::strict ? o != Ord::gt : o == Ord::lt;
            if (bad) {
                v.status = Status::FAIL;
                v.witness.add("pair", detail::pair_str(t.roster, i, j));
                v.witness.add("scores", detail::score_pair_str(s, i, j));
                v.witness.add("cert", cert.str(t.roster));
                v.witness.add("respect_rounds", respect_rounds ? "true" : "false");
                detail::add_note(v, s);
                return v;
            }
        }
    return v;
}

}  // namespace tourank
