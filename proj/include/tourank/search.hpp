#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "tourank/axioms.hpp"
#include "tourank/core.hpp"
#include "tourank/methods.hpp"

namespace tourank {

enum class Axiom { ano, neu, sym, inv, iim, op, sop, sc };

inline const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::ano: return "ano";
        case Axiom::neu: return "neu";
        case Axiom::sym: return "sym";
        case Axiom::inv: return "inv";
        case Axiom::iim: return "iim";
        case Axiom::op: return "op";
        case Axiom::sop: return "sop";
        default: return "sc";
    }
}

inline std::optional<Axiom> axiom_from_name(std::string_view name) {
    for (Axiom a : {Axiom::ano, Axiom::neu, Axiom::sym, Axiom::inv, Axiom::iim, Axiom::op,
                    Axiom::sop, Axiom::sc})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

inline std::vector<Rational> default_alphabet() {
    return {Rational(0), Rational(1, 2), Rational(1)};
}

enum class Schedule { round_robin_rounds, free };

struct GeneratorConfig {
    int n = 4;
    int rounds = 1;
    std::vector<Rational> alphabet = default_alphabet();
    std::uint64_t seed = 0;
    Schedule schedule = Schedule::free;
};

namespace detail {

/// Bounded draws use plain modulo reduction: the tiny bias is irrelevant for
/// test-instance generation and the output is identical on every platform
/// (mt19937_64 is pinned by the standard, distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t k) { return eng_() % k; }

private:
    std::mt19937_64 eng_;
};

inline Roster default_roster(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
    return Roster(std::move(labels));
}

}  // namespace detail

/// Deterministic random tournament. round_robin_rounds pairs up all players
/// in every round (n must be even) so that everybody plays exactly `rounds`
/// matches; free mode draws each pair slot from {absent} + alphabet.
inline Tournament gen_random(const GeneratorConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("gen_random: n must be positive");
    if (cfg.rounds < 1) throw std::invalid_argument("gen_random: rounds must be positive");
    if (cfg.alphabet.empty()) throw std::invalid_argument("gen_random: empty alphabet");
    if (cfg.schedule == Schedule::round_robin_rounds && cfg.n % 2 != 0)
        throw std::invalid_argument("gen_random: round-robin-rounds needs an even player count");
    detail::Rng rng(cfg.seed);
    std::vector<MatchRecord> matches;
    if (cfg.schedule == Schedule::round_robin_rounds) {
        std::vector<int> order(cfg.n);
        for (int p = 1; p <= cfg.rounds; ++p) {
            for (int i = 0; i < cfg.n; ++i) order[i] = i;
            for (int i = cfg.n - 1; i > 0; --i)
                std::swap(order[i], order[rng.below(i + 1)]);
            for (int k = 0; k + 1 < cfg.n; k += 2) {
                Rational v = cfg.alphabet[rng.below(cfg.alphabet.size())];
                matches.push_back(MatchRecord{p, order[k], order[k + 1], v});
            }
        }
    } else {
        for (int p = 1; p <= cfg.rounds; ++p)
            for (int i = 0; i < cfg.n; ++i)
                for (int j = i + 1; j < cfg.n; ++j) {
                    std::uint64_t d = rng.below(cfg.alphabet.size() + 1);
                    if (d == 0) continue;
                    matches.push_back(MatchRecord{p, i, j, cfg.alphabet[d - 1]});
                }
    }
    Tournament t = make_tournament(detail::default_roster(cfg.n), std::move(matches));
    t.rounds = cfg.rounds;  // keep empty rounds in the grid
    return t;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of small tournaments
// ---------------------------------------------------------------------------

class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& needed, unsigned long long cap)
        : std::runtime_error("enumeration needs " + needed + " configurations, cap is " +
                             std::to_string(cap)),
          needed_(needed) {}
    const std::string& needed() const { return needed_; }

private:
    std::string needed_;
};

/// Duplicate-free stream over all assignments of {absent} + alphabet to each
/// unordered pair per round, indexable by position. Slots are ordered
/// (round, pair-lex), most significant first, so index 0 is the empty
/// tournament and enumeration order is lexicographic in the digit vector.
class SmallEnumerator {
public:
    SmallEnumerator(int n, int rounds, std::vector<Rational> alphabet,
                    unsigned long long cap = 10'000'000ULL)
        : n_(n), rounds_(rounds), alphabet_(std::move(alphabet)) {
        if (n_ < 1 || rounds_ < 1)
            throw std::invalid_argument("SmallEnumerator: n and rounds must be positive");
        if (alphabet_.empty()) throw std::invalid_argument("SmallEnumerator: empty alphabet");
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) pairs_.emplace_back(i, j);
        const unsigned long long base = alphabet_.size() + 1;
        const std::size_t slots = pairs_.size() * static_cast<std::size_t>(rounds_);
        unsigned __int128 total = 1;
        for (std::size_t s = 0; s < slots; ++s) {
            total *= base;
            if (total > cap) {
                // finish the product in 128 bits for the error message
                unsigned __int128 needed = total;
                for (std::size_t rest = s + 1; rest < slots; ++rest) {
                    if (needed > (static_cast<unsigned __int128>(1) << 100)) break;
                    needed *= base;
                }
                throw CapExceeded(u128_str(needed), cap);
            }
        }
        total_ = static_cast<unsigned long long>(total);
        roster_ = detail::default_roster(n_);
    }

    int players() const { return n_; }
    int rounds() const { return rounds_; }
    const std::vector<Rational>& alphabet() const { return alphabet_; }
    unsigned long long total() const { return total_; }
    std::size_t slot_count() const { return pairs_.size() * static_cast<std::size_t>(rounds_); }
    std::size_t slots_per_round() const { return pairs_.size(); }
    // slots run round-major: slot s covers pair s % pairs in round s / pairs + 1
    std::pair<int, int> slot_pair(std::size_t s) const { return pairs_[s % pairs_.size()]; }
    int slot_round(std::size_t s) const { return static_cast<int>(s / pairs_.size()) + 1; }

    /// Buffer with the roster pre-set; pass it to fill() repeatedly.
    Tournament make_buffer() const {
        Tournament t;
        t.roster = roster_;
        return t;
    }

    void decode_digits(unsigned long long index, std::vector<int>& digits) const {
        const unsigned long long base = alphabet_.size() + 1;
        digits.assign(slot_count(), 0);
        for (std::size_t s = slot_count(); s-- > 0;) {
            digits[s] = static_cast<int>(index % base);
            index /= base;
        }
    }

    /// digit 0 = absent, digit k = alphabet[k-1]; slots run round-major.
    /// The result always spans the full round grid: trailing rounds with no
    /// matches stay as empty rounds so derived OP/SOP pairs cover the
    /// (instance, empty half) cases.
    void fill_from_digits(const std::vector<int>& digits, Tournament& out) const {
        out.matches.clear();
        std::size_t s = 0;
        for (int p = 1; p <= rounds_; ++p)
            for (const auto& [i, j] : pairs_) {
                int d = digits[s++];
                if (d > 0) out.matches.push_back(MatchRecord{p, i, j, alphabet_[d - 1]});
            }
        out.rounds = rounds_;
    }

    void fill(unsigned long long index, std::vector<int>& digit_buf, Tournament& out) const {
        decode_digits(index, digit_buf);
        fill_from_digits(digit_buf, out);
    }

    Tournament at(unsigned long long index) const {
        Tournament t = make_buffer();
        std::vector<int> digits;
        fill(index, digits, t);
        return t;
    }

private:
    static std::string u128_str(unsigned __int128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return s;
    }

    int n_, rounds_;
    std::vector<Rational> alphabet_;
    std::vector<std::pair<int, int>> pairs_;
    unsigned long long total_ = 0;
    Roster roster_;
};

/// Materialize a whole corpus; intended for small configurations in tests.
inline std::vector<Tournament> enumerate_small(int n, int rounds,
                                               const std::vector<Rational>& alphabet,
                                               unsigned long long cap = 10'000'000ULL) {
    SmallEnumerator en(n, rounds, alphabet, cap);
    std::vector<Tournament> out;
    out.reserve(en.total());
    for (unsigned long long k = 0; k < en.total(); ++k) out.push_back(en.at(k));
    return out;
}

// ---------------------------------------------------------------------------
// Permutation generator sets (transpositions plus one long cycle)
// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> player_generators(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto sigma = identity;
            std::swap(sigma[i], sigma[j]);
            out.push_back(std::move(sigma));
        }
    if (n >= 3) {
        std::vector<int> cycle(n);
        for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
        out.push_back(std::move(cycle));
    }
    return out;
}

/// 1-based images over rounds 1..m.
inline std::vector<std::vector<int>> round_generators(int m) {
    std::vector<std::vector<int>> out;
    for (auto sigma : player_generators(m)) {
        for (int& v : sigma) ++v;
        out.push_back(std::move(sigma));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Falsification campaigns
// ---------------------------------------------------------------------------

enum class FalsifyOutcome { witness_found, corpus_exhausted };

inline const char* to_string(FalsifyOutcome o) {
    return o == FalsifyOutcome::witness_found ? "witness-found" : "corpus-exhausted";
}

/// A replayable FAIL: the verdict, the instance(s) it was produced from in
/// canonical file format, and auxiliary data (permutation, edited slot, ...).
struct FalsifyWitness {
    AxiomVerdict verdict;
    std::vector<std::string> instances;
    Witness aux;
};

struct FalsifyReport {
    std::string axiom;
    std::string method;
    FalsifyOutcome outcome = FalsifyOutcome::corpus_exhausted;
    std::optional<FalsifyWitness> witness;
    unsigned long long instances_tested = 0;
    unsigned long long violations = 0;  // counted only with exhaust_all
    long long elapsed_ms = 0;

    /// Verdict line (when a witness exists) followed by the summary line.
    std::string serialize() const {
        std::string out;
        if (witness) {
            out += witness->verdict.serialize();
            if (!witness->aux.empty()) out += " " + witness->aux.str();
            out += "\n";
        }
        out += "axiom=" + axiom + " method=" + method +
               " tested=" + std::to_string(instances_tested) +
               " elapsed_ms=" + std::to_string(elapsed_ms) +
               " outcome=" + to_string(outcome);
        return out;
    }
};

struct ExhaustiveCorpus {
    int n = 4;
    int rounds = 1;
    std::vector<Rational> alphabet = default_alphabet();
    unsigned long long cap = 10'000'000ULL;
};

struct RandomCorpus {
    GeneratorConfig config;
    std::uint64_t trials = 1000;
};

struct ExplicitCorpus {
    std::vector<Tournament> instances;
    std::vector<Rational> alphabet = default_alphabet();  // edit values for IIM
};

using CorpusSpec = std::variant<ExhaustiveCorpus, RandomCorpus, ExplicitCorpus>;

struct FalsifyOptions {
    bool exhaust_all = false;            // keep counting after the first FAIL
    int threads = 0;                     // 0 = hardware concurrency
    bool respect_rounds = true;          // SC mode
    std::optional<unsigned long long> budget;  // max base instances
};

namespace detail {

/// Exact per-pair canonical key for "same aggregated problem" dedup: the
/// sorted multiset of digits a pair received across rounds. Finer than
/// problem equality (so skipping duplicates is always sound) and computable
/// without rational arithmetic. Returns nullopt when the key would not fit
/// in 64 bits.
class DigitDeduper {
public:
    static std::optional<DigitDeduper> make(const SmallEnumerator& en) {
        DigitDeduper d;
        d.pairs_ = en.slots_per_round();
        d.rounds_ = en.rounds();
        d.base_ = static_cast<int>(en.alphabet().size()) + 1;
        std::size_t raw_states = 1;
        for (int p = 0; p < d.rounds_; ++p) {
            if (raw_states > (1u << 24)) return std::nullopt;
            raw_states *= d.base_;
        }
        d.table_.assign(raw_states, -1);
        std::unordered_map<std::string, int> ids;
        std::vector<int> tuple(d.rounds_, 0);
        for (std::size_t raw = 0; raw < raw_states; ++raw) {
            std::size_t v = raw;
            for (int p = d.rounds_ - 1; p >= 0; --p) {
                tuple[p] = static_cast<int>(v % d.base_);
                v /= d.base_;
            }
            std::vector<int> sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            std::string canon;
            for (int x : sorted) canon += static_cast<char>('0' + x);
            auto [it, fresh] = ids.emplace(canon, static_cast<int>(ids.size()));
            d.table_[raw] = it->second;
        }
        d.states_ = ids.size();
        unsigned __int128 span = 1;
        for (std::size_t p = 0; p < d.pairs_; ++p) {
            span *= d.states_;
            if (span > std::numeric_limits<std::uint64_t>::max() / 2) return std::nullopt;
        }
        return d;
    }

    std::uint64_t key(const std::vector<int>& digits) const {
        std::uint64_t k = 0;
        for (std::size_t pr = 0; pr < pairs_; ++pr) {
            std::size_t raw = 0;
            for (int p = 0; p < rounds_; ++p)
                raw = raw * base_ + static_cast<std::size_t>(digits[p * pairs_ + pr]);
            k = k * states_ + static_cast<std::uint64_t>(table_[raw]);
        }
        return k;
    }

    bool seen_before(const std::vector<int>& digits) {
        return !seen_.insert(key(digits)).second;
    }

private:
    std::size_t pairs_ = 0;
    int rounds_ = 0;
    int base_ = 2;
    std::size_t states_ = 0;
    std::vector<int> table_;
    std::unordered_set<std::uint64_t> seen_;
};

/// The first OP/SOP-violating ordered pair, shared between check_op and the
/// falsifier's cached sweep so the two can never disagree.
inline std::optional<std::pair<int, int>> op_violation(const ScoreVector& sa,
                                                       const ScoreVector& sb,
                                                       const ScoreVector& ss, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Ord oa = sa.compare(i, j);
            Ord ob = sb.compare(i, j);
            if (oa == Ord::lt || ob == Ord::lt) continue;
            Ord os = ss.compare(i, j);
            if (os == Ord::lt || ((oa == Ord::gt || ob == Ord::gt) && os != Ord::gt))
                return std::make_pair(i, j);
        }
    return std::nullopt;
}

/// Split a tournament with an even number of rounds into its two halves.
inline std::pair<Tournament, Tournament> split_by_rounds(const Tournament& t) {
    const int half = t.rounds / 2;
    Tournament a, b;
    a.roster = b.roster = t.roster;
    a.rounds = std::max(half, 1);
    b.rounds = std::max(t.rounds - half, 1);
    for (const auto& m : t.matches) {
        if (m.round <= half) {
            a.matches.push_back(m);
        } else {
            MatchRecord r = m;
            r.round -= half;
            b.matches.push_back(r);
        }
    }
    return {std::move(a), std::move(b)};
}

/// Single-slot edits of a tournament: every (round, pair) slot replaced by
/// every other state from {absent} + alphabet, in deterministic order.
inline std::vector<Tournament> single_slot_edits(const Tournament& t, int round, int i, int j,
                                                 const std::vector<Rational>& alphabet) {
    std::vector<Tournament> out;
    std::optional<Rational> current = match_value(t, round, i, j);
    auto build = [&](const std::optional<Rational>& v) {
        std::vector<MatchRecord> ms;
        for (const auto& m : t.matches)
            if (!(m.round == round && m.i == i && m.j == j)) ms.push_back(m);
        if (v) ms.push_back(MatchRecord{round, i, j, *v});
        Tournament e = make_tournament(t.roster, std::move(ms));
        // keep the original round span so the slot grid is unchanged
        e.rounds = std::max(e.rounds, t.rounds);
        return e;
    };
    if (current) out.push_back(build(std::nullopt));
    for (const auto& v : alphabet)
        if (!current || *current != v) out.push_back(build(v));
    return out;
}

struct InstanceHit {
    AxiomVerdict verdict;
    std::vector<std::string> instances;
    Witness aux;
};

/// Evaluates one base instance for one (method, axiom) pair; owns all the
/// scratch state a worker needs. `violations` accumulates in exhaust_all
/// mode; otherwise evaluation stops at the first FAIL. When the instance
/// comes from a SmallEnumerator the caller provides its digit vector, which
/// unlocks O(1) incremental IIM edits and per-half score caching for OP/SOP;
/// either way every reported verdict comes from the public checkers.
class InstanceEvaluator {
public:
    InstanceEvaluator(const Method& method, Axiom axiom, bool respect_rounds,
                      std::vector<Rational> edit_alphabet, bool exhaust_all,
                      int grid_rounds = 0)
        : method_(method),
          axiom_(axiom),
          respect_rounds_(respect_rounds),
          edit_alphabet_(std::move(edit_alphabet)),
          exhaust_all_(exhaust_all),
          grid_rounds_(grid_rounds) {}

    unsigned long long violations = 0;

    void set_digit_context(const SmallEnumerator* en, const std::vector<int>* digits) {
        enumerator_ = en;
        digits_ = digits;
    }

    std::optional<InstanceHit> evaluate(const Tournament& t) {
        switch (axiom_) {
            case Axiom::sym: {
                aggregate_into(t, p_);
                return from_verdict(check_sym(method_, p_), t);
            }
            case Axiom::inv: {
                aggregate_into(t, p_);
                return from_verdict(check_inv(method_, p_), t);
            }
            case Axiom::sc:
                return from_verdict(check_sc(method_, t, respect_rounds_), t);
            case Axiom::neu: {
                std::optional<InstanceHit> first;
                if (method_.kind() == MethodKind::aggregate) aggregate_into(t, p_);
                for (const auto& sigma : player_generators(t.roster.size())) {
                    AxiomVerdict v = method_.kind() == MethodKind::aggregate
                                         ? check_neu_problem(method_, p_, sigma)
                                         : check_neu(method_, t, sigma);
                    auto hit = from_verdict(std::move(v), t);
                    if (hit && !first) first = std::move(hit);
                    if (first && !exhaust_all_) return first;
                }
                return first;
            }
            case Axiom::ano: {
                std::optional<InstanceHit> first;
                for (const auto& sigma : round_generators(t.rounds)) {
                    auto hit = from_verdict(check_ano(method_, t, sigma), t);
                    if (hit && !first) first = std::move(hit);
                    if (first && !exhaust_all_) return first;
                }
                return first;
            }
            case Axiom::iim:
                if (t.roster.size() < 4) return std::nullopt;  // premise needs 4 players
                if (digit_context()) return iim_digits(t);
                return iim_generic(t);
            case Axiom::op:
            case Axiom::sop: {
                const bool strong = axiom_ == Axiom::sop;
                if (digit_context()) return op_digits(t, strong);
                if (t.rounds < 2 || t.rounds % 2 != 0) return std::nullopt;
                split_into(t);
                aggregate_into(ta_, pa_);
                aggregate_into(tb_, pb_);
                AxiomVerdict v = check_op(method_, pa_, pb_, strong);
                auto hit = from_verdict(std::move(v), ta_);
                if (hit) hit->instances.push_back(format_tournament(tb_));
                return hit;
            }
        }
        return std::nullopt;
    }

private:
    bool digit_context() const { return enumerator_ != nullptr && digits_ != nullptr; }

    std::optional<InstanceHit> from_verdict(AxiomVerdict v, const Tournament& base) {
        if (v.status != Status::FAIL) return std::nullopt;
        ++violations;
        InstanceHit hit;
        hit.verdict = std::move(v);
        hit.instances.push_back(format_tournament(base));
        return hit;
    }

    void split_into(const Tournament& t) {
        const int half = t.rounds / 2;
        if (ta_.roster != t.roster) ta_.roster = tb_.roster = t.roster;
        ta_.rounds = half;
        tb_.rounds = t.rounds - half;
        ta_.matches.clear();
        tb_.matches.clear();
        for (const auto& m : t.matches) {
            if (m.round <= half) {
                ta_.matches.push_back(m);
            } else {
                MatchRecord r = m;
                r.round -= half;
                tb_.matches.push_back(r);
            }
        }
    }

    // --- IIM over tournament-level edits (explicit and random corpora) ---
    std::optional<InstanceHit> iim_generic(const Tournament& t) {
        aggregate_into(t, p_);
        std::optional<InstanceHit> first;
        const int rounds = std::max(grid_rounds_, t.rounds);
        for (int round = 1; round <= rounds; ++round)
            for (int i = 0; i < t.roster.size(); ++i)
                for (int j = i + 1; j < t.roster.size(); ++j)
                    for (const auto& edited :
                         single_slot_edits(t, round, i, j, edit_alphabet_)) {
                        q_ = aggregate(edited);
                        auto hit = from_verdict(check_iim(method_, p_, q_), t);
                        if (hit) {
                            hit->instances.push_back(format_tournament(edited));
                            hit->aux.add("slot", "(" + t.roster.label(i) + "," +
                                                     t.roster.label(j) + ")@r" +
                                                     std::to_string(round));
                            if (!first) first = std::move(hit);
                            if (!exhaust_all_) return first;
                        }
                    }
        return first;
    }

    // --- IIM over digit-level edits: the edited problem differs from the
    // base by one pair slot, so it is built incrementally ---
    std::optional<InstanceHit> iim_digits(const Tournament& t) {
        const SmallEnumerator& en = *enumerator_;
        const std::vector<int>& digits = *digits_;
        const int n = t.roster.size();
        const int base = static_cast<int>(en.alphabet().size()) + 1;
        aggregate_into(t, p_);
        std::optional<InstanceHit> first;
        for (std::size_t s = 0; s < en.slot_count(); ++s) {
            auto [i, j] = en.slot_pair(s);
            const int old_digit = digits[s];
            for (int d = 0; d < base; ++d) {
                if (d == old_digit) continue;
                q_ = p_;
                apply_digit_delta(q_, i, j, old_digit, d, en.alphabet());
                auto hit = from_verdict(check_iim(method_, p_, q_), t);
                if (hit) {
                    edit_digits_ = digits;
                    edit_digits_[s] = d;
                    Tournament edited = en.make_buffer();
                    en.fill_from_digits(edit_digits_, edited);
                    hit->instances.push_back(format_tournament(edited));
                    hit->aux.add("slot", "(" + t.roster.label(i) + "," + t.roster.label(j) +
                                             ")@r" + std::to_string(en.slot_round(s)));
                    if (!first) first = std::move(hit);
                    if (!exhaust_all_) return first;
                }
            }
        }
        return first;
    }

    static void apply_digit_delta(RankingProblem& p, int i, int j, int old_digit,
                                  int new_digit, const std::vector<Rational>& alphabet) {
        const int n = p.size();
        Rational delta_r(0);
        long long delta_m = 0;
        if (old_digit > 0) {
            delta_r -= Rational(2) * alphabet[old_digit - 1] - Rational(1);
            delta_m -= 1;
        }
        if (new_digit > 0) {
            delta_r += Rational(2) * alphabet[new_digit - 1] - Rational(1);
            delta_m += 1;
        }
        p.r[i * n + j] += delta_r;
        p.r[j * n + i] -= delta_r;
        p.m[i * n + j] += delta_m;
        p.m[j * n + i] += delta_m;
    }

    // --- OP/SOP with per-half caching: each half of the round grid is
    // aggregated and scored once per distinct half-digit prefix ---
    struct CachedHalf {
        RankingProblem problem;
        ScoreVector scores;
        bool equal_counts = false;
    };

    std::optional<InstanceHit> op_digits(const Tournament& t, bool strong) {
        const SmallEnumerator& en = *enumerator_;
        if (en.rounds() < 2 || en.rounds() % 2 != 0) return std::nullopt;
        const std::vector<int>& digits = *digits_;
        const std::size_t half_slots = en.slot_count() / 2;
        const std::uint64_t base = en.alphabet().size() + 1;

        bool cacheable = half_slots * 64 > 0;
        std::uint64_t key_a = 0, key_b = 0;
        {
            // overflow guard: fall back to uncached evaluation on huge grids
            long double span = 1.0L;
            for (std::size_t s = 0; s < half_slots; ++s) span *= base;
            cacheable = span < 9.0e18L;
        }
        if (!cacheable) {
            split_into(t);
            aggregate_into(ta_, pa_);
            aggregate_into(tb_, pb_);
            AxiomVerdict v = check_op(method_, pa_, pb_, strong);
            auto hit = from_verdict(std::move(v), ta_);
            if (hit) hit->instances.push_back(format_tournament(tb_));
            return hit;
        }
        for (std::size_t s = 0; s < half_slots; ++s) key_a = key_a * base + digits[s];
        for (std::size_t s = half_slots; s < en.slot_count(); ++s)
            key_b = key_b * base + digits[s];

        const CachedHalf& a = cached_half(en, digits, 0, half_slots, key_a);
        const CachedHalf& b = cached_half(en, digits, half_slots, en.slot_count(), key_b);
        if (!strong && (!a.equal_counts || !b.equal_counts)) return std::nullopt;
        sum_into(a.problem, b.problem, psum_);
        ScoreVector ss = method_(psum_);
        auto violation =
            op_violation(a.scores, b.scores, ss, a.problem.size());
        if (!violation) return std::nullopt;
        // materialize the halves and reproduce the verdict through the checker
        split_into(t);
        AxiomVerdict v = check_op(method_, a.problem, b.problem, strong);
        auto hit = from_verdict(std::move(v), ta_);
        if (hit) hit->instances.push_back(format_tournament(tb_));
        return hit;
    }

    const CachedHalf& cached_half(const SmallEnumerator& en, const std::vector<int>& digits,
                                  std::size_t from, std::size_t to, std::uint64_t key) {
        auto it = half_cache_.find(key);
        if (it != half_cache_.end()) return it->second;
        CachedHalf entry;
        Tournament half = en.make_buffer();
        half.rounds = en.rounds() / 2;
        for (std::size_t s = from; s < to; ++s) {
            if (digits[s] == 0) continue;
            auto [i, j] = en.slot_pair(s);
            int round = en.slot_round(s) - static_cast<int>(from / en.slots_per_round());
            half.matches.push_back(MatchRecord{round, i, j, en.alphabet()[digits[s] - 1]});
        }
        aggregate_into(half, entry.problem);
        entry.scores = method_(entry.problem);
        entry.equal_counts = equal_match_counts(entry.problem);
        return half_cache_.emplace(key, std::move(entry)).first->second;
    }

    static void sum_into(const RankingProblem& a, const RankingProblem& b,
                         RankingProblem& out) {
        if (out.roster != a.roster) out.roster = a.roster;
        out.r.resize(a.r.size());
        out.m.resize(a.m.size());
        for (std::size_t k = 0; k < a.r.size(); ++k) out.r[k] = a.r[k] + b.r[k];
        for (std::size_t k = 0; k < a.m.size(); ++k) out.m[k] = a.m[k] + b.m[k];
    }

    const Method& method_;
    Axiom axiom_;
    bool respect_rounds_;
    std::vector<Rational> edit_alphabet_;
    bool exhaust_all_;
    int grid_rounds_;
    const SmallEnumerator* enumerator_ = nullptr;
    const std::vector<int>* digits_ = nullptr;
    RankingProblem p_, q_, pa_, pb_, psum_;
    Tournament ta_, tb_;
    std::vector<int> edit_digits_;
    std::unordered_map<std::uint64_t, CachedHalf> half_cache_;
};

}  // namespace detail

inline FalsifyReport falsify(const Method& method, Axiom axiom, const CorpusSpec& corpus,
                             FalsifyOptions opt = {}) {
    if (axiom == Axiom::ano && method.kind() != MethodKind::round_aware)
        throw std::invalid_argument(
            "falsify: anonymity campaigns need a round-aware method (aggregate methods "
            "satisfy it by construction)");

    const auto started = std::chrono::steady_clock::now();
    FalsifyReport report;
    report.axiom = to_string(axiom);
    report.method = method.name();

    std::vector<Rational> edit_alphabet = default_alphabet();
    if (const auto* ex = std::get_if<ExhaustiveCorpus>(&corpus)) edit_alphabet = ex->alphabet;
    if (const auto* rc = std::get_if<RandomCorpus>(&corpus)) edit_alphabet = rc->config.alphabet;
    if (const auto* xp = std::get_if<ExplicitCorpus>(&corpus)) edit_alphabet = xp->alphabet;

    // Sequential scan for explicit and random corpora (they are small); block
    // partitioned scan with a deterministic min-index reduction for
    // exhaustive corpora.
    if (const auto* xp = std::get_if<ExplicitCorpus>(&corpus)) {
        detail::InstanceEvaluator ev(method, axiom, opt.respect_rounds, edit_alphabet,
                                     opt.exhaust_all, 0);
        unsigned long long limit = xp->instances.size();
        if (opt.budget) limit = std::min<unsigned long long>(limit, *opt.budget);
        for (unsigned long long k = 0; k < limit; ++k) {
            auto hit = ev.evaluate(xp->instances[k]);
            ++report.instances_tested;
            if (hit && !report.witness) {
                report.outcome = FalsifyOutcome::witness_found;
                hit->aux.add("instance_index", std::to_string(k));
                report.witness = FalsifyWitness{std::move(hit->verdict),
                                                std::move(hit->instances), std::move(hit->aux)};
                if (!opt.exhaust_all) break;
            }
        }
        report.violations = ev.violations;
    } else if (const auto* rc = std::get_if<RandomCorpus>(&corpus)) {
        detail::InstanceEvaluator ev(method, axiom, opt.respect_rounds, edit_alphabet,
                                     opt.exhaust_all, rc->config.rounds);
        unsigned long long limit = rc->trials;
        if (opt.budget) limit = std::min<unsigned long long>(limit, *opt.budget);
        for (unsigned long long k = 0; k < limit; ++k) {
            GeneratorConfig cfg = rc->config;
            cfg.seed = rc->config.seed + k;  // trial k is reproducible in isolation
            Tournament t = gen_random(cfg);
            auto hit = ev.evaluate(t);
            ++report.instances_tested;
            if (hit && !report.witness) {
                report.outcome = FalsifyOutcome::witness_found;
                hit->aux.add("trial", std::to_string(k));
                hit->aux.add("seed", std::to_string(cfg.seed));
                report.witness = FalsifyWitness{std::move(hit->verdict),
                                                std::move(hit->instances), std::move(hit->aux)};
                if (!opt.exhaust_all) break;
            }
        }
        report.violations = ev.violations;
    } else {
        const auto& ex = std::get<ExhaustiveCorpus>(corpus);
        SmallEnumerator en(ex.n, ex.rounds, ex.alphabet, ex.cap);
        unsigned long long total = en.total();
        if (opt.budget) total = std::min(total, *opt.budget);

        int threads = opt.threads > 0 ? opt.threads
                                      : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<int>(
            std::min<unsigned long long>(threads, std::max<unsigned long long>(total, 1)));

        // Aggregate-level axioms cannot distinguish tournaments with the same
        // aggregated problem, so duplicate problems are skipped per worker.
        const bool dedupable =
            (axiom == Axiom::sym || axiom == Axiom::inv ||
             (axiom == Axiom::neu && method.kind() == MethodKind::aggregate)) &&
            !opt.exhaust_all;

        struct WorkerResult {
            std::optional<unsigned long long> fail_index;
            std::optional<detail::InstanceHit> hit;
            unsigned long long violations = 0;
            std::exception_ptr error;
        };
        std::vector<WorkerResult> results(threads);
        std::atomic<unsigned long long> best_index{total};

        auto run_block = [&](int w, unsigned long long lo, unsigned long long hi) {
            try {
                detail::InstanceEvaluator ev(method, axiom, opt.respect_rounds, edit_alphabet,
                                             opt.exhaust_all, ex.rounds);
                std::optional<detail::DigitDeduper> dedup;
                if (dedupable) dedup = detail::DigitDeduper::make(en);
                Tournament buf = en.make_buffer();
                std::vector<int> digits;
                for (unsigned long long idx = lo; idx < hi; ++idx) {
                    if (!opt.exhaust_all && idx > best_index.load(std::memory_order_relaxed))
                        break;
                    en.decode_digits(idx, digits);
                    if (dedup && dedup->seen_before(digits)) continue;
                    en.fill_from_digits(digits, buf);
                    auto hit = ev.evaluate(buf);
                    if (hit && !results[w].fail_index) {
                        results[w].fail_index = idx;
                        hit->aux.add("instance_index", std::to_string(idx));
                        results[w].hit = std::move(hit);
                        if (!opt.exhaust_all) {
                            unsigned long long cur = best_index.load(std::memory_order_relaxed);
                            while (idx < cur && !best_index.compare_exchange_weak(
                                                    cur, idx, std::memory_order_relaxed)) {
                            }
                            break;
                        }
                    }
                }
                results[w].violations = ev.violations;
            } catch (...) {
                results[w].error = std::current_exception();
            }
        };

        if (threads == 1) {
            run_block(0, 0, total);
        } else {
            std::vector<std::thread> pool;
            unsigned long long chunk = (total + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                unsigned long long lo = std::min<unsigned long long>(w * chunk, total);
                unsigned long long hi = std::min<unsigned long long>(lo + chunk, total);
                pool.emplace_back(run_block, w, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        for (const auto& r : results)
            if (r.error) std::rethrow_exception(r.error);

        std::optional<std::size_t> best_worker;
        for (std::size_t w = 0; w < results.size(); ++w) {
            report.violations += results[w].violations;
            if (results[w].fail_index &&
                (!best_worker || *results[w].fail_index < *results[*best_worker].fail_index))
                best_worker = w;
        }
        if (best_worker) {
            report.outcome = FalsifyOutcome::witness_found;
            auto& hit = *results[*best_worker].hit;
            report.witness = FalsifyWitness{std::move(hit.verdict), std::move(hit.instances),
                                            std::move(hit.aux)};
            report.instances_tested =
                opt.exhaust_all ? total : *results[*best_worker].fail_index + 1;
        } else {
            report.instances_tested = total;
        }
    }

    if (report.witness) report.outcome = FalsifyOutcome::witness_found;
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return report;
}

}  // namespace tourank
