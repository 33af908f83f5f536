#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tourank/core.hpp"
#include "tourank/rational.hpp"

namespace tourank {

enum class Exactness { exact, approximate };
enum class MethodKind { aggregate, round_aware };

enum class Ord { lt, eq, gt };

/// Per-player rating values. Exact vectors compare with exact ordering;
/// approximate ones treat |difference| <= tolerance as a tie, so a strict
/// comparison demands a gap larger than the tolerance.
struct ScoreVector {
    std::vector<Rational> values;
    Exactness exactness = Exactness::exact;
    Rational tolerance;  // 0 when exact
    std::string note;    // e.g. "disconnected" from least_squares

    int size() const { return static_cast<int>(values.size()); }

    Ord compare(int i, int j) const { return compare_values(values[i], values[j]); }

    Ord compare_values(const Rational& a, const Rational& b) const {
        Rational d = a - b;
        if (exactness == Exactness::approximate && d.abs() <= tolerance)
            return Ord::eq;
        int s = d.sign();
        return s < 0 ? Ord::lt : (s > 0 ? Ord::gt : Ord::eq);
    }

    bool tie(int i, int j) const { return compare(i, j) == Ord::eq; }
    bool geq(int i, int j) const { return compare(i, j) != Ord::lt; }
    bool gt(int i, int j) const { return compare(i, j) == Ord::gt; }
};

/// Tie comparison across two vectors of the same method (NEU/ANO checks).
inline bool scores_tie(const ScoreVector& a, int i, const ScoreVector& b, int j) {
    Rational d = a.values[i] - b.values[j];
    if (a.exactness == Exactness::approximate || b.exactness == Exactness::approximate) {
        Rational tol = a.tolerance > b.tolerance ? a.tolerance : b.tolerance;
        return d.abs() <= tol;
    }
    return d.is_zero();
}

// ---------------------------------------------------------------------------
// Exact linear algebra helpers
// ---------------------------------------------------------------------------

namespace detail {

/// Solve a consistent linear system by Gaussian elimination over exact
/// rationals. `a` is rows x cols row-major, `b` the right-hand side; the
/// system must determine every unknown. Throws on inconsistency or an
/// underdetermined column.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a,
                                         std::vector<Rational> b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivot_row(cols, -1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[rank]);
        std::swap(b[p], b[rank]);
        Rational inv = Rational(1) / a[rank][c];
        for (int cc = c; cc < cols; ++cc) a[rank][cc] *= inv;
        b[rank] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            Rational f = a[r][c];
            for (int cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
            b[r] -= f * b[rank];
        }
        pivot_row[c] = rank;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (!b[r].is_zero())
            throw std::runtime_error("solve_exact: inconsistent system");
    std::vector<Rational> x(cols, Rational(0));
    for (int c = 0; c < cols; ++c) {
        if (pivot_row[c] < 0)
            throw std::runtime_error("solve_exact: underdetermined system");
        x[c] = b[pivot_row[c]];
    }
    return x;
}

/// Connected components of the match graph (edges where m_ij > 0).
inline std::vector<int> match_components(const RankingProblem& p) {
    const int n = p.size();
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (p.M(v, w) > 0 && comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scoring methods
// ---------------------------------------------------------------------------

/// Row sums of R: value_i = sum_j r_ij.
inline ScoreVector score(const RankingProblem& p) {
    const int n = p.size();
    ScoreVector s;
    s.values.assign(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.values[i] += p.R(i, j);
    return s;
}

/// Exact rating from the Laplacian system L q = d with L = diag(sum_j m_ij) - M
/// and d_i = sum_j r_ij, normalized to sum q = 0 on every connected component
/// of the match graph. The solution is exact and the residual is exactly zero;
/// isolated players sit in singleton components and get 0.
inline ScoreVector least_squares(const RankingProblem& p) {
    const int n = p.size();
    ScoreVector s;
    s.values.assign(n, Rational(0));
    std::vector<int> comp = detail::match_components(p);
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    if (ncomp > 1) s.note = "disconnected";

    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) members.push_back(i);
        const int k = static_cast<int>(members.size());
        if (k == 1) continue;  // no matches, score 0
        // Laplacian rows plus the zero-sum constraint; consistent by
        // construction since d sums to zero over the component.
        std::vector<std::vector<Rational>> a(k + 1, std::vector<Rational>(k, Rational(0)));
        std::vector<Rational> b(k + 1, Rational(0));
        for (int u = 0; u < k; ++u) {
            long long total = 0;
            for (int v = 0; v < k; ++v) {
                if (u == v) continue;
                long long muv = p.M(members[u], members[v]);
                a[u][v] = Rational(-muv);
                total += muv;
            }
            a[u][u] = Rational(total);
            for (int j = 0; j < n; ++j) b[u] += p.R(members[u], j);
        }
        for (int v = 0; v < k; ++v) a[k][v] = Rational(1);
        std::vector<Rational> q = detail::solve_exact(std::move(a), std::move(b));
        for (int u = 0; u < k; ++u) s.values[members[u]] = q[u];
    }
    return s;
}

class EigenvectorNonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Principal right eigenvector of A + eps*J (J all ones, zero diagonal,
/// eps = 1/1000), normalized to sum 1. Power iteration from the uniform
/// vector; stops at relative change < 1e-12, reports failure after 10,000
/// iterations instead of returning a wrong answer.
inline ScoreVector eigenvector_rating(const RankingProblem& p) {
    const int n = p.size();
    ScoreVector s;
    s.exactness = Exactness::approximate;
    s.tolerance = Rational(1, 1000000000);  // 1e-9
    if (n == 1) {
        s.values = {Rational(1)};
        return s;
    }
    constexpr double eps = 1.0 / 1000.0;
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) a[i * n + j] = p.A(i, j).to_double() + eps;

    std::vector<double> v(n, 1.0 / n), w(n, 0.0);
    for (int iter = 0; iter < 10000; ++iter) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += a[i * n + j] * v[j];
            w[i] = acc;
        }
        double total = 0.0;
        for (double x : w) total += x;
        if (total <= 0.0) throw EigenvectorNonConvergence("eigenvector: degenerate iterate");
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] /= total;
            change = std::max(change, std::abs(w[i] - v[i]));
        }
        v = w;
        if (change < 1e-12) {
            s.values.reserve(n);
            for (double x : v) s.values.push_back(Rational::from_double(x));
            return s;
        }
    }
    throw EigenvectorNonConvergence("eigenvector: no convergence after 10000 iterations");
}

/// Individual scoring method with phi = per-round row sums of 2T - (T + T^t)
/// and delta = componentwise sum. Coincides with score(aggregate(t)) but is
/// computed round by round.
inline ScoreVector round_sum(const Tournament& t) {
    const int n = t.roster.size();
    ScoreVector s;
    s.values.assign(n, Rational(0));
    for (const auto& m : t.matches) {
        Rational c = Rational(2) * m.value - Rational(1);
        s.values[m.i] += c;
        s.values[m.j] -= c;
    }
    return s;
}

enum class Lemma41Variant { prev_player, max_other_matches, opp_aggregate };

/// The three constructions showing NEU, SYM, SOP independent: the results of
/// the cyclically previous player; the maximal match count among the other
/// players; the multiset-weighted aggregated results of the opponents.
inline ScoreVector lemma41_method(const RankingProblem& p, Lemma41Variant variant) {
    const int n = p.size();
    ScoreVector s;
    s.values.assign(n, Rational(0));
    switch (variant) {
        case Lemma41Variant::prev_player: {
            std::vector<Rational> row(n, Rational(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) row[i] += p.R(i, j);
            for (int i = 0; i < n; ++i) s.values[i] = row[(i + n - 1) % n];
            break;
        }
        case Lemma41Variant::max_other_matches: {
            std::vector<long long> total(n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) total[i] += p.M(i, j);
            for (int i = 0; i < n; ++i) {
                long long best = 0;
                for (int j = 0; j < n; ++j)
                    if (j != i) best = std::max(best, total[j]);
                s.values[i] = Rational(best);
            }
            break;
        }
        case Lemma41Variant::opp_aggregate: {
            std::vector<Rational> row(n, Rational(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) row[i] += p.R(i, j);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (p.M(i, j) > 0) s.values[i] += Rational(p.M(i, j)) * row[j];
            break;
        }
    }
    return s;
}

/// Result-independent ranking by roster position: X_i gets n - i.
inline ScoreVector index_score(const RankingProblem& p) {
    const int n = p.size();
    ScoreVector s;
    s.values.reserve(n);
    for (int i = 0; i < n; ++i) s.values.push_back(Rational(n - 1 - i));
    return s;
}

// ---------------------------------------------------------------------------
// Method registry
// ---------------------------------------------------------------------------

struct MethodDescriptor {
    std::string name;
    MethodKind kind = MethodKind::aggregate;
    Exactness exactness = Exactness::exact;
};

/// A registered scoring method. Aggregate methods evaluate tournaments by
/// aggregating first; the one round-aware method (round-sum) also exposes a
/// problem-level evaluation, its aggregate restriction, so that problem-only
/// axiom checkers stay total over the registry.
class Method {
public:
    Method(MethodDescriptor desc,
           std::function<ScoreVector(const RankingProblem&)> on_problem,
           std::function<ScoreVector(const Tournament&)> on_tournament = nullptr)
        : desc_(std::move(desc)),
          on_problem_(std::move(on_problem)),
          on_tournament_(std::move(on_tournament)) {}

    const MethodDescriptor& descriptor() const { return desc_; }
    const std::string& name() const { return desc_.name; }
    MethodKind kind() const { return desc_.kind; }
    Exactness exactness() const { return desc_.exactness; }

    ScoreVector operator()(const RankingProblem& p) const { return on_problem_(p); }
    ScoreVector operator()(const Tournament& t) const {
        if (on_tournament_) return on_tournament_(t);
        return on_problem_(aggregate(t));
    }

private:
    MethodDescriptor desc_;
    std::function<ScoreVector(const RankingProblem&)> on_problem_;
    std::function<ScoreVector(const Tournament&)> on_tournament_;
};

inline const std::vector<Method>& method_registry() {
    static const std::vector<Method> registry = [] {
        std::vector<Method> ms;
        ms.emplace_back(MethodDescriptor{"score", MethodKind::aggregate, Exactness::exact},
                        [](const RankingProblem& p) { return score(p); });
        ms.emplace_back(
            MethodDescriptor{"least-squares", MethodKind::aggregate, Exactness::exact},
            [](const RankingProblem& p) { return least_squares(p); });
        ms.emplace_back(
            MethodDescriptor{"eigenvector", MethodKind::aggregate, Exactness::approximate},
            [](const RankingProblem& p) { return eigenvector_rating(p); });
        ms.emplace_back(
            MethodDescriptor{"round-sum", MethodKind::round_aware, Exactness::exact},
            [](const RankingProblem& p) { return score(p); },
            [](const Tournament& t) { return round_sum(t); });
        ms.emplace_back(
            MethodDescriptor{"prev-player", MethodKind::aggregate, Exactness::exact},
            [](const RankingProblem& p) {
                return lemma41_method(p, Lemma41Variant::prev_player);
            });
        ms.emplace_back(
            MethodDescriptor{"max-other-matches", MethodKind::aggregate, Exactness::exact},
            [](const RankingProblem& p) {
                return lemma41_method(p, Lemma41Variant::max_other_matches);
            });
        ms.emplace_back(
            MethodDescriptor{"opp-aggregate", MethodKind::aggregate, Exactness::exact},
            [](const RankingProblem& p) {
                return lemma41_method(p, Lemma41Variant::opp_aggregate);
            });
        ms.emplace_back(MethodDescriptor{"index", MethodKind::aggregate, Exactness::exact},
                        [](const RankingProblem& p) { return index_score(p); });
        return ms;
    }();
    return registry;
}

inline const Method* find_method(std::string_view name) {
    for (const auto& m : method_registry())
        if (m.name() == name) return &m;
    return nullptr;
}

/// "X1 -5/24" style listing, one player per line. Approximate values render
/// as decimals with 12 significant digits, exact ones as p/q.
inline std::string format_scores(const Roster& roster, const ScoreVector& s) {
    std::ostringstream out;
    for (int i = 0; i < roster.size(); ++i) {
        out << roster.label(i) << ' ';
        if (s.exactness == Exactness::exact) {
            out << s.values[i].str();
        } else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", s.values[i].to_double());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tourank
