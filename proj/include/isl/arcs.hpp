#pragma once

// Push-pop arc geometry: matchings extracted from accepting runs,
// well-nestedness, cross-machine crossing pairs with their P1..P4 split, and
// regime classification of a family of strings.
//
// Positions are 1-based, as in w[1..i]. Segment ranges are 0-based half-open.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "isl/errors.hpp"
#include "isl/pda.hpp"
#include "isl/segments.hpp"

namespace isl {

struct Arc {
    std::size_t push_pos = 0;
    std::size_t pop_pos = 0;
    int owner = 1;        ///< machine tag, 1 or 2
    int push_ordinal = 1; ///< 1 or 2: which push of its position

    auto key() const { return std::tie(push_pos, pop_pos, owner, push_ordinal); }
    bool operator==(const Arc& o) const { return key() == o.key(); }
    bool operator<(const Arc& o) const { return key() < o.key(); }
};

inline std::pair<std::size_t, std::size_t> endpoints(const Arc& a) { return {a.push_pos, a.pop_pos}; }

inline std::string to_string(const Arc& a) {
    return "(" + std::to_string(a.push_pos) + "," + std::to_string(a.pop_pos) + ")";
}

/// Strict interleaving i < i2 < j < j2.
constexpr bool interleaved(std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) {
    return i < i2 && i2 < j && j < j2;
}

template <class A>
bool crosses(const A& a, const A& b) {
    auto [i, j] = endpoints(a);
    auto [k, l] = endpoints(b);
    return interleaved(i, j, k, l) || interleaved(k, l, i, j);
}

struct Matching {
    std::vector<Arc> arcs; ///< sorted
    std::string machine;
    std::string word;
    std::size_t run_id = 0;
};

/// Pairs every push of the run with the pop that removes it. Auxiliary epsilon
/// pushes inherit the position of the read that triggered them.
inline Matching extract_matching(const PdaMachine& m, std::string_view word, const AcceptingRun& run, int owner = 1,
                                 std::size_t run_id = 0) {
    struct Open {
        std::size_t pos;
        int ordinal;
    };
    std::vector<Open> open;
    std::vector<std::size_t> pushes_at(word.size() + 2, 0);
    Matching out;
    out.machine = m.pda().name;
    out.word = std::string(word);
    out.run_id = run_id;
    for (const auto& s : run.steps) {
        for (const auto& op : m.pda().transitions[s.label].ops) {
            if (op.kind == ActionKind::Push) {
                int ord = static_cast<int>(++pushes_at[s.input_pos]);
                open.push_back({s.input_pos, ord});
            } else if (!open.empty()) {
                Open o = open.back();
                open.pop_back();
                out.arcs.push_back({o.pos, s.input_pos, owner, o.ordinal});
            }
            // A pop with no open push removes the bottom marker: no arc.
        }
    }
    if (m.pda().acceptance_mode == AcceptanceMode::FinalStateAndBottomOnly && !open.empty())
        throw UnbalancedRun(m.pda().name + ": run leaves " + std::to_string(open.size()) +
                            " unmatched pushes under bottom-only acceptance");
    std::sort(out.arcs.begin(), out.arcs.end());
    return out;
}

template <class A>
struct NestingResult {
    bool well_nested = true;
    std::optional<std::pair<A, A>> witness; ///< lexicographically smallest crossing pair
};

template <class A>
NestingResult<A> is_well_nested(std::vector<A> arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const A& x, const A& y) { return endpoints(x) < endpoints(y); });
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        for (std::size_t b = 0; b < arcs.size(); ++b) {
            auto [i, j] = endpoints(arcs[a]);
            auto [k, l] = endpoints(arcs[b]);
            if (interleaved(i, j, k, l)) return {false, std::make_pair(arcs[a], arcs[b])};
        }
    }
    return {};
}

/// True iff no arc of s1 crosses an arc of s2. Both inputs must be well-nested.
template <class A>
bool union_well_nested(const std::vector<A>& s1, const std::vector<A>& s2) {
    if (!is_well_nested(s1).well_nested || !is_well_nested(s2).well_nested)
        throw PreconditionViolated("union_well_nested: an input arc set is internally crossing");
    for (const auto& a : s1)
        for (const auto& b : s2)
            if (crosses(a, b)) return false;
    return true;
}

/// A cross-machine crossing pair normalised so that left.push < right.push.
struct CrossingPair {
    Arc left;  ///< endpoints i, j
    Arc right; ///< endpoints i', j'
};

struct CrossingMeasures {
    std::size_t gap = 0;   ///< max(i'-i, j'-j)
    std::size_t inner = 0; ///< max(i'-i, j-i') = max(|P2|, |P3|)
    bool operator==(const CrossingMeasures&) const = default;
};

struct CrossingRecord {
    CrossingPair pair;
    Segmentation segments;
    CrossingMeasures measures;
};

inline CrossingMeasures measure(const CrossingPair& p) {
    std::size_t i = p.left.push_pos, j = p.left.pop_pos, i2 = p.right.push_pos, j2 = p.right.pop_pos;
    return {std::max(i2 - i, j2 - j), std::max(i2 - i, j - i2)};
}

/// P1 = w[1..i], P2 = w[i+1..i'], P3 = w[i'+1..j], P4 = w[j+1..|w|].
inline Segmentation decompose(const CrossingPair& p, std::size_t length) {
    return Segmentation(length, p.left.push_pos, p.right.push_pos, p.left.pop_pos);
}

inline std::vector<CrossingRecord> crossing_pairs(const Matching& m1, const Matching& m2) {
    if (m1.word != m2.word)
        throw SourceMismatch("crossing_pairs: matchings come from different strings ('" + m1.word + "' vs '" +
                             m2.word + "')");
    std::vector<CrossingRecord> out;
    const std::size_t n = m1.word.size();
    for (const auto& a : m1.arcs) {
        for (const auto& b : m2.arcs) {
            std::optional<CrossingPair> p;
            if (interleaved(a.push_pos, a.pop_pos, b.push_pos, b.pop_pos)) p = CrossingPair{a, b};
            else if (interleaved(b.push_pos, b.pop_pos, a.push_pos, a.pop_pos)) p = CrossingPair{b, a};
            if (!p) continue;
            out.push_back({*p, decompose(*p, n), measure(*p)});
        }
    }
    std::sort(out.begin(), out.end(), [](const CrossingRecord& x, const CrossingRecord& y) {
        return std::tuple(x.pair.left.push_pos, x.pair.right.push_pos, x.pair.left.pop_pos, x.pair.right.pop_pos,
                          x.pair.left.owner, x.pair.left.push_ordinal, x.pair.right.push_ordinal) <
               std::tuple(y.pair.left.push_pos, y.pair.right.push_pos, y.pair.left.pop_pos, y.pair.right.pop_pos,
                          y.pair.left.owner, y.pair.left.push_ordinal, y.pair.right.push_ordinal);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Regime classification over a family of strings.

enum class Regime { NoCrossings, BoundedGap, BoundedInnerUnboundedGap, GrowingInner };

inline std::string to_string(Regime r) {
    switch (r) {
    case Regime::NoCrossings: return "no-crossings";
    case Regime::BoundedGap: return "bounded-gap";
    case Regime::BoundedInnerUnboundedGap: return "bounded-inner-unbounded-gap";
    case Regime::GrowingInner: return "growing-inner";
    }
    return "?";
}

/// Expected status of the intersection for a regime.
inline std::string intersection_status(Regime r) {
    return r == Regime::GrowingInner ? "not CFL (given pump-sensitive linkages)" : "CFL";
}

struct FamilySample {
    std::size_t n = 0;
    std::string word;
    std::vector<CrossingMeasures> measures;
};

struct RegimeRow {
    std::size_t n = 0;
    std::size_t length = 0;
    std::size_t crossings = 0;
    std::size_t max_gap = 0;   ///< 0 when there are no crossings
    std::size_t max_inner = 0; ///< 0 when there are no crossings
};

struct RegimeReport {
    Regime regime = Regime::NoCrossings;
    std::vector<RegimeRow> rows; ///< evidence table, sorted by n
};

enum class Trend { Constant, Growing, Mixed };

inline Trend trend(const std::vector<std::size_t>& v) {
    bool constant = std::all_of(v.begin(), v.end(), [&](std::size_t x) { return x == v.front(); });
    if (constant) return Trend::Constant;
    bool growing = true;
    for (std::size_t i = 1; i < v.size(); ++i) growing = growing && v[i] > v[i - 1];
    return growing ? Trend::Growing : Trend::Mixed;
}

inline RegimeReport classify_family(std::vector<FamilySample> samples) {
    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    RegimeReport rep;
    for (const auto& s : samples) {
        RegimeRow row{s.n, s.word.size(), s.measures.size(), 0, 0};
        for (const auto& m : s.measures) {
            row.max_gap = std::max(row.max_gap, m.gap);
            row.max_inner = std::max(row.max_inner, m.inner);
        }
        if (!rep.rows.empty() && rep.rows.back().n == row.n)
            throw PreconditionViolated("classify_family: duplicate sample size " + std::to_string(row.n));
        rep.rows.push_back(row);
    }
    if (rep.rows.size() < 2) throw PreconditionViolated("classify_family: need at least two sample sizes");

    if (std::all_of(rep.rows.begin(), rep.rows.end(), [](const RegimeRow& r) { return r.crossings == 0; })) {
        rep.regime = Regime::NoCrossings;
        return rep;
    }
    std::vector<std::size_t> gaps, inners;
    for (const auto& r : rep.rows) {
        gaps.push_back(r.max_gap);
        inners.push_back(r.max_inner);
    }
    Trend g = trend(gaps), in = trend(inners);
    if (g == Trend::Constant) rep.regime = Regime::BoundedGap;
    else if (g == Trend::Growing && in == Trend::Constant) rep.regime = Regime::BoundedInnerUnboundedGap;
    else if (g == Trend::Growing && in == Trend::Growing) rep.regime = Regime::GrowingInner;
    else throw Inconclusive("classify_family: measures are neither constant nor strictly growing across sizes");
    return rep;
}

} // namespace isl
