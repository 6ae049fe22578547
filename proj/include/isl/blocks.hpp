#pragma once

// Block-counting languages: strings B1 B2 ... Bk over pairwise disjoint
// sub-alphabets with length equalities |Bi| = |Bj| along constraint arcs.
// Two constraint sets describe an intersection; the verdict, the single-stack
// machine for the jointly well-nested case and the crossing witnesses live here.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isl/arcs.hpp"
#include "isl/errors.hpp"
#include "isl/pda.hpp"
#include "isl/segments.hpp"

namespace isl {

/// Constraint arc between 1-based block indices, i < j after normalisation.
struct BlockArc {
    std::size_t i = 0;
    std::size_t j = 0;
    auto operator<=>(const BlockArc&) const = default;
};

inline std::pair<std::size_t, std::size_t> endpoints(const BlockArc& a) { return {a.i, a.j}; }

inline std::string to_string(const BlockArc& a) {
    return "(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")";
}

namespace detail {

inline std::vector<BlockArc> normalise_arcs(std::vector<BlockArc> arcs, std::size_t k, const char* which) {
    for (auto& a : arcs) {
        if (a.i > a.j) std::swap(a.i, a.j);
        if (a.i < 1 || a.j > k)
            throw InvalidInput(std::string(which) + ": arc " + to_string(a) + " out of range 1.." + std::to_string(k));
        if (a.i == a.j) throw InvalidInput(std::string(which) + ": arc " + to_string(a) + " is a self-loop");
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (std::size_t x = 0; x < arcs.size(); ++x)
        for (std::size_t y = x + 1; y < arcs.size(); ++y) {
            const auto& a = arcs[x];
            const auto& b = arcs[y];
            if (a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j)
                throw InvalidInput(std::string(which) + ": arcs " + to_string(a) + " and " + to_string(b) +
                                   " share a block endpoint within one set");
        }
    return arcs;
}

inline void check_alphabets(const std::vector<std::string>& alphabets) {
    if (alphabets.empty()) throw InvalidInput("block spec needs at least one block");
    std::set<char> seen;
    for (std::size_t b = 0; b < alphabets.size(); ++b) {
        if (alphabets[b].empty()) throw InvalidInput("block " + std::to_string(b + 1) + " has an empty alphabet");
        for (char c : alphabets[b])
            if (!seen.insert(c).second)
                throw InvalidInput(std::string("symbol '") + c + "' occurs in more than one sub-alphabet");
    }
}

/// Block lengths of w, or nullopt when w does not factor as B1..Bk.
inline std::optional<std::vector<std::size_t>> block_lengths(const std::vector<std::string>& alphabets,
                                                             std::string_view w) {
    std::vector<std::size_t> len(alphabets.size(), 0);
    std::size_t current = 0;
    for (char c : w) {
        std::size_t b = 0;
        while (b < alphabets.size() && alphabets[b].find(c) == std::string::npos) ++b;
        if (b == alphabets.size() || b < current) return std::nullopt;
        current = b;
        ++len[b];
    }
    return len;
}

} // namespace detail

struct BlockSpec {
    std::vector<std::string> alphabets; ///< Sigma_1..Sigma_k
    std::vector<BlockArc> constraints;

    BlockSpec() = default;
    BlockSpec(std::vector<std::string> alpha, std::vector<BlockArc> c)
        : alphabets(std::move(alpha)) {
        detail::check_alphabets(alphabets);
        constraints = detail::normalise_arcs(std::move(c), alphabets.size(), "constraints");
    }
    std::size_t k() const { return alphabets.size(); }
};

struct JointSpec {
    std::string name;
    std::vector<std::string> alphabets;
    std::vector<BlockArc> c1, c2;

    JointSpec() = default;
    JointSpec(std::vector<std::string> alpha, std::vector<BlockArc> a1, std::vector<BlockArc> a2,
              std::string nm = {})
        : name(std::move(nm)), alphabets(std::move(alpha)) {
        detail::check_alphabets(alphabets);
        c1 = detail::normalise_arcs(std::move(a1), alphabets.size(), "c1");
        c2 = detail::normalise_arcs(std::move(a2), alphabets.size(), "c2");
    }
    std::size_t k() const { return alphabets.size(); }

    BlockSpec side(int which) const {
        BlockSpec s;
        s.alphabets = alphabets;
        s.constraints = which == 1 ? c1 : c2;
        return s;
    }
};

inline bool membership(const BlockSpec& spec, std::string_view w) {
    auto len = detail::block_lengths(spec.alphabets, w);
    if (!len) return false;
    for (const auto& a : spec.constraints)
        if ((*len)[a.i - 1] != (*len)[a.j - 1]) return false;
    return true;
}

/// Membership in the intersection of both sides.
inline bool membership(const JointSpec& spec, std::string_view w) {
    return membership(spec.side(1), w) && membership(spec.side(2), w);
}

enum class Outcome { CFL, NotCFL };
enum class ViolationKind { CrossingArcs, SharedEndpoint };

struct Violation {
    ViolationKind kind;
    BlockArc a; ///< from c1
    BlockArc b; ///< from c2
};

struct JointCheck {
    bool jointly_well_nested = true;
    std::optional<Violation> violation;
};

struct Verdict {
    Outcome outcome = Outcome::CFL;
    std::optional<Violation> reason; ///< empty iff the sets are jointly well-nested
};

inline std::string to_string(const Verdict& v) {
    if (v.outcome == Outcome::CFL) return "CFL (jointly well-nested)";
    const auto& r = *v.reason;
    if (r.kind == ViolationKind::CrossingArcs)
        return "NotCFL (crossing arcs " + to_string(r.a) + "x" + to_string(r.b) + ")";
    return "NotCFL (shared endpoint " + to_string(r.a) + "/" + to_string(r.b) + ")";
}

inline JointCheck is_jointly_well_nested(const JointSpec& j) {
    if (auto r = is_well_nested(j.c1); !r.well_nested)
        throw PreconditionViolated("c1 is not well-nested: " + to_string(r.witness->first) + " crosses " +
                                   to_string(r.witness->second));
    if (auto r = is_well_nested(j.c2); !r.well_nested)
        throw PreconditionViolated("c2 is not well-nested: " + to_string(r.witness->first) + " crosses " +
                                   to_string(r.witness->second));
    for (const auto& a : j.c1) {
        for (const auto& b : j.c2) {
            if (crosses(a, b)) return {false, Violation{ViolationKind::CrossingArcs, a, b}};
            if (a != b && (a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j))
                return {false, Violation{ViolationKind::SharedEndpoint, a, b}};
        }
    }
    return {};
}

inline Verdict characterize(const JointSpec& j) {
    auto r = is_jointly_well_nested(j);
    if (r.jointly_well_nested) return {};
    return {Outcome::NotCFL, r.violation};
}

inline std::string marker_name(const BlockArc& a) {
    return "c" + std::to_string(a.i) + "_" + std::to_string(a.j);
}

/// Single-stack machine for a jointly well-nested pair: the control state is
/// the index of the last block read; every symbol of a left-endpoint block
/// pushes that arc's marker, every symbol of a right-endpoint block pops it.
inline Pda build_joint_pda(const JointSpec& j) {
    if (auto r = is_jointly_well_nested(j); !r.jointly_well_nested)
        throw NotJointlyWellNested("build_joint_pda: " + to_string(Verdict{Outcome::NotCFL, r.violation}));
    std::set<BlockArc> arcs(j.c1.begin(), j.c1.end());
    arcs.insert(j.c2.begin(), j.c2.end());

    Pda pda;
    pda.name = j.name.empty() ? "joint" : j.name;
    pda.bottom = "$";
    pda.stack_alphabet.push_back("$");
    std::vector<std::optional<StackAction>> role(j.k() + 1);
    for (const auto& a : arcs) {
        pda.stack_alphabet.push_back(marker_name(a));
        role[a.i] = StackAction::push(marker_name(a));
        role[a.j] = StackAction::pop(marker_name(a));
    }
    for (std::size_t b = 0; b <= j.k(); ++b) pda.states.push_back("B" + std::to_string(b));
    for (const auto& a : j.alphabets) pda.input_alphabet += a;
    pda.start = "B0";
    pda.accept = pda.states;
    pda.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    for (std::size_t p = 0; p <= j.k(); ++p) {
        for (std::size_t m = std::max<std::size_t>(p, 1); m <= j.k(); ++m) {
            for (char c : j.alphabets[m - 1]) {
                std::vector<StackAction> ops;
                if (role[m]) ops.push_back(*role[m]);
                pda.add(pda.states[p], c, pda.states[m], ops);
            }
        }
    }
    return pda;
}

/// Arc-pair (c1 arc, c2 arc) that crosses, normalised to i < i' < j < j'.
struct BlockCrossing {
    BlockArc left;
    BlockArc right;
};

inline std::optional<BlockCrossing> first_crossing(const JointSpec& j) {
    for (const auto& a : j.c1)
        for (const auto& b : j.c2) {
            if (interleaved(a.i, a.j, b.i, b.j)) return BlockCrossing{a, b};
            if (interleaved(b.i, b.j, a.i, a.j)) return BlockCrossing{b, a};
        }
    return std::nullopt;
}

namespace detail {

inline BlockCrossing resolve_crossing(const JointSpec& j, std::optional<BlockCrossing> given) {
    if (!given) {
        auto c = first_crossing(j);
        if (!c) throw NoCrossing("spec has no crossing pair between c1 and c2");
        return *c;
    }
    BlockCrossing c = *given;
    if (interleaved(c.right.i, c.right.j, c.left.i, c.left.j)) std::swap(c.left, c.right);
    if (!interleaved(c.left.i, c.left.j, c.right.i, c.right.j))
        throw NoCrossing("arcs " + to_string(c.left) + " and " + to_string(c.right) + " do not cross");
    auto in = [](const std::vector<BlockArc>& s, const BlockArc& a) {
        return std::find(s.begin(), s.end(), a) != s.end();
    };
    bool ok = (in(j.c1, c.left) && in(j.c2, c.right)) || (in(j.c2, c.left) && in(j.c1, c.right));
    if (!ok) throw NoCrossing("crossing arcs must come from different constraint sets");
    return c;
}

inline std::vector<std::size_t> witness_lengths(const JointSpec& j, const BlockCrossing& c, std::size_t n) {
    std::vector<bool> connected(j.k() + 1, false);
    std::vector<std::size_t> todo{c.left.i, c.left.j, c.right.i, c.right.j};
    for (auto b : todo) connected[b] = true;
    std::vector<BlockArc> edges = j.c1;
    edges.insert(edges.end(), j.c2.begin(), j.c2.end());
    while (!todo.empty()) {
        std::size_t b = todo.back();
        todo.pop_back();
        for (const auto& e : edges) {
            std::size_t other = e.i == b ? e.j : e.j == b ? e.i : 0;
            if (other && !connected[other]) {
                connected[other] = true;
                todo.push_back(other);
            }
        }
    }
    std::vector<std::size_t> len(j.k(), 0);
    for (std::size_t b = 1; b <= j.k(); ++b) len[b - 1] = connected[b] ? n : 0;
    return len;
}

} // namespace detail

/// Blocks reachable from the crossing's endpoints get length n, the rest are
/// empty; each block repeats the first symbol of its sub-alphabet.
inline std::string witness_string(const JointSpec& j, std::optional<BlockCrossing> crossing, std::size_t n) {
    BlockCrossing c = detail::resolve_crossing(j, crossing);
    auto len = detail::witness_lengths(j, c, n);
    std::string w;
    for (std::size_t b = 0; b < j.k(); ++b) w.append(len[b], j.alphabets[b][0]);
    return w;
}

struct LinkageClaims {
    std::string word;
    BlockCrossing crossing;
    Segmentation segments;
    std::vector<std::pair<int, int>> linkages; ///< segment index pairs, always (1,3) and (2,4)
};

/// Witness plus the P1..P4 split at block boundaries: P1 = B1..Bi,
/// P2 = B(i+1)..Bi', P3 = B(i'+1)..Bj, P4 = the rest. With `inner_bound`
/// set, a split whose inner measure exceeds it is rejected.
inline LinkageClaims segments_and_linkages(const JointSpec& j, std::optional<BlockCrossing> crossing, std::size_t n,
                                           std::optional<std::size_t> inner_bound = std::nullopt) {
    BlockCrossing c = detail::resolve_crossing(j, crossing);
    auto len = detail::witness_lengths(j, c, n);
    auto upto = [&](std::size_t b) {
        std::size_t s = 0;
        for (std::size_t x = 0; x < b; ++x) s += len[x];
        return s;
    };
    LinkageClaims out;
    out.word = witness_string(j, c, n);
    out.crossing = c;
    out.segments = Segmentation(out.word.size(), upto(c.left.i), upto(c.right.i), upto(c.left.j));
    out.linkages = {{1, 3}, {2, 4}};
    if (inner_bound) {
        std::size_t inner = std::max(out.segments.size(2), out.segments.size(3));
        if (inner > *inner_bound)
            throw PreconditionViolated("block crossings have inner measure " + std::to_string(inner) +
                                       " at n=" + std::to_string(n) + ", above the requested bound " +
                                       std::to_string(*inner_bound));
    }
    return out;
}

/// Random jointly well-nested spec with 2..max_k blocks and sub-alphabets of one
/// or two letters. Arcs are drawn from a single non-crossing, endpoint-disjoint
/// family and then assigned to c1, c2 or both.
inline JointSpec random_joint_spec(std::mt19937& rng, std::size_t max_k = 5) {
    std::uniform_int_distribution<std::size_t> kd(2, max_k);
    const std::size_t k = kd(rng);
    std::vector<std::string> alphabets;
    char next = 'a';
    std::uniform_int_distribution<int> sz(1, 2);
    for (std::size_t b = 0; b < k; ++b) {
        std::string a;
        for (int s = sz(rng); s > 0; --s) a.push_back(next++);
        alphabets.push_back(a);
    }
    std::vector<BlockArc> candidates;
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t jj = i + 1; jj <= k; ++jj) candidates.push_back({i, jj});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<BlockArc> chosen;
    for (const auto& c : candidates) {
        bool ok = std::none_of(chosen.begin(), chosen.end(), [&](const BlockArc& d) {
            return crosses(c, d) || c.i == d.i || c.i == d.j || c.j == d.i || c.j == d.j;
        });
        if (ok && std::bernoulli_distribution(0.7)(rng)) chosen.push_back(c);
    }
    std::vector<BlockArc> c1, c2;
    std::uniform_int_distribution<int> side(0, 2);
    for (const auto& c : chosen) {
        int s = side(rng);
        if (s != 1) c1.push_back(c);
        if (s != 0) c2.push_back(c);
    }
    return JointSpec(alphabets, c1, c2, "random");
}

/// Every string of length <= max_len that factors as B1..Bk, in no particular order.
inline std::vector<std::string> block_shaped_strings(const std::vector<std::string>& alphabets, std::size_t max_len) {
    std::vector<std::string> out;
    std::string cur;
    auto rec = [&](auto&& self, std::size_t block) -> void {
        out.push_back(cur);
        if (cur.size() == max_len) return;
        for (std::size_t b = block; b < alphabets.size(); ++b)
            for (char c : alphabets[b]) {
                cur.push_back(c);
                self(self, b);
                cur.pop_back();
            }
    };
    rec(rec, 0);
    return out;
}

} // namespace isl
