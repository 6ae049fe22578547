#pragma once

// Built-in examples: machine pairs, block specs and grammars together with
// the properties each is expected to exhibit.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isl/arcs.hpp"
#include "isl/blocks.hpp"
#include "isl/errors.hpp"
#include "isl/grammar.hpp"
#include "isl/pda.hpp"

namespace isl {

struct Expected {
    std::optional<Outcome> verdict;
    std::optional<ViolationKind> violation;
    std::optional<Regime> regime;
    /// Maximum crossing gap / inner measure of the family word at size n.
    std::function<std::size_t(std::size_t)> max_gap;
    std::function<std::size_t(std::size_t)> max_inner;
    std::optional<std::size_t> product_k; ///< displacement parameter under which the pair is handled
    std::optional<std::size_t> product_d; ///< buffered parameter under which the pair is handled
};

struct ExampleBundle {
    std::string name;
    std::string description;
    std::optional<std::pair<Pda, Pda>> pair;
    std::optional<Pda> intersection; ///< hand-built machine for L(M1) and L(M2) where available
    std::optional<Pda> single;
    std::optional<JointSpec> joint;
    std::optional<Cfg> grammar;
    std::function<std::string(std::size_t)> family;
    std::vector<std::size_t> family_sizes;
    Expected expected;
};

namespace corpus_detail {

inline std::string repeat(char c, std::size_t n) { return std::string(n, c); }

/// Palindrome checker on one parity class of positions, with the midpoint
/// guessed nondeterministically. `offset` 0 handles odd positions, 1 even ones.
inline Pda parity_palindrome(const std::string& name, int offset) {
    Pda p;
    p.name = name;
    p.input_alphabet = "01";
    p.states = {"push_odd", "push_even", "pop_odd", "pop_even"};
    p.stack_alphabet = {"$", "Z0", "Z1"};
    p.start = "push_odd";
    p.accept = {"push_odd", "pop_odd"};
    p.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    // Active positions read from the `act` states, the others are skipped.
    const std::string push_act = offset == 0 ? "push_odd" : "push_even";
    const std::string push_skip = offset == 0 ? "push_even" : "push_odd";
    const std::string pop_act = offset == 0 ? "pop_odd" : "pop_even";
    const std::string pop_skip = offset == 0 ? "pop_even" : "pop_odd";
    const std::string after_push_act = push_skip;
    const std::string after_pop_act = pop_skip;
    for (char c : std::string("01")) {
        const std::string z = std::string("Z") + c;
        p.add(push_act, c, after_push_act, {StackAction::push(z)});
        p.add(push_act, c, after_pop_act, {StackAction::pop(z)});
        p.add(push_act, c, after_pop_act); // odd-length subsequence: skip the middle symbol
        p.add(push_skip, c, push_act);
        p.add(pop_act, c, after_pop_act, {StackAction::pop(z)});
        p.add(pop_skip, c, pop_act);
    }
    return p;
}

inline ExampleBundle interleaved_palindrome() {
    ExampleBundle b;
    b.name = "interleaved-palindrome";
    b.description = "even-length strings whose odd-position and even-position subsequences are both palindromes";
    b.pair = {parity_palindrome("palindrome-odd", 0), parity_palindrome("palindrome-even", 1)};
    b.family = [](std::size_t n) {
        std::string w;
        for (std::size_t i = 0; i < n; ++i) w += "01";
        return w;
    };
    b.family_sizes = {2, 3, 4, 5};
    b.expected.regime = Regime::BoundedGap;
    b.expected.max_gap = [](std::size_t) { return std::size_t{1}; };
    b.expected.max_inner = [](std::size_t n) { return 2 * n - 3; };
    b.expected.product_k = 1;
    return b;
}

/// M1 realises {a b a w f g^k h^k : w in {d,e}*} with one arc from the first
/// a to the second a; M2 realises {a b a d^n e^n f w : w in {g,h}*} with an
/// arc from b to f enclosing the d/e arcs.
inline ExampleBundle gap_refutation() {
    ExampleBundle b;
    b.name = "gap-refutation";
    b.description = "crossing gap 2n+1 with inner measure 1: intersection a b a d^n e^n f g^k h^k";

    Pda m1;
    m1.name = "refutation-M1";
    m1.input_alphabet = "abdefgh";
    m1.states = {"s0", "s1", "s2", "s3", "s4", "s5", "s6"};
    m1.stack_alphabet = {"$", "A", "G"};
    m1.start = "s0";
    m1.accept = {"s4", "s6"};
    m1.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    m1.add("s0", 'a', "s1", {StackAction::push("A")}); // push at position 1
    m1.add("s1", 'b', "s2");
    m1.add("s2", 'a', "s3", {StackAction::pop("A")}); // pop at position 3
    m1.add("s3", 'd', "s3");
    m1.add("s3", 'e', "s3");
    m1.add("s3", 'f', "s4");
    m1.add("s4", 'g', "s5", {StackAction::push("G")});
    m1.add("s5", 'g', "s5", {StackAction::push("G")});
    m1.add("s5", 'h', "s6", {StackAction::pop("G")});
    m1.add("s6", 'h', "s6", {StackAction::pop("G")});

    Pda m2;
    m2.name = "refutation-M2";
    m2.input_alphabet = "abdefgh";
    m2.states = {"t0", "t1", "t2", "t3", "t4", "t5", "t6"};
    m2.stack_alphabet = {"$", "B", "D"};
    m2.start = "t0";
    m2.accept = {"t6"};
    m2.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    m2.add("t0", 'a', "t1");
    m2.add("t1", 'b', "t2", {StackAction::push("B")}); // push at position 2
    m2.add("t2", 'a', "t3");
    m2.add("t3", 'd', "t4", {StackAction::push("D")});
    m2.add("t4", 'd', "t4", {StackAction::push("D")});
    m2.add("t4", 'e', "t5", {StackAction::pop("D")});
    m2.add("t5", 'e', "t5", {StackAction::pop("D")});
    m2.add("t3", 'f', "t6", {StackAction::pop("B")}); // pop at the f, position 2n+4
    m2.add("t5", 'f', "t6", {StackAction::pop("B")});
    m2.add("t6", 'g', "t6");
    m2.add("t6", 'h', "t6");

    Pda both;
    both.name = "refutation-intersection";
    both.input_alphabet = "abdefgh";
    both.states = {"r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"};
    both.stack_alphabet = {"$", "D", "G"};
    both.start = "r0";
    both.accept = {"r6", "r8"};
    both.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    both.add("r0", 'a', "r1").add("r1", 'b', "r2").add("r2", 'a', "r3");
    both.add("r3", 'd', "r4", {StackAction::push("D")});
    both.add("r4", 'd', "r4", {StackAction::push("D")});
    both.add("r4", 'e', "r5", {StackAction::pop("D")});
    both.add("r5", 'e', "r5", {StackAction::pop("D")});
    both.add("r3", 'f', "r6").add("r5", 'f', "r6");
    both.add("r6", 'g', "r7", {StackAction::push("G")});
    both.add("r7", 'g', "r7", {StackAction::push("G")});
    both.add("r7", 'h', "r8", {StackAction::pop("G")});
    both.add("r8", 'h', "r8", {StackAction::pop("G")});

    b.pair = {m1, m2};
    b.intersection = both;
    b.family = [](std::size_t n) { return "aba" + repeat('d', n) + repeat('e', n) + "f"; };
    b.family_sizes = {1, 2, 3, 4, 5};
    b.expected.regime = Regime::BoundedInnerUnboundedGap;
    b.expected.max_gap = [](std::size_t n) { return 2 * n + 1; };
    b.expected.max_inner = [](std::size_t) { return std::size_t{1}; };
    b.expected.product_d = 1;
    return b;
}

inline std::pair<Pda, Pda> side_machines(const JointSpec& j, const std::string& base) {
    JointSpec s1(j.alphabets, j.c1, {}, base + "-M1");
    JointSpec s2(j.alphabets, {}, j.c2, base + "-M2");
    return {build_joint_pda(s1), build_joint_pda(s2)};
}

inline std::string four_blocks(std::size_t n) {
    return repeat('a', n) + repeat('b', n) + repeat('c', n) + repeat('d', n);
}

inline ExampleBundle abcd() {
    ExampleBundle b;
    b.name = "abcd";
    b.description = "#a=#c and #b=#d over a*b*c*d*: crossing arcs (1,3) x (2,4)";
    b.joint = JointSpec({"a", "b", "c", "d"}, {{1, 3}}, {{2, 4}}, "abcd");
    b.pair = side_machines(*b.joint, "abcd");
    b.family = four_blocks;
    b.family_sizes = {1, 2, 3, 4, 5};
    b.expected.verdict = Outcome::NotCFL;
    b.expected.violation = ViolationKind::CrossingArcs;
    b.expected.regime = Regime::GrowingInner;
    b.expected.max_gap = [](std::size_t n) { return 2 * n - 1; };
    b.expected.max_inner = [](std::size_t n) { return 2 * n - 1; };
    return b;
}

inline ExampleBundle abc_shared_endpoint() {
    ExampleBundle b;
    b.name = "abc-shared-endpoint";
    b.description = "a^n b^n c* and a* b^n c^n: arcs (1,2) and (2,3) share block 2";
    b.joint = JointSpec({"a", "b", "c"}, {{1, 2}}, {{2, 3}}, "abc-shared-endpoint");
    b.pair = side_machines(*b.joint, "abc");
    b.family = [](std::size_t n) { return repeat('a', n) + repeat('b', n) + repeat('c', n); };
    b.family_sizes = {1, 2, 3, 4, 5};
    b.expected.verdict = Outcome::NotCFL;
    b.expected.violation = ViolationKind::SharedEndpoint;
    // LIFO matchings of a^n b^n c^n still cross inside block b.
    b.expected.regime = Regime::GrowingInner;
    b.expected.max_gap = [](std::size_t n) { return 2 * n - 2; };
    b.expected.max_inner = [](std::size_t n) { return 2 * n - 2; };
    return b;
}

inline ExampleBundle nested() {
    ExampleBundle b;
    b.name = "nested";
    b.description = "a^m b^n c^n d^m: arcs (1,4) and (2,3) nest";
    b.joint = JointSpec({"a", "b", "c", "d"}, {{1, 4}}, {{2, 3}}, "nested");
    b.pair = side_machines(*b.joint, "nested");
    b.family = four_blocks;
    b.family_sizes = {1, 2, 3, 4, 5};
    b.expected.verdict = Outcome::CFL;
    b.expected.regime = Regime::NoCrossings;
    return b;
}

inline ExampleBundle disjoint_blocks() {
    ExampleBundle b;
    b.name = "disjoint-blocks";
    b.description = "a^n b^n c^m d^m: the two machines use disjoint stack regions";
    b.joint = JointSpec({"a", "b", "c", "d"}, {{1, 2}}, {{3, 4}}, "disjoint-blocks");
    b.pair = side_machines(*b.joint, "disjoint");
    b.family = four_blocks;
    b.family_sizes = {1, 2, 3, 4, 5};
    b.expected.verdict = Outcome::CFL;
    b.expected.regime = Regime::NoCrossings;
    b.expected.product_k = 0;
    b.expected.product_d = 1;
    return b;
}

/// a^n b^2n: each a pushes twice, the second push through an auxiliary step.
inline ExampleBundle aux_pusher() {
    ExampleBundle b;
    b.name = "aux-pusher";
    b.description = "a^n b^2n with a reading push chained to an auxiliary push";
    Pda p;
    p.name = "aux-pusher";
    p.input_alphabet = "ab";
    p.states = {"p", "x", "q"};
    p.stack_alphabet = {"$", "X"};
    p.start = "p";
    p.accept = {"p", "q"};
    p.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    p.add("p", 'a', "x", {StackAction::push("X")});
    p.add_auxiliary("x", "p", "X");
    p.add("p", 'b', "q", {StackAction::pop("X")});
    p.add("q", 'b', "q", {StackAction::pop("X")});
    b.single = p;
    b.family = [](std::size_t n) { return repeat('a', n) + repeat('b', 2 * n); };
    b.family_sizes = {1, 2, 3};
    return b;
}

inline Production rule(std::string head, std::vector<std::string> body) { return {std::move(head), std::move(body)}; }

inline ExampleBundle grammar_bundle(std::string name, std::string description, Cfg g) {
    ExampleBundle b;
    b.name = std::move(name);
    b.description = std::move(description);
    b.grammar = std::move(g);
    return b;
}

inline std::vector<ExampleBundle> grammars() {
    std::vector<ExampleBundle> out;
    out.push_back(grammar_bundle("grammar-anbn", "S -> a S b | eps",
                                 Cfg{{"S"}, "ab", {rule("S", {"a", "S", "b"}), rule("S", {})}, "S"}));
    out.push_back(grammar_bundle(
        "grammar-dyck", "S -> ( S ) S | eps",
        Cfg{{"S"}, "()", {rule("S", {"(", "S", ")", "S"}), rule("S", {})}, "S"}));
    out.push_back(grammar_bundle("grammar-palindrome", "S -> 0 S 0 | 1 S 1 | 0 | 1 | eps",
                                 Cfg{{"S"},
                                     "01",
                                     {rule("S", {"0", "S", "0"}), rule("S", {"1", "S", "1"}), rule("S", {"0"}),
                                      rule("S", {"1"}), rule("S", {})},
                                     "S"}));
    out.push_back(grammar_bundle("grammar-left-recursive", "A -> A a | b",
                                 Cfg{{"A"}, "ab", {rule("A", {"A", "a"}), rule("A", {"b"})}, "A"}));
    out.push_back(grammar_bundle(
        "grammar-expr", "E -> E + T | T, T -> T * F | F, F -> ( E ) | x",
        Cfg{{"E", "T", "F"},
            "+*()x",
            {rule("E", {"E", "+", "T"}), rule("E", {"T"}), rule("T", {"T", "*", "F"}), rule("T", {"F"}),
             rule("F", {"(", "E", ")"}), rule("F", {"x"})},
            "E"}));
    return out;
}

} // namespace corpus_detail

namespace corpus {

inline std::vector<ExampleBundle> all() {
    std::vector<ExampleBundle> out{corpus_detail::interleaved_palindrome(), corpus_detail::gap_refutation(),
                                   corpus_detail::abcd(),
                                   corpus_detail::abc_shared_endpoint(),
                                   corpus_detail::nested(),
                                   corpus_detail::disjoint_blocks(),
                                   corpus_detail::aux_pusher()};
    for (auto& g : corpus_detail::grammars()) out.push_back(std::move(g));
    return out;
}

inline std::vector<std::string> list() {
    std::vector<std::string> names;
    for (const auto& b : all()) names.push_back(b.name);
    return names;
}

inline ExampleBundle get(const std::string& name) {
    for (auto& b : all())
        if (b.name == name) return b;
    throw UnknownExample("no corpus example named '" + name + "'");
}

} // namespace corpus

} // namespace isl
