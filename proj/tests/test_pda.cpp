#include <catch2/catch_amalgamated.hpp>

#include "isl/corpus.hpp"
#include "isl/pda.hpp"
#include "oracles.hpp"

using namespace isl;

namespace {

Pda anbn() {
    Pda p;
    p.name = "anbn";
    p.input_alphabet = "ab";
    p.states = {"p", "q"};
    p.stack_alphabet = {"$", "A"};
    p.start = "p";
    p.accept = {"p", "q"};
    p.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    p.add("p", 'a', "p", {StackAction::push("A")});
    p.add("p", 'b', "q", {StackAction::pop("A")});
    p.add("q", 'b', "q", {StackAction::pop("A")});
    return p;
}

bool has_message(const std::vector<Diagnostic>& d, const std::string& part) {
    return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.message.find(part) != std::string::npos; });
}

} // namespace

TEST_CASE("normal-form validation accepts the corpus machines") {
    for (const auto& b : corpus::all()) {
        if (b.pair) {
            CHECK(validate_normal_form(b.pair->first).empty());
            CHECK(validate_normal_form(b.pair->second).empty());
        }
        if (b.single) CHECK(validate_normal_form(*b.single).empty());
        if (b.intersection) CHECK(validate_normal_form(*b.intersection).empty());
    }
}

TEST_CASE("normal-form validation reports each defect") {
    SECTION("two stack operations on one read") {
        Pda p = anbn();
        p.transitions[0].ops.push_back(StackAction::push("A"));
        auto d = validate_normal_form(p);
        REQUIRE(d.size() == 1);
        CHECK(d[0].transition == std::size_t{0});
    }
    SECTION("epsilon transition that is not an auxiliary push") {
        Pda p = anbn();
        p.add("p", std::nullopt, "q");
        CHECK_FALSE(validate_normal_form(p).empty());
    }
    SECTION("auxiliary push from a state entered by a non-pushing read") {
        Pda p = anbn();
        p.add_auxiliary("q", "q", "A");
        CHECK_FALSE(validate_normal_form(p).empty());
    }
    SECTION("chained auxiliary pushes") {
        Pda p = corpus::get("aux-pusher").single.value();
        p.states.push_back("y");
        p.transitions[1].to = "y";
        p.add_auxiliary("y", "p", "X");
        CHECK_FALSE(validate_normal_form(p).empty());
    }
    SECTION("dangling references") {
        Pda p = anbn();
        p.add("p", 'a', "nowhere");
        p.accept.push_back("ghost");
        p.transitions[1].ops[0].symbol = "Q";
        auto d = validate_normal_form(p);
        CHECK(has_message(d, "nowhere"));
        CHECK(has_message(d, "ghost"));
        CHECK(has_message(d, "Q"));
    }
}

TEST_CASE("PdaMachine rejects malformed machines") {
    Pda p = anbn();
    p.states.push_back("p");
    CHECK_THROWS_AS(PdaMachine(p), InvalidInput);
    p = anbn();
    p.add("p", 'z', "p");
    CHECK_THROWS_AS(PdaMachine(p), InvalidInput);
    p = anbn();
    p.start = "missing";
    CHECK_THROWS_AS(PdaMachine(p), InvalidInput);
}

TEST_CASE("step from the initial configuration of the palindrome machine on 0110") {
    auto b = corpus::get("interleaved-palindrome");
    PdaMachine m(b.pair->first);
    auto next = step(m, m.initial(), "0110", 0);
    // push Z0 into push_even, or move to pop_even by popping (fails on empty) or skipping.
    std::set<std::pair<std::string, std::size_t>> got;
    for (const auto& c : next) got.insert({m.state_name(c.state), c.stack.size()});
    CHECK(got == std::set<std::pair<std::string, std::size_t>>{{"push_even", 2}, {"pop_even", 1}});
}

TEST_CASE("acceptance agrees with a direct oracle on all short strings") {
    PdaMachine m(anbn());
    for (const auto& w : oracle::all_strings("ab", 8)) {
        std::size_t a = std::count(w.begin(), w.end(), 'a');
        bool expected = w == std::string(a, 'a') + std::string(w.size() - a, 'b') && 2 * a == w.size();
        INFO(w);
        CHECK(accepts(m, w).accepted == expected);
    }
}

TEST_CASE("enumerate_language matches per-string acceptance") {
    auto b = corpus::get("interleaved-palindrome");
    PdaMachine m(b.pair->second);
    auto lang = enumerate_language(m, 8);
    for (const auto& w : oracle::all_strings("01", 8)) {
        INFO(w);
        CHECK(lang.contains(w) == accepts(m, w).accepted);
        CHECK(lang.contains(w) == oracle::parity_palindrome(w, 1));
    }
}

TEST_CASE("auxiliary pushes chain to their triggering read") {
    auto p = corpus::get("aux-pusher").single.value();
    PdaMachine m(p);
    CHECK(accepts(m, "abb").accepted);
    CHECK(accepts(m, "aabbbb").accepted);
    CHECK_FALSE(accepts(m, "aabbb").accepted);
    CHECK_FALSE(accepts(m, "ab").accepted);
    auto r = accepts(m, "aabbbb");
    REQUIRE(r.run);
    CHECK(check_run(m, "aabbbb", *r.run).empty());
    std::size_t aux = 0;
    for (const auto& s : r.run->steps)
        if (!s.reads) {
            ++aux;
            CHECK(p.transitions[s.label].auxiliary);
        }
    CHECK(aux == 2);
    auto lang = enumerate_language(m, 9);
    CHECK(lang == std::set<std::string>{"", "abb", "aabbbb", "aaabbbbbb"});
}

TEST_CASE("check_run detects tampered runs") {
    PdaMachine m(anbn());
    auto r = accepts(m, "aabb");
    REQUIRE(r.run);
    CHECK(check_run(m, "aabb", *r.run).empty());
    auto bad = *r.run;
    bad.steps.pop_back();
    CHECK_FALSE(check_run(m, "aabb", bad).empty());
    bad = *r.run;
    bad.steps[0].stack_depth_after = 7;
    CHECK_FALSE(check_run(m, "aabb", bad).empty());
}

TEST_CASE("run enumeration finds every nondeterministic choice") {
    Pda p;
    p.name = "ambiguous";
    p.input_alphabet = "a";
    p.states = {"p"};
    p.stack_alphabet = {"$", "A"};
    p.start = "p";
    p.accept = {"p"};
    p.add("p", 'a', "p", {StackAction::push("A")});
    p.add("p", 'a', "p");
    PdaMachine m(p);
    auto runs = enumerate_runs(m, "aaa", 20);
    CHECK(runs.size() == 8);
    for (const auto& r : runs) CHECK(check_run(m, "aaa", r).empty());
    CHECK(enumerate_runs(m, "aaa", 5).size() == 5);
    CHECK(enumerate_runs(m, "aab", 20).empty());
}

TEST_CASE("search budget raises LimitExceeded instead of answering") {
    auto b = corpus::get("interleaved-palindrome");
    PdaMachine m(b.pair->first);
    CHECK_THROWS_AS(enumerate_language(m, 10, SearchLimits{50}), LimitExceeded);
}

TEST_CASE("final-state acceptance ignores leftover stack") {
    Pda p = anbn();
    p.acceptance_mode = AcceptanceMode::FinalState;
    CHECK(accepts(p, "aab").accepted);
    p.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    CHECK_FALSE(accepts(p, "aab").accepted);
}
