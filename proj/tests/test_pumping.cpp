#include <catch2/catch_amalgamated.hpp>

#include "isl/blocks.hpp"
#include "isl/corpus.hpp"
#include "isl/pumping.hpp"
#include "oracles.hpp"

using namespace isl;

namespace {

const oracle::Blocks abcd_l{{"a", "b", "c", "d"}, {{1, 3}, {2, 4}}};
const oracle::Blocks abcd_l1{{"a", "b", "c", "d"}, {{1, 3}}};

std::size_t choose4(std::size_t n) { return n * (n - 1) * (n - 2) * (n - 3) / 24; }

} // namespace

TEST_CASE("factorization parts and pumping") {
    Factorization f{1, 2, 4, 5};
    std::string w = "abcdef";
    CHECK(part(w, f, 'u') == "a");
    CHECK(part(w, f, 'v') == "b");
    CHECK(part(w, f, 'x') == "cd");
    CHECK(part(w, f, 'y') == "e");
    CHECK(part(w, f, 'z') == "f");
    CHECK(pumped(w, f) == "abbcdeef");
    CHECK(pumped(w, f, 0) == "acdf");
}

TEST_CASE("factorization enumeration is exhaustive and ordered by span") {
    for (std::size_t n : {0u, 1u, 5u, 9u}) {
        std::size_t count = 0, last_span = 0;
        bool ordered = true;
        std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
        for_each_factorization(n, [&](const Factorization& f) {
            ++count;
            ordered = ordered && f.d - f.a >= last_span;
            last_span = f.d - f.a;
            seen.insert({f.a, f.b, f.c, f.d});
            return true;
        });
        CHECK(count == choose4(n + 4));
        CHECK(seen.size() == count);
        CHECK(ordered);
    }
}

TEST_CASE("linkages on a^n b^n") {
    Oracle o([](std::string_view w) { return oracle::Blocks{{"a", "b"}, {{1, 2}}}(w); });
    std::string w = "aaabbb";
    auto seg = Segmentation::from_lengths(3, 0, 3, 0);
    auto v = check_linkage(o, w, seg, {1, 3});
    CHECK(v.holds);
    CHECK_FALSE(v.vacuous);
    CHECK(v.enumerated == choose4(10));
    CHECK(v.applicable > 0);
    auto vac = check_linkage(o, w, seg, {2, 4});
    CHECK(vac.holds);
    CHECK(vac.vacuous);
    CHECK(vac.enumerated == 0);
}

TEST_CASE("L1 alone: linkage (P1,P3) fails with an epsilon-v counterexample") {
    Oracle o([](std::string_view w) { return abcd_l1(w); });
    std::string w = "aaaabbbbccccdddd";
    auto v = check_linkage(o, w, Segmentation::from_lengths(4, 4, 4, 4), {1, 3});
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.counterexample);
    const auto& f = *v.counterexample;
    CHECK(part(w, f, 'v').empty());
    CHECK(part(w, f, 'x').front() == 'a');
    CHECK(f.b == 3);
    CHECK(abcd_l1(v.pumped_string));
    CHECK(v.enumerated == choose4(20));
}

TEST_CASE("intersection linkages on a^4b^4c^4d^4") {
    Oracle o([](std::string_view w) { return abcd_l(w); });
    std::string w = "aaaabbbbccccdddd";
    auto seg = Segmentation::from_lengths(4, 4, 4, 4);
    SECTION("bounded span: both hold") {
        LinkageOptions opt;
        opt.max_span = 4;
        CHECK(check_linkage(o, w, seg, {1, 3}, opt).holds);
        CHECK(check_linkage(o, w, seg, {2, 4}, opt).holds);
    }
    SECTION("unbounded span: long factorizations escape through the partner blocks") {
        // v=b, x=cccc, y=d touches P3 but not P1 and stays in L.
        auto v13 = check_linkage(o, w, seg, {1, 3});
        CHECK_FALSE(v13.holds);
        REQUIRE(v13.counterexample);
        CHECK(abcd_l(v13.pumped_string));
        CHECK(v13.counterexample->d - v13.counterexample->a > 4);
        auto v24 = check_linkage(o, w, seg, {2, 4});
        CHECK_FALSE(v24.holds);
        REQUIRE(v24.counterexample);
        CHECK(abcd_l(v24.pumped_string));
    }
}

TEST_CASE("checker preconditions") {
    Oracle o([](std::string_view w) { return abcd_l(w); });
    std::string w = "abcd";
    auto seg = Segmentation::from_lengths(1, 1, 1, 1);
    CHECK_THROWS_AS(check_linkage(o, "abdc", seg, {1, 3}), PreconditionViolated);
    CHECK_THROWS_AS(check_linkage(o, w, Segmentation::from_lengths(1, 1, 1, 0), {1, 3}), InvalidInput);
    CHECK_THROWS_AS(check_linkage(o, w, seg, {3, 1}), InvalidInput);
    LinkageOptions small;
    small.max_len = 3;
    CHECK_THROWS_AS(check_linkage(o, w, seg, {1, 3}, small), LimitExceeded);
}

TEST_CASE("oracle memoises and wraps foreign exceptions") {
    int calls = 0;
    Oracle o([&](std::string_view w) {
        ++calls;
        if (w == "boom") throw std::runtime_error("bad input");
        return w.size() % 2 == 0;
    });
    CHECK(o("ab"));
    CHECK(o("ab"));
    CHECK_FALSE(o("abc"));
    CHECK(calls == 2);
    CHECK(o.calls() == 2);
    CHECK_THROWS_AS(o("boom"), OracleFailure);
}

TEST_CASE("hypothesis reports") {
    Oracle o([](std::string_view w) { return abcd_l(w); });
    LinkageOptions bounded;
    bounded.max_span = 3;
    auto j = corpus::get("abcd").joint.value();
    auto c = segments_and_linkages(j, std::nullopt, 3);
    auto r = check_crossing_hypotheses(o, c.word, c.segments, HypothesisMode::FourLarge, 3, bounded);
    CHECK(r.size_condition);
    CHECK(r.all_hold);
    auto too_big = check_crossing_hypotheses(o, c.word, c.segments, HypothesisMode::FourLarge, 4, bounded);
    CHECK_FALSE(too_big.size_condition);
    CHECK_FALSE(too_big.all_hold);

    // Refutation family: inner segments of size 1 never reach n >= 2.
    Oracle ref([](std::string_view w) { return oracle::refutation(w); });
    std::string w = "abadddeeef";
    auto seg = Segmentation(w.size(), 1, 2, 3);
    auto rr = check_crossing_hypotheses(ref, w, seg, HypothesisMode::InnerGrowing, 3);
    CHECK_FALSE(rr.size_condition);
    CHECK_FALSE(rr.all_hold);
    CHECK(rr.size_detail.find("max(|P2|,|P3|)=1 < 3") != std::string::npos);
}

TEST_CASE("case trace labels and linkages") {
    auto seg = Segmentation::from_lengths(4, 4, 4, 4);
    auto at = [&](std::size_t a, std::size_t d) { return case_trace(seg, Factorization{a, a, d, d}); };
    CHECK(at(0, 2).label == CaseLabel::Case1);
    CHECK(at(0, 2).linkage == std::pair<int, int>{1, 3});
    CHECK(at(2, 6).label == CaseLabel::Case2);
    CHECK(at(5, 7).label == CaseLabel::Case3);
    CHECK(at(5, 7).linkage == std::pair<int, int>{2, 4});
    CHECK(at(6, 10).label == CaseLabel::Case4);
    CHECK(at(9, 11).label == CaseLabel::Case5);
    CHECK(at(10, 14).label == CaseLabel::Case6);
    CHECK(at(14, 16).label == CaseLabel::Case7);
    auto straddle = at(3, 9);
    CHECK(straddle.label == CaseLabel::MultiStraddle);
    CHECK(straddle.linkage == std::pair<int, int>{2, 4});
    CHECK_FALSE(at(0, 16).linkage);
}
