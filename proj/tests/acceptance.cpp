// Acceptance run: one PASS/FAIL line per criterion, indented detail lines below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "isl/arcs.hpp"
#include "isl/blocks.hpp"
#include "isl/corpus.hpp"
#include "isl/grammar.hpp"
#include "isl/products.hpp"
#include "isl/pumping.hpp"
#include "isl/report.hpp"
#include "oracles.hpp"

using namespace isl;

namespace {

struct Result {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            details.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { details.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

oracle::Blocks joint_oracle(const JointSpec& j) {
    oracle::Blocks o{j.alphabets, {}};
    for (const auto& a : j.c1) o.constraints.push_back({a.i, a.j});
    for (const auto& a : j.c2) o.constraints.push_back({a.i, a.j});
    return o;
}

std::string describe_factorization(const std::string& w, const Factorization& f) {
    std::ostringstream s;
    auto show = [&](char p) {
        auto t = part(w, f, p);
        return t.empty() ? std::string("eps") : std::string(t);
    };
    s << "u=" << show('u') << " v=" << show('v') << " x=" << show('x') << " y=" << show('y') << " z=" << show('z');
    return s.str();
}

std::string describe_linkage(const std::string& label, const std::string& w, const LinkageVerdict& v) {
    std::string s = label + (v.holds ? " holds" : " fails");
    if (v.vacuous) s += " (vacuous)";
    if (v.counterexample)
        s += ": " + describe_factorization(w, *v.counterexample) + " pumps to " + v.pumped_string;
    s += " [" + std::to_string(v.enumerated) + " factorizations]";
    return s;
}

const SearchLimits big{50'000'000};

// 1 --------------------------------------------------------------------------
Result verdicts() {
    Result o;
    auto t0 = Clock::now();
    auto abcd = characterize(corpus::get("abcd").joint.value());
    auto abc = characterize(corpus::get("abc-shared-endpoint").joint.value());
    auto nested = characterize(JointSpec({"a", "b", "c", "d"}, {{1, 4}}, {{2, 3}}));
    double t = seconds_since(t0);
    o.note("abcd: " + to_string(abcd));
    o.note("abc: " + to_string(abc));
    o.note("nested: " + to_string(nested));
    o.require(abcd.outcome == isl::Outcome::NotCFL && abcd.reason &&
                  abcd.reason->kind == ViolationKind::CrossingArcs,
              "abcd verdict");
    o.require(abc.outcome == isl::Outcome::NotCFL && abc.reason && abc.reason->kind == ViolationKind::SharedEndpoint,
              "abc verdict");
    o.require(nested.outcome == isl::Outcome::CFL && !nested.reason, "nested verdict");
    o.require(t < 1.0, "runtime " + fmt_seconds(t) + " < 1s");
    return o;
}

// 2 --------------------------------------------------------------------------
Result joint_pda() {
    Result o;
    auto t0 = Clock::now();
    std::vector<JointSpec> specs;
    for (const auto& b : corpus::all())
        if (b.joint && is_jointly_well_nested(*b.joint).jointly_well_nested) specs.push_back(*b.joint);
    const std::size_t from_corpus = specs.size();
    std::mt19937 rng(20240917);
    for (int i = 0; i < 50; ++i) specs.push_back(random_joint_spec(rng, 5));
    std::size_t mismatches = 0, strings = 0;
    for (const auto& j : specs) {
        auto got = enumerate_language(build_joint_pda(j), 10, big);
        auto oracle = joint_oracle(j);
        auto expected = oracle.language(10);
        strings += expected.size();
        std::size_t m = 0;
        for (const auto& w : got)
            if (!expected.contains(w) || !oracle(w)) ++m;
        for (const auto& w : expected)
            if (!got.contains(w)) ++m;
        if (m) o.note("mismatch on " + (j.name.empty() ? std::string("random spec") : j.name) + ": " +
                      std::to_string(m));
        mismatches += m;
    }
    double t = seconds_since(t0);
    o.note(std::to_string(from_corpus) + " corpus specs + 50 random, " + std::to_string(strings) +
           " member strings, " + std::to_string(mismatches) + " mismatches, " + fmt_seconds(t));
    o.require(mismatches == 0, "zero mismatches");
    o.require(t < 300.0, "runtime < 5 min");
    return o;
}

// 3 --------------------------------------------------------------------------
Result gap_refutation() {
    Result o;
    auto b = corpus::get("gap-refutation");
    for (std::size_t n = 1; n <= 5; ++n) {
        auto a = analyze_pair(b.pair->first, b.pair->second, b.family(n));
        std::size_t gap = 0;
        bool inner_one = !a.crossings.empty();
        for (const auto& c : a.crossings) {
            gap = std::max(gap, c.measures.gap);
            inner_one = inner_one && c.measures.inner == 1;
        }
        o.note("n=" + std::to_string(n) + ": " + std::to_string(a.crossings.size()) + " crossing(s), gap=" +
               std::to_string(gap) + " inner=1: " + (inner_one ? "yes" : "no"));
        o.require(inner_one, "inner measure 1 at n=" + std::to_string(n));
        o.require(gap == 2 * n + 1, "gap 2n+1 at n=" + std::to_string(n));
    }
    auto r = classify_bundle(b, {1, 2, 3, 4, 5});
    o.note("classification: " + to_string(r.regime));
    o.require(r.regime == Regime::BoundedInnerUnboundedGap, "bounded-inner-unbounded-gap");
    return o;
}

// 4 --------------------------------------------------------------------------
Result buffered() {
    Result o;
    auto t0 = Clock::now();
    auto b = corpus::get("gap-refutation");
    auto p = buffered_product(b.pair->first, b.pair->second, 1);
    auto got = enumerate_language(p, 12, big);
    auto expected = oracle::refutation_language(12);
    std::size_t mismatches = 0;
    for (const auto& w : got)
        if (!expected.contains(w) || !oracle::refutation(w)) ++mismatches;
    for (const auto& w : expected)
        if (!got.contains(w)) ++mismatches;
    std::size_t max_occupancy = 0, runs = 0;
    bool capped = false;
    const std::size_t cap = 256;
    for (const auto& w : got) {
        auto rs = enumerate_runs(p, w, cap);
        capped = capped || rs.size() == cap;
        runs += rs.size();
        for (const auto& r : rs)
            for (const auto& s : r.steps)
                for (const auto& e : s.label.events) max_occupancy = std::max(max_occupancy, e.buffer_after);
    }
    double t = seconds_since(t0);
    o.note(std::to_string(got.size()) + " strings, " + std::to_string(mismatches) + " mismatches, " +
           std::to_string(runs) + " accepting runs, max buffer occupancy " + std::to_string(max_occupancy) + ", " +
           fmt_seconds(t));
    o.require(mismatches == 0, "zero mismatches");
    o.require(!capped, "all accepting runs enumerated (cap " + std::to_string(cap) + ")");
    o.require(max_occupancy <= 8, "buffer occupancy <= 8");
    o.require(t < 300.0, "runtime < 5 min");
    return o;
}

// 5 --------------------------------------------------------------------------
Result displacement() {
    Result o;
    auto b = corpus::get("interleaved-palindrome");
    const Pda& m1 = b.pair->first;
    const Pda& m2 = b.pair->second;
    auto p = displacement_product(m1, m2, 1);
    auto got = enumerate_language(p, 10, big);
    std::size_t mismatches = 0, members = 0;
    for (const auto& w : oracle::all_strings("01", 10)) {
        bool both = accepts(m1, w).accepted && accepts(m2, w).accepted;
        bool filter = oracle::interleaved_palindrome(w);
        members += both;
        if (both != got.contains(w) || filter != both) ++mismatches;
    }
    std::size_t max_displaced = 0, runs = 0;
    bool capped = false;
    const std::size_t cap = 256;
    for (const auto& w : got) {
        auto rs = enumerate_runs(p, w, cap);
        capped = capped || rs.size() == cap;
        runs += rs.size();
        for (const auto& r : rs)
            for (const auto& s : r.steps)
                for (const auto& e : s.label.events)
                    if (e.kind == ActionKind::Pop) max_displaced = std::max(max_displaced, e.displaced);
    }
    o.note(std::to_string(got.size()) + " product strings, " + std::to_string(members) +
           " in both machines, " + std::to_string(mismatches) + " mismatches, " + std::to_string(runs) +
           " accepting runs, max displacement per pop " + std::to_string(max_displaced));
    o.require(mismatches == 0, "zero mismatches");
    o.require(!capped, "all accepting runs enumerated (cap " + std::to_string(cap) + ")");
    o.require(max_displaced <= 2, "displacement per pop <= 2");
    return o;
}

// 6 --------------------------------------------------------------------------
template <class P>
void check_reach(Result& o, const std::string& label, const P& p, std::size_t len) {
    auto reach = reachable_composite_states(p, len, big);
    auto bound = state_bound(p);
    o.note(label + ": " + std::to_string(reach) + " composite states reached up to length " + std::to_string(len) +
           ", bound " + bound.str());
    o.require(BigInt(reach) <= bound, label + " within bound");
}

Result state_bounds() {
    Result o;
    struct Tuple {
        ProductKind kind;
        std::size_t q1, q2, g1, g2, param;
    };
    const Tuple tuples[] = {
        {ProductKind::Displacement, 4, 4, 3, 3, 1}, {ProductKind::Displacement, 7, 7, 3, 3, 0},
        {ProductKind::Displacement, 10, 3, 5, 2, 4}, {ProductKind::Displacement, 1, 1, 1, 1, 30},
        {ProductKind::Displacement, 12, 9, 17, 4, 11}, {ProductKind::Buffered, 7, 7, 3, 3, 1},
        {ProductKind::Buffered, 2, 3, 4, 5, 2},       {ProductKind::Buffered, 9, 9, 9, 9, 5},
        {ProductKind::Buffered, 1, 1, 1, 1, 16},      {ProductKind::Buffered, 31, 5, 6, 8, 7},
    };
    std::size_t agree = 0;
    for (const auto& t : tuples) {
        auto got = state_bound(t.kind, t.q1, t.q2, t.g1, t.g2, t.param).str();
        auto want = oracle::gmp_state_bound(t.kind == ProductKind::Buffered, t.q1, t.q2, t.g1, t.g2, t.param);
        if (got == want) ++agree;
        else o.note("disagreement: " + got + " vs " + want);
    }
    o.note(std::to_string(agree) + "/10 tuples agree with the GMP evaluation");
    o.require(agree == 10, "all tuples agree");

    auto pal = corpus::get("interleaved-palindrome");
    auto dis = corpus::get("disjoint-blocks");
    auto ref = corpus::get("gap-refutation");
    auto abcd = corpus::get("abcd");
    check_reach(o, "palindrome k=1", displacement_product(pal.pair->first, pal.pair->second, 1), 10);
    check_reach(o, "disjoint k=0", displacement_product(dis.pair->first, dis.pair->second, 0), 10);
    check_reach(o, "disjoint D=1", buffered_product(dis.pair->first, dis.pair->second, 1), 10);
    check_reach(o, "refutation D=1", buffered_product(ref.pair->first, ref.pair->second, 1), 12);
    check_reach(o, "abcd k=1", displacement_product(abcd.pair->first, abcd.pair->second, 1), 12);
    check_reach(o, "abcd D=1", buffered_product(abcd.pair->first, abcd.pair->second, 1), 12);
    return o;
}

// 7 --------------------------------------------------------------------------
Result linkages() {
    Result o;
    auto t0 = Clock::now();
    const std::string w = "aaaabbbbccccdddd";
    const auto seg = Segmentation::from_lengths(4, 4, 4, 4);
    const oracle::Blocks l{{"a", "b", "c", "d"}, {{1, 3}, {2, 4}}};
    const oracle::Blocks l1{{"a", "b", "c", "d"}, {{1, 3}}};
    const std::size_t all = 20 * 19 * 18 * 17 / 24;

    Oracle both([&](std::string_view s) { return l(s); }, "intersection");
    auto v13 = check_linkage(both, w, seg, {1, 3});
    auto v24 = check_linkage(both, w, seg, {2, 4});
    o.note(describe_linkage("intersection (P1,P3)", w, v13));
    o.note(describe_linkage("intersection (P2,P4)", w, v24));
    o.require(v13.enumerated == all && v24.enumerated == all, "exhaustive enumeration");
    o.require(v13.holds, "(P1,P3) holds against the intersection");
    o.require(v24.holds, "(P2,P4) holds against the intersection");

    Oracle alone([&](std::string_view s) { return l1(s); }, "L1");
    auto a13 = check_linkage(alone, w, seg, {1, 3});
    o.note(describe_linkage("L1 alone (P1,P3)", w, a13));
    bool shape = !a13.holds && a13.counterexample && part(w, *a13.counterexample, 'v').empty() &&
                 a13.counterexample->b == 3 && part(w, *a13.counterexample, 'x').front() == 'a';
    o.require(shape, "L1-alone counterexample has v empty and x starting with the last a");

    LinkageOptions bounded;
    bounded.max_span = 4;
    auto b13 = check_linkage(both, w, seg, {1, 3}, bounded);
    auto b24 = check_linkage(both, w, seg, {2, 4}, bounded);
    o.note("info: with |vxy| <= 4, (P1,P3) " + std::string(b13.holds ? "holds" : "fails") + " and (P2,P4) " +
           (b24.holds ? "holds" : "fails"));
    double t = seconds_since(t0);
    o.note("runtime " + fmt_seconds(t));
    o.require(t < 120.0, "runtime < 2 min");
    return o;
}

// 8 --------------------------------------------------------------------------
Result hypotheses() {
    Result o;
    auto j = corpus::get("abcd").joint.value();
    Oracle l([&](std::string_view s) { return joint_oracle(j)(s); }, "abcd");
    for (std::size_t n : {2u, 3u, 4u}) {
        auto c = segments_and_linkages(j, std::nullopt, n);
        auto r = check_crossing_hypotheses(l, c.word, c.segments, HypothesisMode::FourLarge, n);
        o.note("abcd n=" + std::to_string(n) + ": " + r.summary + "; " + r.size_detail);
        if (!r.linkage13.holds) o.note("  " + describe_linkage("(P1,P3)", c.word, r.linkage13));
        if (!r.linkage24.holds) o.note("  " + describe_linkage("(P2,P4)", c.word, r.linkage24));
        o.require(r.all_hold, "abcd hypotheses at n=" + std::to_string(n));
        LinkageOptions bounded;
        bounded.max_span = n;
        auto rb = check_crossing_hypotheses(l, c.word, c.segments, HypothesisMode::FourLarge, n, bounded);
        o.note("  info: with |vxy| <= " + std::to_string(n) + ": " + rb.summary);
    }

    auto b = corpus::get("gap-refutation");
    Oracle ref([](std::string_view s) { return oracle::refutation(s); }, "refutation");
    for (std::size_t n = 1; n <= 5; ++n) {
        auto a = analyze_pair(b.pair->first, b.pair->second, b.family(n));
        for (const auto& c : a.crossings) {
            auto r = check_crossing_hypotheses(ref, a.word, c.segments, HypothesisMode::InnerGrowing, n);
            o.note("refutation n=" + std::to_string(n) + ": " + r.summary + "; " + r.size_detail);
            if (n >= 2) o.require(!r.size_condition, "inner-growth condition fails at n=" + std::to_string(n));
            o.require(!r.all_hold, "refutation hypotheses not all satisfied at n=" + std::to_string(n));
        }
    }
    return o;
}

// 9 --------------------------------------------------------------------------
std::vector<std::pair<std::string, Pda>> corpus_machines() {
    std::vector<std::pair<std::string, Pda>> out;
    for (const auto& b : corpus::all()) {
        if (b.pair) {
            out.push_back({b.name + "/M1", b.pair->first});
            out.push_back({b.name + "/M2", b.pair->second});
        }
        if (b.intersection) out.push_back({b.name + "/intersection", *b.intersection});
        if (b.single) out.push_back({b.name, *b.single});
        if (b.grammar) out.push_back({b.name + "/gnf", gnf_to_pda(to_gnf(to_cnf(*b.grammar)))});
        if (b.joint && is_jointly_well_nested(*b.joint).jointly_well_nested)
            out.push_back({b.name + "/joint", build_joint_pda(*b.joint)});
    }
    return out;
}

std::vector<Arc> random_nested(std::mt19937& rng, std::size_t n, int owner) {
    std::vector<Arc> arcs;
    std::vector<std::size_t> open;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t p = 1; p <= n; ++p) {
        if (!open.empty() && coin(rng)) {
            arcs.push_back({open.back(), p, owner, 1});
            open.pop_back();
        } else if (coin(rng)) {
            open.push_back(p);
        }
    }
    return arcs;
}

Result well_nestedness() {
    Result o;
    std::size_t machines = 0, strings = 0, runs = 0, bad = 0;
    for (const auto& [name, pda] : corpus_machines()) {
        ++machines;
        PdaMachine m(pda);
        std::size_t local_bad = 0;
        for (const auto& w : enumerate_language(m, 10, big)) {
            ++strings;
            for (const auto& r : enumerate_runs(m, w, 20)) {
                ++runs;
                if (!is_well_nested(extract_matching(m, w, r).arcs).well_nested) ++local_bad;
            }
        }
        if (local_bad) o.note(name + ": " + std::to_string(local_bad) + " crossing matchings");
        bad += local_bad;
    }
    o.note(std::to_string(machines) + " machines, " + std::to_string(strings) + " accepted strings, " +
           std::to_string(runs) + " runs, " + std::to_string(bad) + " non-well-nested matchings");
    o.require(bad == 0, "every matching is well-nested");

    std::mt19937 rng(4242);
    std::size_t disagreements = 0, crossing_cases = 0;
    for (int t = 0; t < 200; ++t) {
        auto a = random_nested(rng, 16, 1), b = random_nested(rng, 16, 2);
        std::vector<Arc> both = a;
        both.insert(both.end(), b.begin(), b.end());
        std::vector<std::pair<std::size_t, std::size_t>> pa, pb;
        for (const auto& x : a) pa.push_back({x.push_pos, x.pop_pos});
        for (const auto& x : b) pb.push_back({x.push_pos, x.pop_pos});
        bool u = union_well_nested(a, b);
        bool direct = is_well_nested(both).well_nested;
        bool naive = oracle::count_crossings(pa, pb) == 0;
        crossing_cases += !naive;
        if (u != direct || u != naive) ++disagreements;
    }
    o.note("200 random pairs (" + std::to_string(crossing_cases) + " with crossings), " +
           std::to_string(disagreements) + " disagreements");
    o.require(disagreements == 0, "union_well_nested agrees with is_well_nested of the union");
    return o;
}

// 10 -------------------------------------------------------------------------
Result grammar_pipeline() {
    Result o;
    std::size_t mismatches = 0;
    for (const auto& b : corpus_detail::grammars()) {
        auto cnf = to_cnf(*b.grammar);
        auto pda = gnf_to_pda(to_gnf(cnf));
        PdaMachine m(pda);
        std::size_t local = 0, members = 0, total = 0;
        for (const auto& w : oracle::all_strings(b.grammar->terminals, 8)) {
            ++total;
            bool c = cyk_membership(cnf, w);
            members += c;
            if (c != accepts(m, w, big).accepted) ++local;
        }
        o.note(b.name + ": " + std::to_string(total) + " strings, " + std::to_string(members) + " members, " +
               std::to_string(local) + " mismatches");
        mismatches += local;
    }
    o.require(mismatches == 0, "zero mismatches");
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"characterization verdicts", verdicts},
        {"joint PDA equals block membership", joint_pda},
        {"gap-refutation crossing numbers", gap_refutation},
        {"buffered product language and occupancy", buffered},
        {"displacement product language and displacement", displacement},
        {"state-bound formulas and reachable counts", state_bounds},
        {"linkage checker on a^4 b^4 c^4 d^4", linkages},
        {"hypothesis reports", hypotheses},
        {"matching well-nestedness", well_nestedness},
        {"grammar pipeline", grammar_pipeline},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.details.push_back(std::string("exception: ") + e.what());
        }
        failed += !r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << fmt_seconds(seconds_since(t0)) << ")\n";
        for (const auto& d : r.details) std::cout << "    " << d << "\n";
        std::cout.flush();
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
