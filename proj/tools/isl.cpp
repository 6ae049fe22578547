// isl: command-line front end.
//
// Exit codes: 0 answer produced, 1 negative analysis result (rejection,
// mismatch, failed hypothesis), 2 malformed input or other error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isl/arcs.hpp"
#include "isl/blocks.hpp"
#include "isl/corpus.hpp"
#include "isl/errors.hpp"
#include "isl/grammar.hpp"
#include "isl/io.hpp"
#include "isl/pda.hpp"
#include "isl/products.hpp"
#include "isl/pumping.hpp"
#include "isl/report.hpp"

namespace {

using isl::io::Json;

struct Options {
    std::string pair;
    std::vector<std::string> pdas;
    std::string blocks;
    std::string grammar;
    std::string word;
    std::optional<std::size_t> n;
    std::size_t k = 1;
    std::size_t d = 1;
    std::size_t max_len = 10;
    std::size_t runs_cap = 20;
    std::size_t max_configs = isl::SearchLimits{}.max_configs;
    int which = 1;
    bool json = false;
    std::string svg;
    std::string out;
    std::string construct;
    std::string sizes;
    std::string mode = "four-large";
    std::string oracle = "intersection";
    std::optional<std::size_t> max_span;
    std::string show;
};

/// Flag errors that CLI11 cannot express; they exit 2 like parse errors.
struct UsageError : isl::Error {
    explicit UsageError(const std::string& w) : isl::Error("UsageError", w) {}
};

std::size_t env_cap(std::size_t requested) {
    if (const char* v = std::getenv("ISL_ORACLE_MAX_LEN")) {
        try {
            std::size_t cap = std::stoul(v);
            if (requested > cap) {
                std::cerr << "note: --max-len " << requested << " capped to " << cap << " by ISL_ORACLE_MAX_LEN\n";
                return cap;
            }
        } catch (const std::exception&) {
            throw UsageError(std::string("ISL_ORACLE_MAX_LEN must be a non-negative integer, got '") + v + "'");
        }
    }
    return requested;
}

isl::SearchLimits limits(const Options& o) { return {o.max_configs}; }

std::optional<isl::ExampleBundle> find_bundle(const std::string& name) {
    for (auto& b : isl::corpus::all())
        if (b.name == name) return b;
    return std::nullopt;
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

isl::Pda load_pda(const std::string& ref, int which) {
    if (is_file(ref)) return isl::io::pda_from_json(isl::io::load_file(ref));
    auto b = find_bundle(ref);
    if (!b) throw isl::UnknownExample("'" + ref + "' is neither a file nor a corpus example");
    if (b->single) return *b->single;
    if (b->pair) return which == 2 ? b->pair->second : b->pair->first;
    if (b->grammar) return isl::gnf_to_pda(isl::to_gnf(isl::to_cnf(*b->grammar)));
    throw isl::InvalidInput("corpus example '" + ref + "' has no machine");
}

struct PairInput {
    isl::Pda m1, m2;
    std::optional<isl::ExampleBundle> bundle;
    std::string name;
};

PairInput load_pair(const Options& o) {
    if (!o.pair.empty()) {
        auto b = find_bundle(o.pair);
        if (!b) throw isl::UnknownExample("no corpus example named '" + o.pair + "'");
        if (!b->pair) throw isl::InvalidInput("corpus example '" + o.pair + "' is not a machine pair");
        return {b->pair->first, b->pair->second, b, b->name};
    }
    if (o.pdas.size() == 2) {
        auto a = load_pda(o.pdas[0], 1), c = load_pda(o.pdas[1], 2);
        return {a, c, std::nullopt, a.name + "+" + c.name};
    }
    throw UsageError("give --pair NAME or two --pda inputs");
}

isl::JointSpec load_blocks(const std::string& ref) {
    if (ref.empty()) throw UsageError("--blocks is required");
    if (is_file(ref)) return isl::io::joint_from_json(isl::io::load_file(ref));
    auto b = find_bundle(ref);
    if (!b || !b->joint) throw isl::UnknownExample("'" + ref + "' is neither a blocks file nor a block-spec example");
    return *b->joint;
}

isl::Cfg load_grammar(const std::string& ref) {
    if (ref.empty()) throw UsageError("--grammar is required");
    if (is_file(ref)) return isl::io::cfg_from_json(isl::io::load_file(ref));
    auto b = find_bundle(ref);
    if (!b || !b->grammar) throw isl::UnknownExample("'" + ref + "' is neither a grammar file nor a grammar example");
    return *b->grammar;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stoul(tok));
        } catch (const std::exception&) {
            throw UsageError("--sizes expects a comma-separated list of integers, got '" + s + "'");
        }
    }
    return out;
}

std::string family_word(const PairInput& p, const Options& o) {
    if (!o.word.empty()) return o.word;
    if (!o.n) throw UsageError("give --word W or --n N");
    if (!p.bundle || !p.bundle->family) throw UsageError("--n needs a corpus pair with a string family");
    return p.bundle->family(*o.n);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw isl::InvalidInput("cannot write '" + path + "'");
    f << content;
}

Json range_json(isl::Range r) { return Json::array({r.begin, r.end}); }

Json crossing_json(const isl::CrossingRecord& r) {
    Json j;
    j["left"] = {{"owner", r.pair.left.owner}, {"push", r.pair.left.push_pos}, {"pop", r.pair.left.pop_pos}};
    j["right"] = {{"owner", r.pair.right.owner}, {"push", r.pair.right.push_pos}, {"pop", r.pair.right.pop_pos}};
    Json seg = Json::object();
    for (int k = 1; k <= 4; ++k) seg["P" + std::to_string(k)] = range_json(r.segments.segment(k));
    j["segments"] = seg;
    j["gap"] = r.measures.gap;
    j["inner"] = r.measures.inner;
    return j;
}

Json matching_json(const isl::Matching& m) {
    Json arcs = Json::array();
    for (const auto& a : m.arcs) arcs.push_back(Json::array({a.push_pos, a.pop_pos}));
    return arcs;
}

Json report_json(const std::string& family, const isl::RegimeReport& r) {
    auto s = isl::summarize(r.regime);
    Json j;
    j["format"] = "regime-report-v1";
    j["family"] = family;
    j["regime"] = isl::to_string(r.regime);
    j["columns"] = {{"inner_segment_measure", s.inner}, {"crossing_gap", s.gap}, {"intersection", s.intersection}};
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n},
                        {"length", row.length},
                        {"crossings", row.crossings},
                        {"max_gap", row.max_gap},
                        {"max_inner", row.max_inner}});
    j["rows"] = rows;
    return j;
}

std::string violation_json_kind(isl::ViolationKind k) {
    return k == isl::ViolationKind::CrossingArcs ? "crossing-arcs" : "shared-endpoint";
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Options& o) {
    if (o.pdas.empty() && o.pair.empty()) throw UsageError("simulate needs --pda or --pair");
    isl::Pda p = o.pdas.empty() ? load_pda(o.pair, o.which) : load_pda(o.pdas[0], o.which);
    isl::PdaMachine m(p);
    auto r = isl::accepts(m, o.word, limits(o));
    if (o.json) {
        Json j{{"machine", p.name}, {"word", o.word}, {"accepted", r.accepted}};
        if (r.run) {
            Json steps = Json::array();
            for (const auto& s : r.run->steps)
                steps.push_back({{"transition", s.label},
                                 {"position", s.input_pos},
                                 {"reads", s.reads},
                                 {"stack_depth", s.stack_depth_after}});
            j["run"] = steps;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << p.name << (r.accepted ? " accepts '" : " rejects '") << o.word << "'\n";
        if (r.run)
            for (const auto& s : r.run->steps)
                std::cout << "  pos " << s.input_pos << "  " << isl::describe(p.transitions[s.label], s.label)
                          << "  depth " << s.stack_depth_after << "\n";
    }
    return r.accepted ? 0 : 1;
}

int cmd_runs(const Options& o) {
    if (o.pdas.empty() && o.pair.empty()) throw UsageError("runs needs --pda or --pair");
    isl::Pda p = o.pdas.empty() ? load_pda(o.pair, o.which) : load_pda(o.pdas[0], o.which);
    isl::PdaMachine m(p);
    auto runs = isl::enumerate_runs(m, o.word, o.runs_cap, limits(o));
    Json out = Json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        auto mt = isl::extract_matching(m, o.word, runs[i], 1, i);
        bool wn = isl::is_well_nested(mt.arcs).well_nested;
        if (o.json) {
            out.push_back({{"run", i}, {"arcs", matching_json(mt)}, {"well_nested", wn}});
        } else {
            std::cout << "run " << i << ":";
            for (const auto& a : mt.arcs) std::cout << " " << isl::to_string(a);
            std::cout << (wn ? "  well-nested\n" : "  CROSSING\n");
        }
    }
    if (o.json) std::cout << Json{{"machine", p.name}, {"word", o.word}, {"runs", out}}.dump(2) << "\n";
    else std::cout << runs.size() << " accepting run(s)" << (runs.size() == o.runs_cap ? " (cap reached)" : "") << "\n";
    return runs.empty() ? 1 : 0;
}

int cmd_crossings(const Options& o) {
    auto p = load_pair(o);
    const std::string w = family_word(p, o);
    auto a = isl::analyze_pair(p.m1, p.m2, w, limits(o));
    std::size_t gap = 0, inner = 0;
    for (const auto& c : a.crossings) {
        gap = std::max(gap, c.measures.gap);
        inner = std::max(inner, c.measures.inner);
    }
    if (!o.svg.empty()) write_file(o.svg, isl::arc_diagram_svg(a, a.crossings.empty() ? nullptr : &a.crossings.front()));
    if (o.json) {
        Json cs = Json::array();
        for (const auto& c : a.crossings) cs.push_back(crossing_json(c));
        Json j{{"format", "crossings-v1"}, {"pair", p.name}, {"word", w}, {"m1", matching_json(a.m1)},
               {"m2", matching_json(a.m2)}, {"crossings", cs}};
        if (!a.crossings.empty()) j["max"] = {{"gap", gap}, {"inner", inner}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "word: " << w << "\n";
    std::cout << "M1 arcs:";
    for (const auto& x : a.m1.arcs) std::cout << " " << isl::to_string(x);
    std::cout << "\nM2 arcs:";
    for (const auto& x : a.m2.arcs) std::cout << " " << isl::to_string(x);
    std::cout << "\n";
    if (a.crossings.empty()) {
        std::cout << "no crossings\n";
        return 0;
    }
    std::cout << isl::crossing_table(a.crossings);
    std::cout << a.crossings.size() << " crossing(s), gap=" << gap << " inner=" << inner << "\n";
    return 0;
}

int cmd_classify(const Options& o) {
    auto p = load_pair(o);
    if (!p.bundle) throw UsageError("classify needs a corpus pair with a string family");
    auto r = isl::classify_bundle(*p.bundle, parse_sizes(o.sizes), limits(o));
    if (o.json) std::cout << report_json(p.name, r).dump(2) << "\n";
    else std::cout << isl::regime_table(p.name, r);
    return 0;
}

int cmd_characterize(const Options& o) {
    auto j = load_blocks(o.blocks);
    auto v = isl::characterize(j);
    if (o.json) {
        Json out{{"spec", j.name}, {"verdict", v.outcome == isl::Outcome::CFL ? "CFL" : "NotCFL"}};
        if (v.reason)
            out["reason"] = {{"kind", violation_json_kind(v.reason->kind)},
                             {"c1", Json::array({v.reason->a.i, v.reason->a.j})},
                             {"c2", Json::array({v.reason->b.i, v.reason->b.j})}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << isl::to_string(v) << "\n";
    }
    return 0;
}

template <class P>
int emit_product(const Options& o, const P& product, const std::string& kind, std::size_t param, const std::string& name) {
    const std::size_t len = env_cap(o.max_len);
    std::cerr << "exploring " << kind << " product to length " << len << "\n";
    auto frag = isl::reached_fragment(product, len, limits(o));
    auto bound = isl::state_bound(product);
    Json doc = isl::io::fragment_to_json(product, frag, name);
    if (!o.out.empty()) write_file(o.out, doc.dump(2) + "\n");
    if (o.json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << kind << " product, parameter " << param << "\n"
                  << "composite states reached to length " << len << ": " << frag.states.size() << "\n"
                  << "moves: " << frag.edges.size() << "\n"
                  << "state bound: " << bound.str() << "\n";
    }
    return 0;
}

int cmd_construct(const Options& o) {
    if (o.construct == "displacement" || o.construct == "buffered") {
        auto p = load_pair(o);
        if (o.construct == "displacement")
            return emit_product(o, isl::displacement_product(p.m1, p.m2, o.k), "displacement", o.k,
                                p.name + "-displacement-k" + std::to_string(o.k));
        return emit_product(o, isl::buffered_product(p.m1, p.m2, o.d), "buffered", o.d,
                            p.name + "-buffered-d" + std::to_string(o.d));
    }
    isl::Pda pda;
    if (o.construct == "joint") {
        pda = isl::build_joint_pda(load_blocks(o.blocks));
    } else if (o.construct == "gnf") {
        pda = isl::gnf_to_pda(isl::to_gnf(isl::to_cnf(load_grammar(o.grammar))));
    } else if (o.construct == "cnf" || o.construct == "gnf-grammar") {
        auto cnf = isl::to_cnf(load_grammar(o.grammar));
        Json g = o.construct == "cnf" ? isl::io::to_json(static_cast<const isl::Cfg&>(cnf))
                                      : isl::io::to_json(static_cast<const isl::Cfg&>(isl::to_gnf(cnf)));
        if (!o.out.empty()) write_file(o.out, g.dump(2) + "\n");
        std::cout << g.dump(2) << "\n";
        return 0;
    } else {
        throw UsageError("--construct must be displacement, buffered, joint, gnf, cnf or gnf-grammar");
    }
    Json doc = isl::io::to_json(pda);
    if (!o.out.empty()) write_file(o.out, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return 0;
}

struct Comparison {
    std::size_t checked = 0;
    std::vector<std::string> only_left, only_right;
};

Comparison compare(const std::set<std::string>& got, const std::set<std::string>& want) {
    Comparison c;
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(c.only_left));
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(c.only_right));
    c.checked = got.size() + c.only_right.size();
    return c;
}

std::set<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
    std::set<std::string> out{""};
    std::vector<std::string> layer{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& s : layer)
            for (char c : alphabet) next.push_back(s + c);
        out.insert(next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

int cmd_verify(const Options& o) {
    const std::size_t len = env_cap(o.max_len);
    std::set<std::string> got, want;
    std::string what;
    if (o.construct == "displacement" || o.construct == "buffered") {
        auto p = load_pair(o);
        std::cerr << "enumerating " << o.construct << " product language to length " << len << "\n";
        if (o.construct == "displacement") got = isl::enumerate_language(isl::displacement_product(p.m1, p.m2, o.k), len, limits(o));
        else got = isl::enumerate_language(isl::buffered_product(p.m1, p.m2, o.d), len, limits(o));
        std::cerr << "enumerating component languages\n";
        auto a = isl::enumerate_language(p.m1, len, limits(o));
        auto b = isl::enumerate_language(p.m2, len, limits(o));
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(want, want.end()));
        what = o.construct + " product vs both-machine acceptance";
    } else if (o.construct == "joint") {
        auto j = load_blocks(o.blocks);
        got = isl::enumerate_language(isl::build_joint_pda(j), len, limits(o));
        for (const auto& w : isl::block_shaped_strings(j.alphabets, len))
            if (isl::membership(j, w)) want.insert(w);
        what = "joint PDA vs block membership";
    } else if (o.construct == "gnf") {
        auto g = load_grammar(o.grammar);
        auto cnf = isl::to_cnf(g);
        got = isl::enumerate_language(isl::gnf_to_pda(isl::to_gnf(cnf)), len, limits(o));
        std::cerr << "running CYK on all strings to length " << len << "\n";
        for (const auto& w : all_strings(g.terminals, len))
            if (isl::cyk_membership(cnf, w)) want.insert(w);
        what = "GNF PDA vs CYK";
    } else {
        throw UsageError("verify needs --construct displacement, buffered, joint or gnf");
    }
    auto c = compare(got, want);
    const std::size_t mismatches = c.only_left.size() + c.only_right.size();
    if (o.json) {
        std::cout << Json{{"check", what},
                          {"max_len", len},
                          {"accepted", got.size()},
                          {"mismatches", mismatches},
                          {"only_constructed", c.only_left},
                          {"only_oracle", c.only_right}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << what << ", length <= " << len << ", " << got.size() << " strings accepted\n";
        if (mismatches == 0) {
            std::cout << "language equality confirmed, 0 mismatches\n";
        } else {
            std::cout << mismatches << " mismatches\n";
            for (const auto& w : c.only_left) std::cout << "  constructed only: '" << w << "'\n";
            for (const auto& w : c.only_right) std::cout << "  oracle only: '" << w << "'\n";
        }
    }
    return mismatches == 0 ? 0 : 1;
}

Json linkage_json(const isl::LinkageVerdict& v, const std::string& w) {
    Json j{{"holds", v.holds}, {"vacuous", v.vacuous}, {"enumerated", v.enumerated}, {"applicable", v.applicable}};
    if (v.counterexample) {
        const auto& f = *v.counterexample;
        j["counterexample"] = {{"u", std::string(isl::part(w, f, 'u'))}, {"v", std::string(isl::part(w, f, 'v'))},
                               {"x", std::string(isl::part(w, f, 'x'))}, {"y", std::string(isl::part(w, f, 'y'))},
                               {"z", std::string(isl::part(w, f, 'z'))}, {"pumped", v.pumped_string}};
    }
    return j;
}

std::string linkage_text(const char* name, const isl::LinkageVerdict& v, const std::string& w) {
    std::string s = std::string("linkage ") + name + ": ";
    if (v.vacuous) return s + "holds (vacuous: empty segment)\n";
    s += v.holds ? "holds" : "FAILS";
    s += " (" + std::to_string(v.applicable) + " applicable of " + std::to_string(v.enumerated) + " factorizations)\n";
    if (v.counterexample) {
        const auto& f = *v.counterexample;
        s += "  u='" + std::string(isl::part(w, f, 'u')) + "' v='" + std::string(isl::part(w, f, 'v')) + "' x='" +
             std::string(isl::part(w, f, 'x')) + "' y='" + std::string(isl::part(w, f, 'y')) + "' z='" +
             std::string(isl::part(w, f, 'z')) + "' pumps to '" + v.pumped_string + "'\n";
    }
    return s;
}

int cmd_linkage(const Options& o) {
    std::string w;
    isl::Segmentation seg;
    std::optional<isl::Oracle> oracle;
    std::size_t n = o.n.value_or(0);
    if (!o.blocks.empty()) {
        if (!o.n) throw UsageError("linkage --blocks needs --n");
        auto j = load_blocks(o.blocks);
        auto claims = isl::segments_and_linkages(j, std::nullopt, n);
        w = claims.word;
        seg = claims.segments;
        if (o.oracle == "intersection") oracle.emplace([j](std::string_view s) { return isl::membership(j, s); }, "L1 and L2");
        else if (o.oracle == "m1") oracle.emplace([s1 = j.side(1)](std::string_view s) { return isl::membership(s1, s); }, "L1");
        else if (o.oracle == "m2") oracle.emplace([s2 = j.side(2)](std::string_view s) { return isl::membership(s2, s); }, "L2");
        else throw UsageError("--oracle must be intersection, m1 or m2");
    } else {
        auto p = load_pair(o);
        w = family_word(p, o);
        if (!o.n) n = w.size();
        auto a = isl::analyze_pair(p.m1, p.m2, w, limits(o));
        if (a.crossings.empty()) throw isl::NoCrossing("'" + w + "' has no crossing arcs under " + p.name);
        auto best = std::max_element(a.crossings.begin(), a.crossings.end(), [](const auto& x, const auto& y) {
            return x.measures.inner < y.measures.inner;
        });
        seg = best->segments;
        auto m1 = std::make_shared<isl::PdaMachine>(p.m1), m2 = std::make_shared<isl::PdaMachine>(p.m2);
        auto lim = limits(o);
        auto acc = [lim](const std::shared_ptr<isl::PdaMachine>& m) {
            return [m, lim](std::string_view s) { return isl::accepts(*m, s, lim).accepted; };
        };
        if (o.oracle == "intersection")
            oracle.emplace([f1 = acc(m1), f2 = acc(m2)](std::string_view s) { return f1(s) && f2(s); }, "M1 and M2");
        else if (o.oracle == "m1") oracle.emplace(acc(m1), "M1");
        else if (o.oracle == "m2") oracle.emplace(acc(m2), "M2");
        else throw UsageError("--oracle must be intersection, m1 or m2");
    }
    isl::HypothesisMode mode;
    if (o.mode == "four-large") mode = isl::HypothesisMode::FourLarge;
    else if (o.mode == "inner-growing") mode = isl::HypothesisMode::InnerGrowing;
    else throw UsageError("--mode must be four-large or inner-growing");
    isl::LinkageOptions opt;
    opt.max_len = env_cap(opt.max_len);
    opt.max_span = o.max_span;
    auto r = isl::check_crossing_hypotheses(*oracle, w, seg, mode, n, opt);
    if (o.json) {
        Json segs = Json::object();
        for (int k = 1; k <= 4; ++k) segs["P" + std::to_string(k)] = std::string(seg.text(w, k));
        std::cout << Json{{"word", w},
                          {"oracle", oracle->name()},
                          {"mode", isl::to_string(mode)},
                          {"n", n},
                          {"segments", segs},
                          {"size_condition", r.size_condition},
                          {"size_detail", r.size_detail},
                          {"linkage_13", linkage_json(r.linkage13, w)},
                          {"linkage_24", linkage_json(r.linkage24, w)},
                          {"all_hold", r.all_hold},
                          {"summary", r.summary}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "word: " << w << "  oracle: " << oracle->name() << "  mode: " << isl::to_string(mode) << "\n";
        std::cout << "segments:";
        for (int k = 1; k <= 4; ++k) std::cout << " P" << k << "='" << seg.text(w, k) << "'";
        std::cout << "\n" << r.size_detail << "\n";
        std::cout << linkage_text("(P1,P3)", r.linkage13, w) << linkage_text("(P2,P4)", r.linkage24, w);
        std::cout << r.summary << "\n";
    }
    return r.all_hold ? 0 : 1;
}

int cmd_corpus(const Options& o) {
    if (!o.show.empty()) {
        auto b = isl::corpus::get(o.show);
        Json j{{"name", b.name}, {"description", b.description}};
        if (b.pair) j["pair"] = Json::array({isl::io::to_json(b.pair->first), isl::io::to_json(b.pair->second)});
        if (b.intersection) j["intersection"] = isl::io::to_json(*b.intersection);
        if (b.single) j["machine"] = isl::io::to_json(*b.single);
        if (b.joint) j["blocks"] = isl::io::to_json(*b.joint);
        if (b.grammar) j["grammar"] = isl::io::to_json(*b.grammar);
        if (b.family) {
            Json fam = Json::array();
            for (auto n : b.family_sizes) fam.push_back({{"n", n}, {"word", b.family(n)}});
            j["family"] = fam;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    const auto all = isl::corpus::all();
    if (o.json) {
        Json arr = Json::array();
        for (const auto& b : all) arr.push_back({{"name", b.name}, {"description", b.description}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& b : all) std::cout << isl::pad(b.name, 26) << b.description << "\n";
    }
    return 0;
}

int cmd_report(const Options& o) {
    std::vector<std::string> names;
    if (!o.pair.empty()) names.push_back(o.pair);
    else
        for (const auto& b : isl::corpus::all())
            if (b.pair && b.family) names.push_back(b.name);
    Json reports = Json::array();
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto b = isl::corpus::get(names[i]);
        if (!b.pair || !b.family) throw isl::InvalidInput("'" + b.name + "' has no machine pair with a string family");
        auto sizes = parse_sizes(o.sizes);
        if (sizes.empty()) sizes = b.family_sizes;
        std::cerr << "classifying " << b.name << "\n";
        auto r = isl::classify_bundle(b, sizes, limits(o));
        if (o.json) reports.push_back(report_json(b.name, r));
        else std::cout << (i ? "\n" : "") << isl::regime_table(b.name, r);
        if (!o.svg.empty()) {
            auto a = isl::analyze_pair(b.pair->first, b.pair->second, b.family(sizes.back()), limits(o));
            std::string path = o.svg;
            if (names.size() > 1) {
                std::filesystem::path base(o.svg);
                path = (base.parent_path() / (base.stem().string() + "-" + b.name + base.extension().string())).string();
            }
            const isl::CrossingRecord* h = nullptr;
            for (const auto& c : a.crossings)
                if (!h || c.measures.inner > h->measures.inner) h = &c;
            write_file(path, isl::arc_diagram_svg(a, h));
            std::cerr << "wrote " << path << "\n";
        }
    }
    if (o.json) std::cout << (names.size() == 1 ? reports[0] : reports).dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isl: intersections of stack languages"};
    app.require_subcommand(1);
    Options o;

    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_flag("--json", o.json, "machine-readable output");
        s->add_option("--max-configs", o.max_configs, "search budget in configurations");
        return s;
    };
    auto pair_opts = [&](CLI::App* s) {
        s->add_option("--pair", o.pair, "corpus machine pair");
        s->add_option("--pda", o.pdas, "pda-v1 file or corpus name (twice for a pair)");
    };

    auto* simulate = sub("simulate", "run one machine on a word");
    pair_opts(simulate);
    simulate->add_option("--which", o.which, "side of a pair, 1 or 2")->check(CLI::Range(1, 2));
    simulate->add_option("--word", o.word, "input word");

    auto* runs = sub("runs", "enumerate accepting runs and their matchings");
    pair_opts(runs);
    runs->add_option("--which", o.which, "side of a pair, 1 or 2")->check(CLI::Range(1, 2));
    runs->add_option("--word", o.word, "input word");
    runs->add_option("--runs-cap", o.runs_cap, "maximum number of runs");

    auto* crossings = sub("crossings", "crossing pairs of two machines on a word");
    pair_opts(crossings);
    crossings->add_option("--word", o.word, "input word");
    crossings->add_option("--n", o.n, "family size instead of --word");
    crossings->add_option("--svg", o.svg, "write an arc diagram");

    auto* classify = sub("classify", "regime of a corpus family");
    pair_opts(classify);
    classify->add_option("--sizes", o.sizes, "comma-separated family sizes");

    auto* characterize = sub("characterize", "CFL verdict for a pair of block constraint sets");
    characterize->add_option("--blocks", o.blocks, "blocks-v1 file or corpus name")->required();

    auto* construct = sub("construct", "build a product, joint PDA or grammar machine");
    pair_opts(construct);
    construct->add_option("--construct", o.construct, "displacement | buffered | joint | gnf | cnf | gnf-grammar")
        ->required();
    construct->add_option("--blocks", o.blocks, "blocks-v1 file or corpus name");
    construct->add_option("--grammar", o.grammar, "cfg-v1 file or corpus name");
    construct->add_option("--k", o.k, "displacement parameter");
    construct->add_option("--d", o.d, "inner-measure bound of the buffered product");
    construct->add_option("--max-len", o.max_len, "exploration depth for products");
    construct->add_option("--out", o.out, "also write the document to a file");

    auto* verify = sub("verify", "compare a construction with an oracle up to a length");
    pair_opts(verify);
    verify->add_option("--construct", o.construct, "displacement | buffered | joint | gnf")->required();
    verify->add_option("--blocks", o.blocks, "blocks-v1 file or corpus name");
    verify->add_option("--grammar", o.grammar, "cfg-v1 file or corpus name");
    verify->add_option("--k", o.k, "displacement parameter");
    verify->add_option("--d", o.d, "inner-measure bound of the buffered product");
    verify->add_option("--max-len", o.max_len, "oracle length bound");

    auto* linkage = sub("linkage", "check crossing hypotheses on a witness");
    pair_opts(linkage);
    linkage->add_option("--blocks", o.blocks, "blocks-v1 file or corpus name");
    linkage->add_option("--word", o.word, "witness word (pair mode)");
    linkage->add_option("--n", o.n, "witness size");
    linkage->add_option("--mode", o.mode, "four-large | inner-growing");
    linkage->add_option("--oracle", o.oracle, "intersection | m1 | m2");
    linkage->add_option("--max-span", o.max_span, "only factorizations with |vxy| <= this");

    auto* corpus = sub("corpus", "list or show built-in examples");
    corpus->add_option("--show", o.show, "dump one example");

    auto* report = sub("report", "classification tables for corpus families");
    report->add_option("--pair", o.pair, "one corpus pair (default: all)");
    report->add_option("--sizes", o.sizes, "comma-separated family sizes");
    report->add_option("--svg", o.svg, "write arc diagrams of the largest family member");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "simulate") return cmd_simulate(o);
        if (name == "runs") return cmd_runs(o);
        if (name == "crossings") return cmd_crossings(o);
        if (name == "classify") return cmd_classify(o);
        if (name == "characterize") return cmd_characterize(o);
        if (name == "construct") return cmd_construct(o);
        if (name == "verify") return cmd_verify(o);
        if (name == "linkage") return cmd_linkage(o);
        if (name == "corpus") return cmd_corpus(o);
        if (name == "report") return cmd_report(o);
    } catch (const isl::Error& e) {
        std::cerr << "error[" << e.kind() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
