#pragma once

// JSON file formats: pda-v1, cfg-v1, blocks-v1, plus the reached-fragment
// export of lazy products.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isl/blocks.hpp"
#include "isl/errors.hpp"
#include "isl/grammar.hpp"
#include "isl/pda.hpp"
#include "isl/products.hpp"

namespace isl::io {

using Json = nlohmann::ordered_json;

inline Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

inline void expect_format(const Json& j, const std::string& format) {
    if (!j.is_object()) throw InvalidInput("expected a JSON object in " + format + " format");
    if (j.value("format", std::string{}) != format)
        throw InvalidInput("expected \"format\": \"" + format + "\", got '" + j.value("format", std::string{}) + "'");
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("field '") + key + "': " + e.what());
    }
}

inline char single_char(const std::string& s, const char* what) {
    if (s.size() != 1) throw InvalidInput(std::string(what) + " '" + s + "' must be a single character");
    return s[0];
}

inline Json action_json(const StackAction& a) {
    return Json{{"kind", a.kind == ActionKind::Push ? "push" : "pop"}, {"symbol", a.symbol}};
}

inline StackAction action_from(const Json& j) {
    auto kind = field<std::string>(j, "kind");
    if (kind == "push") return StackAction::push(field<std::string>(j, "symbol"));
    if (kind == "pop") return StackAction::pop(field<std::string>(j, "symbol"));
    throw InvalidInput("unknown action kind '" + kind + "'");
}

} // namespace detail

inline Json to_json(const Pda& p) {
    Json j;
    j["format"] = "pda-v1";
    j["name"] = p.name;
    j["states"] = p.states;
    Json in = Json::array();
    for (char c : p.input_alphabet) in.push_back(std::string(1, c));
    j["input_alphabet"] = in;
    j["stack_alphabet"] = p.stack_alphabet;
    Json ts = Json::array();
    for (const auto& t : p.transitions) {
        Json tj;
        tj["from"] = t.from;
        tj["read"] = t.read ? Json(std::string(1, *t.read)) : Json(nullptr);
        if (t.ops.size() <= 1) {
            tj["action"] = t.ops.empty() ? Json{{"kind", "none"}} : detail::action_json(t.ops[0]);
        } else {
            Json ops = Json::array();
            for (const auto& op : t.ops) ops.push_back(detail::action_json(op));
            tj["actions"] = ops;
        }
        tj["to"] = t.to;
        tj["auxiliary"] = t.auxiliary;
        ts.push_back(tj);
    }
    j["transitions"] = ts;
    j["start"] = p.start;
    j["bottom"] = p.bottom;
    j["accept"] = p.accept;
    j["acceptance_mode"] =
        p.acceptance_mode == AcceptanceMode::FinalState ? "final-state" : "final-state-and-bottom-only";
    return j;
}

inline Pda pda_from_json(const Json& j) {
    detail::expect_format(j, "pda-v1");
    Pda p;
    p.name = j.value("name", std::string("pda"));
    p.states = detail::field<std::vector<std::string>>(j, "states");
    for (const auto& s : detail::field<std::vector<std::string>>(j, "input_alphabet"))
        p.input_alphabet.push_back(detail::single_char(s, "input symbol"));
    p.stack_alphabet = detail::field<std::vector<std::string>>(j, "stack_alphabet");
    p.start = detail::field<std::string>(j, "start");
    p.bottom = j.value("bottom", std::string("$"));
    p.accept = detail::field<std::vector<std::string>>(j, "accept");
    auto mode = j.value("acceptance_mode", std::string("final-state"));
    if (mode == "final-state") p.acceptance_mode = AcceptanceMode::FinalState;
    else if (mode == "final-state-and-bottom-only") p.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    else throw InvalidInput("unknown acceptance_mode '" + mode + "'");
    if (!j.contains("transitions") || !j["transitions"].is_array()) throw InvalidInput("missing transitions array");
    for (const auto& tj : j["transitions"]) {
        Transition t;
        t.from = detail::field<std::string>(tj, "from");
        t.to = detail::field<std::string>(tj, "to");
        if (tj.contains("read") && !tj["read"].is_null())
            t.read = detail::single_char(detail::field<std::string>(tj, "read"), "read symbol");
        if (tj.contains("actions")) {
            for (const auto& a : tj["actions"]) t.ops.push_back(detail::action_from(a));
        } else if (tj.contains("action") && tj["action"].value("kind", std::string("none")) != "none") {
            t.ops.push_back(detail::action_from(tj["action"]));
        }
        t.auxiliary = tj.value("auxiliary", false);
        p.transitions.push_back(std::move(t));
    }
    return p;
}

inline Json to_json(const Cfg& g) {
    Json j;
    j["format"] = "cfg-v1";
    j["nonterminals"] = g.nonterminals;
    Json t = Json::array();
    for (char c : g.terminals) t.push_back(std::string(1, c));
    j["terminals"] = t;
    Json ps = Json::array();
    for (const auto& p : g.productions) ps.push_back(Json{{"head", p.head}, {"body", p.body}});
    j["productions"] = ps;
    j["start"] = g.start;
    return j;
}

inline Cfg cfg_from_json(const Json& j) {
    detail::expect_format(j, "cfg-v1");
    Cfg g;
    g.nonterminals = detail::field<std::vector<std::string>>(j, "nonterminals");
    for (const auto& s : detail::field<std::vector<std::string>>(j, "terminals"))
        g.terminals.push_back(detail::single_char(s, "terminal"));
    g.start = detail::field<std::string>(j, "start");
    if (!j.contains("productions") || !j["productions"].is_array()) throw InvalidInput("missing productions array");
    for (const auto& pj : j["productions"])
        g.productions.push_back(
            {detail::field<std::string>(pj, "head"), detail::field<std::vector<std::string>>(pj, "body")});
    validate(g);
    return g;
}

inline Json to_json(const JointSpec& s) {
    Json j;
    j["format"] = "blocks-v1";
    if (!s.name.empty()) j["name"] = s.name;
    j["k"] = s.k();
    Json alpha = Json::array();
    for (const auto& a : s.alphabets) {
        Json one = Json::array();
        for (char c : a) one.push_back(std::string(1, c));
        alpha.push_back(one);
    }
    j["alphabets"] = alpha;
    auto arcs = [](const std::vector<BlockArc>& v) {
        Json out = Json::array();
        for (const auto& a : v) out.push_back(Json::array({a.i, a.j}));
        return out;
    };
    j["c1"] = arcs(s.c1);
    j["c2"] = arcs(s.c2);
    return j;
}

inline JointSpec joint_from_json(const Json& j) {
    detail::expect_format(j, "blocks-v1");
    std::vector<std::string> alphabets;
    if (!j.contains("alphabets") || !j["alphabets"].is_array()) throw InvalidInput("missing alphabets array");
    for (const auto& a : j["alphabets"]) {
        std::string block;
        for (const auto& s : a) block.push_back(detail::single_char(s.get<std::string>(), "block symbol"));
        alphabets.push_back(block);
    }
    if (j.contains("k") && detail::field<std::size_t>(j, "k") != alphabets.size())
        throw InvalidInput("k does not match the number of alphabets");
    auto arcs = [&](const char* key) {
        std::vector<BlockArc> out;
        if (!j.contains(key)) return out;
        for (const auto& a : j[key]) {
            if (!a.is_array() || a.size() != 2) throw InvalidInput(std::string(key) + ": arcs are [i, j] pairs");
            out.push_back({a[0].get<std::size_t>(), a[1].get<std::size_t>()});
        }
        return out;
    };
    return JointSpec(alphabets, arcs("c1"), arcs("c2"), j.value("name", std::string{}));
}

inline std::string render_key(const CompositeKey& k, const isl::detail::Component& c1, const isl::detail::Component& c2) {
    std::string s = "(" + c1.machine().state_name(k.q1) + "," + c2.machine().state_name(k.q2) + ",[";
    for (std::size_t i = 0; i < k.content.size(); ++i) {
        const std::uint32_t e = k.content[i];
        const int owner = static_cast<int>(e >> 24);
        const int sym = static_cast<int>((e >> 8) & 0xffff);
        const int timer = static_cast<int>(e & 0xff);
        const auto& m = owner == 1 ? c1.machine() : c2.machine();
        if (i) s += ",";
        s += std::to_string(owner) + ":" + m.symbol_name(sym);
        if (timer) s += "@" + std::to_string(timer);
    }
    return s + "])";
}

/// pda-v1 document for the reached fragment. Stack effects are listed per
/// move with owner-prefixed symbols; composite state names index into the
/// composite_state_labels side table.
template <ProductMachine P>
Json fragment_to_json(const P& product, const Fragment& f, const std::string& name) {
    const auto& c1 = product.component(1);
    const auto& c2 = product.component(2);
    auto tagged = [&](int owner, int sym) {
        const auto& m = owner == 1 ? c1.machine() : c2.machine();
        return std::to_string(owner) + ":" + m.symbol_name(sym);
    };
    Json j;
    j["format"] = "pda-v1";
    j["name"] = name;
    Json states = Json::array(), labels = Json::object(), accept = Json::array();
    for (std::size_t i = 0; i < f.states.size(); ++i) {
        std::string id = "c" + std::to_string(i);
        states.push_back(id);
        labels[id] = render_key(f.states[i], c1, c2);
        if (f.accepting[i]) accept.push_back(id);
    }
    j["states"] = states;
    Json in = Json::array();
    for (char c : product.input_alphabet()) in.push_back(std::string(1, c));
    j["input_alphabet"] = in;
    Json stack = Json::array({"$"});
    for (int o = 1; o <= 2; ++o) {
        const auto& pda = product.component(o).pda();
        for (const auto& s : pda.stack_alphabet)
            if (s != pda.bottom) stack.push_back(std::to_string(o) + ":" + s);
    }
    j["stack_alphabet"] = stack;
    Json ts = Json::array();
    for (const auto& e : f.edges) {
        Json tj;
        tj["from"] = "c" + std::to_string(e.from);
        tj["read"] = std::string(1, e.read);
        Json acts = Json::array();
        for (const auto& ev : e.events) {
            Json a{{"kind", ev.kind == ActionKind::Push ? "push" : "pop"}, {"symbol", tagged(ev.owner, ev.symbol)}};
            if (ev.placement == Placement::Buffer) a["placement"] = "buffer";
            if (ev.displaced) a["displaced"] = ev.displaced;
            acts.push_back(a);
        }
        tj["actions"] = acts;
        tj["to"] = "c" + std::to_string(e.to);
        tj["auxiliary"] = false;
        ts.push_back(tj);
    }
    j["transitions"] = ts;
    j["start"] = "c0";
    j["bottom"] = "$";
    j["accept"] = accept;
    j["acceptance_mode"] = "final-state-and-bottom-only";
    j["composite_state_labels"] = labels;
    return j;
}

} // namespace isl::io
