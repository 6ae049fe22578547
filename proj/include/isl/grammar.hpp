#pragma once

// Context-free grammar front end: validation, CNF and GNF conversion, the
// GNF-to-PDA translation and a CYK membership test.
//
// Terminals are single bytes; nonterminal names are arbitrary strings that
// must not coincide with a terminal.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isl/errors.hpp"
#include "isl/pda.hpp"

namespace isl {

struct Production {
    std::string head;
    std::vector<std::string> body; ///< empty body is epsilon

    auto operator<=>(const Production&) const = default;
};

struct Cfg {
    std::vector<std::string> nonterminals;
    std::string terminals;
    std::vector<Production> productions;
    std::string start;

    bool is_terminal(const std::string& s) const {
        return s.size() == 1 && terminals.find(s[0]) != std::string::npos;
    }
    bool is_nonterminal(const std::string& s) const {
        return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
    }
};

/// Productions restricted to A -> BC, A -> a and start -> epsilon (start not on any right side).
struct CnfGrammar : Cfg {};
/// Productions A -> a alpha with alpha a sequence of at most two nonterminals, plus start -> epsilon.
struct GnfGrammar : Cfg {};

namespace detail {

class FreshNames {
public:
    explicit FreshNames(const Cfg& g) {
        used_.insert(g.nonterminals.begin(), g.nonterminals.end());
        for (char t : g.terminals) used_.insert(std::string(1, t));
    }
    std::string make(const std::string& base) {
        if (used_.insert(base).second) return base;
        for (std::size_t i = 1;; ++i) {
            std::string s = base + "#" + std::to_string(i);
            if (used_.insert(s).second) return s;
        }
    }

private:
    std::set<std::string> used_;
};

inline void sort_unique(std::vector<Production>& ps) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

/// Keeps only nonterminals that are both generating and reachable.
inline Cfg remove_useless(Cfg g) {
    std::set<std::string> generating;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (generating.contains(p.head)) continue;
            bool ok = std::all_of(p.body.begin(), p.body.end(),
                                  [&](const std::string& s) { return g.is_terminal(s) || generating.contains(s); });
            if (ok) {
                generating.insert(p.head);
                changed = true;
            }
        }
    }
    if (!generating.contains(g.start)) throw EmptyLanguage("grammar generates no strings");
    std::erase_if(g.productions, [&](const Production& p) {
        if (!generating.contains(p.head)) return true;
        return std::any_of(p.body.begin(), p.body.end(),
                           [&](const std::string& s) { return !g.is_terminal(s) && !generating.contains(s); });
    });
    std::set<std::string> reachable{g.start};
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!reachable.contains(p.head)) continue;
            for (const auto& s : p.body)
                if (!g.is_terminal(s) && reachable.insert(s).second) changed = true;
        }
    }
    std::erase_if(g.productions, [&](const Production& p) { return !reachable.contains(p.head); });
    std::vector<std::string> keep;
    for (const auto& n : g.nonterminals)
        if (reachable.contains(n)) keep.push_back(n);
    g.nonterminals = std::move(keep);
    sort_unique(g.productions);
    return g;
}

inline bool on_rhs(const Cfg& g, const std::string& n) {
    for (const auto& p : g.productions)
        if (std::find(p.body.begin(), p.body.end(), n) != p.body.end()) return true;
    return false;
}

} // namespace detail

/// Structural checks; throws InvalidInput.
inline void validate(const Cfg& g) {
    std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
    if (nts.size() != g.nonterminals.size()) throw InvalidInput("grammar: duplicate nonterminal");
    for (const auto& n : g.nonterminals)
        if (g.is_terminal(n)) throw InvalidInput("grammar: '" + n + "' is both a terminal and a nonterminal");
    if (!nts.contains(g.start)) throw InvalidInput("grammar: start symbol '" + g.start + "' is not a nonterminal");
    for (const auto& p : g.productions) {
        if (!nts.contains(p.head)) throw InvalidInput("grammar: production head '" + p.head + "' is undeclared");
        for (const auto& s : p.body)
            if (!nts.contains(s) && !g.is_terminal(s))
                throw InvalidInput("grammar: body symbol '" + s + "' of " + p.head + " is undeclared");
    }
}

inline bool is_cnf(const Cfg& g) {
    for (const auto& p : g.productions) {
        if (p.body.empty()) {
            if (p.head != g.start || detail::on_rhs(g, g.start)) return false;
        } else if (p.body.size() == 1) {
            if (!g.is_terminal(p.body[0])) return false;
        } else if (p.body.size() == 2) {
            if (!g.is_nonterminal(p.body[0]) || !g.is_nonterminal(p.body[1])) return false;
        } else {
            return false;
        }
    }
    return true;
}

inline bool is_gnf(const Cfg& g) {
    for (const auto& p : g.productions) {
        if (p.body.empty()) {
            if (p.head != g.start || detail::on_rhs(g, g.start)) return false;
            continue;
        }
        if (!g.is_terminal(p.body[0]) || p.body.size() > 3) return false;
        for (std::size_t i = 1; i < p.body.size(); ++i)
            if (!g.is_nonterminal(p.body[i])) return false;
    }
    return true;
}

/// Chomsky normal form. Steps: drop useless symbols, fresh start (only when
/// the start occurs on a right side), lift terminals out of long bodies,
/// binarise, remove epsilon rules, remove unit rules, drop useless symbols.
inline CnfGrammar to_cnf(const Cfg& input) {
    validate(input);
    Cfg g = detail::remove_useless(input);
    detail::FreshNames fresh(input);

    if (detail::on_rhs(g, g.start)) {
        std::string s0 = fresh.make(g.start + "0");
        g.nonterminals.insert(g.nonterminals.begin(), s0);
        g.productions.push_back({s0, {g.start}});
        g.start = s0;
    }

    // Terminals inside bodies of length >= 2.
    std::map<char, std::string> lifted;
    std::vector<Production> extra;
    for (auto& p : g.productions) {
        if (p.body.size() < 2) continue;
        for (auto& s : p.body) {
            if (!g.is_terminal(s)) continue;
            auto [it, fresh_one] = lifted.try_emplace(s[0]);
            if (fresh_one) {
                it->second = fresh.make("T_" + s);
                g.nonterminals.push_back(it->second);
                extra.push_back({it->second, {s}});
            }
            s = it->second;
        }
    }
    g.productions.insert(g.productions.end(), extra.begin(), extra.end());

    // Binarise.
    std::vector<Production> bin;
    for (const auto& p : g.productions) {
        if (p.body.size() <= 2) {
            bin.push_back(p);
            continue;
        }
        std::string head = p.head;
        for (std::size_t i = 0; i + 2 < p.body.size(); ++i) {
            std::string rest = fresh.make(p.head + "_" + std::to_string(i + 1));
            g.nonterminals.push_back(rest);
            bin.push_back({head, {p.body[i], rest}});
            head = rest;
        }
        bin.push_back({head, {p.body[p.body.size() - 2], p.body.back()}});
    }
    g.productions = std::move(bin);

    // Epsilon removal.
    std::set<std::string> nullable;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (nullable.contains(p.head)) continue;
            if (std::all_of(p.body.begin(), p.body.end(), [&](const std::string& s) { return nullable.contains(s); })) {
                nullable.insert(p.head);
                changed = true;
            }
        }
    }
    std::vector<Production> no_eps;
    for (const auto& p : g.productions) {
        const std::size_t k = p.body.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Production q{p.head, {}};
            bool valid = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) {
                    if (!nullable.contains(p.body[i])) valid = false;
                } else {
                    q.body.push_back(p.body[i]);
                }
            }
            if (valid && !q.body.empty()) no_eps.push_back(std::move(q));
        }
    }
    if (nullable.contains(g.start)) no_eps.push_back({g.start, {}});
    g.productions = std::move(no_eps);
    detail::sort_unique(g.productions);

    // Unit removal.
    auto is_unit = [&](const Production& p) { return p.body.size() == 1 && g.is_nonterminal(p.body[0]); };
    std::vector<Production> no_unit;
    for (const auto& a : g.nonterminals) {
        std::set<std::string> closure{a};
        std::vector<std::string> todo{a};
        while (!todo.empty()) {
            std::string x = todo.back();
            todo.pop_back();
            for (const auto& p : g.productions)
                if (p.head == x && is_unit(p) && closure.insert(p.body[0]).second) todo.push_back(p.body[0]);
        }
        for (const auto& b : closure)
            for (const auto& p : g.productions)
                if (p.head == b && !is_unit(p) && (!p.body.empty() || b == a)) no_unit.push_back({a, p.body});
    }
    g.productions = std::move(no_unit);
    g = detail::remove_useless(std::move(g));

    CnfGrammar out;
    static_cast<Cfg&>(out) = std::move(g);
    return out;
}

/// Greibach normal form with at most two trailing nonterminals, built with the
/// left-corner transform of the CNF input: [A,X] derives what remains of an A
/// once its left corner X has been recognised. Epsilon and unit rules of the
/// transform are eliminated and the leading nonterminal of each [A,C] rule is
/// expanded once through its own (already terminal-initial) rules.
inline GnfGrammar to_gnf(const CnfGrammar& cnf) {
    validate(cnf);
    if (!is_cnf(cnf)) throw InvalidInput("to_gnf: grammar is not in Chomsky normal form");
    detail::FreshNames fresh(cnf);

    std::map<std::string, std::vector<char>> unit_rules;                           // A -> a
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_left; // C -> {(B,D) : B -> C D}
    std::map<char, std::vector<std::string>> heads_of_terminal;                     // a -> {B : B -> a}
    bool has_eps = false;
    for (const auto& p : cnf.productions) {
        if (p.body.empty()) has_eps = true;
        else if (p.body.size() == 1) {
            unit_rules[p.head].push_back(p.body[0][0]);
            heads_of_terminal[p.body[0][0]].push_back(p.head);
        } else {
            by_left[p.body[0]].push_back({p.head, p.body[1]});
        }
    }
    auto has_unit = [&](const std::string& a, char t) {
        auto it = unit_rules.find(a);
        return it != unit_rules.end() && std::find(it->second.begin(), it->second.end(), t) != it->second.end();
    };

    std::map<std::pair<std::string, std::string>, std::string> lc_names;
    GnfGrammar out;
    out.terminals = cnf.terminals;
    out.start = cnf.start;
    out.nonterminals = cnf.nonterminals;
    auto lc = [&](const std::string& a, const std::string& x) {
        auto [it, fresh_one] = lc_names.try_emplace({a, x});
        if (fresh_one) {
            it->second = fresh.make(a + "/" + x);
            out.nonterminals.push_back(it->second);
        }
        return it->second;
    };
    auto t = [](char c) { return std::string(1, c); };

    // Rules of [A,C] for a nonterminal left corner C, after epsilon/unit
    // elimination and expansion of the leading nonterminal D.
    auto add_corner_rules = [&](const std::string& head, const std::string& a, const std::string& c) {
        auto it = by_left.find(c);
        if (it == by_left.end()) return;
        for (const auto& [b, d] : it->second) {
            for (char dt : cnf.terminals) {
                out.productions.push_back({head, {t(dt), lc(d, t(dt)), lc(a, b)}});
                if (has_unit(d, dt)) out.productions.push_back({head, {t(dt), lc(a, b)}});
                if (b == a) {
                    out.productions.push_back({head, {t(dt), lc(d, t(dt))}});
                    if (has_unit(d, dt)) out.productions.push_back({head, {t(dt)}});
                }
            }
        }
    };

    std::vector<std::string> originals;
    for (const auto& n : cnf.nonterminals) originals.push_back(n);
    for (const auto& a : originals) {
        for (char at : cnf.terminals) {
            out.productions.push_back({a, {t(at), lc(a, t(at))}});
            if (has_unit(a, at)) out.productions.push_back({a, {t(at)}});
        }
        for (const auto& c : originals) add_corner_rules(lc(a, c), a, c);
        for (char at : cnf.terminals) {
            auto it = heads_of_terminal.find(at);
            if (it == heads_of_terminal.end()) continue;
            for (const auto& b : it->second) add_corner_rules(lc(a, t(at)), a, b);
        }
    }
    if (has_eps) out.productions.push_back({cnf.start, {}});

    Cfg pruned = detail::remove_useless(static_cast<const Cfg&>(out));
    static_cast<Cfg&>(out) = std::move(pruned);
    return out;
}

/// Translation to a normal-form PDA that keeps the leftmost pending
/// nonterminal in the finite control and the rest of the sentential form on
/// the stack. Rule A -> a B C reads a, pushes C and continues in [B]; rule
/// A -> a B reads a without stack effect; rule A -> a either pops the next
/// pending nonterminal into the control or moves to the final state, where
/// bottom-only acceptance checks that nothing is pending. Every transition
/// reads one symbol and does at most one stack operation.
inline Pda gnf_to_pda(const GnfGrammar& g) {
    validate(g);
    if (!is_gnf(g)) throw InvalidInput("gnf_to_pda: grammar is not in Greibach normal form");

    std::set<std::string> pushable;
    for (const auto& p : g.productions)
        if (p.body.size() == 3) pushable.insert(p.body[2]);
    std::set<std::string> in_control;
    for (const auto& p : g.productions)
        if (p.body.size() >= 2) in_control.insert(p.body[1]);
    in_control.insert(pushable.begin(), pushable.end());

    auto ctl = [](const std::string& n) { return "[" + n + "]"; };
    Pda pda;
    pda.name = "gnf(" + g.start + ")";
    pda.input_alphabet = g.terminals;
    pda.start = "start";
    pda.states = {"start", "accept"};
    for (const auto& n : g.nonterminals)
        if (in_control.contains(n)) pda.states.push_back(ctl(n));
    std::string bottom = "$";
    while (pushable.contains(bottom)) bottom += "$";
    pda.bottom = bottom;
    pda.stack_alphabet.push_back(bottom);
    pda.stack_alphabet.insert(pda.stack_alphabet.end(), pushable.begin(), pushable.end());
    pda.acceptance_mode = AcceptanceMode::FinalStateAndBottomOnly;
    pda.accept = {"accept"};

    bool eps = false;
    for (const auto& p : g.productions) {
        if (p.body.empty()) {
            eps = true;
            continue;
        }
        std::vector<std::string> sources;
        if (in_control.contains(p.head)) sources.push_back(ctl(p.head));
        if (p.head == g.start) sources.push_back("start");
        const char a = p.body[0][0];
        for (const auto& src : sources) {
            if (p.body.size() == 1) {
                pda.add(src, a, "accept");
                for (const auto& x : pushable) pda.add(src, a, ctl(x), {StackAction::pop(x)});
            } else if (p.body.size() == 2) {
                pda.add(src, a, ctl(p.body[1]));
            } else {
                pda.add(src, a, ctl(p.body[1]), {StackAction::push(p.body[2])});
            }
        }
    }
    if (eps) pda.accept.push_back("start");
    return pda;
}

/// Standard cubic CYK.
inline bool cyk_membership(const CnfGrammar& g, std::string_view w) {
    if (w.empty()) {
        return std::any_of(g.productions.begin(), g.productions.end(),
                           [&](const Production& p) { return p.head == g.start && p.body.empty(); });
    }
    std::map<std::string, std::size_t> id;
    for (const auto& n : g.nonterminals) id.emplace(n, id.size());
    struct Binary {
        std::size_t head, left, right;
    };
    std::vector<Binary> binaries;
    std::vector<std::pair<std::size_t, char>> units;
    for (const auto& p : g.productions) {
        if (p.body.size() == 2) binaries.push_back({id.at(p.head), id.at(p.body[0]), id.at(p.body[1])});
        else if (p.body.size() == 1) units.push_back({id.at(p.head), p.body[0][0]});
    }
    const std::size_t n = w.size(), k = id.size();
    // cell(len, i) holds the nonterminals deriving w[i, i+len).
    std::vector<char> table(n * n * k, 0);
    auto cell = [&](std::size_t len, std::size_t i) { return table.data() + ((len - 1) * n + i) * k; };
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [head, t] : units)
            if (t == w[i]) cell(1, i)[head] = 1;
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            char* out = cell(len, i);
            for (std::size_t split = 1; split < len; ++split) {
                const char* l = cell(split, i);
                const char* r = cell(len - split, i + split);
                for (const auto& b : binaries)
                    if (l[b.left] && r[b.right]) out[b.head] = 1;
            }
        }
    return cell(n, 0)[id.at(g.start)];
}

} // namespace isl
