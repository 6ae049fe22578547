#pragma once

// Normal-form pushdown automata: data model, validation and an explicit
// machine adapter for the search engine in simulate.hpp.
//
// Input symbols are single bytes. State and stack-symbol names are arbitrary
// strings; they are interned to dense ids when a Pda is compiled into a
// PdaMachine.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "isl/errors.hpp"
#include "isl/simulate.hpp"

namespace isl {

enum class ActionKind { Push, Pop };

struct StackAction {
    ActionKind kind = ActionKind::Push;
    std::string symbol;

    static StackAction push(std::string s) { return {ActionKind::Push, std::move(s)}; }
    static StackAction pop(std::string s) { return {ActionKind::Pop, std::move(s)}; }
    bool operator==(const StackAction&) const = default;
};

/// One transition. `ops` is empty for a transition without stack effect; a
/// normal-form transition carries at most one operation. Longer op lists are
/// representable so that non-normal machines can be loaded and diagnosed.
struct Transition {
    std::string from;
    std::optional<char> read; ///< nullopt is epsilon
    std::vector<StackAction> ops;
    std::string to;
    bool auxiliary = false;

    bool pushes() const {
        return std::any_of(ops.begin(), ops.end(),
                           [](const StackAction& a) { return a.kind == ActionKind::Push; });
    }
    bool pops() const {
        return std::any_of(ops.begin(), ops.end(),
                           [](const StackAction& a) { return a.kind == ActionKind::Pop; });
    }
    bool operator==(const Transition&) const = default;
};

enum class AcceptanceMode { FinalState, FinalStateAndBottomOnly };

struct Pda {
    std::string name;
    std::vector<std::string> states;
    std::string input_alphabet;
    std::vector<std::string> stack_alphabet;
    std::vector<Transition> transitions;
    std::string start;
    std::string bottom = "$";
    std::vector<std::string> accept;
    AcceptanceMode acceptance_mode = AcceptanceMode::FinalState;

    Pda& add(std::string from, std::optional<char> read, std::string to,
             std::vector<StackAction> ops = {}) {
        transitions.push_back({std::move(from), read, std::move(ops), std::move(to), false});
        return *this;
    }
    Pda& add_auxiliary(std::string from, std::string to, std::string pushed) {
        transitions.push_back(
            {std::move(from), std::nullopt, {StackAction::push(std::move(pushed))}, std::move(to), true});
        return *this;
    }
};

inline std::string describe(const Transition& t, std::size_t id) {
    std::string s = "transition #" + std::to_string(id) + " (" + t.from + " -";
    s += t.read ? std::string(1, *t.read) : std::string("eps");
    for (const auto& op : t.ops) {
        s += op.kind == ActionKind::Push ? ",push " : ",pop ";
        s += op.symbol;
    }
    s += "-> " + t.to + ")";
    return s;
}

struct Diagnostic {
    std::optional<std::size_t> transition;
    std::string message;
};

/// Normal-form check: every non-auxiliary transition reads one symbol and does
/// at most one stack operation; every auxiliary transition is a single epsilon
/// push leaving a state that is entered only by pushing reads, and chains are
/// of length one. Dangling references are reported too.
inline std::vector<Diagnostic> validate_normal_form(const Pda& pda) {
    std::vector<Diagnostic> out;
    std::set<std::string> states(pda.states.begin(), pda.states.end());
    std::set<std::string> stack(pda.stack_alphabet.begin(), pda.stack_alphabet.end());
    std::set<std::string> accept(pda.accept.begin(), pda.accept.end());
    std::set<char> input(pda.input_alphabet.begin(), pda.input_alphabet.end());

    if (!states.contains(pda.start)) out.push_back({std::nullopt, "start state '" + pda.start + "' is not declared"});
    for (const auto& a : pda.accept)
        if (!states.contains(a)) out.push_back({std::nullopt, "accept state '" + a + "' is not declared"});
    if (!stack.contains(pda.bottom)) out.push_back({std::nullopt, "bottom marker '" + pda.bottom + "' is not a stack symbol"});

    std::set<std::string> aux_sources;
    for (const auto& t : pda.transitions)
        if (t.auxiliary) aux_sources.insert(t.from);

    for (std::size_t i = 0; i < pda.transitions.size(); ++i) {
        const auto& t = pda.transitions[i];
        const std::string who = describe(t, i);
        if (!states.contains(t.from) || !states.contains(t.to))
            out.push_back({i, who + ": references an undeclared state"});
        if (t.read && !input.contains(*t.read))
            out.push_back({i, who + ": reads a symbol outside the input alphabet"});
        for (const auto& op : t.ops)
            if (!stack.contains(op.symbol))
                out.push_back({i, who + ": uses undeclared stack symbol '" + op.symbol + "'"});

        if (!t.auxiliary) {
            if (!t.read) out.push_back({i, who + ": non-auxiliary epsilon transition"});
            if (t.ops.size() > 1) out.push_back({i, who + ": performs more than one stack operation"});
            continue;
        }
        if (t.read) out.push_back({i, who + ": auxiliary transition reads input"});
        if (t.ops.size() != 1 || t.ops[0].kind != ActionKind::Push)
            out.push_back({i, who + ": auxiliary transition must be a single push"});
        if (accept.contains(t.from)) out.push_back({i, who + ": auxiliary source state is accepting"});
        if (aux_sources.contains(t.to)) out.push_back({i, who + ": auxiliary chain longer than one step"});
        std::size_t incoming = 0;
        bool chained = true;
        for (const auto& u : pda.transitions) {
            if (u.from == t.from && !u.auxiliary) chained = false;
            if (u.to != t.from) continue;
            ++incoming;
            if (u.auxiliary || !u.read || u.ops.size() != 1 || u.ops[0].kind != ActionKind::Push) chained = false;
        }
        if (incoming == 0 || !chained)
            out.push_back({i, who + ": auxiliary push is not chained from a pushing read"});
    }
    return out;
}

/// Compiled explicit PDA. Configurations carry the full stack, bottom first.
class PdaMachine {
public:
    struct Config {
        int state = 0;
        std::vector<int> stack;
        bool operator==(const Config&) const = default;
    };
    struct ConfigHash {
        std::size_t operator()(const Config& c) const noexcept {
            std::size_t h = static_cast<std::size_t>(c.state) * 0x9e3779b97f4a7c15ULL;
            for (int s : c.stack) h = (h ^ static_cast<std::size_t>(s + 1)) * 0x100000001b3ULL;
            return h;
        }
    };
    using Label = std::size_t; ///< transition index in the source Pda

    explicit PdaMachine(Pda pda) : pda_(std::move(pda)) {
        for (std::size_t i = 0; i < pda_.states.size(); ++i) state_id_[pda_.states[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < pda_.stack_alphabet.size(); ++i)
            sym_id_[pda_.stack_alphabet[i]] = static_cast<int>(i);
        if (state_id_.size() != pda_.states.size()) throw InvalidInput(pda_.name + ": duplicate state names");
        if (sym_id_.size() != pda_.stack_alphabet.size()) throw InvalidInput(pda_.name + ": duplicate stack symbols");
        start_ = state("start", pda_.start);
        bottom_ = symbol(pda_.bottom);
        accept_.assign(pda_.states.size(), false);
        for (const auto& a : pda_.accept) accept_[static_cast<std::size_t>(state("accept", a))] = true;
        by_state_.resize(pda_.states.size());
        for (std::size_t i = 0; i < pda_.transitions.size(); ++i) {
            const auto& t = pda_.transitions[i];
            Compiled c;
            c.from = state("from", t.from);
            c.to = state("to", t.to);
            c.read = t.read;
            if (t.read && pda_.input_alphabet.find(*t.read) == std::string::npos)
                throw InvalidInput(describe(t, i) + ": symbol outside the input alphabet");
            int pops = 0;
            for (const auto& op : t.ops) {
                c.ops.push_back({op.kind, symbol(op.symbol)});
                if (op.kind == ActionKind::Pop) ++pops;
            }
            if (!t.read && pops > 0) epsilon_pops_ = true;
            if (t.read) max_pops_per_read_ = std::max(max_pops_per_read_, pops);
            compiled_.push_back(std::move(c));
            by_state_[static_cast<std::size_t>(compiled_.back().from)].push_back(i);
        }
    }

    const Pda& pda() const { return pda_; }

    Config initial() const { return Config{start_, {bottom_}}; }

    bool accepting(const Config& c) const {
        if (!accept_[static_cast<std::size_t>(c.state)]) return false;
        if (pda_.acceptance_mode == AcceptanceMode::FinalState) return true;
        return c.stack.size() == 1 && c.stack[0] == bottom_;
    }

    void moves(const Config& c, std::optional<char> next, std::vector<Move<Config, Label>>& out) const {
        for (std::size_t id : by_state_[static_cast<std::size_t>(c.state)]) {
            const auto& t = compiled_[id];
            if (t.read && (!next || *t.read != *next)) continue;
            Config n{t.to, c.stack};
            bool ok = true;
            for (const auto& op : t.ops) {
                if (op.kind == ActionKind::Push) {
                    n.stack.push_back(op.symbol);
                } else if (n.stack.empty() || n.stack.back() != op.symbol) {
                    ok = false;
                    break;
                } else {
                    n.stack.pop_back();
                }
            }
            if (ok) out.push_back({id, std::move(n), t.read.has_value()});
        }
    }

    std::size_t stack_depth(const Config& c) const { return c.stack.size(); }

    /// Normal form allows two pushes per input position plus the bottom marker.
    std::size_t depth_cap(std::size_t len) const { return depth_cap_override_ ? *depth_cap_override_ : 2 * len + 1; }
    void set_depth_cap(std::optional<std::size_t> cap) { depth_cap_override_ = cap; }

    std::string input_alphabet() const { return pda_.input_alphabet; }

    bool viable(const Config& c, std::size_t remaining) const {
        if (pda_.acceptance_mode != AcceptanceMode::FinalStateAndBottomOnly || epsilon_pops_) return true;
        if (c.stack.empty()) return false;
        return c.stack.size() - 1 <= remaining * static_cast<std::size_t>(max_pops_per_read_);
    }

    const std::string& state_name(int id) const { return pda_.states[static_cast<std::size_t>(id)]; }
    const std::string& symbol_name(int id) const { return pda_.stack_alphabet[static_cast<std::size_t>(id)]; }
    int state_id(const std::string& name) const { return state("state", name); }
    int symbol_id(const std::string& name) const { return symbol(name); }
    int bottom_id() const { return bottom_; }
    bool is_accept_state(int s) const { return accept_[static_cast<std::size_t>(s)]; }

private:
    struct CompiledOp {
        ActionKind kind;
        int symbol;
    };
    struct Compiled {
        int from = 0;
        int to = 0;
        std::optional<char> read;
        std::vector<CompiledOp> ops;
    };

    int state(const char* role, const std::string& name) const {
        auto it = state_id_.find(name);
        if (it == state_id_.end())
            throw InvalidInput(pda_.name + ": undeclared " + std::string(role) + " state '" + name + "'");
        return it->second;
    }
    int symbol(const std::string& name) const {
        auto it = sym_id_.find(name);
        if (it == sym_id_.end()) throw InvalidInput(pda_.name + ": undeclared stack symbol '" + name + "'");
        return it->second;
    }

    Pda pda_;
    std::unordered_map<std::string, int> state_id_;
    std::unordered_map<std::string, int> sym_id_;
    int start_ = 0;
    int bottom_ = 0;
    std::vector<bool> accept_;
    std::vector<Compiled> compiled_;
    std::vector<std::vector<std::size_t>> by_state_;
    bool epsilon_pops_ = false;
    int max_pops_per_read_ = 0;
    std::optional<std::size_t> depth_cap_override_;
};

using AcceptingRun = RunOf<PdaMachine>;

/// Convenience overloads on a plain Pda; they compile the machine per call.
inline AcceptResult<PdaMachine> accepts(const Pda& pda, std::string_view w, const SearchLimits& limits = {}) {
    return accepts(PdaMachine(pda), w, limits);
}

inline std::vector<AcceptingRun> enumerate_runs(const Pda& pda, std::string_view w, std::size_t cap,
                                                const SearchLimits& limits = {}) {
    return enumerate_runs(PdaMachine(pda), w, cap, limits);
}

inline std::set<std::string> enumerate_language(const Pda& pda, std::size_t max_len,
                                                const SearchLimits& limits = {}) {
    return enumerate_language(PdaMachine(pda), max_len, limits);
}

/// All successors of one configuration for input `w` at `pos` (reads and epsilons).
inline std::vector<PdaMachine::Config> step(const PdaMachine& m, const PdaMachine::Config& c, std::string_view w,
                                            std::size_t pos) {
    std::vector<Move<PdaMachine::Config, std::size_t>> mv;
    std::optional<char> next;
    if (pos < w.size()) next = w[pos];
    m.moves(c, next, mv);
    std::vector<PdaMachine::Config> out;
    for (auto& x : mv) {
        if (std::find(out.begin(), out.end(), x.next) == out.end()) out.push_back(std::move(x.next));
    }
    return out;
}

/// Checks the structural run invariants: consecutive configurations connected
/// by the listed transitions, full consumption, acceptance, the per-position
/// push bound and the stack depth bound. Returns an empty string when valid.
inline std::string check_run(const PdaMachine& m, std::string_view w, const AcceptingRun& run) {
    auto c = m.initial();
    std::size_t pos = 0;
    std::map<std::size_t, int> pushes_at;
    for (const auto& s : run.steps) {
        std::vector<Move<PdaMachine::Config, std::size_t>> mv;
        std::optional<char> next;
        if (pos < w.size()) next = w[pos];
        m.moves(c, next, mv);
        auto it = std::find_if(mv.begin(), mv.end(), [&](const auto& x) { return x.label == s.label; });
        if (it == mv.end()) return "step with transition " + std::to_string(s.label) + " is not applicable";
        if (it->reads) ++pos;
        for (const auto& op : m.pda().transitions[s.label].ops)
            if (op.kind == ActionKind::Push) ++pushes_at[s.input_pos];
        c = it->next;
        if (c.stack.size() > 2 * w.size() + 1) return "stack depth bound exceeded";
        if (c.stack.size() != s.stack_depth_after) return "recorded stack depth mismatch";
    }
    if (pos != w.size()) return "input not fully consumed";
    if (!(c == run.final_config)) return "final configuration mismatch";
    if (!m.accepting(c)) return "final configuration is not accepting";
    for (const auto& [p, n] : pushes_at)
        if (n > 2) return "more than two pushes at position " + std::to_string(p);
    return {};
}

} // namespace isl
