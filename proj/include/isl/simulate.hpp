#pragma once

// Generic nondeterministic search over pushdown-style machines.
//
// A machine exposes configurations (control state plus stack, possibly plus
// finite-control extras) and, for a configuration and an optional next input
// symbol, the list of one-step moves. Explicit PDAs and the lazily expanded
// product machines both plug into the same engine, which keeps acceptance,
// run enumeration and bounded language enumeration in one place.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "isl/errors.hpp"

namespace isl {

template <class Config, class Label>
struct Move {
    Label label;
    Config next;
    bool reads = true; ///< false for epsilon moves
};

template <class M>
concept Machine = requires(const M& m, const typename M::Config& c, std::optional<char> next,
                           std::vector<Move<typename M::Config, typename M::Label>>& out,
                           std::size_t n) {
    typename M::Config;
    typename M::Label;
    typename M::ConfigHash;
    { m.initial() } -> std::convertible_to<typename M::Config>;
    { m.accepting(c) } -> std::convertible_to<bool>;
    m.moves(c, next, out);
    { m.stack_depth(c) } -> std::convertible_to<std::size_t>;
    { m.depth_cap(n) } -> std::convertible_to<std::size_t>;
    { m.input_alphabet() } -> std::convertible_to<std::string>;
    requires std::equality_comparable<typename M::Config>;
    { typename M::ConfigHash{}(c) } -> std::convertible_to<std::size_t>;
};

/// Optional pruning hook: false when no accepting configuration can be reached
/// within `remaining` further input symbols.
template <class M>
concept HasViability = requires(const M& m, const typename M::Config& c, std::size_t remaining) {
    { m.viable(c, remaining) } -> std::convertible_to<bool>;
};

struct SearchLimits {
    std::size_t max_configs = 4'000'000;
};

template <class Label>
struct RunStep {
    Label label;
    std::size_t input_pos = 0; ///< 1-based position read, or of the triggering read for epsilon steps
    std::size_t stack_depth_after = 0;
    bool reads = true;
};

template <class Label, class Config>
struct Run {
    std::vector<RunStep<Label>> steps;
    Config final_config;
};

template <Machine M>
using RunOf = Run<typename M::Label, typename M::Config>;

template <Machine M>
struct AcceptResult {
    bool accepted = false;
    std::optional<RunOf<M>> run;
};

namespace detail {

template <class Config, class Hash>
struct Node {
    Config config;
    std::size_t pos;
    bool operator==(const Node&) const = default;
};

template <class Config, class Hash>
struct NodeHash {
    std::size_t operator()(const Node<Config, Hash>& n) const noexcept {
        return Hash{}(n.config) * 1000003u ^ n.pos;
    }
};

template <class T>
bool viable(const T& m, const typename T::Config& c, std::size_t remaining) {
    if constexpr (HasViability<T>) {
        return m.viable(c, remaining);
    } else {
        (void)m; (void)c; (void)remaining;
        return true;
    }
}

template <Machine M>
class PathSearch {
public:
    using Config = typename M::Config;
    using Label = typename M::Label;
    using MoveT = Move<Config, Label>;
    using NodeT = Node<Config, typename M::ConfigHash>;
    using NodeSet = std::unordered_set<NodeT, NodeHash<Config, typename M::ConfigHash>>;

    PathSearch(const M& m, std::string_view w, const SearchLimits& limits)
        : m_(m), w_(w), limits_(limits), cap_(m.depth_cap(w.size())) {}

    std::optional<RunOf<M>> first() {
        Config init = m_.initial();
        seen_.insert(NodeT{init, 0});
        if (dfs_first(init, 0, 0)) {
            return found_;
        }
        return std::nullopt;
    }

    std::vector<RunOf<M>> all(std::size_t run_cap) {
        run_cap_ = run_cap;
        Config init = m_.initial();
        on_path_.insert(NodeT{init, 0});
        dfs_all(init, 0, 0);
        return std::move(runs_);
    }

private:
    void bump() {
        if (++expanded_ > limits_.max_configs) {
            throw LimitExceeded("configuration search exceeded " +
                                std::to_string(limits_.max_configs) + " configurations");
        }
    }

    std::vector<MoveT> expand(const Config& c, std::size_t pos) {
        bump();
        std::vector<MoveT> out;
        std::optional<char> next;
        if (pos < w_.size()) next = w_[pos];
        m_.moves(c, next, out);
        return out;
    }

    bool dfs_first(const Config& c, std::size_t pos, std::size_t last_read) {
        if (pos == w_.size() && m_.accepting(c)) {
            found_ = RunOf<M>{path_, c};
            return true;
        }
        for (auto& mv : expand(c, pos)) {
            std::size_t npos = pos + (mv.reads ? 1 : 0);
            if (m_.stack_depth(mv.next) > cap_) continue;
            if (!viable(m_, mv.next, w_.size() - npos)) continue;
            if (!seen_.insert(NodeT{mv.next, npos}).second) continue;
            std::size_t at = mv.reads ? npos : last_read;
            path_.push_back({mv.label, at, m_.stack_depth(mv.next), mv.reads});
            if (dfs_first(mv.next, npos, at)) return true;
            path_.pop_back();
        }
        return false;
    }

    // Returns the number of accepting runs found below this node.
    std::size_t dfs_all(const Config& c, std::size_t pos, std::size_t last_read) {
        std::size_t found = 0;
        if (pos == w_.size() && m_.accepting(c)) {
            runs_.push_back(RunOf<M>{path_, c});
            ++found;
            if (runs_.size() >= run_cap_) return found;
        }
        for (auto& mv : expand(c, pos)) {
            std::size_t npos = pos + (mv.reads ? 1 : 0);
            if (m_.stack_depth(mv.next) > cap_) continue;
            if (!viable(m_, mv.next, w_.size() - npos)) continue;
            NodeT node{mv.next, npos};
            if (dead_.contains(node) || on_path_.contains(node)) continue;
            std::size_t at = mv.reads ? npos : last_read;
            path_.push_back({mv.label, at, m_.stack_depth(mv.next), mv.reads});
            on_path_.insert(node);
            std::size_t below = dfs_all(mv.next, npos, at);
            on_path_.erase(node);
            path_.pop_back();
            if (runs_.size() >= run_cap_) return found + below;
            if (below == 0) dead_.insert(std::move(node));
            found += below;
        }
        return found;
    }

    const M& m_;
    std::string_view w_;
    SearchLimits limits_;
    std::size_t cap_;
    std::size_t expanded_ = 0;
    std::size_t run_cap_ = 0;
    NodeSet seen_;
    NodeSet on_path_;
    NodeSet dead_;
    std::vector<RunStep<Label>> path_;
    std::optional<RunOf<M>> found_;
    std::vector<RunOf<M>> runs_;
};

} // namespace detail

/// Exhaustive acceptance check. The witness is the lexicographically smallest
/// accepting run in move order.
template <Machine M>
AcceptResult<M> accepts(const M& m, std::string_view w, const SearchLimits& limits = {}) {
    detail::PathSearch<M> search(m, w, limits);
    auto run = search.first();
    AcceptResult<M> r;
    r.accepted = run.has_value();
    r.run = std::move(run);
    return r;
}

/// Up to `cap` distinct accepting runs on `w`, in lexicographic move order.
template <Machine M>
std::vector<RunOf<M>> enumerate_runs(const M& m, std::string_view w, std::size_t cap,
                                     const SearchLimits& limits = {}) {
    if (cap == 0) return {};
    detail::PathSearch<M> search(m, w, limits);
    return search.all(cap);
}

/// Observer hooks for bounded exploration; the defaults do nothing.
struct NoObserver {
    template <class C>
    void on_config(const C&) const {}
    template <class L>
    void on_move(const L&) const {}
};

/// Every accepted string of length at most `max_len`, computed by a
/// breadth-first product of prefixes and configuration sets. Dead prefixes
/// are pruned, so the cost tracks the prefix language, not |alphabet|^len.
template <Machine M, class Observer = NoObserver>
std::set<std::string> enumerate_language(const M& m, std::size_t max_len,
                                         const SearchLimits& limits = {},
                                         const Observer& observer = {}) {
    using Config = typename M::Config;
    using Label = typename M::Label;
    using Set = std::unordered_set<Config, typename M::ConfigHash>;

    std::string alphabet = m.input_alphabet();
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    const std::size_t cap = m.depth_cap(max_len);
    std::size_t processed = 0;
    std::set<std::string> language;
    std::vector<Move<Config, Label>> moves;

    auto admit = [&](Set& into, std::vector<Config>& order, Config c, std::size_t pos) {
        if (m.stack_depth(c) > cap) return;
        if (!detail::viable(m, c, max_len - pos)) return;
        if (into.insert(c).second) {
            if (++processed > limits.max_configs) {
                throw LimitExceeded("language enumeration exceeded " +
                                    std::to_string(limits.max_configs) + " configurations");
            }
            observer.on_config(c);
            order.push_back(std::move(c));
        }
    };

    // Epsilon closure in place.
    auto close = [&](Set& set, std::vector<Config>& order, std::size_t pos) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            moves.clear();
            Config cur = order[i];
            m.moves(cur, std::nullopt, moves);
            for (auto& mv : moves) {
                if (mv.reads) continue;
                observer.on_move(mv.label);
                admit(set, order, std::move(mv.next), pos);
            }
        }
    };

    std::function<void(std::string&, std::vector<Config>&)> walk =
        [&](std::string& prefix, std::vector<Config>& frontier) {
            for (const auto& c : frontier) {
                if (m.accepting(c)) {
                    language.insert(prefix);
                    break;
                }
            }
            if (prefix.size() == max_len) return;
            for (char sym : alphabet) {
                Set next_set;
                std::vector<Config> next;
                for (const auto& c : frontier) {
                    moves.clear();
                    m.moves(c, sym, moves);
                    for (auto& mv : moves) {
                        if (!mv.reads) continue;
                        observer.on_move(mv.label);
                        admit(next_set, next, std::move(mv.next), prefix.size() + 1);
                    }
                }
                close(next_set, next, prefix.size() + 1);
                if (next.empty()) continue;
                prefix.push_back(sym);
                walk(prefix, next);
                prefix.pop_back();
            }
        };

    Set init_set;
    std::vector<Config> init;
    admit(init_set, init, m.initial(), 0);
    close(init_set, init, 0);
    std::string prefix;
    if (!init.empty()) walk(prefix, init);
    return language;
}

} // namespace isl
