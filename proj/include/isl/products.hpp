#pragma once

// Intersection machines for two normal-form PDAs sharing one stack.
//
// Both products advance the two components in lockstep, one input symbol per
// move, and keep entries tagged with their owner (1 or 2) so the two stack
// alphabets never collide. They are lazy: a configuration's successors are
// computed when the search engine asks for them.
//
//  * DisplacementProduct: a pop whose target is buried under at most 2k
//    entries of the other owner lifts them into a finite buffer, removes the
//    target and puts them back in their original order.
//  * BufferedProduct: every push is guessed short (finite buffer entry with a
//    countdown of 2D positions) or long (shared stack). Pops look in the
//    buffer first, then at the stack top.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isl/errors.hpp"
#include "isl/pda.hpp"
#include "isl/simulate.hpp"

namespace isl {

struct TaggedSymbol {
    std::uint8_t owner = 1;
    int symbol = 0;
    bool operator==(const TaggedSymbol&) const = default;
};

enum class Placement { Stack, Buffer };

struct ProductEvent {
    int owner = 1;
    ActionKind kind = ActionKind::Push;
    int symbol = 0;
    Placement placement = Placement::Stack;
    std::size_t displaced = 0;    ///< displacement product: entries lifted for this pop
    std::size_t buffer_after = 0; ///< buffered product: occupancy after the event
};

/// Finite-control part of a product configuration: both control states and
/// the buffer contents. Buffer entries are packed as owner, symbol, timer.
struct CompositeKey {
    int q1 = 0;
    int q2 = 0;
    std::vector<std::uint32_t> content;
    auto operator<=>(const CompositeKey&) const = default;
};

inline std::uint32_t pack_entry(int owner, int symbol, int timer) {
    return (static_cast<std::uint32_t>(owner) << 24) | (static_cast<std::uint32_t>(symbol) << 8) |
           static_cast<std::uint32_t>(timer);
}

struct ProductLabel {
    std::array<std::vector<std::size_t>, 2> transitions; ///< component transition ids
    std::vector<ProductEvent> events;
    std::vector<CompositeKey> transient; ///< intermediate composite states (displacement buffer in use)
};

namespace detail {

struct ComponentStep {
    int to = 0;
    std::optional<int> pop;
    std::vector<int> pushes;
    std::vector<std::size_t> transitions;
};

/// One component with its per-symbol steps: a reading transition optionally
/// followed by the auxiliary push chained to it.
class Component {
public:
    explicit Component(const Pda& pda) : m_(pda) {
        auto diags = validate_normal_form(pda);
        if (!diags.empty())
            throw PreconditionViolated(pda.name + " is not in normal form: " + diags.front().message);
        const int bottom = m_.bottom_id();
        std::map<int, std::vector<std::size_t>> aux_from;
        for (std::size_t i = 0; i < pda.transitions.size(); ++i) {
            const auto& t = pda.transitions[i];
            for (const auto& op : t.ops)
                if (op.kind == ActionKind::Pop && m_.symbol_id(op.symbol) == bottom)
                    throw PreconditionViolated(describe(t, i) + " pops the bottom marker");
            if (t.auxiliary) aux_from[m_.state_id(t.from)].push_back(i);
        }
        steps_.assign(pda.states.size(), {});
        for (std::size_t i = 0; i < pda.transitions.size(); ++i) {
            const auto& t = pda.transitions[i];
            if (t.auxiliary) continue;
            ComponentStep s;
            s.to = m_.state_id(t.to);
            s.transitions = {i};
            for (const auto& op : t.ops) {
                if (op.kind == ActionKind::Pop) s.pop = m_.symbol_id(op.symbol);
                else s.pushes.push_back(m_.symbol_id(op.symbol));
            }
            auto& bucket = steps_[static_cast<std::size_t>(m_.state_id(t.from))][static_cast<unsigned char>(*t.read)];
            auto aux = aux_from.find(s.to);
            if (aux == aux_from.end()) {
                bucket.push_back(std::move(s));
                continue;
            }
            for (std::size_t u : aux->second) {
                ComponentStep chained = s;
                chained.to = m_.state_id(pda.transitions[u].to);
                chained.pushes.push_back(m_.symbol_id(pda.transitions[u].ops[0].symbol));
                chained.transitions.push_back(u);
                bucket.push_back(std::move(chained));
            }
        }
    }

    const PdaMachine& machine() const { return m_; }
    const Pda& pda() const { return m_.pda(); }
    const std::vector<ComponentStep>& steps(int state, char c) const {
        return steps_[static_cast<std::size_t>(state)][static_cast<unsigned char>(c)];
    }
    int start() const { return m_.initial().state; }
    bool accept_state(int s) const { return m_.is_accept_state(s); }
    bool bottom_only() const { return pda().acceptance_mode == AcceptanceMode::FinalStateAndBottomOnly; }

private:
    PdaMachine m_;
    std::vector<std::array<std::vector<ComponentStep>, 256>> steps_;
};

struct PendingPush {
    int owner;
    int symbol;
};

/// All order-preserving interleavings of the two owners' push lists.
inline std::vector<std::vector<PendingPush>> interleavings(const std::vector<int>& p1, const std::vector<int>& p2) {
    std::vector<std::vector<PendingPush>> out;
    std::vector<PendingPush> cur;
    auto rec = [&](auto&& self, std::size_t a, std::size_t b) -> void {
        if (a == p1.size() && b == p2.size()) {
            out.push_back(cur);
            return;
        }
        if (a < p1.size()) {
            cur.push_back({1, p1[a]});
            self(self, a + 1, b);
            cur.pop_back();
        }
        if (b < p2.size()) {
            cur.push_back({2, p2[b]});
            self(self, a, b + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::string union_alphabet(const Pda& a, const Pda& b) {
    std::set<char> s(a.input_alphabet.begin(), a.input_alphabet.end());
    s.insert(b.input_alphabet.begin(), b.input_alphabet.end());
    return std::string(s.begin(), s.end());
}

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return (h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

} // namespace detail

class DisplacementProduct {
public:
    struct Config {
        int q1 = 0;
        int q2 = 0;
        std::vector<TaggedSymbol> stack; ///< bottom first; the shared bottom marker is implicit
        bool operator==(const Config&) const = default;
    };
    struct ConfigHash {
        std::size_t operator()(const Config& c) const noexcept {
            std::size_t h = detail::hash_combine(static_cast<std::size_t>(c.q1), static_cast<std::size_t>(c.q2));
            for (const auto& e : c.stack) h = detail::hash_combine(h, pack_entry(e.owner, e.symbol, 0));
            return h;
        }
    };
    using Label = ProductLabel;

    DisplacementProduct(const Pda& m1, const Pda& m2, std::size_t k)
        : c_{detail::Component(m1), detail::Component(m2)}, k_(k), alphabet_(detail::union_alphabet(m1, m2)) {}

    Config initial() const { return {c_[0].start(), c_[1].start(), {}}; }

    bool accepting(const Config& c) const {
        if (!c_[0].accept_state(c.q1) || !c_[1].accept_state(c.q2)) return false;
        for (const auto& e : c.stack)
            if (c_[e.owner - 1].bottom_only()) return false;
        return true;
    }

    void moves(const Config& c, std::optional<char> next, std::vector<Move<Config, Label>>& out) const {
        if (!next) return;
        std::vector<Config> produced;
        for (const auto& s1 : c_[0].steps(c.q1, *next)) {
            for (const auto& s2 : c_[1].steps(c.q2, *next)) {
                std::vector<std::pair<int, int>> pops;
                if (s1.pop) pops.push_back({1, *s1.pop});
                if (s2.pop) pops.push_back({2, *s2.pop});
                const int orders = pops.size() == 2 ? 2 : 1;
                for (int o = 0; o < orders; ++o) {
                    if (o == 1) std::swap(pops[0], pops[1]);
                    Label label;
                    label.transitions = {s1.transitions, s2.transitions};
                    std::vector<TaggedSymbol> stack = c.stack;
                    bool ok = true;
                    for (const auto& [owner, sym] : pops) {
                        if (!pop_one(c, stack, owner, sym, label)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    for (const auto& order : detail::interleavings(s1.pushes, s2.pushes)) {
                        Config n{s1.to, s2.to, stack};
                        Label l = label;
                        for (const auto& p : order) {
                            n.stack.push_back({static_cast<std::uint8_t>(p.owner), p.symbol});
                            l.events.push_back({p.owner, ActionKind::Push, p.symbol, Placement::Stack, 0, 0});
                        }
                        if (std::find(produced.begin(), produced.end(), n) != produced.end()) continue;
                        produced.push_back(n);
                        out.push_back({std::move(l), std::move(n), true});
                    }
                }
            }
        }
    }

    std::size_t stack_depth(const Config& c) const { return c.stack.size() + 1; }
    std::size_t depth_cap(std::size_t len) const { return 4 * len + 1; }
    std::string input_alphabet() const { return alphabet_; }

    bool viable(const Config& c, std::size_t remaining) const {
        std::array<std::size_t, 2> owned{0, 0};
        for (const auto& e : c.stack) ++owned[e.owner - 1u];
        for (int o = 0; o < 2; ++o)
            if (c_[o].bottom_only() && owned[o] > remaining) return false;
        return true;
    }

    CompositeKey composite_key(const Config& c) const { return {c.q1, c.q2, {}}; }

    std::size_t k() const { return k_; }
    const detail::Component& component(int owner) const { return c_[owner - 1]; }

private:
    bool pop_one(const Config& c, std::vector<TaggedSymbol>& stack, int owner, int sym, Label& label) const {
        std::size_t displaced = 0;
        for (std::size_t idx = stack.size(); idx-- > 0;) {
            if (stack[idx].owner != owner) {
                if (++displaced > 2 * k_) return false;
                continue;
            }
            if (stack[idx].symbol != sym) return false;
            if (displaced > 0) {
                CompositeKey beta{c.q1, c.q2, {}};
                for (std::size_t x = stack.size(); x-- > idx + 1;)
                    beta.content.push_back(pack_entry(stack[x].owner, stack[x].symbol, 0));
                label.transient.push_back(std::move(beta));
            }
            // Lifting the displaced entries and pushing them back in their
            // original order leaves exactly the target removed.
            stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(idx));
            label.events.push_back({owner, ActionKind::Pop, sym, Placement::Stack, displaced, 0});
            return true;
        }
        return false;
    }

    std::array<detail::Component, 2> c_;
    std::size_t k_;
    std::string alphabet_;
};

class BufferedProduct {
public:
    struct BufferEntry {
        std::uint8_t owner = 1;
        int symbol = 0;
        int timer = 0;
        bool operator==(const BufferEntry&) const = default;
    };
    struct Config {
        int q1 = 0;
        int q2 = 0;
        std::vector<TaggedSymbol> stack; ///< long arcs
        std::vector<BufferEntry> buffer; ///< short arcs, oldest first
        bool operator==(const Config&) const = default;
    };
    struct ConfigHash {
        std::size_t operator()(const Config& c) const noexcept {
            std::size_t h = detail::hash_combine(static_cast<std::size_t>(c.q1), static_cast<std::size_t>(c.q2));
            for (const auto& e : c.stack) h = detail::hash_combine(h, pack_entry(e.owner, e.symbol, 0));
            h = detail::hash_combine(h, 0xb0f);
            for (const auto& e : c.buffer) h = detail::hash_combine(h, pack_entry(e.owner, e.symbol, e.timer));
            return h;
        }
    };
    using Label = ProductLabel;

    BufferedProduct(const Pda& m1, const Pda& m2, std::size_t d)
        : c_{detail::Component(m1), detail::Component(m2)}, d_(d), alphabet_(detail::union_alphabet(m1, m2)) {
        if (d == 0) throw PreconditionViolated("buffered_product: inner bound D must be at least 1");
    }

    Config initial() const { return {c_[0].start(), c_[1].start(), {}, {}}; }

    bool accepting(const Config& c) const {
        if (!c_[0].accept_state(c.q1) || !c_[1].accept_state(c.q2)) return false;
        for (const auto& e : c.stack)
            if (c_[e.owner - 1].bottom_only()) return false;
        for (const auto& e : c.buffer)
            if (c_[e.owner - 1].bottom_only()) return false;
        return true;
    }

    void moves(const Config& c, std::optional<char> next, std::vector<Move<Config, Label>>& out) const {
        if (!next) return;
        std::vector<Config> produced;
        for (const auto& s1 : c_[0].steps(c.q1, *next)) {
            for (const auto& s2 : c_[1].steps(c.q2, *next)) {
                std::vector<std::pair<int, int>> pops;
                if (s1.pop) pops.push_back({1, *s1.pop});
                if (s2.pop) pops.push_back({2, *s2.pop});
                const int orders = pops.size() == 2 ? 2 : 1;
                for (int o = 0; o < orders; ++o) {
                    if (o == 1) std::swap(pops[0], pops[1]);
                    Config base{s1.to, s2.to, c.stack, c.buffer};
                    Label label;
                    label.transitions = {s1.transitions, s2.transitions};
                    bool ok = true;
                    for (const auto& [owner, sym] : pops)
                        if (!pop_one(base, owner, sym, label)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    for (const auto& order : detail::interleavings(s1.pushes, s2.pushes)) {
                        const unsigned guesses = 1u << order.size();
                        for (unsigned g = 0; g < guesses; ++g) {
                            Config n = base;
                            Label l = label;
                            if (!push_all(n, order, g, l) || !tick(n)) continue;
                            if (std::find(produced.begin(), produced.end(), n) != produced.end()) continue;
                            produced.push_back(n);
                            out.push_back({std::move(l), std::move(n), true});
                        }
                    }
                }
            }
        }
    }

    std::size_t stack_depth(const Config& c) const { return c.stack.size() + 1; }
    std::size_t depth_cap(std::size_t len) const { return 4 * len + 1; }
    std::string input_alphabet() const { return alphabet_; }

    bool viable(const Config& c, std::size_t remaining) const {
        std::array<std::size_t, 2> owned{0, 0};
        for (const auto& e : c.stack) ++owned[e.owner - 1u];
        for (const auto& e : c.buffer) ++owned[e.owner - 1u];
        for (int o = 0; o < 2; ++o)
            if (c_[o].bottom_only() && owned[o] > remaining) return false;
        return true;
    }

    /// Timers are stored after the end-of-position decrement (0..2D-1) and
    /// reported shifted into 1..2D.
    CompositeKey composite_key(const Config& c) const {
        CompositeKey k{c.q1, c.q2, {}};
        for (const auto& e : c.buffer) k.content.push_back(pack_entry(e.owner, e.symbol, e.timer + 1));
        return k;
    }

    std::size_t d() const { return d_; }
    std::size_t buffer_cap() const { return 8 * d_; }
    const detail::Component& component(int owner) const { return c_[owner - 1]; }

private:
    bool pop_one(Config& n, int owner, int sym, Label& label) const {
        for (std::size_t idx = n.buffer.size(); idx-- > 0;) {
            if (n.buffer[idx].owner != owner) continue;
            if (n.buffer[idx].symbol != sym) return false;
            n.buffer.erase(n.buffer.begin() + static_cast<std::ptrdiff_t>(idx));
            label.events.push_back({owner, ActionKind::Pop, sym, Placement::Buffer, 0, n.buffer.size()});
            return true;
        }
        if (n.stack.empty() || n.stack.back().owner != owner || n.stack.back().symbol != sym) return false;
        n.stack.pop_back();
        label.events.push_back({owner, ActionKind::Pop, sym, Placement::Stack, 0, n.buffer.size()});
        return true;
    }

    bool push_all(Config& n, const std::vector<detail::PendingPush>& order, unsigned guess, Label& label) const {
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto& p = order[i];
            const bool is_short = guess & (1u << i);
            if (is_short) {
                if (n.buffer.size() >= buffer_cap()) return false;
                n.buffer.push_back({static_cast<std::uint8_t>(p.owner), p.symbol, static_cast<int>(2 * d_)});
            } else {
                // A long arc cannot sit inside a pending short arc of its own machine.
                for (const auto& e : n.buffer)
                    if (e.owner == p.owner) return false;
                n.stack.push_back({static_cast<std::uint8_t>(p.owner), p.symbol});
            }
            label.events.push_back({p.owner, ActionKind::Push, p.symbol,
                                    is_short ? Placement::Buffer : Placement::Stack, 0, n.buffer.size()});
        }
        return true;
    }

    static bool tick(Config& n) {
        for (const auto& e : n.buffer)
            if (e.timer == 0) return false;
        for (auto& e : n.buffer) --e.timer;
        return true;
    }

    std::array<detail::Component, 2> c_;
    std::size_t d_;
    std::string alphabet_;
};

inline DisplacementProduct displacement_product(const Pda& m1, const Pda& m2, std::size_t k) {
    return DisplacementProduct(m1, m2, k);
}

inline BufferedProduct buffered_product(const Pda& m1, const Pda& m2, std::size_t d) {
    return BufferedProduct(m1, m2, d);
}

// ---------------------------------------------------------------------------
// State bounds and empirical composite-state counts.

enum class ProductKind { Displacement, Buffered };

using BigInt = boost::multiprecision::cpp_int;

/// |Q1||Q2|(|G1|+|G2|+1)^(2k) or |Q1||Q2|(1+(|G1|+|G2|)*2D)^(8D).
inline BigInt state_bound(ProductKind kind, std::size_t q1, std::size_t q2, std::size_t g1, std::size_t g2,
                          std::size_t param) {
    if (q1 == 0 || q2 == 0 || g1 == 0 || g2 == 0) throw PreconditionViolated("state_bound: sizes must be positive");
    constexpr std::size_t max_exponent = 1u << 20;
    BigInt base;
    std::size_t exponent = 0;
    if (kind == ProductKind::Displacement) {
        base = BigInt(g1) + g2 + 1;
        exponent = 2 * param;
    } else {
        base = 1 + (BigInt(g1) + g2) * 2 * param;
        exponent = 8 * param;
    }
    if (param > max_exponent / 8 || exponent > max_exponent)
        throw Overflow("state_bound: exponent " + std::to_string(param) + " too large to evaluate");
    return BigInt(q1) * q2 * boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline BigInt state_bound(const DisplacementProduct& p) {
    const auto& a = p.component(1).pda();
    const auto& b = p.component(2).pda();
    return state_bound(ProductKind::Displacement, a.states.size(), b.states.size(), a.stack_alphabet.size(),
                       b.stack_alphabet.size(), p.k());
}

inline BigInt state_bound(const BufferedProduct& p) {
    const auto& a = p.component(1).pda();
    const auto& b = p.component(2).pda();
    return state_bound(ProductKind::Buffered, a.states.size(), b.states.size(), a.stack_alphabet.size(),
                       b.stack_alphabet.size(), p.d());
}

template <class P>
concept ProductMachine = Machine<P> && requires(const P& p, const typename P::Config& c) {
    { p.composite_key(c) } -> std::convertible_to<CompositeKey>;
};

/// Distinct composite states (control pair plus buffer) touched while
/// enumerating the product language up to `max_len`.
template <ProductMachine P>
std::size_t reachable_composite_states(const P& product, std::size_t max_len, const SearchLimits& limits = {}) {
    struct Collector {
        const P* p;
        std::set<CompositeKey>* keys;
        void on_config(const typename P::Config& c) const { keys->insert(p->composite_key(c)); }
        void on_move(const ProductLabel& l) const { keys->insert(l.transient.begin(), l.transient.end()); }
    };
    std::set<CompositeKey> keys;
    enumerate_language(product, max_len, limits, Collector{&product, &keys});
    return keys.size();
}

/// Reached part of a lazy product: composite states and the moves between
/// them, explored breadth-first over configurations up to `max_len` symbols.
struct FragmentEdge {
    std::size_t from = 0;
    char read = 0;
    std::size_t to = 0;
    std::vector<ProductEvent> events;
    auto key() const { return std::tuple(from, read, to); }
};

struct Fragment {
    std::vector<CompositeKey> states; ///< index 0 is the start
    std::vector<bool> accepting;
    std::vector<FragmentEdge> edges;
};

template <ProductMachine P>
Fragment reached_fragment(const P& product, std::size_t max_len, const SearchLimits& limits = {}) {
    using Config = typename P::Config;
    Fragment f;
    std::map<CompositeKey, std::size_t> index;
    auto id_of = [&](const CompositeKey& k) {
        auto [it, fresh] = index.try_emplace(k, f.states.size());
        if (fresh) {
            f.states.push_back(k);
            f.accepting.push_back(false);
        }
        return it->second;
    };
    std::set<std::tuple<std::size_t, char, std::size_t>> edge_seen;
    std::unordered_set<Config, typename P::ConfigHash> seen;
    std::vector<Config> frontier{product.initial()};
    seen.insert(frontier.front());
    id_of(product.composite_key(frontier.front()));
    std::string alphabet = product.input_alphabet();
    std::vector<Move<Config, typename P::Label>> moves;
    const std::size_t cap = product.depth_cap(max_len);
    for (std::size_t depth = 0; depth <= max_len && !frontier.empty(); ++depth) {
        std::vector<Config> next;
        for (const auto& c : frontier) {
            std::size_t from = id_of(product.composite_key(c));
            if (product.accepting(c)) f.accepting[from] = true;
            if (depth == max_len) continue;
            for (char sym : alphabet) {
                moves.clear();
                product.moves(c, sym, moves);
                for (auto& mv : moves) {
                    if (product.stack_depth(mv.next) > cap) continue;
                    std::size_t to = id_of(product.composite_key(mv.next));
                    if (edge_seen.insert({from, sym, to}).second) f.edges.push_back({from, sym, to, mv.label.events});
                    if (seen.insert(mv.next).second) {
                        if (seen.size() > limits.max_configs)
                            throw LimitExceeded("fragment export exceeded " + std::to_string(limits.max_configs) +
                                                " configurations");
                        next.push_back(std::move(mv.next));
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return f;
}

} // namespace isl
