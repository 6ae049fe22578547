#pragma once

// Test-only oracles, written without reusing library code paths.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline std::string gmp_state_bound(bool buffered, unsigned long q1, unsigned long q2, unsigned long g1,
                                   unsigned long g2, unsigned long param) {
    mpz_class base, r;
    if (buffered) {
        base = mpz_class(g1 + g2) * 2 * param + 1;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), 8 * param);
    } else {
        base = g1 + g2 + 1;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), 2 * param);
    }
    r *= q1;
    r *= q2;
    return r.get_str();
}

inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < max_len)
            for (char c : alphabet) out.push_back(out[i] + c);
    return out;
}

/// Block-counting membership with constraints as (i, j) pairs of 1-based blocks.
struct Blocks {
    std::vector<std::string> alphabets;
    std::vector<std::pair<std::size_t, std::size_t>> constraints;

    bool operator()(std::string_view w) const {
        std::vector<std::size_t> counts(alphabets.size(), 0);
        std::size_t pos = 0;
        for (std::size_t b = 0; b < alphabets.size(); ++b)
            while (pos < w.size() && alphabets[b].find(w[pos]) != std::string::npos) {
                ++counts[b];
                ++pos;
            }
        if (pos != w.size()) return false;
        for (auto [i, j] : constraints)
            if (counts[i - 1] != counts[j - 1]) return false;
        return true;
    }

    /// Every member of length <= max_len, generated from block-length vectors.
    std::set<std::string> language(std::size_t max_len) const {
        std::set<std::string> out;
        std::vector<std::size_t> len(alphabets.size(), 0);
        std::function<void(std::size_t, std::size_t)> lengths = [&](std::size_t b, std::size_t used) {
            if (b == alphabets.size()) {
                for (auto [i, j] : constraints)
                    if (len[i - 1] != len[j - 1]) return;
                std::string cur;
                std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t blk, std::size_t done) {
                    if (blk == alphabets.size()) {
                        out.insert(cur);
                        return;
                    }
                    if (done == len[blk]) return fill(blk + 1, 0);
                    for (char c : alphabets[blk]) {
                        cur.push_back(c);
                        fill(blk, done + 1);
                        cur.pop_back();
                    }
                };
                fill(0, 0);
                return;
            }
            for (std::size_t l = 0; used + l <= max_len; ++l) {
                len[b] = l;
                lengths(b + 1, used + l);
            }
            len[b] = 0;
        };
        lengths(0, 0);
        return out;
    }
};

inline bool is_palindrome(const std::string& s) { return std::equal(s.begin(), s.end(), s.rbegin()); }

/// Palindrome condition on the odd (offset 0) or even (offset 1) positions of an even-length string.
inline bool parity_palindrome(std::string_view w, int offset) {
    if (w.size() % 2) return false;
    std::string sub;
    for (std::size_t i = static_cast<std::size_t>(offset); i < w.size(); i += 2) sub.push_back(w[i]);
    return is_palindrome(sub);
}

inline bool interleaved_palindrome(std::string_view w) { return parity_palindrome(w, 0) && parity_palindrome(w, 1); }

/// a b a d^n e^n f g^k h^k.
inline bool refutation(std::string_view w) {
    if (w.substr(0, 3) != "aba") return false;
    std::size_t p = 3;
    auto run = [&](char c) {
        std::size_t s = p;
        while (p < w.size() && w[p] == c) ++p;
        return p - s;
    };
    std::size_t d = run('d'), e = run('e');
    if (d != e || p >= w.size() || w[p] != 'f') return false;
    ++p;
    std::size_t g = run('g'), h = run('h');
    return g == h && p == w.size();
}

inline std::set<std::string> refutation_language(std::size_t max_len) {
    std::set<std::string> out;
    for (std::size_t n = 0; 4 + 2 * n <= max_len; ++n)
        for (std::size_t k = 0; 4 + 2 * n + 2 * k <= max_len; ++k)
            out.insert("aba" + std::string(n, 'd') + std::string(n, 'e') + "f" + std::string(k, 'g') +
                       std::string(k, 'h'));
    return out;
}

/// Strings of length <= max_len derivable from a grammar, by breadth-first
/// leftmost rewriting of sentential forms. Forms are pruned once their
/// terminal count exceeds max_len.
struct Rule {
    std::string head;
    std::vector<std::string> body;
};

inline std::set<std::string> derive(const std::vector<Rule>& rules, const std::set<std::string>& nonterminals,
                                    const std::string& start, std::size_t max_len, std::size_t max_forms = 2'000'000) {
    using Form = std::vector<std::string>;
    std::set<Form> seen{{start}};
    std::deque<Form> todo{{start}};
    std::set<std::string> out;
    while (!todo.empty()) {
        Form f = std::move(todo.front());
        todo.pop_front();
        auto nt = std::find_if(f.begin(), f.end(), [&](const std::string& s) { return nonterminals.contains(s); });
        if (nt == f.end()) {
            std::string w;
            for (const auto& s : f) w += s;
            out.insert(w);
            continue;
        }
        for (const auto& r : rules) {
            if (r.head != *nt) continue;
            Form g(f.begin(), nt);
            g.insert(g.end(), r.body.begin(), r.body.end());
            g.insert(g.end(), nt + 1, f.end());
            std::size_t terminals = std::count_if(g.begin(), g.end(),
                                                  [&](const std::string& s) { return !nonterminals.contains(s); });
            // Forms with many pending nonterminals can only shrink via epsilon rules;
            // 2*max_len + 2 symbols is ample for the grammars under test.
            if (terminals > max_len || g.size() > 2 * max_len + 2) continue;
            if (seen.insert(g).second) {
                if (seen.size() > max_forms) throw std::runtime_error("derive: form budget exhausted");
                todo.push_back(std::move(g));
            }
        }
    }
    return out;
}

/// Naive crossing count between two arc lists.
inline std::size_t count_crossings(const std::vector<std::pair<std::size_t, std::size_t>>& a,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& b) {
    std::size_t n = 0;
    for (auto [i, j] : a)
        for (auto [k, l] : b)
            if ((i < k && k < j && j < l) || (k < i && i < l && l < j)) ++n;
    return n;
}

} // namespace oracle
