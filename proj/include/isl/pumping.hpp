#pragma once

// Exhaustive pump-sensitive linkage checks on concrete strings.
//
// A linkage (Pi, Pj) on w = P1 P2 P3 P4 holds in L when every factorization
// w = uvxyz with |vy| >= 1 whose span vxy touches exactly one of Pi, Pj pumps
// out of L (uv^2xy^2z not in L). All O(|w|^4) factorizations are visited;
// |vxy| is unbounded unless LinkageOptions::max_span says otherwise.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isl/errors.hpp"
#include "isl/segments.hpp"

namespace isl {

using MembershipFn = std::function<bool(std::string_view)>;

/// Memoising wrapper; foreign exceptions from the wrapped function surface as OracleFailure.
class Oracle {
public:
    explicit Oracle(MembershipFn fn, std::string name = "oracle") : fn_(std::move(fn)), name_(std::move(name)) {}

    bool operator()(const std::string& w) const {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        bool r = false;
        try {
            r = fn_(w);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw OracleFailure(name_ + " failed on '" + w + "': " + e.what());
        }
        ++calls_;
        memo_.emplace(w, r);
        return r;
    }

    std::size_t calls() const { return calls_; }
    const std::string& name() const { return name_; }

private:
    MembershipFn fn_;
    std::string name_;
    mutable std::unordered_map<std::string, bool> memo_;
    mutable std::size_t calls_ = 0;
};

/// Cuts 0 <= a <= b <= c <= d <= |w|: u = w[0,a), v = w[a,b), x = w[b,c), y = w[c,d), z = w[d,|w|).
struct Factorization {
    std::size_t a = 0, b = 0, c = 0, d = 0;

    Range span() const { return {a, d}; }
    bool operator==(const Factorization&) const = default;
};

inline std::string_view part(std::string_view w, const Factorization& f, char which) {
    switch (which) {
    case 'u': return w.substr(0, f.a);
    case 'v': return w.substr(f.a, f.b - f.a);
    case 'x': return w.substr(f.b, f.c - f.b);
    case 'y': return w.substr(f.c, f.d - f.c);
    default: return w.substr(f.d);
    }
}

inline std::string pumped(std::string_view w, const Factorization& f, std::size_t exponent = 2) {
    std::string s(part(w, f, 'u'));
    for (std::size_t i = 0; i < exponent; ++i) s += part(w, f, 'v');
    s += part(w, f, 'x');
    for (std::size_t i = 0; i < exponent; ++i) s += part(w, f, 'y');
    s += part(w, f, 'z');
    return s;
}

struct LinkageVerdict {
    bool holds = true;
    bool vacuous = false; ///< one linked segment is empty
    std::optional<Factorization> counterexample;
    std::string pumped_string;
    std::size_t enumerated = 0; ///< cut tuples visited
    std::size_t applicable = 0; ///< of those, pumps touching exactly one linked segment
};

struct LinkageOptions {
    std::size_t max_len = 40; ///< refuse longer strings; the check is quartic in |w|
    /// Only consider |vxy| <= max_span. Unset means every factorization, as the
    /// definition demands; a bound gives the weaker pumping-length variant that
    /// the case analysis of the crossing theorems actually consumes.
    std::optional<std::size_t> max_span;
};

/// Visits every cut tuple, shortest span first, then by (a, b, c, d).
template <class F>
void for_each_factorization(std::size_t n, F&& f) {
    for (std::size_t len = 0; len <= n; ++len)
        for (std::size_t a = 0; a + len <= n; ++a) {
            const std::size_t d = a + len;
            for (std::size_t b = a; b <= d; ++b)
                for (std::size_t c = b; c <= d; ++c)
                    if (!f(Factorization{a, b, c, d})) return;
        }
}

inline LinkageVerdict check_linkage(const Oracle& oracle, const std::string& w, const Segmentation& seg,
                                    std::pair<int, int> pair, const LinkageOptions& opt = {}) {
    if (seg.length() != w.size()) throw InvalidInput("segmentation length does not match the string");
    if (pair.first < 1 || pair.second > 4 || pair.first >= pair.second)
        throw InvalidInput("linkage pair must name two segments Pi, Pj with i < j");
    if (w.size() > opt.max_len)
        throw LimitExceeded("check_linkage: |w| = " + std::to_string(w.size()) + " exceeds the cap of " +
                            std::to_string(opt.max_len));
    if (!oracle(w)) throw PreconditionViolated("check_linkage: '" + w + "' is not in the language");

    LinkageVerdict v;
    const Range pi = seg.segment(pair.first), pj = seg.segment(pair.second);
    if (pi.empty() || pj.empty()) {
        v.vacuous = true;
        return v;
    }
    for_each_factorization(w.size(), [&](const Factorization& f) {
        ++v.enumerated;
        if (f.b - f.a + f.d - f.c == 0) return true;
        if (opt.max_span && f.d - f.a > *opt.max_span) return true;
        const bool ti = f.span().intersects(pi), tj = f.span().intersects(pj);
        if (ti == tj) return true;
        ++v.applicable;
        std::string p = pumped(w, f);
        if (oracle(p) && v.holds) {
            v.holds = false;
            v.counterexample = f;
            v.pumped_string = std::move(p);
        }
        return true;
    });
    return v;
}

enum class HypothesisMode { FourLarge, InnerGrowing };

inline std::string to_string(HypothesisMode m) {
    return m == HypothesisMode::FourLarge ? "four-large" : "inner-growing";
}

struct HypothesisReport {
    HypothesisMode mode = HypothesisMode::FourLarge;
    std::size_t n = 0;
    bool size_condition = false;
    std::string size_detail;
    LinkageVerdict linkage13;
    LinkageVerdict linkage24;
    bool all_hold = false;
    std::string summary;
};

/// four-large: |Pi| >= n for all four segments. inner-growing: |P2| >= 1,
/// |P3| >= 1 and max(|P2|, |P3|) >= n. Both modes also need linkages
/// (P1,P3) and (P2,P4). Finite evidence only.
inline HypothesisReport check_crossing_hypotheses(const Oracle& oracle, const std::string& w, const Segmentation& seg,
                                                  HypothesisMode mode, std::size_t n,
                                                  const LinkageOptions& opt = {}) {
    HypothesisReport r;
    r.mode = mode;
    r.n = n;
    const std::size_t p1 = seg.size(1), p2 = seg.size(2), p3 = seg.size(3), p4 = seg.size(4);
    std::string sizes = "|P1|=" + std::to_string(p1) + " |P2|=" + std::to_string(p2) + " |P3|=" +
                        std::to_string(p3) + " |P4|=" + std::to_string(p4);
    if (mode == HypothesisMode::FourLarge) {
        r.size_condition = std::min({p1, p2, p3, p4}) >= n;
        r.size_detail = sizes + (r.size_condition ? ", all >= " : ", not all >= ") + std::to_string(n);
    } else {
        r.size_condition = p2 >= 1 && p3 >= 1 && std::max(p2, p3) >= n;
        r.size_detail = sizes + ", max(|P2|,|P3|)=" + std::to_string(std::max(p2, p3)) +
                        (r.size_condition ? " >= " : " < ") + std::to_string(n);
        if (p2 == 0 || p3 == 0) r.size_detail += " (empty inner segment)";
    }
    r.linkage13 = check_linkage(oracle, w, seg, {1, 3}, opt);
    r.linkage24 = check_linkage(oracle, w, seg, {2, 4}, opt);
    r.all_hold = r.size_condition && r.linkage13.holds && r.linkage24.holds;
    if (r.all_hold) {
        r.summary = "hypotheses of the non-CFL theorem verified at n=" + std::to_string(n) +
                    " (finite evidence, not a proof)";
    } else {
        std::vector<std::string> failed;
        if (!r.size_condition) failed.push_back("size condition");
        if (!r.linkage13.holds) failed.push_back("linkage (P1,P3)");
        if (!r.linkage24.holds) failed.push_back("linkage (P2,P4)");
        r.summary = "not verified at n=" + std::to_string(n) + ": ";
        for (std::size_t i = 0; i < failed.size(); ++i) r.summary += (i ? ", " : "") + failed[i];
    }
    return r;
}

/// Location of vxy relative to the four segments.
enum class CaseLabel { Case1, Case2, Case3, Case4, Case5, Case6, Case7, MultiStraddle };

struct CaseTrace {
    CaseLabel label = CaseLabel::Case1;
    std::optional<std::pair<int, int>> linkage; ///< linkage the argument invokes; none if no pair applies
};

inline std::string to_string(CaseLabel c) {
    switch (c) {
    case CaseLabel::Case1: return "Case 1 (inside P1)";
    case CaseLabel::Case2: return "Case 2 (P1|P2 boundary)";
    case CaseLabel::Case3: return "Case 3 (inside P2)";
    case CaseLabel::Case4: return "Case 4 (P2|P3 boundary)";
    case CaseLabel::Case5: return "Case 5 (inside P3)";
    case CaseLabel::Case6: return "Case 6 (P3|P4 boundary)";
    case CaseLabel::Case7: return "Case 7 (inside P4)";
    case CaseLabel::MultiStraddle: return "multi-straddle";
    }
    return "?";
}

inline CaseTrace case_trace(const Segmentation& seg, const Factorization& f) {
    std::vector<int> touched;
    for (int k = 1; k <= 4; ++k)
        if (f.span().intersects(seg.segment(k))) touched.push_back(k);
    auto touches = [&](int k) { return std::find(touched.begin(), touched.end(), k) != touched.end(); };
    const std::pair<int, int> l13{1, 3}, l24{2, 4};
    if (touched.size() == 1) {
        switch (touched[0]) {
        case 1: return {CaseLabel::Case1, l13};
        case 2: return {CaseLabel::Case3, l24};
        case 3: return {CaseLabel::Case5, l13};
        default: return {CaseLabel::Case7, l24};
        }
    }
    if (touched.size() == 2 && touched[1] == touched[0] + 1) {
        switch (touched[0]) {
        case 1: return {CaseLabel::Case2, l13};
        case 2: return {CaseLabel::Case4, l24};
        default: return {CaseLabel::Case6, l13};
        }
    }
    CaseTrace t{CaseLabel::MultiStraddle, std::nullopt};
    if (touches(2) != touches(4)) t.linkage = l24;
    else if (touches(1) != touches(3)) t.linkage = l13;
    return t;
}

} // namespace isl
