#pragma once

// Pair analysis on concrete strings, family classification, text tables and
// SVG arc diagrams.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "isl/arcs.hpp"
#include "isl/corpus.hpp"
#include "isl/errors.hpp"
#include "isl/pda.hpp"

namespace isl {

struct PairAnalysis {
    std::string word;
    Matching m1;
    Matching m2;
    std::vector<CrossingRecord> crossings;
};

/// Matchings of the first accepting run of each machine and their crossings.
inline PairAnalysis analyze_pair(const Pda& a, const Pda& b, const std::string& w, const SearchLimits& limits = {}) {
    PdaMachine ma(a), mb(b);
    auto ra = accepts(ma, w, limits);
    if (!ra.accepted) throw PreconditionViolated(a.name + " rejects '" + w + "'");
    auto rb = accepts(mb, w, limits);
    if (!rb.accepted) throw PreconditionViolated(b.name + " rejects '" + w + "'");
    PairAnalysis out;
    out.word = w;
    out.m1 = extract_matching(ma, w, *ra.run, 1);
    out.m2 = extract_matching(mb, w, *rb.run, 2);
    out.crossings = crossing_pairs(out.m1, out.m2);
    return out;
}

inline FamilySample to_sample(std::size_t n, const PairAnalysis& a) {
    FamilySample s{n, a.word, {}};
    for (const auto& c : a.crossings) s.measures.push_back(c.measures);
    return s;
}

inline RegimeReport classify_bundle(const ExampleBundle& b, std::vector<std::size_t> sizes = {},
                                    const SearchLimits& limits = {}) {
    if (!b.pair || !b.family) throw PreconditionViolated(b.name + " has no machine pair with a string family");
    if (sizes.empty()) sizes = b.family_sizes;
    std::vector<FamilySample> samples;
    for (auto n : sizes) samples.push_back(to_sample(n, analyze_pair(b.pair->first, b.pair->second, b.family(n), limits)));
    return classify_family(std::move(samples));
}

struct RegimeSummary {
    std::string inner;
    std::string gap;
    std::string intersection;
};

inline RegimeSummary summarize(Regime r) {
    switch (r) {
    case Regime::NoCrossings: return {"-", "-", "CFL"};
    case Regime::BoundedGap: return {"any", "O(1)", "CFL"};
    case Regime::BoundedInnerUnboundedGap: return {"O(1)", "unbounded", "CFL"};
    case Regime::GrowingInner: return {"unbounded", "unbounded", "not CFL (given pump-sensitive linkages)"};
    }
    return {};
}

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

/// Classification row for one family plus its per-size evidence.
inline std::string regime_table(const std::string& family, const RegimeReport& r) {
    std::ostringstream out;
    RegimeSummary s = summarize(r.regime);
    out << "family: " << family << "  regime: " << to_string(r.regime) << "\n";
    out << pad("Inner segment measure", 24) << "| " << pad("Crossing gap", 14) << "| Intersection\n";
    out << pad(s.inner, 24) << "| " << pad(s.gap, 14) << "| " << s.intersection << "\n";
    out << "\n" << pad("n", 4) << pad("|w|", 6) << pad("crossings", 11) << pad("max gap", 9) << "max inner\n";
    for (const auto& row : r.rows)
        out << pad(std::to_string(row.n), 4) << pad(std::to_string(row.length), 6)
            << pad(std::to_string(row.crossings), 11) << pad(std::to_string(row.max_gap), 9) << row.max_inner << "\n";
    return out.str();
}

inline std::string crossing_table(const std::vector<CrossingRecord>& rs) {
    std::ostringstream out;
    out << pad("left", 10) << pad("right", 10) << pad("P1", 9) << pad("P2", 9) << pad("P3", 9) << pad("P4", 9)
        << pad("gap", 5) << "inner\n";
    for (const auto& r : rs)
        out << pad(to_string(r.pair.left), 10) << pad(to_string(r.pair.right), 10) << pad(r.segments.render(1), 9)
            << pad(r.segments.render(2), 9) << pad(r.segments.render(3), 9) << pad(r.segments.render(4), 9)
            << pad(std::to_string(r.measures.gap), 5) << r.measures.inner << "\n";
    return out.str();
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Arc diagram: one cell per position, M1 arcs solid blue above the axis,
/// M2 arcs dashed red, inner segments of `highlight` shaded.
inline std::string arc_diagram_svg(const PairAnalysis& a, const CrossingRecord* highlight = nullptr) {
    const int cell = 28, margin = 20;
    const int n = static_cast<int>(a.word.size());
    std::size_t longest = 1;
    for (const auto* m : {&a.m1, &a.m2})
        for (const auto& arc : m->arcs) longest = std::max(longest, arc.pop_pos - arc.push_pos);
    const int height_arcs = static_cast<int>(longest) * cell / 2 + 10;
    const int axis = margin + height_arcs;
    const int width = 2 * margin + std::max(n, 1) * cell;
    const int height = axis + 40;
    auto x_of = [&](std::size_t pos) { return margin + (static_cast<int>(pos) - 1) * cell + cell / 2; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    if (highlight) {
        for (int k : {2, 3}) {
            Range r = highlight->segments.segment(k);
            if (r.empty()) continue;
            svg << "  <rect x=\"" << margin + static_cast<int>(r.begin) * cell << "\" y=\"" << axis - 4
                << "\" width=\"" << static_cast<int>(r.size()) * cell << "\" height=\"28\" fill=\""
                << (k == 2 ? "#d8e4f8" : "#f8dcdc") << "\"/>\n";
        }
    }
    svg << "  <line x1=\"" << margin << "\" y1=\"" << axis << "\" x2=\"" << width - margin << "\" y2=\"" << axis
        << "\" stroke=\"#444\"/>\n";
    for (int i = 0; i < n; ++i)
        svg << "  <text x=\"" << x_of(static_cast<std::size_t>(i + 1)) << "\" y=\"" << axis + 18
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">"
            << xml_escape(std::string(1, a.word[static_cast<std::size_t>(i)])) << "</text>\n";
    auto draw = [&](const Matching& m, const char* stroke, const char* dash) {
        for (const auto& arc : m.arcs) {
            if (arc.pop_pos == arc.push_pos) continue;
            int x1 = x_of(arc.push_pos), x2 = x_of(arc.pop_pos);
            int h = static_cast<int>(arc.pop_pos - arc.push_pos) * cell / 2;
            svg << "  <path d=\"M " << x1 << " " << axis << " C " << x1 << " " << axis - h << ", " << x2 << " "
                << axis - h << ", " << x2 << " " << axis << "\" fill=\"none\" stroke=\"" << stroke
                << "\" stroke-width=\"1.5\"" << dash << "/>\n";
        }
    };
    draw(a.m1, "#1f4fbf", "");
    draw(a.m2, "#c0392b", " stroke-dasharray=\"5,3\"");
    svg << "</svg>\n";
    return svg.str();
}

} // namespace isl
