#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "isl/errors.hpp"

namespace isl {

/// Half-open range of 0-based string indices.
struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
    bool intersects(Range o) const { return !empty() && !o.empty() && begin < o.end && o.begin < end; }
    bool operator==(const Range&) const = default;
};

/// A split w = P1 P2 P3 P4 into four consecutive, possibly empty segments.
/// Stored as three cut points; segment k (1..4) is [cut(k-1), cut(k)).
class Segmentation {
public:
    Segmentation() = default;
    Segmentation(std::size_t length, std::size_t c1, std::size_t c2, std::size_t c3)
        : length_(length), cuts_{c1, c2, c3} {
        if (!(c1 <= c2 && c2 <= c3 && c3 <= length))
            throw InvalidInput("segmentation cuts must satisfy c1 <= c2 <= c3 <= |w|");
    }

    /// From the four segment lengths.
    static Segmentation from_lengths(std::size_t p1, std::size_t p2, std::size_t p3, std::size_t p4) {
        return Segmentation(p1 + p2 + p3 + p4, p1, p1 + p2, p1 + p2 + p3);
    }

    std::size_t length() const { return length_; }

    Range segment(int k) const {
        if (k < 1 || k > 4) throw InvalidInput("segment index must be 1..4");
        std::size_t b = k == 1 ? 0 : cuts_[static_cast<std::size_t>(k - 2)];
        std::size_t e = k == 4 ? length_ : cuts_[static_cast<std::size_t>(k - 1)];
        return {b, e};
    }
    std::size_t size(int k) const { return segment(k).size(); }

    std::string_view text(std::string_view w, int k) const {
        Range r = segment(k);
        return w.substr(r.begin, r.size());
    }

    /// "[1..3]" style closed 1-based rendering; empty segments render as "[]".
    std::string render(int k) const {
        Range r = segment(k);
        if (r.empty()) return "[]";
        return "[" + std::to_string(r.begin + 1) + ".." + std::to_string(r.end) + "]";
    }

    bool operator==(const Segmentation&) const = default;

private:
    std::size_t length_ = 0;
    std::array<std::size_t, 3> cuts_{0, 0, 0};
};

} // namespace isl
