#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace persistlab {

using Point = std::vector<double>;

/// A hook [birth, death) or, when death is absent, the principal upset
/// [birth, inf). Endpoints live in R^n.
struct Bar {
    Point birth;
    std::optional<Point> death;
    int sign = +1;

    static Bar finite(Point birth, Point death, int sign = +1) {
        return Bar{std::move(birth), std::move(death), sign};
    }
    static Bar upset(Point birth, int sign = +1) { return Bar{std::move(birth), std::nullopt, sign}; }

    bool infinite() const noexcept { return !death.has_value(); }
    std::size_t parameters() const noexcept { return birth.size(); }

    friend auto operator<=>(const Bar&, const Bar&) = default;
    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Multiset of bars of an interval-decomposable module (all signs +1).
struct Barcode {
    std::size_t n = 1;
    std::vector<Bar> bars;
};

/// Positive and negative parts read off the even and odd terms of a
/// minimal relative projective resolution.
struct SignedBarcode {
    std::size_t n = 1;
    std::vector<Bar> positive;
    std::vector<Bar> negative;
};

/// Multiset equality (order-insensitive).
bool same_bars(std::vector<Bar> a, std::vector<Bar> b);

/// The 1-parameter bar [birth, death) or [birth, inf).
inline Bar bar1(double birth, std::optional<double> death = std::nullopt) {
    if (death) return Bar::finite({birth}, {*death});
    return Bar::upset({birth});
}

}  // namespace persistlab
