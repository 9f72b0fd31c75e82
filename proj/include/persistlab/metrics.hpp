#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "persistlab/barcode.hpp"

namespace persistlab {

/// Smallest eps for which the hook module of `b` is eps-interleaved with 0:
/// half the largest side of the box [birth, death], or +inf for an upset.
double bar_deletion_cost(const Bar& b);

/// min(max(|p - p'|_inf, |q - q'|_inf), max(deletion costs)). Two infinite
/// deaths are at distance 0 from each other, a finite and an infinite one at
/// +inf. Bars of opposite sign cost +inf. Throws Error when the parameter
/// counts differ.
double bar_cost(const Bar& a, const Bar& b);

/// Matched (index in first, index in second) pairs plus the unmatched
/// indices of both sides, each index appearing exactly once.
struct PartialMatching {
    std::vector<std::pair<std::size_t, std::size_t>> matched;
    std::vector<std::size_t> unmatched1;
    std::vector<std::size_t> unmatched2;
};

struct MatchingResult {
    double value = 0.0;
    PartialMatching matching;
};

/// Bottleneck distance: binary search over candidate cost values, each
/// tested by a perfect-matching search on the graph augmented with diagonal
/// copies. +inf when no finite matching exists.
MatchingResult bottleneck(const std::vector<Bar>& a, const std::vector<Bar>& b);
MatchingResult bottleneck(const Barcode& a, const Barcode& b);

/// Minimal total cost (matched pair costs plus deletion costs) by optimal
/// assignment on the augmented cost matrix.
MatchingResult dist1(const std::vector<Bar>& a, const std::vector<Bar>& b);
MatchingResult dist1(const Barcode& a, const Barcode& b);

/// Bottleneck between positive(a) + negative(b) and positive(b) + negative(a),
/// signs ignored.
double signed_bottleneck(const SignedBarcode& a, const SignedBarcode& b);

/// Exhaustive minimum over all partial matchings. Throws CapExceeded when
/// the two sides hold more than 8 bars together.
double bottleneck_bruteforce(const std::vector<Bar>& a, const std::vector<Bar>& b);
double bottleneck_bruteforce(const Barcode& a, const Barcode& b);

/// Total cost of a given partial matching under the sum or the max rule.
double matching_cost_sum(const std::vector<Bar>& a, const std::vector<Bar>& b, const PartialMatching& m);
double matching_cost_max(const std::vector<Bar>& a, const std::vector<Bar>& b, const PartialMatching& m);

}  // namespace persistlab
