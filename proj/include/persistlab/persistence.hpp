#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/f2_matrix.hpp"
#include "persistlab/filtration.hpp"

namespace persistlab {

/// One bar of a 1-parameter filtration with the simplices that create and
/// destroy it. Zero-length pairs (equal values) are kept here; they are
/// dropped only when a barcode is extracted.
struct PersistencePair {
    std::size_t birth_simplex = 0;
    std::optional<std::size_t> death_simplex;
    std::size_t degree = 0;
    double birth_value = 0.0;
    double death_value = std::numeric_limits<double>::infinity();

    bool essential() const noexcept { return !death_simplex.has_value(); }
};

struct PersistencePairs {
    std::vector<PersistencePair> pairs;
};

/// Column reduction of the boundary matrix over F2, processing simplices by
/// (value, dimension, lexicographic tuple). Reports pairs in degrees
/// 0..max_degree; simplices above dimension max_degree + 1 are ignored.
PersistencePairs reduce(const MonotoneFiltration& filtration, std::size_t max_degree);

/// Bars of the given degree, dropping empty intervals [t, t).
Barcode barcode(const PersistencePairs& pairs, std::size_t degree);

/// A persistence module over the totally ordered set {0, ..., k-1}:
/// maps[i] goes from index i to index i + 1 (dims[i+1] x dims[i]).
struct AnModule {
    std::vector<std::size_t> dims;
    std::vector<F2Matrix> maps;

    /// Throws std::invalid_argument when the matrix shapes do not chain.
    void validate() const;
    /// Rank of the composite map from index i to index j (i <= j).
    std::size_t rank_between(std::size_t i, std::size_t j) const;
};

/// Interval decomposition by inclusion-exclusion on the rank function. Bars
/// are integer-graded: [i, j) for a summand supported on i..j-1, and [i, inf)
/// for a summand that survives to the last index.
Barcode barcode_of_an_module(const AnModule& module);

}  // namespace persistlab
