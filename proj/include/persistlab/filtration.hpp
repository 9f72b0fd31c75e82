#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "persistlab/kernels.hpp"

namespace persistlab {

/// Sorted list of vertex ids.
using Simplex = std::vector<std::size_t>;

/// Finite face-closed simplicial complex. Simplex ids follow the fixed total
/// order (dimension, lexicographic vertex tuple), so comparing ids compares
/// simplices in that order and every face has a smaller id than its cofaces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Throws persistlab::Error when a simplex is repeated, empty, or has a
    /// missing facet. Vertex lists are sorted on input.
    static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

    /// All simplices on vertices 0..vertex_count-1 of dimension <= max_dim.
    static SimplicialComplex full(std::size_t vertex_count, std::size_t max_dim);

    std::size_t size() const noexcept { return simplices_.size(); }
    bool empty() const noexcept { return simplices_.empty(); }
    const Simplex& simplex(std::size_t id) const { return simplices_.at(id); }
    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
    std::size_t dimension(std::size_t id) const { return simplices_.at(id).size() - 1; }
    std::size_t max_dimension() const noexcept;
    /// Ids of the codimension-1 faces, in increasing order.
    const std::vector<std::size_t>& facets(std::size_t id) const { return facets_.at(id); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    /// Ids of all simplices of dimension `dim`, increasing.
    std::vector<std::size_t> simplices_of_dimension(std::size_t dim) const;

private:
    std::vector<Simplex> simplices_;
    std::vector<std::vector<std::size_t>> facets_;
    std::map<Simplex, std::size_t> index_;
};

/// A simplicial complex together with an n-component function on its
/// simplices that is monotone along face inclusions in every component.
class MonotoneFiltration {
public:
    MonotoneFiltration() = default;

    const SimplicialComplex& complex() const noexcept { return *complex_; }
    std::shared_ptr<const SimplicialComplex> complex_ptr() const noexcept { return complex_; }
    std::size_t parameters() const noexcept { return n_; }
    std::size_t size() const noexcept { return complex_ ? complex_->size() : 0; }

    double value(std::size_t id, std::size_t component = 0) const { return values_.at(id * n_ + component); }
    std::span<const double> values(std::size_t id) const {
        return std::span<const double>(values_).subspan(id * n_, n_);
    }
    const std::vector<double>& raw_values() const noexcept { return values_; }

    friend MonotoneFiltration validate_monotone(std::shared_ptr<const SimplicialComplex> complex,
                                                std::size_t n, std::vector<double> values);

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    std::size_t n_ = 1;
    std::vector<double> values_;
};

/// Checks every face inequality exactly (no tolerance). `values` holds one
/// n-vector per simplex id, flattened. Throws MonotonicityViolation naming the
/// first offending (face, coface, component) and std::invalid_argument on a
/// size mismatch.
MonotoneFiltration validate_monotone(std::shared_ptr<const SimplicialComplex> complex, std::size_t n,
                                     std::vector<double> values);

/// Labeled points in R^d, row-major.
class PointCloud {
public:
    PointCloud() = default;
    /// Throws persistlab::Error when empty or when a coordinate is not finite.
    PointCloud(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ ? coords_.size() / dim_ : 0; }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    const std::vector<double>& coords() const noexcept { return coords_; }
    double distance(std::size_t i, std::size_t j) const;
    double diameter() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Vertex i of the result corresponds to point i of the cloud.
MonotoneFiltration rips_filtration(const PointCloud& cloud, std::size_t max_dim = 2,
                                   Execution exec = Execution::parallel);

/// Same, reusing a prebuilt full complex on cloud.size() vertices.
MonotoneFiltration rips_filtration(const PointCloud& cloud,
                                   std::shared_ptr<const SimplicialComplex> full_complex,
                                   Execution exec = Execution::parallel);

/// Pairs of labels sorted by increasing distance; `boundary` is set when some
/// distance is zero or two distances coincide.
struct StratumSignature {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    bool boundary = false;

    friend bool operator==(const StratumSignature&, const StratumSignature&) = default;
};

StratumSignature stratum_signature(const PointCloud& cloud);

/// The pair of vertices realizing the diameter of `simplex`, first < second.
/// Requires at least two vertices.
std::pair<std::size_t, std::size_t> longest_edge(const PointCloud& cloud, const Simplex& simplex);

/// Derivative of the Rips value of `simplex` with respect to point `point`.
/// Throws StratumBoundary unless all pairwise distances of the cloud are
/// nonzero and distinct.
std::vector<double> rips_partial(const PointCloud& cloud, const Simplex& simplex, std::size_t point);

/// Simplex ids sorted by value, ties broken by id. Requires n = 1.
std::vector<std::size_t> simplex_order(const MonotoneFiltration& filtration);

}  // namespace persistlab
