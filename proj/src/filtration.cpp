#include "persistlab/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "persistlab/errors.hpp"

namespace persistlab {

namespace {

bool k_order_less(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string describe(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

void append_combinations(std::size_t n, std::size_t k, std::vector<Simplex>& out) {
    if (k > n) return;
    Simplex c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace

// ---------------------------------------------------------------- SimplicialComplex

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
    for (auto& s : simplices) {
        if (s.empty()) throw Error("simplicial complex: empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error("simplicial complex: repeated vertex in " + describe(s));
    }
    std::sort(simplices.begin(), simplices.end(), k_order_less);
    if (auto dup = std::adjacent_find(simplices.begin(), simplices.end()); dup != simplices.end())
        throw Error("simplicial complex: duplicate simplex " + describe(*dup));

    SimplicialComplex k;
    k.simplices_ = std::move(simplices);
    for (std::size_t id = 0; id < k.simplices_.size(); ++id) k.index_.emplace(k.simplices_[id], id);
    k.facets_.resize(k.simplices_.size());
    for (std::size_t id = 0; id < k.simplices_.size(); ++id) {
        const auto& s = k.simplices_[id];
        if (s.size() == 1) continue;
        auto& f = k.facets_[id];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) face.push_back(s[i]);
            const auto it = k.index_.find(face);
            if (it == k.index_.end())
                throw Error("simplicial complex is not face-closed: " + describe(face) +
                            " missing below " + describe(s));
            f.push_back(it->second);
        }
        std::sort(f.begin(), f.end());
    }
    return k;
}

SimplicialComplex SimplicialComplex::full(std::size_t vertex_count, std::size_t max_dim) {
    std::vector<Simplex> simplices;
    for (std::size_t d = 0; d <= max_dim && d < vertex_count; ++d)
        append_combinations(vertex_count, d + 1, simplices);
    return from_simplices(std::move(simplices));
}

std::size_t SimplicialComplex::max_dimension() const noexcept {
    return simplices_.empty() ? 0 : simplices_.back().size() - 1;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const auto it = index_.find(sorted);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> SimplicialComplex::simplices_of_dimension(std::size_t dim) const {
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < simplices_.size(); ++id)
        if (simplices_[id].size() == dim + 1) out.push_back(id);
    return out;
}

// ---------------------------------------------------------------- MonotoneFiltration

MonotoneFiltration validate_monotone(std::shared_ptr<const SimplicialComplex> complex, std::size_t n,
                                     std::vector<double> values) {
    if (!complex) throw std::invalid_argument("validate_monotone: null complex");
    if (n == 0) throw std::invalid_argument("validate_monotone: parameter count must be positive");
    if (values.size() != complex->size() * n)
        throw std::invalid_argument("validate_monotone: expected one " + std::to_string(n) +
                                    "-vector per simplex");
    for (std::size_t id = 0; id < complex->size(); ++id)
        for (auto face : complex->facets(id))
            for (std::size_t i = 0; i < n; ++i)
                if (!(values[face * n + i] <= values[id * n + i]))
                    throw MonotonicityViolation(face, id, i + 1);
    MonotoneFiltration f;
    f.complex_ = std::move(complex);
    f.n_ = n;
    f.values_ = std::move(values);
    return f;
}

// ---------------------------------------------------------------- PointCloud

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw Error("point cloud: dimension must be positive");
    if (coords_.empty()) throw Error("point cloud is empty");
    if (coords_.size() % dim_ != 0) throw Error("point cloud: coordinate count is not a multiple of the dimension");
    for (double c : coords_)
        if (!std::isfinite(c)) throw Error("point cloud: non-finite coordinate");
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double d = coords_[i * dim_ + k] - coords_[j * dim_ + k];
        s += d * d;
    }
    return std::sqrt(s);
}

double PointCloud::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, distance(i, j));
    return best;
}

// ---------------------------------------------------------------- Rips

MonotoneFiltration rips_filtration(const PointCloud& cloud, std::size_t max_dim, Execution exec) {
    return rips_filtration(
        cloud, std::make_shared<const SimplicialComplex>(SimplicialComplex::full(cloud.size(), max_dim)), exec);
}

MonotoneFiltration rips_filtration(const PointCloud& cloud,
                                   std::shared_ptr<const SimplicialComplex> full_complex, Execution exec) {
    const auto r = cloud.size();
    const auto distances = kernels::pairwise_distances(cloud.coords(), cloud.dim(), exec);
    auto values = kernels::simplex_diameters(full_complex->simplices(), distances, r, exec);
    return validate_monotone(std::move(full_complex), 1, std::move(values));
}

StratumSignature stratum_signature(const PointCloud& cloud) {
    StratumSignature sig;
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> pairs;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j) pairs.push_back({cloud.distance(i, j), {i, j}});
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].first == 0.0 || (k > 0 && pairs[k].first == pairs[k - 1].first)) sig.boundary = true;
        sig.order.push_back(pairs[k].second);
    }
    return sig;
}

std::pair<std::size_t, std::size_t> longest_edge(const PointCloud& cloud, const Simplex& simplex) {
    if (simplex.size() < 2) throw std::invalid_argument("longest_edge: simplex has a single vertex");
    std::pair<std::size_t, std::size_t> best{simplex[0], simplex[1]};
    double best_len = -1.0;
    for (std::size_t a = 0; a < simplex.size(); ++a)
        for (std::size_t b = a + 1; b < simplex.size(); ++b) {
            const double d = cloud.distance(simplex[a], simplex[b]);
            if (d > best_len) {
                best_len = d;
                best = {simplex[a], simplex[b]};
            }
        }
    return best;
}

std::vector<double> rips_partial(const PointCloud& cloud, const Simplex& simplex, std::size_t point) {
    if (point >= cloud.size()) throw std::out_of_range("rips_partial: point index out of range");
    if (stratum_signature(cloud).boundary)
        throw StratumBoundary("rips_partial: cloud has a zero or repeated pairwise distance");
    std::vector<double> grad(cloud.dim(), 0.0);
    if (simplex.size() < 2) return grad;
    const auto [u, v] = longest_edge(cloud, simplex);
    if (point != u && point != v) return grad;
    const auto other = point == u ? v : u;
    const double len = cloud.distance(u, v);
    const auto a = cloud.point(point);
    const auto b = cloud.point(other);
    for (std::size_t k = 0; k < cloud.dim(); ++k) grad[k] = (a[k] - b[k]) / len;
    return grad;
}

std::vector<std::size_t> simplex_order(const MonotoneFiltration& filtration) {
    if (filtration.parameters() != 1) throw std::invalid_argument("simplex_order: requires a 1-parameter filtration");
    std::vector<std::size_t> order(filtration.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return filtration.value(a) < filtration.value(b);
    });
    return order;
}

}  // namespace persistlab
