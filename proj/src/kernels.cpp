#include "persistlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace persistlab::kernels {

namespace {

double distance(std::span<const double> coords, std::size_t dim, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = coords[i * dim + k] - coords[j * dim + k];
        s += d * d;
    }
    return std::sqrt(s);
}

double diameter(const std::vector<std::size_t>& simplex, std::span<const double> distances,
                std::size_t r) {
    double best = 0.0;
    for (std::size_t a = 0; a < simplex.size(); ++a)
        for (std::size_t b = a + 1; b < simplex.size(); ++b)
            best = std::max(best, distances[simplex[a] * r + simplex[b]]);
    return best;
}

}  // namespace

std::vector<double> pairwise_distances(std::span<const double> coords, std::size_t dim,
                                       Execution exec) {
    if (dim == 0 || coords.size() % dim != 0)
        throw std::invalid_argument("pairwise_distances: coordinate count is not a multiple of dim");
    const auto r = static_cast<long long>(coords.size() / dim);
    std::vector<double> out(static_cast<std::size_t>(r * r), 0.0);
    if (exec == Execution::serial) {
        for (long long i = 0; i < r; ++i)
            for (long long j = i + 1; j < r; ++j) {
                const double d = distance(coords, dim, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                out[static_cast<std::size_t>(i * r + j)] = d;
                out[static_cast<std::size_t>(j * r + i)] = d;
            }
        return out;
    }
    // Each row is filled independently; the symmetric half is written by the
    // owner of the lower index only, so rows never race.
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < r; ++i)
        for (long long j = 0; j < r; ++j)
            if (i != j)
                out[static_cast<std::size_t>(i * r + j)] =
                    distance(coords, dim, static_cast<std::size_t>(std::min(i, j)),
                             static_cast<std::size_t>(std::max(i, j)));
    return out;
}

std::vector<double> simplex_diameters(const std::vector<std::vector<std::size_t>>& simplices,
                                      std::span<const double> distances, std::size_t point_count,
                                      Execution exec) {
    if (distances.size() != point_count * point_count)
        throw std::invalid_argument("simplex_diameters: distance matrix has wrong size");
    const auto count = static_cast<long long>(simplices.size());
    std::vector<double> out(simplices.size(), 0.0);
    if (exec == Execution::serial) {
        for (long long s = 0; s < count; ++s)
            out[static_cast<std::size_t>(s)] =
                diameter(simplices[static_cast<std::size_t>(s)], distances, point_count);
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long long s = 0; s < count; ++s)
        out[static_cast<std::size_t>(s)] =
            diameter(simplices[static_cast<std::size_t>(s)], distances, point_count);
    return out;
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace persistlab::kernels
