#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path that the
// tests compare against the OpenMP path, and the benchmark target times both.

#include <cstddef>
#include <span>
#include <vector>

namespace persistlab {

enum class Execution { serial, parallel };

namespace kernels {

/// Dense r x r Euclidean distance matrix of r points in R^dim stored row-major
/// in `coords` (length r * dim).
std::vector<double> pairwise_distances(std::span<const double> coords, std::size_t dim,
                                       Execution exec = Execution::parallel);

/// For each simplex (sorted vertex list), the largest entry of `distances`
/// between two of its vertices; 0 for vertices.
std::vector<double> simplex_diameters(const std::vector<std::vector<std::size_t>>& simplices,
                                      std::span<const double> distances, std::size_t point_count,
                                      Execution exec = Execution::parallel);

/// Number of worker threads the parallel path would use.
int thread_count();

}  // namespace kernels
}  // namespace persistlab
