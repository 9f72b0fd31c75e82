#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/filtration.hpp"

namespace persistlab {

/// alpha_i = alpha0 / (1 + i)^gamma with gamma in (0.5, 1].
struct Schedule {
    double alpha0 = 0.1;
    double gamma = 1.0;

    /// Throws Error when alpha0 <= 0 or gamma is outside (0.5, 1].
    void validate() const;
    double rate(std::size_t i) const;
};

/// F together with a Clarke subgradient oracle. `subgradient` may throw
/// StratumBoundary at non-differentiable points; `scale` sizes the
/// perturbation used to step off them.
struct Functional {
    std::string name;
    std::function<double(const std::vector<double>&)> evaluate;
    std::function<std::vector<double>(const std::vector<double>&)> subgradient;
    double scale = 1.0;
};

struct TracePoint {
    std::size_t step = 0;
    double value = 0.0;
    double grad_norm = 0.0;
    double sup_norm = 0.0;  // boundedness monitor after the step
};

struct DescentState {
    std::vector<double> x;
    std::size_t i = 0;
    std::mt19937_64 rng;
    std::vector<TracePoint> trace;
    double sup_norm = 0.0;
    bool bound_exceeded = false;
    std::optional<std::size_t> bound_exceeded_at;

    DescentState() = default;
    DescentState(std::vector<double> x0, std::uint64_t seed);
};

/// The gradient at x, or, when x sits on a stratum boundary, the gradient at
/// a uniformly perturbed point x + u with |u|_inf <= 1e-9 * scale. Gives up
/// after `attempts` perturbations and rethrows.
std::vector<double> clarke_sample(const Functional& f, const std::vector<double>& x, std::mt19937_64& rng,
                                  int attempts = 32);

/// x <- x - alpha_i (g + xi) with xi ~ N(0, sigma^2 I). Throws
/// NonFiniteValue when F(x) or g is not finite.
void sgd_step(DescentState& state, const Functional& f, const Schedule& schedule, double sigma);

struct RunOptions {
    double sigma = 0.01;
    std::size_t steps = 100;
    /// Warn once sup |x_i|_inf over i >= burn_in exceeds this. A bounded
    /// tail is the same as a bounded sequence; skipping the first steps keeps
    /// early overshoot from firing the warning.
    double bound = std::numeric_limits<double>::infinity();
    std::size_t burn_in = 0;
    /// Called once when the bound is first exceeded.
    std::function<void(const DescentState&)> on_bound_exceeded;
};

DescentState run(const Functional& f, std::vector<double> x0, const Schedule& schedule, const RunOptions& options,
                 std::uint64_t seed);

/// lambda * sum_a max(0, |a|_inf - 1) and a subgradient: lambda * sign on the
/// first coordinate of maximal magnitude of every point outside the box.
std::pair<double, std::vector<double>> box_regularizer(const PointCloud& cloud, double lambda);

/// -total persistence of the degree-`degree` Rips barcode plus the box
/// regularizer, over flattened point coordinates in R^dim.
Functional holes_functional(std::size_t dim, std::size_t degree, double lambda, double scale);

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::size_t steps = 100;
    std::optional<double> alpha0;  // default 0.1 * diameter of the initial cloud
    double gamma = 1.0;
    double sigma = 0.01;
    double lambda = 1.0;
    std::size_t r = 30;
    /// Boundedness warning: largest point coordinate after burn_in steps.
    double bound = 1.02;
    std::size_t burn_in = 50;
};

struct ExperimentResult {
    ExperimentConfig config;
    Schedule schedule;
    double bound = 0.0;
    PointCloud initial;
    PointCloud final;
    Barcode initial_barcode;
    Barcode final_barcode;
    DescentState state;
};

/// Samples r points uniformly in [-1,1]^2 and minimizes the holes functional
/// in degree 1.
ExperimentResult experiment_holes(const ExperimentConfig& config,
                                  std::function<void(const DescentState&)> on_bound_exceeded = {});

/// Uniform sample of r points in [-1,1]^2.
PointCloud uniform_square_cloud(std::size_t r, std::uint64_t seed);

}  // namespace persistlab
