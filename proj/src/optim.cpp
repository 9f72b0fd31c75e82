#include "persistlab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "persistlab/errors.hpp"
#include "persistlab/lift.hpp"

namespace persistlab {

void Schedule::validate() const {
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw Error("step size alpha0 must be positive and finite");
    if (!(gamma > 0.5 && gamma <= 1.0)) throw Error("decay exponent gamma must lie in (0.5, 1]");
}

double Schedule::rate(std::size_t i) const { return alpha0 / std::pow(1.0 + static_cast<double>(i), gamma); }

DescentState::DescentState(std::vector<double> x0, std::uint64_t seed) : x(std::move(x0)), rng(seed) {}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> clarke_sample(const Functional& f, const std::vector<double>& x, std::mt19937_64& rng,
                                  int attempts) {
    try {
        return f.subgradient(x);
    } catch (const StratumBoundary&) {
        if (attempts <= 0) throw;
    }
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double radius = 1e-9 * f.scale;
    for (int a = 1;; ++a) {
        auto y = x;
        for (auto& c : y) c += radius * unit(rng);
        try {
            return f.subgradient(y);
        } catch (const StratumBoundary&) {
            if (a >= attempts) throw;
        }
    }
}

void sgd_step(DescentState& state, const Functional& f, const Schedule& schedule, double sigma) {
    const double value = f.evaluate(state.x);
    if (!std::isfinite(value)) throw NonFiniteValue(f.name + " is not finite at step " + std::to_string(state.i));
    const auto g = clarke_sample(f, state.x, state.rng);
    if (g.size() != state.x.size()) throw std::invalid_argument("subgradient has the wrong dimension");
    if (!all_finite(g)) throw NonFiniteValue("subgradient of " + f.name + " is not finite at step " +
                                             std::to_string(state.i));

    state.trace.push_back({state.i, value, norm2(g), state.sup_norm});

    const double alpha = schedule.rate(state.i);
    std::normal_distribution<double> noise(0.0, sigma > 0.0 ? sigma : 1.0);
    for (std::size_t c = 0; c < state.x.size(); ++c) {
        const double xi = sigma > 0.0 ? noise(state.rng) : 0.0;
        state.x[c] -= alpha * (g[c] + xi);
    }
    ++state.i;
}

DescentState run(const Functional& f, std::vector<double> x0, const Schedule& schedule, const RunOptions& options,
                 std::uint64_t seed) {
    schedule.validate();
    if (options.sigma < 0.0) throw Error("noise level sigma must be nonnegative");
    DescentState state(std::move(x0), seed);
    auto check_bound = [&] {
        if (state.i < options.burn_in) return;
        state.sup_norm = std::max(state.sup_norm, norm_inf(state.x));
        if (!state.bound_exceeded && state.sup_norm > options.bound) {
            state.bound_exceeded = true;
            state.bound_exceeded_at = state.i;
            if (options.on_bound_exceeded) options.on_bound_exceeded(state);
        }
    };
    check_bound();
    for (std::size_t s = 0; s < options.steps; ++s) {
        sgd_step(state, f, schedule, options.sigma);
        check_bound();
        state.trace.back().sup_norm = state.sup_norm;
    }
    return state;
}

std::pair<double, std::vector<double>> box_regularizer(const PointCloud& cloud, double lambda) {
    if (lambda < 0.0) throw Error("regularization weight must be nonnegative");
    const auto d = cloud.dim();
    std::vector<double> grad(cloud.coords().size(), 0.0);
    double value = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        std::size_t arg = 0;
        for (std::size_t c = 1; c < d; ++c)
            if (std::abs(p[c]) > std::abs(p[arg])) arg = c;
        const double m = std::abs(p[arg]);
        if (m <= 1.0) continue;
        value += m - 1.0;
        grad[i * d + arg] = lambda * (p[arg] > 0 ? 1.0 : -1.0);
    }
    return {lambda * value, grad};
}

Functional holes_functional(std::size_t dim, std::size_t degree, double lambda, double scale) {
    Functional f;
    f.name = "-total_persistence(H" + std::to_string(degree) + ") + box(" + std::to_string(lambda) + ")";
    f.scale = scale;
    f.evaluate = [=](const std::vector<double>& x) {
        const PointCloud cloud(dim, x);
        return -total_persistence(lifted_rips_barcode(cloud, degree)) + box_regularizer(cloud, lambda).first;
    };
    f.subgradient = [=](const std::vector<double>& x) {
        const PointCloud cloud(dim, x);
        const auto jac = pers_jacobian(cloud, degree);
        auto loss = total_persistence_gradient(jac.lifted.k);
        for (auto& v : loss) v = -v;
        auto g = chain_rule(loss, jac.matrix);
        const auto box = box_regularizer(cloud, lambda).second;
        for (std::size_t c = 0; c < g.size(); ++c) g[c] += box[c];
        return g;
    };
    return f;
}

PointCloud uniform_square_cloud(std::size_t r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> coords(2 * r);
    for (auto& c : coords) c = u(rng);
    return PointCloud(2, std::move(coords));
}

ExperimentResult experiment_holes(const ExperimentConfig& config,
                                  std::function<void(const DescentState&)> on_bound_exceeded) {
    if (config.r < 4) throw Error("the holes experiment needs at least 4 points");
    if (config.lambda < 0.0) throw Error("lambda must be nonnegative");
    ExperimentResult out;
    out.config = config;
    out.initial = uniform_square_cloud(config.r, config.seed);
    out.schedule = {config.alpha0.value_or(0.1 * out.initial.diameter()), config.gamma};
    out.schedule.validate();
    out.bound = config.bound;

    const auto f = holes_functional(2, 1, config.lambda, out.initial.diameter());
    RunOptions options;
    options.sigma = config.sigma;
    options.steps = config.steps;
    options.bound = out.bound;
    options.burn_in = config.burn_in;
    options.on_bound_exceeded = std::move(on_bound_exceeded);
    // the noise stream is seeded apart from the sampling stream
    out.state = run(f, out.initial.coords(), out.schedule, options, config.seed ^ 0x9e3779b97f4a7c15ULL);
    out.final = PointCloud(2, out.state.x);
    out.initial_barcode = unlift(lifted_rips_barcode(out.initial, 1));
    out.final_barcode = unlift(lifted_rips_barcode(out.final, 1));
    return out;
}

}  // namespace persistlab
