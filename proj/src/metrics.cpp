#include "persistlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "persistlab/errors.hpp"

namespace persistlab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_parameters(const Bar& a, const Bar& b) {
    if (a.parameters() != b.parameters())
        throw Error("bars live in different parameter spaces (" + std::to_string(a.parameters()) + " vs " +
                    std::to_string(b.parameters()) + ")");
}

double sup_distance(const Point& x, const Point& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

// Bipartite graph on the augmented sides: left = a then diagonal copies of b,
// right = b then diagonal copies of a.
class AugmentedCosts {
public:
    AugmentedCosts(const std::vector<Bar>& a, const std::vector<Bar>& b) : na_(a.size()), nb_(b.size()) {
        const auto n = na_ + nb_;
        cost_.assign(n * n, inf);
        for (std::size_t i = 0; i < na_; ++i) {
            for (std::size_t j = 0; j < nb_; ++j) at(i, j) = bar_cost(a[i], b[j]);
            at(i, nb_ + i) = bar_deletion_cost(a[i]);
        }
        for (std::size_t j = 0; j < nb_; ++j) {
            at(na_ + j, j) = bar_deletion_cost(b[j]);
            for (std::size_t i = 0; i < na_; ++i) at(na_ + j, nb_ + i) = 0.0;
        }
    }

    std::size_t size() const noexcept { return na_ + nb_; }
    double operator()(std::size_t l, std::size_t r) const { return cost_[l * size() + r]; }

    // assignment[l] = r for the augmented problem, turned into a partial matching
    PartialMatching to_matching(const std::vector<std::size_t>& assignment) const {
        PartialMatching m;
        for (std::size_t i = 0; i < na_; ++i) {
            if (assignment[i] < nb_)
                m.matched.emplace_back(i, assignment[i]);
            else
                m.unmatched1.push_back(i);
        }
        for (std::size_t j = 0; j < nb_; ++j) {
            bool hit = false;
            for (std::size_t i = 0; i < na_; ++i) hit = hit || assignment[i] == j;
            if (!hit) m.unmatched2.push_back(j);
        }
        return m;
    }

private:
    double& at(std::size_t l, std::size_t r) { return cost_[l * size() + r]; }

    std::size_t na_;
    std::size_t nb_;
    std::vector<double> cost_;
};

// Perfect matching using only edges with cost <= eps (augmenting paths).
std::optional<std::vector<std::size_t>> perfect_matching(const AugmentedCosts& costs, double eps) {
    const auto n = costs.size();
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_right(n, none);
    std::vector<char> visited(n);
    std::function<bool(std::size_t)> augment = [&](std::size_t l) {
        for (std::size_t r = 0; r < n; ++r) {
            if (visited[r] || !(costs(l, r) <= eps)) continue;
            visited[r] = 1;
            if (match_right[r] == none || augment(match_right[r])) {
                match_right[r] = l;
                return true;
            }
        }
        return false;
    };
    for (std::size_t l = 0; l < n; ++l) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(l)) return std::nullopt;
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t r = 0; r < n; ++r) assignment[match_right[r]] = r;
    return assignment;
}

// Minimum-cost perfect assignment (Hungarian method with potentials).
std::vector<std::size_t> hungarian(const std::vector<double>& cost, std::size_t n) {
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const auto i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const auto j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
    return assignment;
}

std::vector<Bar> unsigned_union(const std::vector<Bar>& x, const std::vector<Bar>& y) {
    std::vector<Bar> out;
    for (const auto* side : {&x, &y})
        for (auto bar : *side) {
            bar.sign = +1;
            out.push_back(std::move(bar));
        }
    return out;
}

void check_same_n(const Barcode& a, const Barcode& b) {
    if (a.n != b.n)
        throw Error("barcodes have different parameter counts (" + std::to_string(a.n) + " vs " +
                    std::to_string(b.n) + ")");
}

}  // namespace

double bar_deletion_cost(const Bar& b) {
    if (b.infinite()) return inf;
    double side = 0.0;
    for (std::size_t i = 0; i < b.birth.size(); ++i) side = std::max(side, (*b.death)[i] - b.birth[i]);
    return side / 2.0;
}

double bar_cost(const Bar& a, const Bar& b) {
    check_parameters(a, b);
    if (a.sign != b.sign) return inf;
    double shift = sup_distance(a.birth, b.birth);
    if (a.infinite() != b.infinite())
        shift = inf;
    else if (!a.infinite())
        shift = std::max(shift, sup_distance(*a.death, *b.death));
    return std::min(shift, std::max(bar_deletion_cost(a), bar_deletion_cost(b)));
}

double matching_cost_sum(const std::vector<Bar>& a, const std::vector<Bar>& b, const PartialMatching& m) {
    double total = 0.0;
    for (auto [i, j] : m.matched) total += bar_cost(a[i], b[j]);
    for (auto i : m.unmatched1) total += bar_deletion_cost(a[i]);
    for (auto j : m.unmatched2) total += bar_deletion_cost(b[j]);
    return total;
}

double matching_cost_max(const std::vector<Bar>& a, const std::vector<Bar>& b, const PartialMatching& m) {
    double worst = 0.0;
    for (auto [i, j] : m.matched) worst = std::max(worst, bar_cost(a[i], b[j]));
    for (auto i : m.unmatched1) worst = std::max(worst, bar_deletion_cost(a[i]));
    for (auto j : m.unmatched2) worst = std::max(worst, bar_deletion_cost(b[j]));
    return worst;
}

MatchingResult bottleneck(const std::vector<Bar>& a, const std::vector<Bar>& b) {
    const AugmentedCosts costs(a, b);
    const auto n = costs.size();
    if (n == 0) return {};

    std::vector<double> candidates{0.0};
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = 0; r < n; ++r)
            if (std::isfinite(costs(l, r))) candidates.push_back(costs(l, r));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto best = perfect_matching(costs, candidates.back());
    if (!best) return {inf, costs.to_matching(*perfect_matching(costs, inf))};
    // invariant: best is a witness for candidates[hi]
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (auto m = perfect_matching(costs, candidates[mid])) {
            best = std::move(m);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return {candidates[hi], costs.to_matching(*best)};
}

MatchingResult bottleneck(const Barcode& a, const Barcode& b) {
    check_same_n(a, b);
    return bottleneck(a.bars, b.bars);
}

MatchingResult dist1(const std::vector<Bar>& a, const std::vector<Bar>& b) {
    const AugmentedCosts costs(a, b);
    const auto n = costs.size();
    if (n == 0) return {};
    double finite_total = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = 0; r < n; ++r)
            if (std::isfinite(costs(l, r))) finite_total += costs(l, r);
    // Any assignment avoiding infinite entries is cheaper than one using one.
    const double big = 2.0 * finite_total + 1.0;
    std::vector<double> matrix(n * n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = 0; r < n; ++r) matrix[l * n + r] = std::isfinite(costs(l, r)) ? costs(l, r) : big;
    const auto assignment = hungarian(matrix, n);
    MatchingResult out;
    out.matching = costs.to_matching(assignment);
    out.value = matching_cost_sum(a, b, out.matching);
    return out;
}

MatchingResult dist1(const Barcode& a, const Barcode& b) {
    check_same_n(a, b);
    return dist1(a.bars, b.bars);
}

double signed_bottleneck(const SignedBarcode& a, const SignedBarcode& b) {
    if (a.n != b.n) throw Error("signed barcodes have different parameter counts");
    return bottleneck(unsigned_union(a.positive, b.negative), unsigned_union(b.positive, a.negative)).value;
}

double bottleneck_bruteforce(const std::vector<Bar>& a, const std::vector<Bar>& b) {
    if (a.size() + b.size() > 8) throw CapExceeded("bottleneck_bruteforce handles at most 8 bars");
    std::vector<bool> used(b.size(), false);
    double best = inf;
    bool any = false;
    // assign each bar of a to a free bar of b or to deletion
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double worst) {
        if (i == a.size()) {
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) worst = std::max(worst, bar_deletion_cost(b[j]));
            if (!any || worst < best) best = worst;
            any = true;
            return;
        }
        walk(i + 1, std::max(worst, bar_deletion_cost(a[i])));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            walk(i + 1, std::max(worst, bar_cost(a[i], b[j])));
            used[j] = false;
        }
    };
    walk(0, 0.0);
    return best;
}

double bottleneck_bruteforce(const Barcode& a, const Barcode& b) {
    check_same_n(a, b);
    return bottleneck_bruteforce(a.bars, b.bars);
}

}  // namespace persistlab
