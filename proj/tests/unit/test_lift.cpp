#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "persistlab/errors.hpp"
#include "persistlab/lift.hpp"
#include "persistlab/metrics.hpp"

using namespace persistlab;

namespace {

LiftedBarcode lifted(std::size_t n, bool is_signed, std::vector<double> coords) {
    LiftedBarcode v;
    v.n = n;
    v.is_signed = is_signed;
    v.k = coords.size() / (2 * n + 1);
    v.coords = std::move(coords);
    return v;
}

}  // namespace

TEST_CASE("lift goldens") {
    const Barcode one{1, {bar1(0), bar1(-1, 3.2), bar1(0, 2.5)}};
    CHECK(lift(one).coords == std::vector<double>{-1, 3.2, 1, 0, 0, 1, 0, 2.5, 1});

    const Barcode two{2, {Bar::finite({0, 0}, {3, 2}), Bar::finite({-1, 1}, {2, 2}), Bar::upset({2, 3})}};
    CHECK(lift(two).coords == std::vector<double>{-1, 1, 2, 2, 1, 0, 0, 3, 2, 1, 2, 3, 2, 3, 1});

    const SignedBarcode s{2,
                          {Bar::finite({0, 0}, {0, 1}), Bar::finite({0, 0}, {1, 1})},
                          {Bar::finite({0, 0}, {1, 0}, -1)}};
    const auto ls = lift(s);
    CHECK(ls.coords == std::vector<double>{0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0, -1});
    CHECK(ls.is_signed);
    CHECK(ls.k == 3);

    CHECK(same_bars(unlift(lift(one)).bars, one.bars));
    CHECK(same_bars(unlift(lift(two)).bars, two.bars));
    const auto back = unlift_signed(ls);
    CHECK(same_bars(back.positive, s.positive));
    CHECK(same_bars(back.negative, s.negative));
}

TEST_CASE("unlift conventions and errors") {
    CHECK(unlift(lifted(1, false, {5, 5, 1})).bars == std::vector<Bar>{bar1(5)});
    CHECK_THROWS_AS(unlift(lifted(1, false, {0, -1, 1})), MalformedBlock);
    CHECK_THROWS_AS(unlift(lifted(1, false, {0, 1, 0})), MalformedBlock);
    CHECK_THROWS_AS(unlift(lifted(1, false, {0, 1, -1})), MalformedBlock);
    CHECK_THROWS_AS(unlift_signed(lifted(1, true, {0, 1, -1, 0, 2, 1})), MalformedBlock);
    auto ragged = lifted(1, false, {0, 1, 1});
    ragged.coords.push_back(4);
    CHECK_THROWS_AS(unlift(ragged), MalformedBlock);
}

TEST_CASE("lift order is stable on ties") {
    const std::vector<Bar> bars = {bar1(1, 2), bar1(0, 2), bar1(1, 2), bar1(0)};
    CHECK(lift_order(bars) == std::vector<std::size_t>{3, 1, 0, 2});
}

TEST_CASE("unlift inverts lift on random barcodes") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const SignedBarcode s{n, oracle::random_bars(n, rng() % 6, rng), oracle::random_bars(n, rng() % 6, rng, 0.2, 6, -1)};
        const auto back = unlift_signed(lift(s));
        CHECK(same_bars(back.positive, s.positive));
        CHECK(same_bars(back.negative, s.negative));
        const Barcode b{n, s.positive};
        CHECK(same_bars(unlift(lift(b)).bars, b.bars));
    }
}

TEST_CASE("pers_jacobian matches finite differences") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t r = 3 + trial % 8;
        const auto cloud = oracle::generic_cloud(r, 2, rng, 1e-3);
        for (std::size_t degree = 0; degree <= 1; ++degree) {
            const auto pj = pers_jacobian(cloud, degree);
            const auto& J = pj.matrix;
            REQUIRE(J.rows == pj.lifted.coords.size());
            REQUIRE(J.cols == 2 * r);
            const double h = 1e-6 * cloud.diameter();
            const auto fd = oracle::finite_difference_jacobian(
                [&](const std::vector<double>& x) { return lifted_rips_barcode(PointCloud(2, x), degree).coords; },
                cloud.coords(), h);
            for (std::size_t c = 0; c < J.cols; ++c)
                for (std::size_t row = 0; row < J.rows; ++row)
                    CHECK(std::abs(fd[c][row] - J(row, c)) <= 1e-6 * std::max(1.0, std::abs(J(row, c))));

            for (std::size_t b = 0; b < pj.lifted.k; ++b) {
                for (std::size_t c = 0; c < J.cols; ++c) CHECK(J(3 * b + 2, c) == 0.0);
                const bool infinite = pj.lifted.coords[3 * b] == pj.lifted.coords[3 * b + 1];
                if (infinite)
                    for (std::size_t c = 0; c < J.cols; ++c) CHECK(J(3 * b, c) == J(3 * b + 1, c));
                for (std::size_t e = 0; e < 2; ++e) {
                    if (pj.lifted.coords[3 * b + e] == 0.0) continue;
                    std::size_t nonzero = 0;
                    for (std::size_t c = 0; c < J.cols; ++c) nonzero += J(3 * b + e, c) != 0.0;
                    CHECK(nonzero == 4);
                    for (std::size_t p = 0; p < r; ++p) {
                        const double x = J(3 * b + e, 2 * p), y = J(3 * b + e, 2 * p + 1);
                        if (x != 0.0 || y != 0.0) CHECK(std::hypot(x, y) == doctest::Approx(1.0).epsilon(1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("pers_jacobian refuses stratum boundaries") {
    CHECK_THROWS_AS(pers_jacobian(PointCloud(2, {0, 0, 1, 0, 0, 1}), 1), StratumBoundary);
    CHECK_THROWS_AS(pers_jacobian(PointCloud(2, {0, 0, 0, 0, 2, 1}), 0), StratumBoundary);
}

TEST_CASE("total persistence") {
    CHECK(total_persistence(Barcode{1, {bar1(0)}}) == 0.0);
    CHECK(total_persistence(Barcode{1, {bar1(1, 3), bar1(0, 2)}}) == 4.0);
    CHECK(total_persistence_gradient(2) == std::vector<double>{-1, 1, 0, -1, 1, 0});
    const auto v = lift(Barcode{1, {bar1(0), bar1(1, 3), bar1(0, 2)}});
    CHECK(total_persistence(v) == 4.0);
}

TEST_CASE("chain rule") {
    Jacobian id{6, 6, std::vector<double>(36, 0.0)};
    for (std::size_t i = 0; i < 6; ++i) id(i, i) = 1.0;
    const std::vector<double> g = {1, -2, 0, 3, 0.5, 0};
    CHECK(chain_rule(g, id) == g);
    CHECK(chain_rule(std::vector<double>(6, 0.0), id) == std::vector<double>(6, 0.0));
    CHECK_THROWS_AS(chain_rule(std::vector<double>(5, 0.0), id), std::invalid_argument);

    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cloud = oracle::generic_cloud(5 + trial, 2, rng, 1e-3);
        const auto pj = pers_jacobian(cloud, 1);
        const auto grad = chain_rule(total_persistence_gradient(pj.lifted.k), pj.matrix);
        const double h = 1e-6 * cloud.diameter();
        const auto fd = oracle::finite_difference_jacobian(
            [](const std::vector<double>& x) {
                return std::vector<double>{total_persistence(lifted_rips_barcode(PointCloud(2, x), 1))};
            },
            cloud.coords(), h);
        for (std::size_t c = 0; c < grad.size(); ++c)
            CHECK(std::abs(fd[c][0] - grad[c]) <= 1e-6 * std::max(1.0, std::abs(grad[c])));
    }
}

TEST_CASE("dist1 loss gradient") {
    const Barcode b{1, {bar1(0, 2), bar1(1, 4)}};
    CHECK(dist1_loss_gradient(b, b) == std::vector<double>(6, 0.0));
    CHECK(dist1_loss_gradient(Barcode{1, {bar1(0, 2)}}, Barcode{1, {bar1(0, 3)}}) == std::vector<double>{0, -1, 0});
    CHECK(dist1_loss_gradient(Barcode{1, {bar1(0, 1)}}, Barcode{1, {}}) == std::vector<double>{-0.5, 0.5, 0});
    CHECK_THROWS_AS(dist1_loss_gradient(Barcode{1, {bar1(0)}}, Barcode{1, {}}), Error);

    // generic real endpoints: the gradient is the derivative of dist1 itself
    std::mt19937_64 rng(131);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto make = [&](std::size_t count) {
            Barcode out{1, {}};
            for (std::size_t i = 0; i < count; ++i) {
                const double x = u(rng);
                out.bars.push_back(bar1(x, x + 0.1 + u(rng)));
            }
            return out;
        };
        const auto a = make(1 + rng() % 4), target = make(rng() % 4);
        const auto grad = dist1_loss_gradient(a, target);
        const auto v = lift(a);
        const double h = 1e-7;
        for (std::size_t i = 0; i < v.coords.size(); ++i) {
            if (i % 3 == 2) continue;
            auto plus = v, minus = v;
            plus.coords[i] += h;
            minus.coords[i] -= h;
            const double fd = (dist1(unlift(plus), target).value - dist1(unlift(minus), target).value) / (2 * h);
            CHECK(std::abs(fd - grad[i]) <= 1e-6);
        }
    }
}
