#include "doctest.h"

#include <random>
#include <stdexcept>

#include "persistlab/f2_matrix.hpp"

using namespace persistlab;

namespace {

F2Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    F2Matrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) a.set(r, c);
    return a;
}

}  // namespace

TEST_CASE("rank of small matrices") {
    CHECK(rank(F2Matrix(0, 0)) == 0);
    CHECK(rank(F2Matrix::identity(3)) == 3);
    CHECK(rank(F2Matrix::from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("solve") {
    const auto b = F2Vector::from_bits({1, 0, 1});
    CHECK(solve(F2Matrix::identity(3), b) == b);

    const auto a = F2Matrix::from_rows({{1, 1}});
    const auto x = solve(a, F2Vector::from_bits({1}));
    REQUIRE(x);
    CHECK(a * *x == F2Vector::from_bits({1}));

    CHECK_FALSE(solve(F2Matrix(1, 1), F2Vector::from_bits({1})));
    CHECK_THROWS_AS(solve(a, F2Vector(2)), std::invalid_argument);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(F2Matrix::identity(4)).cols() == 0);
    CHECK(kernel_basis(F2Matrix(3, 3)).cols() == 3);
    const auto k = kernel_basis(F2Matrix::from_rows({{1, 1}}));
    REQUIRE(k.cols() == 1);
    CHECK(k.column(0) == F2Vector::from_bits({1, 1}));
}

TEST_CASE("rank-nullity and solve consistency on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = rng() % 90, cols = rng() % 90;
        const auto a = random_matrix(rows, cols, rng, trial % 3 == 0 ? 0.1 : 0.5);
        const auto r = rank(a);
        const auto k = kernel_basis(a);
        CHECK(r <= std::min(rows, cols));
        CHECK(r + k.cols() == cols);
        CHECK((a * k).is_zero());
        CHECK(rank(k) == k.cols());
        CHECK(rank(a.transpose()) == r);

        auto b = F2Vector(rows);
        for (std::size_t i = 0; i < rows; ++i) b.set(i, rng() & 1);
        const auto x = solve(a, b);
        if (x) {
            CHECK(a * *x == b);
        } else {
            auto ab = a.hstack(F2Matrix::from_columns({b}, rows));
            CHECK(rank(ab) > r);
        }
    }
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_matrix(12, 12, rng);
        const auto inv = inverse(a);
        CHECK(inv.has_value() == (rank(a) == 12));
        if (inv) {
            CHECK((a * *inv).is_identity());
            CHECK((*inv * a).is_identity());
        }
    }
}

TEST_CASE("span coordinates reproduce the vector") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 1 + rng() % 70;
        F2Span span(dim);
        std::vector<F2Vector> accepted;
        for (int i = 0; i < 20; ++i) {
            F2Vector v(dim);
            for (std::size_t j = 0; j < dim; ++j) v.set(j, rng() % 3 == 0);
            if (span.insert(v)) accepted.push_back(v);
        }
        CHECK(span.size() == accepted.size());
        F2Vector probe(dim);
        for (std::size_t j = 0; j < dim; ++j) probe.set(j, rng() & 1);
        const auto coords = span.coordinates(probe);
        CHECK(coords.has_value() == span.contains(probe));
        if (coords) {
            F2Vector sum(dim);
            for (std::size_t i = 0; i < accepted.size(); ++i)
                if (coords->get(i)) sum ^= accepted[i];
            CHECK(sum == probe);
        }
    }
}

TEST_CASE("word boundaries") {
    F2Matrix a(3, 130);
    a.set(0, 63);
    a.set(1, 64);
    a.set(2, 129);
    CHECK(rank(a) == 3);
    CHECK(a.transpose().get(129, 2));
    CHECK(a.column(64) == F2Vector::unit(3, 1));
}
