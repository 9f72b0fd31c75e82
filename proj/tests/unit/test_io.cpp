#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "persistlab/errors.hpp"
#include "persistlab/hook_resolution.hpp"
#include "persistlab/io.hpp"

using namespace persistlab;

namespace {

std::size_t count_bars(const std::string& svg) {
    std::size_t count = 0;
    for (auto pos = svg.find("class=\"bar\""); pos != std::string::npos; pos = svg.find("class=\"bar\"", pos + 1))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("doubles round trip") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.0}) CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("points csv") {
    const auto cloud = io::parse_points_csv("# header\n0,0\n\n3, 4\n");
    CHECK(cloud.size() == 2);
    CHECK(cloud.distance(0, 1) == 5.0);
    const auto back = io::parse_points_csv(io::points_csv(cloud));
    CHECK(back.coords() == cloud.coords());
    CHECK_THROWS_AS(io::parse_points_csv(""), ParseError);
    CHECK_THROWS_AS(io::parse_points_csv("1,2\n3\n"), ParseError);
    CHECK_THROWS_AS(io::parse_points_csv("1,x\n"), ParseError);
    CHECK_THROWS_AS(io::parse_points_csv("# nothing\n"), Error);
}

TEST_CASE("filtration json") {
    std::mt19937_64 rng(151);
    const auto k = std::make_shared<const SimplicialComplex>(SimplicialComplex::full(4, 2));
    const auto f = oracle::random_monotone(k, 2, rng, 5, false);
    const auto g = io::parse_filtration_json(io::filtration_json(f));
    CHECK(g.complex().simplices() == f.complex().simplices());
    CHECK(g.raw_values() == f.raw_values());
    CHECK_THROWS_AS(io::parse_filtration_json("{\"n\": 1, \"simplices\": ["), ParseError);
    CHECK_THROWS_AS(io::parse_filtration_json(
                        R"({"n": 1, "simplices": [{"verts": [0], "value": [1]}, {"verts": [0, 1], "value": [0]},
                             {"verts": [1], "value": [0]}]})"),
                    MonotonicityViolation);
}

TEST_CASE("barcode json") {
    const Barcode b{1, {bar1(0), bar1(0.25, 3)}};
    const auto file = io::parse_barcode_json(io::barcode_json(b));
    CHECK_FALSE(file.is_signed);
    CHECK(same_bars(file.unsigned_barcode().bars, b.bars));

    const SignedBarcode s{2, {Bar::finite({0, 0}, {1, 2})}, {Bar::upset({1, 1}, -1)}};
    const auto sf = io::parse_barcode_json(io::barcode_json(s));
    CHECK(sf.is_signed);
    CHECK(same_bars(sf.bars.positive, s.positive));
    CHECK(same_bars(sf.bars.negative, s.negative));

    CHECK_THROWS_AS(io::parse_barcode_json(R"({"n": 1, "bars": [{"birth": [0], "death": "never"}]})"), ParseError);
    CHECK_THROWS_AS(io::parse_barcode_json("not json"), ParseError);
}

TEST_CASE("grid module json") {
    std::mt19937_64 rng(157);
    const auto m = oracle::random_presented_module(Grid({3, 2}, {{0, 1, 2.5}, {-1, 1}}), rng);
    const auto back = io::parse_grid_module_json(io::grid_module_json(m));
    CHECK(back == m);
    CHECK_THROWS_AS(io::parse_grid_module_json(R"({"sizes": [2], "dims": [1]})"), ParseError);
    CHECK_THROWS_AS(
        io::parse_grid_module_json(R"({"sizes": [2], "dims": [1, 1], "arrows": [{"from": [0], "axis": 0, "matrix": [[2]]}]})"),
        ParseError);
}

TEST_CASE("lifted json and tables") {
    const auto v = lift(Barcode{1, {bar1(0), bar1(-1, 3.2)}});
    CHECK(io::parse_lifted_json(io::lifted_json(v)) == v);
    const Jacobian j{2, 2, {1, 0, -0.5, 2}};
    CHECK(io::jacobian_csv(j) == "1,0\n-0.5,2\n");
    const auto trace = io::trace_csv({{0, -1.5, 2.0, 0.9}});
    CHECK(trace.rfind("step,F,grad_norm,sup_norm\n", 0) == 0);
}

TEST_CASE("config json") {
    const auto c = io::parse_config_json(
        R"({"seed": 7, "steps": 20, "alpha0": 0.05, "gamma": 0.9, "sigma": 0.0, "lambda": 0.5, "r": 10})");
    CHECK(c.seed == 7);
    CHECK(c.steps == 20);
    CHECK(c.alpha0 == std::optional<double>(0.05));
    CHECK(c.gamma == 0.9);
    CHECK(c.r == 10);
    CHECK_FALSE(io::parse_config_json("{}").alpha0);
    CHECK_THROWS_AS(io::parse_config_json(R"({"seeds": 1})"), ParseError);
}

TEST_CASE("svg has one element per bar") {
    const Barcode b{1, {bar1(0), bar1(0.25, 3), bar1(1, 2)}};
    const auto svg = io::barcode_svg(b, "H1");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_bars(svg) == 3);
    const SignedBarcode s{2, {Bar::finite({0, 0}, {1, 2}), Bar::upset({0, 1})}, {Bar::finite({1, 0}, {2, 2}, -1)}};
    const auto svg2 = io::barcode_svg(s);
    CHECK(count_bars(svg2) == 3);
    CHECK(svg2.find("#c8312b") != std::string::npos);
    CHECK(count_bars(io::barcode_svg(Barcode{1, {}})) == 0);
}
