#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "generators.hpp"
#include "mscvrp/instance.hpp"
#include "mscvrp/rng.hpp"

using namespace mscvrp;

namespace {

const char* kTinyInstance =
    "NAME : tiny\n"
    "TYPE : CVRP\n"
    "DIMENSION : 2\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "CAPACITY : 1\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 3 4\n"
    "DEMAND_SECTION\n"
    "1 0\n"
    "2 1\n"
    "DEPOT_SECTION\n"
    "1\n"
    "-1\n"
    "EOF\n";

}  // namespace

TEST_CASE("parses the keyword-section format") {
    const Instance inst = Instance::parse(kTinyInstance);
    CHECK(inst.name() == "tiny");
    CHECK(inst.dimension() == 2);
    CHECK(inst.customer_count() == 1);
    CHECK(inst.capacity() == 1);
    CHECK(inst.demand(0) == 0);
    CHECK(inst.demand(1) == 1);
    CHECK(inst.distance(0, 1) == 5);
}

TEST_CASE("a 101-node file yields 100 customers") {
    const Instance generated = testing::generate_xml_style(42, {1, 1, 2, 3, 1});
    const Instance inst = Instance::parse(generated.serialize());
    CHECK(inst.dimension() == 101);
    CHECK(inst.customer_count() == 100);
}

TEST_CASE("parse errors name the offending section") {
    std::string no_demand =
        "NAME : broken\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : 5\n"
        "NODE_COORD_SECTION\n1 0 0\n2 1 1\nDEPOT_SECTION\n1\n-1\nEOF\n";
    CHECK_THROWS_WITH_AS(Instance::parse(no_demand), doctest::Contains("DEMAND_SECTION"), ParseError);

    std::string no_coords =
        "NAME : broken\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : 5\n"
        "DEMAND_SECTION\n1 0\n2 1\nDEPOT_SECTION\n1\n-1\nEOF\n";
    CHECK_THROWS_WITH_AS(Instance::parse(no_coords), doctest::Contains("NODE_COORD_SECTION"), ParseError);
}

TEST_CASE("only the euclidean rounded metric is supported") {
    std::string matrix_weights = kTinyInstance;
    const auto pos = matrix_weights.find("EUC_2D");
    matrix_weights.replace(pos, 6, "EXPLICIT");
    CHECK_THROWS_AS(Instance::parse(matrix_weights), UnsupportedFormatError);
}

TEST_CASE("a demand above capacity is unservable") {
    std::string oversized = kTinyInstance;
    const auto pos = oversized.find("2 1\nDEPOT");
    oversized.replace(pos, 3, "2 9");
    CHECK_THROWS_AS(Instance::parse(oversized), InfeasibleInstanceError);
}

TEST_CASE("distances follow the nearest-integer convention") {
    const Instance inst = Instance::create(
        "dist", {0, 3, 1, 7}, {0, 4, 1, 0}, {0, 1, 1, 1}, 10);
    CHECK(inst.distance(0, 1) == 5);   // 3-4-5 triangle
    CHECK(inst.distance(0, 2) == 1);   // round(sqrt(2)) = 1
    CHECK(inst.distance(1, 1) == 0);

    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const int i = rng.int_below(inst.dimension());
        const int j = rng.int_below(inst.dimension());
        CHECK(inst.distance(i, j) == inst.distance(j, i));
    }
}

TEST_CASE("metric properties hold on a generated instance") {
    const Instance inst = testing::generate_xml_style(7, {2, 1, 4, 2, 1});
    Rng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const int i = rng.int_below(inst.dimension());
        const int j = rng.int_below(inst.dimension());
        const int k = rng.int_below(inst.dimension());
        CHECK(inst.distance(i, i) == 0);
        CHECK(inst.distance(i, j) == inst.distance(j, i));
        // rounding can break the triangle inequality by at most one unit
        CHECK(inst.distance(i, k) <= inst.distance(i, j) + inst.distance(j, k) + 1);
    }
}

TEST_CASE("neighbor lists are sorted permutations of the other customers") {
    const Instance inst = testing::generate_xml_style(11, {3, 2, 2, 2, 1});
    for (int node = 0; node < inst.dimension(); ++node) {
        const auto& nbs = inst.neighbors_of(node);
        const int expected = inst.customer_count() - (node == 0 ? 0 : 1);
        REQUIRE(static_cast<int>(nbs.size()) == expected);
        for (std::size_t k = 0; k + 1 < nbs.size(); ++k)
            CHECK(inst.distance(node, nbs[k]) <= inst.distance(node, nbs[k + 1]));
        for (std::size_t k = 0; k < nbs.size(); ++k) {
            CHECK(nbs[k] >= 1);
            CHECK(nbs[k] != node);
            CHECK(inst.neighbor_rank(node, nbs[k]) == static_cast<int>(k) + 1);
        }
    }
}

TEST_CASE("fractional route bound") {
    const Instance three = Instance::create("three", {0, 1, 2, 3}, {0, 0, 0, 0}, {0, 1, 1, 1}, 2);
    CHECK(three.fractional_route_bound() == doctest::Approx(1.5));

    const Instance one = Instance::create("one", {0, 1, 2}, {0, 0, 0}, {0, 0, 4}, 4);
    CHECK(one.fractional_route_bound() == doctest::Approx(1.0));

    const Instance gen = testing::generate_xml_style(13, {1, 3, 5, 4, 1});
    long long sum = 0;
    for (int c = 1; c <= gen.customer_count(); ++c) sum += gen.demand(c);
    CHECK(gen.fractional_route_bound() ==
          doctest::Approx(static_cast<double>(sum) / static_cast<double>(gen.capacity())));
}

TEST_CASE("route size classification") {
    // 100 customers summing to 404 with capacity 100: estimate 25, long
    std::vector<double> xs{0}, ys{0};
    std::vector<long long> demands{0};
    for (int c = 0; c < 100; ++c) {
        xs.push_back(c + 1);
        ys.push_back(0);
        demands.push_back(c < 96 ? 4 : 5);
    }
    const Instance long_inst = Instance::create("long", xs, ys, demands, 100);
    CHECK(long_inst.estimated_route_size() == doctest::Approx(25.0));
    CHECK(long_inst.route_size_class() == RouteSizeClass::kLong);

    // same demands, capacity 80: estimate exactly 20, short by the strict rule
    const Instance border = Instance::create("border", xs, ys, demands, 80);
    CHECK(border.estimated_route_size() == doctest::Approx(20.0));
    CHECK(border.route_size_class() == RouteSizeClass::kShort);

    const Instance small = Instance::create("small", {0, 1, 2}, {0, 0, 0}, {0, 5, 10}, 10);
    CHECK(small.route_size_class() == RouteSizeClass::kShort);

    const Instance zero = Instance::create("zero", {0, 1}, {0, 1}, {0, 0}, 10);
    CHECK_THROWS_AS(zero.route_size_class(), InfeasibleInstanceError);
}

TEST_CASE("serialize then parse reproduces the instance") {
    const Instance original = testing::generate_xml_style(21, {1, 2, 7, 5, 2});
    const Instance reparsed = Instance::parse(original.serialize());
    REQUIRE(reparsed.dimension() == original.dimension());
    CHECK(reparsed.name() == original.name());
    CHECK(reparsed.capacity() == original.capacity());
    for (int node = 0; node < original.dimension(); ++node) {
        CHECK(reparsed.x(node) == original.x(node));
        CHECK(reparsed.y(node) == original.y(node));
        CHECK(reparsed.demand(node) == original.demand(node));
    }
    CHECK(reparsed.serialize() == original.serialize());
}
