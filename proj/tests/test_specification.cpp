#include "doctest.h"

#include "tbf/boundary.hpp"
#include "tbf/density.hpp"
#include "tbf/specification.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace tbf;

namespace {

BoundaryCondition all_ones_around(long l, long r) {
    BoundaryCondition bc;
    bc.l = l;
    bc.r = r;
    bc.left_annulus = {1};
    bc.right_annulus = {1};
    return bc;
}

BoundaryCondition all_empty_around(long l, long r) {
    BoundaryCondition bc;
    bc.l = l;
    bc.r = r;
    bc.left_annulus = {0};
    bc.right_annulus = {0};
    bc.left_tail = TailPattern::all_empty();
    bc.right_tail = TailPattern::all_empty();
    return bc;
}

} // namespace

TEST_SUITE("specification") {

TEST_CASE("thinning keeps occupied sites with an occupied neighbour") {
    CHECK(thin({0, 1, 0}, 0, 0) == std::vector<int>{0, 0, 0});
    CHECK(thin({1, 1, 0, 1}, 0, 1) == std::vector<int>{1, 1, 0, 1});
    CHECK(thin({1, 1, 0, 1}, 0, 0) == std::vector<int>{1, 1, 0, 0});
    CHECK(thin({1}, 0, 0) == std::vector<int>{0});
    CHECK(thin({1}, 1, 0) == std::vector<int>{1});
    CHECK(thin({1}, 0, 1) == std::vector<int>{1});
    CHECK(thin({0, 0}, 1, 1) == std::vector<int>{0, 0});
    CHECK(thin({1, 0, 1, 0, 1}, 0, 0) == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(thin({1, 1, 1}, 0, 0) == std::vector<int>{1, 1, 1});
}

TEST_CASE("area decomposition of a mixed boundary") {
    BoundaryCondition bc;
    bc.l = -7;
    bc.r = 6;
    bc.left_annulus = {1, 1, 0, 0, 0, 0};
    bc.right_annulus = {0, 0, 0, 0, 1, 1, 1};
    REQUIRE_NOTHROW(bc.validate());

    // occupied interior sites -3..-1 and 3..6
    std::uint32_t word = 0;
    for (int k : {4, 5, 6, 10, 11, 12, 13}) word |= 1u << k;
    CHECK(word == 15472u);

    AreaDecomposition d = decompose(bc, word);

    CHECK(d.theta == std::vector<long>{-3, -2, -1, 3, 4, 5, 6});
    CHECK(d.occupied_in_closure() == 7);
    CHECK(d.border_in_closure() == 4);
    CHECK(d.theta_bar.size() == 11);

    REQUIRE(d.unfixed_components.size() == 3);
    CHECK(d.unfixed_components[0].lo == -10);
    CHECK(d.unfixed_components[0].hi == -5);
    CHECK(d.unfixed_components[1].lo == 1);
    CHECK(d.unfixed_components[1].hi == 1);
    CHECK(d.unfixed_components[2].lo == 8);
    CHECK(d.unfixed_components[2].hi == 9);
    for (const auto& u : d.unfixed_components) {
        CHECK_FALSE(u.left_infinite);
        CHECK_FALSE(u.right_infinite);
    }

    REQUIRE(d.outer_left.has_value());
    CHECK(d.outer_left->lo == -10);
    CHECK(d.outer_left->hi == -5);
    REQUIRE(d.outer_right.has_value());
    CHECK(d.outer_right->lo == 8);
    CHECK(d.outer_right->hi == 9);

    REQUIRE(d.influencing_set.size() == 1);
    CHECK(d.influencing_set[0].lo == -10);
    CHECK(d.influencing_set[0].hi == 9);
    CHECK_FALSE(d.influencing_set[0].left_infinite);
    CHECK_FALSE(d.influencing_set[0].right_infinite);
}

TEST_CASE("area decomposition around a fully occupied neighbourhood") {
    BoundaryCondition bc = all_ones_around(0, 0);

    AreaDecomposition full = decompose(bc, 1);
    CHECK(full.theta == std::vector<long>{-1, 0, 1});
    CHECK(full.border_in_closure() == 0);
    CHECK(full.unfixed_components.empty());
    CHECK_FALSE(full.outer_left.has_value());
    CHECK_FALSE(full.outer_right.has_value());

    AreaDecomposition hole = decompose(bc, 0);
    CHECK(hole.theta == std::vector<long>{-1, 1});
    CHECK(hole.border_in_closure() == 1);
    CHECK(hole.unfixed_components.empty());
    REQUIRE(hole.influencing_set.size() == 1);
    CHECK(hole.influencing_set[0].lo == -1);
    CHECK(hole.influencing_set[0].hi == 1);
}

TEST_CASE("interior words wider than the window are rejected") {
    BoundaryCondition bc = all_ones_around(0, 1);
    CHECK_THROWS_AS(decompose(bc, 4u), std::domain_error);
    CHECK_NOTHROW(decompose(bc, 3u));
}

TEST_CASE("unfixed component weights") {
    Density half(0.5);

    UnfixedComponent single{false, false, 3, 3};
    CHECK(std::fabs(unfixed_weight(half, single, 0, 10) - 1.0) < 1e-12);

    UnfixedComponent zero_len{false, false, 3, 2};
    CHECK(std::fabs(unfixed_weight(half, zero_len, 0, 10) - 1.0) < 1e-12);

    UnfixedComponent everything{true, true, 0, 0};
    CHECK(std::fabs(unfixed_weight(half, everything, 0, 0) - 1.8090169943749475) <
          1e-12);

    UnfixedComponent left_touch{true, false, 0, -1};
    CHECK(std::fabs(unfixed_weight(half, left_touch, 0, 5) - 1.6180339887498949) <
          1e-12);

    UnfixedComponent left_far{true, false, 0, -3};
    CHECK(std::fabs(unfixed_weight(half, left_far, 0, 5) - 2.0) < 1e-12);

    UnfixedComponent right_touch{false, true, 6, 0};
    CHECK(std::fabs(unfixed_weight(half, right_touch, 0, 5) - 1.6180339887498949) <
          1e-12);
}

TEST_CASE("kernel on a fully occupied neighbourhood is the bare spin law") {
    for (double pv : {0.3, 0.5}) {
        Density p(pv);
        KernelResult res = kernel(p, all_ones_around(0, 0));
        REQUIRE(res.probabilities.size() == 2);
        CHECK(res.probabilities[0].first == 0u);
        CHECK(res.probabilities[1].first == 1u);
        CHECK(std::fabs(res.probability_of(1) - pv) < 1e-12);
        CHECK(std::fabs(res.probability_of(0) - (1.0 - pv)) < 1e-12);
        CHECK(std::fabs(res.partition_value - pv * pv) < 1e-12);
        CHECK(std::fabs(res.log_partition - std::log(res.partition_value)) < 1e-12);
    }
}

TEST_CASE("kernel on an empty neighbourhood weighs the hole against the pair") {
    Density half(0.5);
    KernelResult res = kernel(half, all_empty_around(0, 1));
    REQUIRE(res.probabilities.size() == 2);
    CHECK(res.probabilities[0].first == 0u);
    CHECK(res.probabilities[1].first == 3u);
    CHECK(std::fabs(res.probability_of(0) - 0.85410196624968449) < 1e-12);
    CHECK(std::fabs(res.probability_of(3) - 0.14589803375031546) < 1e-12);
    CHECK(std::fabs(res.probability_of(0) / res.probability_of(3) -
                    5.8541019662496838) < 1e-9);
    CHECK(std::fabs(res.partition_value - 1.7135254915624214) < 1e-12);
    CHECK(res.probability_of(1) == 0.0);
    CHECK(res.probability_of(2) == 0.0);
}

TEST_CASE("kernel distribution on a three site window in empty surroundings") {
    Density half(0.5);
    KernelResult res = kernel(half, all_empty_around(0, 2));
    REQUIRE(res.probabilities.size() == 4);
    CHECK(res.probabilities[0].first == 0u);
    CHECK(res.probabilities[1].first == 3u);
    CHECK(res.probabilities[2].first == 6u);
    CHECK(res.probabilities[3].first == 7u);
    CHECK(std::fabs(res.probability_of(0) - 0.69098300562505244) < 1e-12);
    CHECK(std::fabs(res.probability_of(3) - 0.11803398874989482) < 1e-12);
    CHECK(std::fabs(res.probability_of(6) - 0.11803398874989482) < 1e-12);
    CHECK(std::fabs(res.probability_of(7) - 0.072949016875157757) < 1e-12);
}

TEST_CASE("kernel probabilities sum to one on wider boundaries") {
    BoundaryCondition bc = parse_boundary(
        "tailL=per:1100 annulus=110 window=[-2,3] annulusR=011 tailR=ones");
    for (double pv : {0.25, 0.5, 0.85}) {
        KernelResult res = kernel(Density(pv), bc);
        double total = 0.0;
        for (auto& [w, pr] : res.probabilities) {
            CHECK(pr > 0.0);
            total += pr;
        }
        CHECK(std::fabs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("kernel collapses to a point mass when the boundary forces the word") {
    BoundaryCondition bc = parse_boundary(
        "tailL=empty annulus=1 window=[0,0] annulusR=1 tailR=empty");
    KernelResult res = kernel(Density(0.5), bc);
    REQUIRE(res.probabilities.size() == 1);
    CHECK(res.probabilities[0].first == 1u);
    CHECK(res.probability_of(1) == 1.0);
}

TEST_CASE("kernel rejects windows past the enumeration cap") {
    BoundaryCondition bc = all_ones_around(0, 24);
    CHECK_THROWS_AS(kernel(Density(0.5), bc), std::domain_error);
    BoundaryCondition ok = all_ones_around(0, 10);
    CHECK_NOTHROW(kernel(Density(0.5), ok));
}

TEST_CASE("sensitivity bounds at the reference point") {
    SensitivityBounds sb = sensitivity_bounds(Density(0.5), 0, 0, -3, 3);
    CHECK(sb.n == 3);
    CHECK(std::fabs(sb.lower - 0.0032838091951807552) < 1e-14);
    CHECK(std::fabs(sb.upper - 4.3281572999747642) < 1e-12);
    CHECK(sb.lower < sb.upper);

    CHECK_THROWS_AS(sensitivity_bounds(Density(0.5), 0, 0, -1, 3), std::domain_error);
    CHECK_THROWS_AS(sensitivity_bounds(Density(0.5), 0, 0, -3, 1), std::domain_error);
}

TEST_CASE("witness pair achieves the exact lower bound") {
    Density half(0.5);
    double exact = lower_bound_exact(half, 2, 1);
    CHECK(std::fabs(exact * 15.0 - 1.0) < 1e-13);

    auto [with_pair, without_pair] = witness_pair(0, 0, 2);
    REQUIRE_NOTHROW(with_pair.validate());
    REQUIRE_NOTHROW(without_pair.validate());
    std::uint32_t w = witness_word(1);
    CHECK(w == 0u);
    CHECK(witness_word(3) == 6u);

    double diff = kernel(half, with_pair).probability_of(w) -
                  kernel(half, without_pair).probability_of(w);
    CHECK(std::fabs(diff - exact) < 1e-10);

    for (long n : {1L, 2L, 3L, 4L, 5L}) {
        for (long len : {1L, 2L}) {
            auto [b1, b2] = witness_pair(0, len - 1, n);
            double got = kernel(half, b1).probability_of(witness_word(len)) -
                         kernel(half, b2).probability_of(witness_word(len));
            CHECK((n % 2 == 0 ? got > 0.0 : got < 0.0));
            CHECK(std::fabs(std::fabs(got) - lower_bound_exact(half, n, len)) < 1e-10);
        }
    }

    CHECK_THROWS_AS(lower_bound_exact(half, 0, 1), std::domain_error);
    CHECK_THROWS_AS(lower_bound_exact(half, 1, 0), std::domain_error);
}

TEST_CASE("exact lower bound lies inside the sandwich") {
    for (double pv : {0.35, 0.5, 0.7}) {
        Density p(pv);
        for (long n : {2L, 5L, 9L}) {
            SensitivityBounds sb = sensitivity_bounds(p, 0, 0, -n, n);
            double exact = lower_bound_exact(p, n, 1);
            CHECK(sb.lower <= exact * (1.0 + 1e-12));
            CHECK(exact <= sb.upper);
        }
    }
}

TEST_CASE("family sensitivity is zero for identical pairs and exact for witnesses") {
    Density half(0.5);
    BoundaryCondition bc = all_ones_around(0, 0);
    double same = sensitivity_over_family(half, 0, 0, -1, 1, {{bc, bc}});
    CHECK(same == 0.0);

    auto pair = witness_pair(0, 0, 2);
    double via_family = sensitivity_over_family(half, 0, 0, -1, 1, {pair});
    CHECK(std::fabs(via_family - lower_bound_exact(half, 2, 1)) < 1e-10);
}

TEST_CASE("conditional ratio between boundaries stays above the uniform floor") {
    Density p(0.5);
    BoundaryCondition first = all_ones_around(-5, 5);
    BoundaryCondition second;
    second.l = -5;
    second.r = 5;
    second.left_annulus = {1, 1, 0, 0};
    second.right_annulus = {1};

    std::vector<std::uint32_t> events{0u, 1u, 7u};
    double r12 = finite_energy_ratio(p, 1, events, first, second);
    double r21 = finite_energy_ratio(p, 1, events, second, first);
    double floor = std::pow(2.0, -16.0) * std::pow(0.5, 8.0);
    CHECK(r12 > floor);
    CHECK(r21 > floor);
    CHECK(r12 * r21 <= 1.0 + 1e-12);

    CHECK(finite_energy_ratio(p, 1, events, first, first) == 1.0);

    CHECK_THROWS_AS(finite_energy_ratio(p, 1, {2u}, first, second),
                    std::domain_error);
    BoundaryCondition narrow = all_ones_around(0, 1);
    CHECK_THROWS_AS(finite_energy_ratio(p, 1, events, narrow, second),
                    std::domain_error);
}

}
