#include "fixtures.hpp"

#include <cqp/boundary.hpp>

#include <doctest.h>

using namespace cqp;

TEST_CASE("boundary data of U2") {
    Boundary b(fx::U2());
    const auto& d2 = b.data(1);
    CHECK(d2.seq_to_simple == MutSeq{0});
    CHECK(d2.eps == Vec{0, 1, -1});
    CHECK(d2.eps_check == Vec{1, 0, 0});
    CHECK(d2.dim_E == Vec{1, 1, 0});
    const auto& d3 = b.data(2);
    CHECK(d3.seq_to_simple.empty());
    CHECK(d3.eps == Vec{0, 0, 1});
    CHECK(d3.dim_E == Vec{0, 0, 1});
    CHECK(d3.eps_check == Vec{-1, 0, 1});
    // dim E_i transported to the simple seed is the unit vector
    for (int i : {1, 2})
        CHECK(transport(b.seed(), b.data(i).dim_E, b.data(i).seq_to_simple, Rule::APoint) == unit(3, i));
    // ε_i★ is the weight of the simple at a source: vertex 1 is already a source
    CHECK(d2.dual_seq_to_simple.empty());
    CHECK(d2.eps_star == Vec{-1, 1, 0});
}

TEST_CASE("isolated frozen vertex") {
    Seed s(2, {1}, {{0, 0}, {0, 0}});
    Boundary b(s);
    CHECK(b.data(1).eps == Vec{0, 1});
    CHECK(b.data(1).eps_check == Vec{0, 1});
    CHECK(b.data(1).dim_E == Vec{0, 1});
    auto c = cartan_matrix(b, b.frozen());
    CHECK(c.C == std::vector<Vec>{{2}});
}

TEST_CASE("Cartan data and grading of U2") {
    Boundary b(fx::U2());
    auto c = cartan_matrix(b, b.frozen());
    CHECK(c.C == std::vector<Vec>{{2, -1}, {-1, 2}});
    for (std::size_t x = 0; x < c.I.size(); ++x)
        for (std::size_t y = 0; y < c.I.size(); ++y) CHECK(c.Cstar[x][y] == c.Cstar_check[y][x]);
    auto g = compatible_grading(b, c);
    CHECK(g.nullity == 0);
    CHECK(g.integral);
    CHECK(*integral_row(g, 0) == Vec{2, 1, 1});
    CHECK(*integral_row(g, 1) == Vec{-1, 1, 1});
    CHECK(g.extra.empty());
    CHECK(tau_exact_pairs(b, b.frozen()).empty());
}

TEST_CASE("boundary pairings agree with the weight formula") {
    Boundary b(fx::U2());
    for (int i : b.frozen())
        for (int j : b.frozen()) {
            if (i == j) continue;
            CHECK(b.e_mu(j, i) == neg(b.data(i).eps[j]));
            CHECK(b.hom_mu(i, j) == (i == j));
        }
}
