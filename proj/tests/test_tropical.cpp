#include "fixtures.hpp"

#include <cqp/tropical.hpp>

#include <doctest.h>

#include <random>

using namespace cqp;

TEST_CASE("Fock-Goncharov transport on U2") {
    Seed u = fx::U2();
    CHECK(mutate_delta(u, {-1, 0, 0}, 0) == Vec{1, -1, 0});
    CHECK(mutate_delta(u, {1, 0, -1}, 0) == Vec{-1, 0, 0});
    CHECK(mutate_delta(u, {0, 0, 0}, 0) == Vec{0, 0, 0});
    CHECK_THROWS_AS(mutate_delta(u, {0, 0, 0}, 2), UsageError);
}

TEST_CASE("triple transport on U2") {
    Seed u = fx::U2();
    Triple t = negative_triple({-1, 0, 0});
    Triple m = mutate_triple(u, t, 0);
    CHECK(m.delta == Vec{1, -1, 0});
    CHECK(m.dim == Vec{1, 0, 0});
    CHECK(consistent(u.mutate(0), m));
    CHECK(mutate_triple(u.mutate(0), m, 0) == t);
    Triple z = negative_triple({0, 0, 0});
    CHECK(mutate_triple(u, z, 0) == z);
}

TEST_CASE("A-point transport on U2") {
    Seed u = fx::U2();
    CHECK(mutate_apoint(u, {1, 1, 0}, 0) == Vec{0, 1, 0});
    CHECK(mutate_apoint(u, {0, 0, 0}, 0) == Vec{0, 0, 0});
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int k = 0; k < 100; ++k) {
        Vec a{c(rng), c(rng), c(rng)};
        CHECK(mutate_apoint(u.mutate(0), mutate_apoint(u, a, 0), 0) == a);
        CHECK(mutate_delta(u.mutate(0), mutate_delta(u, a, 0), 0) == a);
        CHECK(mutate_dcheck(u.mutate(0), mutate_dcheck(u, a, 0), 0) == a);
    }
}

TEST_CASE("tau on a negative presentation") {
    Triple t = negative_triple({-1, 0, 0});
    CHECK(tau_delta(t) == Vec{1, 0, 0});
    CHECK(tau_delta(negative_triple({0, 0, 0})) == Vec{0, 0, 0});
}

TEST_CASE("negative sequences") {
    Engine eng(fx::U2());
    CHECK(eng.find_negative_seq(0, {-1, 0, 0}).empty());
    CHECK(eng.find_negative_seq(0, {1, 0, -1}) == MutSeq{0});
    Engine starved(fx::U2(), Budget{64, 0});
    CHECK_THROWS_AS(starved.find_negative_seq(0, {1, 0, -1}), ReachabilityError);
    // not reachable: frozen coordinate stays positive
    Engine small(fx::U2(), Budget{8, 1000});
    CHECK_FALSE(small.try_negative_seq(0, {0, 1, 0}).has_value());
}

TEST_CASE("pairings on small seeds") {
    Seed point(1, {}, {{0}});
    Engine p(point);
    Triple negative = negative_triple({-1});
    Triple simple = p.complete(0, {1});
    CHECK(simple.dim == Vec{1});
    CHECK(p.e_pair(0, negative, simple) == 1);
    CHECK(p.e_pair(0, negative, negative) == 0);
    CHECK(p.hom_pair(0, negative, negative) == 0);

    Engine eng(fx::U2());
    Triple M = eng.complete(0, {1, 0, -1});
    // E_2 of U2: weight (0,1,-1), dimension (1,1,0)
    Triple E2{{0, 1, -1}, {1, 0, 0}, {1, 1, 0}};
    CHECK(consistent(fx::U2(), E2));
    auto pv = eng.pair(0, M, E2);
    CHECK(pv.hom == 1);
    CHECK(pv.e == 0);
    Triple E3{{0, 0, 1}, {-1, 0, 1}, {0, 0, 1}};
    CHECK(eng.e_pair(0, M, E3) == 1);
    CHECK(eng.trop_f_dual(0, E3, {1, 0, -1}) == 1);
    CHECK(eng.trop_f(0, E3, {0, 0, 0}) == 0);
}

namespace {

Seed random_seed(std::mt19937& rng, int n, std::vector<int> frozen) {
    std::uniform_int_distribution<int> ent(-1, 1);
    std::vector<Vec> B(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            B[i][j] = ent(rng);
            B[j][i] = -B[i][j];
        }
    return Seed(n, frozen, B);
}

}  // namespace

TEST_CASE("hom - e = delta . dim on random reachable pairs") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(-2, 2);
    Seed s = random_seed(rng, 3, {});
    Engine eng(s, Budget{24, 20000});
    int done = 0;
    for (int trial = 0; trial < 400 && done < 100; ++trial) {
        Vec a{c(rng), c(rng), c(rng)}, b{c(rng), c(rng), c(rng)};
        if (!eng.negative_reachable(0, a) || !eng.negative_reachable(0, b)) continue;
        Triple A = eng.complete(0, a), B = eng.complete(0, b);
        CHECK(consistent(s, A));
        auto pv = eng.pair(0, A, B);
        CHECK(pv.hom - pv.e == dot(a, B.dim));
        CHECK(eng.trop_f(0, B, a) - eng.trop_f_dual(0, B, a) == dot(a, B.dim));
        ++done;
    }
    CHECK(done >= 50);
}

TEST_CASE("pairings are path independent and reachables are rigid") {
    Seed A3(6, {3, 4, 5},
            {{0, 1, 0, -1, 0, 0}, {-1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
             {0, 0, 0, 0, 0, 0}});
    for (const Seed& s : {fx::U2(), A3}) {
        Engine eng(s);
        std::vector<Vec> pts;
        int n = s.n();
        Vec v(n, -2);
        // all vectors in [-2,2]^n with at most two nonzero coordinates keep the sweep short
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int a = -2; a <= 2; ++a)
                    for (int b = -2; b <= 2; ++b) {
                        Vec d(n, 0);
                        d[i] = a;
                        d[j] = (i == j) ? a : b;
                        if (eng.negative_reachable(0, d)) pts.push_back(d);
                    }
        REQUIRE(!pts.empty());
        for (const Vec& a : pts) {
            Triple A = eng.complete(0, a);
            CHECK(eng.e_pair(0, A, A) == 0);
        }
        for (std::size_t x = 0; x < pts.size(); x += 3)
            for (std::size_t y = 0; y < pts.size(); y += 5) {
                Triple A = eng.complete(0, pts[x]), B = eng.complete(0, pts[y]);
                MutSeq pa = eng.find_negative_seq(0, pts[x]);
                MutSeq pb = eng.find_negative_seq(0, pts[y]);
                auto v1 = eng.pair_along(0, A, B, pa, true);
                auto v2 = eng.pair_along(0, A, B, pb, false);
                CHECK(v1.e == v2.e);
                CHECK(v1.hom == v2.hom);
                // a detour through a mutable vertex and back changes nothing
                for (int u : s.mutable_vertices()) {
                    MutSeq detour{u, u};
                    detour.insert(detour.end(), pa.begin(), pa.end());
                    auto v3 = eng.pair_along(0, A, B, detour, true);
                    CHECK(v3.e == v1.e);
                    CHECK(v3.hom == v1.hom);
                }
            }
    }
}
