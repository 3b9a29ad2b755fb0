#include "fixtures.hpp"

#include <cqp/boundary.hpp>
#include <cqp/catalog.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace cqp;

namespace {

// Connected components of the Cartan graph, each tagged with whether it is an
// affine cycle Ã_{m-1} (Ã_1 being the double edge).
std::multiset<int> affine_cycle_sizes(const std::vector<Vec>& C) {
    int k = static_cast<int>(C.size());
    std::vector<int> comp(k, -1);
    std::multiset<int> out;
    for (int s = 0; s < k; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members{s};
        comp[s] = s;
        for (std::size_t t = 0; t < members.size(); ++t)
            for (int y = 0; y < k; ++y)
                if (C[members[t]][y] != 0 && comp[y] < 0) {
                    comp[y] = s;
                    members.push_back(y);
                }
        int m = static_cast<int>(members.size());
        bool cycle = true;
        for (int x : members) {
            if (C[x][x] != 2) cycle = false;
            Int off = 0;
            int nonzero = 0;
            for (int y : members)
                if (y != x && C[x][y] != 0) {
                    off += C[x][y];
                    ++nonzero;
                }
            if (off != -2 || nonzero != (m == 2 ? 1 : 2)) cycle = false;
        }
        out.insert(cycle ? m : -m);
    }
    return out;
}

std::vector<Vec> matmul(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> r(a.size(), Vec(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t t = 0; t < b.size(); ++t)
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][t] * b[t][j];
    return r;
}

void check_omega(int n, const std::vector<std::pair<int, int>>& arrows, BoundaryScope scope = BoundaryScope::Full) {
    auto os = omega_seed(n, arrows);
    const Seed& s = os.cs.seed;
    // Euler matrix E = I - A, written out independently of the constructor
    std::vector<Vec> E(n, Vec(n, 0)), Et(n, Vec(n, 0)), sym(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) E[i][i] = 1;
    for (auto [a, b] : arrows) E[a][b] -= 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Et[i][j] = E[j][i];
            sym[i][j] = E[i][j] + E[j][i];
        }
    std::vector<Vec> Bmut, Echeck;
    for (int u : s.mutable_vertices()) Bmut.push_back(s.row(u));
    for (int i = 0; i < n; ++i) {
        Vec row(2 * n, 0);
        for (int j = 0; j < n; ++j) row[j] = Et[i][j];
        Echeck.push_back(row);
    }
    CHECK(matmul(Bmut, os.W) == std::vector<Vec>(n, Vec(n, 0)));
    CHECK(matmul(Echeck, os.W) == sym);

    // the boundary module reproduces (O, Eᵀ) and (Eᵀ, O)
    Boundary b(s, {}, scope);
    for (int i = 0; i < n; ++i) {
        Vec eps(2 * n, 0);
        for (int j = 0; j < n; ++j) eps[n + j] = Et[i][j];
        CHECK(b.data(n + i).eps == eps);
        CHECK(b.data(n + i).eps_check == Echeck[i]);
    }
    CHECK(cartan_matrix(b, b.frozen(), false).C == sym);
}

}  // namespace

TEST_CASE("AR quivers have one vertex per positive root") {
    for (auto name : {"A1", "A3", "A5", "D4", "D5", "E6", "E7"}) {
        auto q = parse_dynkin(name);
        auto ar = knit_ar_quiver(q);
        CHECK(static_cast<int>(ar.size()) == q.positive_roots());
        std::set<Vec> dims;
        for (const auto& v : ar) dims.insert(v.dim);
        CHECK(dims.size() == ar.size());
    }
    CHECK_THROWS_AS(parse_dynkin("D3"), UsageError);
    CHECK_THROWS_AS(parse_dynkin("X2"), UsageError);
}

TEST_CASE("unipotent A2 is the hand-entered seed") {
    auto cs = catalog_lookup("unipotent:A2");
    CHECK(cs.seed == fx::U2());
    CHECK(cs.I == std::vector<int>{1, 2});
}

TEST_CASE("Cartan types of unipotent seeds") {
    for (auto name : {"A2", "A3", "D4"}) {
        auto q = parse_dynkin(name);
        auto cs = unipotent_seed(q);
        Boundary b(cs.seed);
        auto c = cartan_matrix(b, cs.I, false);
        // frozen vertices are P_1..P_n in order
        CHECK(c.C == diagram_cartan(q.rank, q.edges()));
    }
}

TEST_CASE("affine Cartan types") {
    {
        auto cs = catalog_lookup("grassmannian:2x3");
        Boundary b(cs.seed);
        CHECK(affine_cycle_sizes(cartan_matrix(b, cs.I, false).C) == std::multiset<int>{5});
    }
    {
        auto cs = catalog_lookup("canonical:2,3,6");
        Boundary b(cs.seed);
        CHECK(affine_cycle_sizes(cartan_matrix(b, cs.I, false).C) == std::multiset<int>{2, 3, 6});
    }
    {
        auto cs = catalog_lookup("canonical:2");
        Boundary b(cs.seed);
        CHECK(cartan_matrix(b, cs.I, false).C == std::vector<Vec>{{2, -2}, {-2, 2}});
    }
}

TEST_CASE("tau-exact pairs of the Grassmannian follow m <-> m + l") {
    for (auto [k, l] : {std::pair{2, 3}, std::pair{2, 2}}) {
        auto cs = grassmannian_seed(k, l);
        Boundary b(cs.seed);
        auto pairs = tau_exact_pairs(b, cs.I);
        int n = k + l;
        std::vector<std::pair<int, int>> want;
        for (int m = 0; m < n; ++m) want.emplace_back(cs.I[m], cs.I[(m + l) % n]);
        std::sort(pairs.begin(), pairs.end());
        std::sort(want.begin(), want.end());
        CHECK(pairs == want);
    }
}

TEST_CASE("tau-exact pairs of base affine spaces pair i* with i-bar") {
    for (auto name : {"A2", "A3", "D4"}) {
        auto q = parse_dynkin(name);
        auto cs = base_affine_seed(q);
        Boundary b(cs.seed);
        auto pairs = tau_exact_pairs(b, cs.I);
        const auto& fr = cs.seed.frozen();
        int r = q.rank;
        // frozen order: P_1..P_n, then 1̄..n̄
        auto inv = q.involution();
        std::vector<std::pair<int, int>> want;
        for (int i = 0; i < r; ++i) want.emplace_back(fr[inv[i]], fr[r + i]);
        std::sort(pairs.begin(), pairs.end());
        std::sort(want.begin(), want.end());
        CHECK(pairs == want);
        CHECK(cs.I == std::vector<int>(fr.begin(), fr.begin() + r));
        auto c = cartan_matrix(b, cs.I);
        CHECK(c.C == diagram_cartan(r, q.edges()));
        auto g = compatible_grading(b, c);
        CHECK(g.closed_form);
        CHECK(g.integral);
    }
}

TEST_CASE("Grassmannian grading exists without the span condition") {
    auto cs = grassmannian_seed(2, 3);
    Boundary b(cs.seed);
    auto c = cartan_matrix(b, cs.I);
    auto g = compatible_grading(b, c);
    CHECK_FALSE(g.span_condition);
    CHECK(g.closed_form);
    CHECK(g.integral);
}

TEST_CASE("simple canonical models satisfy the grading identities") {
    check_omega(2, {{0, 1}});
    check_omega(3, {{0, 1}, {1, 2}});
    auto a2 = omega_seed(2, {{0, 1}});
    CHECK(a2.cs.seed.row(0) == Vec{0, 1, -1, 0});
    CHECK(a2.cs.seed.row(1) == Vec{-1, 0, 1, -1});
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 4;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<int, int>> arrows;
        std::uniform_int_distribution<int> mult(0, 3);
        for (int a = 0; a < n; ++a)
            for (int c = a + 1; c < n; ++c) {
                int m = mult(rng);
                m = m == 3 ? 2 : m == 2 ? 0 : m;
                for (int t = 0; t < m; ++t) arrows.emplace_back(perm[a], perm[c]);
            }
        CAPTURE(trial);
        // τ of a regular simple in a wild quiver can be far out of search reach
        check_omega(n, arrows, BoundaryScope::Primal);
    }
    CHECK_THROWS_AS(omega_seed(2, {{0, 1}, {1, 0}}), UsageError);
}

TEST_CASE("catalog lookup errors") {
    CHECK_THROWS_AS(catalog_lookup("grassmannian:23"), UsageError);
    CHECK_THROWS_AS(catalog_lookup("no-such-family:1"), UsageError);
    CHECK_THROWS_AS(catalog_lookup("/nonexistent.json"), UsageError);
    CHECK_THROWS_AS(catalog_lookup("canonical:1"), UsageError);
    CHECK(catalog_lookup("omega:A3").seed.n() == 6);
}
