#pragma once

#include <cqp/linalg.hpp>
#include <cqp/tropical.hpp>

#include <map>
#include <memory>
#include <optional>
#include <utility>

namespace cqp {

struct BoundaryData {
    int i = -1;
    MutSeq seq_to_simple;       // makes E_i simple
    MutSeq dual_seq_to_simple;  // makes E_i★ simple
    Vec eps;
    Vec eps_check;
    Vec eps_star;
    Vec dim_E;
    Vec dim_Estar;
    Triple mu;      // E_i^μ on the mutable part
    Triple tau_mu;  // τ E_i^μ
    Triple tau_inv_mu;  // τ^{-1} E_i^μ
    bool rigid = false;
};

// Boundary invariants of every frozen vertex of one seed. The primal scope skips
// τ, τ^{-1} and the dual boundary, which may be out of search reach on wild quivers.
enum class BoundaryScope { Full, Primal };

class Boundary {
public:
    explicit Boundary(const Seed& s, Budget budget = {}, BoundaryScope scope = BoundaryScope::Full);

    const Seed& seed() const { return seed_; }
    Engine& engine() { return *full_; }
    Engine& mu_engine() { return *mu_; }
    const std::vector<int>& frozen() const { return seed_.frozen(); }
    bool has_dual() const { return scope_ == BoundaryScope::Full; }
    const BoundaryData& data(int i) const { return data_.at(i); }
    int index_of(int frozen_vertex) const;

    // e(E_i^μ, E_j^μ) and hom(E_i^μ, E_j^μ) for frozen i, j.
    Int e_mu(int i, int j) const { return e_mu_.at({i, j}); }
    Int hom_mu(int i, int j) const { return hom_mu_.at({i, j}); }

    Vec restrict_mu(const Vec& v) const;
    Vec extend_mu(const Vec& m) const;  // zero on frozen vertices

private:
    Seed seed_;
    BoundaryScope scope_;
    std::unique_ptr<Engine> full_;
    std::unique_ptr<Engine> mu_;
    std::map<int, BoundaryData> data_;
    std::map<std::pair<int, int>, Int> e_mu_, hom_mu_;
    std::vector<int> mu_index_;  // vertex -> index in mutable part, -1 if frozen
};

// δ̌ of the simple S_i at a seed where E_i is simple: e_i + row i of B.
Vec simple_dcheck(const Seed& t, int i);
// The same for the opposite seed, used where E_i★ is simple: e_i - row i of B.
Vec source_dcheck(const Seed& t, int i);
inline bool is_sink_for_mutables(const Seed& t, int i) {
    for (int u : t.mutable_vertices())
        if (t.b(u, i) < 0) return false;
    return true;
}
inline bool is_source_for_mutables(const Seed& t, int i) {
    for (int u : t.mutable_vertices())
        if (t.b(u, i) > 0) return false;
    return true;
}

struct CartanData {
    std::vector<int> I;
    std::vector<Vec> C;
    std::vector<Vec> Cstar;        // c★_{ij} = -e(E_j★, E_i)
    std::vector<Vec> Cstar_check;  // č★_{ij} = -ě(E_i★, E_j); the transpose of Cstar
    bool has_star = false;
};

CartanData cartan_matrix(Boundary& b, const std::vector<int>& I, bool with_star = true);
// Cartan matrix of a simply laced diagram given as an edge list on 0..n-1.
std::vector<Vec> diagram_cartan(int n, const std::vector<std::pair<int, int>>& edges);

struct WeightGrading {
    std::vector<int> I;
    std::vector<QVec> rows;   // wt_i, indexed like I
    std::vector<QVec> extra;  // complementary functionals when C is singular
    int nullity = 0;          // dimension of the homogeneous solution space
    bool span_condition = false;  // span(ε̌_i) meets the row space of B_Δ only in 0
    bool integral = false;
    bool closed_form = false;  // rows come from the τ-exact closed form
};

// wt·B_Δᵀ = 0 and wt_i(ε̌_j) = c_ij, solved exactly; the τ-exact closed form is
// used when pairs cover I. Throws UnsupportedError when no adapted grading exists.
WeightGrading compatible_grading(Boundary& b, const CartanData& c);
Q evaluate(const QVec& wt, const Vec& delta);
std::optional<Vec> integral_row(const WeightGrading& g, int k);

// τ-exact pairs (i, ī) with i in I and ī any frozen vertex.
std::vector<std::pair<int, int>> tau_exact_pairs(Boundary& b, const std::vector<int>& I);

}  // namespace cqp
