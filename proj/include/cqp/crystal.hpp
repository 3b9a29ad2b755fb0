#pragma once

#include <cqp/boundary.hpp>

#include <memory>
#include <optional>
#include <string>

namespace cqp {

enum class CrystalMode { UpperSeminormal, Seminormal };

struct KashiwaraDatum {
    std::vector<int> word;
    Vec values;
    Vec end;  // r^max of the whole word applied to the input
};

// Crystal structure on the μ-supported δ-vectors of one seed, indexed by the frozen
// subset I. All vectors are δ-vectors at this seed unless a name says otherwise.
// Operators return nullopt for the auxiliary element 0.
class Crystal {
public:
    Crystal(const Seed& s, std::vector<int> I, Budget budget = {});
    Crystal(Crystal&&) = default;

    const Seed& seed() const { return b_->seed(); }
    const std::vector<int>& I() const { return I_; }
    int n() const { return seed().n(); }
    CrystalMode mode() const { return mode_; }
    const CartanData& cartan() const { return cartan_; }
    const WeightGrading& grading() const { return grading_; }
    Boundary& boundary() const { return *b_; }
    // ī with τ^{-1}E_i = E★_ī, in seminormal mode.
    std::optional<int> partner(int i) const;
    int index_of(int i) const;  // position of i in I

    bool is_mu_supported(const Vec& d) const;

    Int rho(const Vec& d, int i) const;
    std::optional<Vec> r(const Vec& d, int i) const;
    std::optional<Vec> l(const Vec& d, int i) const;
    Q wt(const Vec& d, int i) const;
    std::vector<Q> wt(const Vec& d) const;
    // ρ + wt_i in upper mode; ρ★ at the partner in seminormal mode.
    Q lambda(const Vec& d, int i) const;

    // Dual structure, computed on δ̌-vectors along the paths where E_i★ is simple.
    Vec dcheck(const Vec& d) const;
    Vec delta_of_dcheck(const Vec& dc) const;
    Int rho_star(const Vec& d, int i) const;
    std::optional<Vec> r_star(const Vec& d, int i) const;
    std::optional<Vec> l_star(const Vec& d, int i) const;

    Vec r_max(const Vec& d, int i) const;
    KashiwaraDatum kashiwara_data(const Vec& d, const std::vector<int>& word) const;
    // ř^max_i on a whole presentation: at the seed where E_i is simple, add ρ copies of
    // the simple presentation (e_i, ε̌, e_i), ρ read from the δ-part there.
    Triple r_max_dual(const Triple& t, int i) const;
    // η̌_k = ř^max_{i_1} ⋯ ř^max_{i_{k-1}} (ε̌_{i_k}) starting from the boundary data.
    std::vector<Triple> dual_raising_chain(const std::vector<int>& word) const;
    // e(δ, η) via the full engine; both arguments are δ-vectors.
    Int e_pair(const Vec& d, const Vec& eta) const;

    // s_i(δ) with n = wt_i(δ), only in seminormal mode.
    Vec weyl(const Vec& d, int i) const;

    // Same seed and I with the grading replaced, e.g. to feed a deliberately wrong one
    // to the axiom checker.
    Crystal with_grading(std::vector<QVec> rows) const;

    // Same structure seen from μ_u(seed): same I and partners, grading transported.
    Crystal mutated(int u) const;

private:
    struct Paths {
        Path to_simple;       // E_i simple at the end, i a sink for the mutable part
        Path to_dual_simple;  // E_i★ simple at the end, i a source
    };
    Crystal(std::unique_ptr<Boundary> b, std::vector<int> I, std::optional<std::vector<QVec>> grading);
    void init(std::optional<std::vector<QVec>> grading);
    const Paths& paths(int v) const { return paths_.at(v); }

    std::unique_ptr<Boundary> b_;
    std::vector<int> I_;
    CartanData cartan_;
    WeightGrading grading_;
    CrystalMode mode_ = CrystalMode::UpperSeminormal;
    std::map<int, int> partner_;
    std::map<int, Paths> paths_;  // every frozen vertex
};

// Transport of a grading row along μ_u: the functional stays the same on points.
QVec mutate_grading(const Seed& s, const QVec& w, int u);

enum class AutomorphismKind { Direct, Opposite, None };
std::string to_string(AutomorphismKind k);
// Compares π·μ_seq(Δ) with Δ and Δ^opp after deleting frozen arrows; perm is
// indexed like Seed::permuted.
AutomorphismKind cluster_automorphism_check(const Seed& s, const MutSeq& seq, const std::vector<int>& perm);

// Generalized Kashiwara map of an opposite automorphism: κ(δ)^∨ = π μ_seq(δ).
class KashiwaraMap {
public:
    KashiwaraMap(const Crystal& c, MutSeq seq, std::vector<int> perm);
    Vec operator()(const Vec& d) const;
    int pi(int v) const { return perm_.at(v); }

private:
    const Crystal& c_;
    Path path_;
    std::vector<int> perm_;
};

struct DominanceResult {
    bool less = false;
    bool ambiguous = false;  // mutable rows of B are rank deficient
};
// d1 ≺ d2: d1 = d2 + γB with γ a nonzero dimension vector supported on the mutable part.
DominanceResult dominance_lt(const Seed& s, const Vec& d1, const Vec& d2);

enum class RhoOrder { StrictlyBelow, Below, Incomparable };
std::string to_string(RhoOrder o);
// How x compares to y: ⋘_ρ, ⪯_ρ or neither.
RhoOrder rho_order(const Crystal& c, const Vec& x, const Vec& y);

}  // namespace cqp
