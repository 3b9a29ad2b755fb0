#pragma once

#include <cqp/crystal.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>

namespace cqp {

using BigInt = boost::multiprecision::cpp_int;

// Sparse Laurent polynomial in n variables with integer coefficients.
// Terms are kept in lexicographic exponent order; no zero coefficient is stored.
class LaurentPoly {
public:
    using Terms = std::map<Vec, BigInt>;

    explicit LaurentPoly(int n = 0) : n_(n) {}
    static LaurentPoly constant(int n, const BigInt& c);
    static LaurentPoly monomial(Vec exp, const BigInt& c = 1);
    static LaurentPoly variable(int n, int k);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    BigInt coefficient(const Vec& exp) const;
    void add_term(const Vec& exp, const BigInt& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const BigInt& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const BigInt& c) { return a *= c; }
    friend LaurentPoly operator*(const BigInt& c, LaurentPoly a) { return a *= c; }
    bool operator==(const LaurentPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    LaurentPoly pow(unsigned k) const;
    LaurentPoly shifted(const Vec& exp) const;  // multiplied by x^exp
    LaurentPoly partial(int k) const;
    // Exponents of the given variables are all >= 0.
    bool polynomial_in(const std::vector<int>& vars) const;
    bool nonnegative() const;

    // Graded lexicographic, highest total degree first.
    std::vector<std::pair<Vec, BigInt>> sorted_terms() const;
    // 1-based variable names, e.g. "x1^-1*x3 + x1^-1*x2".
    std::string to_string() const;

private:
    int n_;
    Terms terms_;
};

// f / g; InvariantError unless g divides f in the Laurent ring.
LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g);
// f evaluated at y_w = images[w]. Negative powers of non-monomial images are cleared by
// exact division, so the result must be Laurent.
LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

// Tropicalization: max over terms x^e of e·d.
Int trop_x(const LaurentPoly& f, const Vec& d);

nlohmann::json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const nlohmann::json& j, int n);

// Current cluster of a seed reached from an initial one, each variable a Laurent
// polynomial in the initial cluster.
class ClusterState {
public:
    explicit ClusterState(Seed initial);

    const Seed& initial() const { return initial_; }
    const Seed& seed() const { return seed_; }
    const std::vector<LaurentPoly>& vars() const { return vars_; }
    const LaurentPoly& var(int k) const { return vars_.at(k); }
    const MutSeq& history() const { return history_; }

    // Exchange relation x_u x_u' = Π_{v→u} x_v + Π_{u→w} x_w. Throws InvariantError
    // when the division is not exact or x_u' is not polynomial in frozen variables.
    ClusterState mutate(int u) const;
    ClusterState mutate(const MutSeq& seq) const;

private:
    Seed initial_, seed_;
    std::vector<LaurentPoly> vars_;
    MutSeq history_;
};

inline ClusterState mutate_state(const ClusterState& s, int u) { return s.mutate(u); }

// x^{-δ}F̌(ŷ) for negative-reachable δ, as the cluster monomial at the seed where δ
// becomes nonpositive. Caches the states it visits; not thread-safe.
class GenericCharacters {
public:
    explicit GenericCharacters(const Seed& s, Budget budget = {});
    const Seed& seed() const { return base_.seed(); }
    const ClusterState& state(const MutSeq& seq);
    // UnsupportedError when δ is not reachable within the budget.
    LaurentPoly operator()(const Vec& delta);

private:
    Engine engine_;
    ClusterState base_;
    std::map<MutSeq, ClusterState> states_;
};

// δ-vectors of all cluster monomials with exponents in [0, max_exponent], frozen
// variables included, over the clusters within `depth` mutations of s.
std::vector<Vec> cluster_monomial_weights(const Seed& s, int max_exponent, int depth);

struct LaurentSweep {
    std::size_t clusters = 0;
    std::size_t variables = 0;  // distinct cluster variables, initial ones included
    bool positive = true;
    std::string detail;  // first offending variable
};
// Every cluster variable within `depth` mutations, checked for nonnegative coefficients.
// A non-Laurent exchange surfaces as InvariantError from the division.
LaurentSweep laurent_sweep(const Seed& s, int depth);

// A derivation of the Laurent ring of the initial cluster, stored by the images
// of the initial variables and extended by the chain rule.
class Derivation {
public:
    explicit Derivation(std::vector<LaurentPoly> images);
    static Derivation zero(int n);

    int n() const { return static_cast<int>(images_.size()); }
    const std::vector<LaurentPoly>& images() const { return images_; }
    const LaurentPoly& image(int k) const { return images_.at(k); }
    bool is_zero() const;

    LaurentPoly operator()(const LaurentPoly& f) const;  // Σ_k ∂_k f · D(x_k)
    bool operator==(const Derivation& o) const { return images_ == o.images_; }

private:
    std::vector<LaurentPoly> images_;
};

inline LaurentPoly apply_derivation(const Derivation& d, const LaurentPoly& f) { return d(f); }
Derivation operator-(const Derivation& a, const Derivation& b);
Derivation bracket(const Derivation& a, const Derivation& b);  // [a, b] = ab - ba
// (ad a)^k (b)
Derivation ad_power(const Derivation& a, const Derivation& b, int k);

// The derivation acting at s.mutate(seq) by x_i ↦ Π x_u^{b} over arrows u→i (or i→u
// when `outgoing`), zero on the other variables there, rewritten in the cluster of s.
Derivation derivation_at(const Seed& s, const MutSeq& seq, int i, bool outgoing);

// R_i, R_i★, L_i = R★_ī and H_i of a crystal structure, all in the initial cluster of
// its seed.
class LiftedStructure {
public:
    explicit LiftedStructure(const Crystal& c);

    const Crystal& crystal() const { return c_; }
    const ClusterState& base() const { return base_; }
    GenericCharacters& characters() { return chars_; }

    const Derivation& R(int i) const { return R_.at(i); }
    const Derivation& R_star(int i) const { return Rs_.at(i); }
    const Derivation& L(int i) const;  // seminormal mode only
    // H_i(x_k) = wt_i(-e_k) x_k; UnsupportedError for a rational grading.
    Derivation H(int i) const;

private:
    const Crystal& c_;
    ClusterState base_;
    GenericCharacters chars_;
    std::map<int, Derivation> R_, Rs_;
};

struct SerreCheck {
    std::string relation;  // e.g. "(ad R_2)^2(R_3) = 0"
    bool holds = false;
    std::string detail;
};

// (ad R_i)^{a+1}(R_j) = 0 with nonvanishing at power a on x_j, the mixed R/R★
// relations in both directions, and in seminormal mode [R_i,L_i] = H_i and [R_i,L_j] = 0.
std::vector<SerreCheck> check_serre(const LiftedStructure& ls, int i, int j);

struct BiperfectReport {
    Vec delta;
    int i = -1;
    bool star = false;
    Int rho = 0;
    bool leading_ok = false;
    std::vector<Vec> remainder_degrees;  // η with the remainder decomposed into C_gen(η)
    std::vector<BigInt> remainder_coefficients;
    bool ok = false;
    std::string detail;
};

// R_i(C(δ)) = ρ_i(δ)C(r_i δ) + Σ c_η C(η) with ρ_i(η) < ρ_i(δ) - 1, or the starred
// version with R★, ρ★ and r★.
BiperfectReport check_bk_biperfect(LiftedStructure& ls, const Vec& delta, int i, bool star = false);

}  // namespace cqp
