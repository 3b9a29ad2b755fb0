#pragma once

#include <cqp/crystal.hpp>

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <string>

namespace cqp {

// Every integer vector with coordinates in [lo, hi], in lexicographic order.
void for_each_in_box(int n, Int lo, Int hi, const std::function<void(const Vec&)>& f);
// μ-supported points of the box, enumerated in parallel over `jobs` threads.
std::vector<Vec> mu_supported_points(const Crystal& c, Int lo, Int hi, int jobs = 1);
// μ-supported points of the box with the given weight, solving the weight equations
// for pivot coordinates instead of scanning the whole box.
std::vector<Vec> weight_slice(const Crystal& c, const std::vector<Q>& weight, Int lo, Int hi, int jobs = 1);

struct Violation {
    std::string kind;  // "A1", "A2", "upper-seminormal", "seminormal", "mutation", "dual-A1"
    Vec point;
    int i = -1;
    std::string detail;
};

struct AxiomOptions {
    bool mutation = true;  // compare against every adjacent seed
    bool lowering_chains = true;  // λ_i against the l-chain length, seminormal mode only
    bool dual = false;  // A1 and chain lengths for r★/l★
    int chain_limit = 64;
    int jobs = 1;
};

struct AxiomReport {
    std::size_t points = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

AxiomReport verify_axioms(const Crystal& c, const std::vector<Vec>& points, const AxiomOptions& opt = {});

// s_i² = id, s_i(δ) μ-supported and wt(s_i δ) = wt(δ) - wt_i(δ)·α_i for every i in I.
// Needs the seminormal structure.
AxiomReport verify_weyl(const Crystal& c, const std::vector<Vec>& points, int jobs = 1);

struct CrystalNode {
    Vec delta;
    Vec rho, rho_star;  // rho_star empty unless computed
    std::vector<Q> lambda, wt;
    int component = -1;
};

struct CrystalEdge {
    int source, color, target;  // r_color(source) = target, color indexes I
};

struct CrystalGraph {
    std::vector<int> I;
    std::vector<CrystalNode> nodes;
    std::vector<CrystalEdge> edges;
    std::vector<int> highest_weight;  // nodes with every ρ_i = 0
    int components = 0;
};

struct GraphOptions {
    Int lo = -2, hi = 2;
    std::optional<std::vector<Q>> weight;  // keep only this weight
    bool rho_star = false;
    int jobs = 1;
};

CrystalGraph crystal_graph(const Crystal& c, const GraphOptions& opt = {});

// Connected component of x under r_i and l_i, without any box.
std::vector<Vec> component_of(const Crystal& c, const Vec& x, std::size_t limit = 100000);

nlohmann::json to_json(const CrystalGraph& g);
// Edge color = position of i in I, node label = δ and wt.
std::string to_dot(const CrystalGraph& g);

}  // namespace cqp
