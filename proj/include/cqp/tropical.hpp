#pragma once

#include <cqp/seed.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <optional>

namespace cqp {

// Weight, injective weight and dimension vector of a general presentation.
struct Triple {
    Vec delta;
    Vec dcheck;
    Vec dim;
    bool operator==(const Triple&) const = default;
};

// Fock-Goncharov rule for δ-vectors.
Vec mutate_delta(const Seed& s, const Vec& d, int u);
// The same rule for injective weights (it is the δ rule of the opposite quiver).
Vec mutate_dcheck(const Seed& s, const Vec& d, int u);
// Tropicalized exchange relation for A-points.
Vec mutate_apoint(const Seed& s, const Vec& a, int u);
Triple mutate_triple(const Seed& s, const Triple& t, int u);

enum class Rule { Delta, Dcheck, APoint };
// Apply `rule` along `seq` starting at seed `s`.
Vec transport(const Seed& s, Vec v, const MutSeq& seq, Rule rule);
Triple transport(const Seed& s, Triple t, const MutSeq& seq);
// Undo a transport: `v` lives at s.mutate(seq); returns the vector at s.
Vec transport_back(const Seed& s, Vec v, const MutSeq& seq, Rule rule);
Triple transport_back(const Seed& s, Triple t, const MutSeq& seq);

// A fixed mutation sequence with its intermediate seeds, for repeated transports.
class Path {
public:
    Path() = default;
    Path(const Seed& start, MutSeq seq);
    const MutSeq& seq() const { return seq_; }
    const Seed& start() const { return seeds_.front(); }
    const Seed& end() const { return seeds_.back(); }
    Vec forward(Vec v, Rule rule) const;
    Vec backward(Vec v, Rule rule) const;

private:
    MutSeq seq_;
    std::vector<Seed> seeds_;  // seeds_[k] is the seed before the k-th mutation
};

// δ̌ = δ + dim·B contracted against the full matrix.
Vec dcheck_of(const Seed& s, const Vec& delta, const Vec& dim);
// Checks the relation; with frozen-supported dim only mutable coordinates are compared.
bool consistent(const Seed& s, const Triple& t);
// -δ̌. Applying Nakayama to a minimal presentation gives δ̌(τM) = -δ(M), so this
// is the weight of τ^{-1}M; Boundary relies on that reading.
inline Vec tau_delta(const Triple& t) { return -t.dcheck; }
inline bool nonpositive(const Vec& v) {
    for (Int x : v)
        if (x > 0) return false;
    return true;
}
inline Triple negative_triple(const Vec& d) { return {d, d, Vec(d.size(), 0)}; }

struct Budget {
    int max_depth = 64;
    std::size_t max_states = 400000;
};

struct PairValues {
    Int e = 0;
    Int hom = 0;
    MutSeq path;
};

// Memoized reachability and pairing engine over one exchange graph.
class Engine {
public:
    explicit Engine(Seed root, Budget budget = {});
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    SeedGraph& graph() { return graph_; }
    const Seed& seed(int node = 0) const { return graph_.seed(node); }
    const Budget& budget() const { return budget_; }

    // Sequence after which `v` (transported by `rule`) is componentwise <= 0.
    // Throws ReachabilityError when the budget runs out.
    MutSeq find_negative_seq(int node, const Vec& v, Rule rule = Rule::Delta);
    std::optional<MutSeq> try_negative_seq(int node, const Vec& v, Rule rule = Rule::Delta);
    // Shortest-first search for a seed satisfying `pred`.
    MutSeq find_seed(int node, const std::function<bool(const Seed&)>& pred, const std::string& what);

    // Triple of the general presentation with the given weight / injective weight.
    Triple complete(int node, const Vec& delta);
    Triple complete_dual(int node, const Vec& dcheck);
    bool negative_reachable(int node, const Vec& delta);

    // e(M,N) and hom(M,N) by anchoring one argument at a negative seed and
    // accumulating the mutation increments back to `node`.
    PairValues pair(int node, const Triple& M, const Triple& N);
    Int e_pair(int node, const Triple& M, const Triple& N) { return pair(node, M, N).e; }
    Int hom_pair(int node, const Triple& M, const Triple& N) { return pair(node, M, N).hom; }

    // f_M(arg) = hom(arg, M) and the dual f̌_M(-arg) = e(arg, M).
    Int trop_f(int node, const Triple& M, const Vec& arg);
    Int trop_f_dual(int node, const Triple& M, const Vec& arg);

    // Pairing along an explicit path whose end makes M (or N) negative.
    PairValues pair_along(int node, const Triple& M, const Triple& N, const MutSeq& path, bool anchor_on_M);

private:
    std::optional<MutSeq> search(int node, const Vec& v, Rule rule);
    std::optional<MutSeq> search(int node, const Vec& v, Rule rule, int depth_sign, std::size_t max_states);

    SeedGraph graph_;
    Budget budget_;
    std::mutex cache_mu_;
    std::map<std::tuple<int, int, Vec>, std::optional<MutSeq>> cache_;  // (node, rule, v)
};

}  // namespace cqp
