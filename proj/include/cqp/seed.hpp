#pragma once

#include <cqp/core.hpp>

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace cqp {

// Ice quiver as a full skew-symmetric matrix: B(u,v) = #(u->v) - #(v->u).
// Frozen-frozen entries are always zero.
class Seed {
public:
    Seed() = default;
    Seed(int n, std::vector<int> frozen, std::vector<Vec> B, std::string label = {});

    int n() const { return n_; }
    Int b(int u, int v) const { return B_[u][v]; }
    const std::vector<Vec>& matrix() const { return B_; }
    Vec row(int u) const { return B_[u]; }
    Vec column(int v) const;
    bool is_frozen(int v) const { return frozen_mask_[v]; }
    const std::vector<int>& frozen() const { return frozen_; }
    const std::vector<int>& mutable_vertices() const { return mutable_; }
    const std::string& label() const { return label_; }
    void set_label(std::string s) { label_ = std::move(s); }

    Seed mutate(int u) const;
    Seed mutate(const MutSeq& seq) const;
    // Same quiver with every arrow reversed.
    Seed opposite() const;
    // Induced seed on the mutable vertices only (reindexed in order).
    Seed mutable_part() const;
    // Relabel vertices: new vertex perm[v] is old vertex v.
    Seed permuted(const std::vector<int>& perm) const;

    std::string key() const;
    bool operator==(const Seed& o) const { return n_ == o.n_ && frozen_ == o.frozen_ && B_ == o.B_; }

private:
    void normalize();
    int n_ = 0;
    std::vector<int> frozen_;
    std::vector<int> mutable_;
    std::vector<char> frozen_mask_;
    std::vector<Vec> B_;
    std::string label_;
};

Seed delete_frozen_arrows(const Seed& s);
std::string canonical_form(const Seed& s);

nlohmann::json to_json(const Seed& s);
Seed seed_from_json(const nlohmann::json& j);

// Memoized exchange graph at the matrix level. Node 0 is the root.
// Readers run concurrently; insertion is exclusive and insert-if-absent.
class SeedGraph {
public:
    explicit SeedGraph(Seed root);
    const Seed& root() const { return seed(0); }
    const Seed& seed(int id) const;
    int neighbor(int id, int u);
    int walk(int id, const MutSeq& seq);
    int find_or_insert(const Seed& s);
    std::size_t size() const;

private:
    struct Node {
        Seed seed;
        std::vector<int> next;  // -1 = not yet known
    };
    mutable std::shared_mutex mu_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace cqp
