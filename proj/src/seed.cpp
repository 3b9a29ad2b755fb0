#include <cqp/seed.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <mutex>
#include <sstream>

namespace cqp {

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << ')';
    return os.str();
}

Vec parse_vec(const std::string& s) {
    Vec out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) throw UsageError("empty entry in vector '" + s + "'");
        std::size_t used = 0;
        long long x;
        try {
            x = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw UsageError("not an integer: '" + tok + "'");
        out.push_back(x);
    }
    return out;
}

Seed::Seed(int n, std::vector<int> frozen, std::vector<Vec> B, std::string label)
    : n_(n), frozen_(std::move(frozen)), B_(std::move(B)), label_(std::move(label)) {
    if (n_ < 0) throw UsageError("negative vertex count");
    if (static_cast<int>(B_.size()) != n_) throw UsageError("B must have n rows");
    for (const auto& r : B_)
        if (static_cast<int>(r.size()) != n_) throw UsageError("B must be square");
    std::sort(frozen_.begin(), frozen_.end());
    frozen_.erase(std::unique(frozen_.begin(), frozen_.end()), frozen_.end());
    frozen_mask_.assign(n_, 0);
    for (int v : frozen_) {
        if (v < 0 || v >= n_) throw UsageError("frozen vertex out of range");
        frozen_mask_[v] = 1;
    }
    for (int u = 0; u < n_; ++u) {
        if (B_[u][u] != 0) throw UsageError("B must have zero diagonal");
        for (int v = 0; v < n_; ++v)
            if (B_[u][v] != -B_[v][u]) throw UsageError("B must be skew-symmetric");
        if (!frozen_mask_[u]) mutable_.push_back(u);
    }
    normalize();
}

void Seed::normalize() {
    for (int u : frozen_)
        for (int v : frozen_) B_[u][v] = 0;
}

Vec Seed::column(int v) const {
    Vec c(n_);
    for (int u = 0; u < n_; ++u) c[u] = B_[u][v];
    return c;
}

Seed Seed::mutate(int u) const {
    if (u < 0 || u >= n_) throw UsageError("mutation vertex out of range");
    if (frozen_mask_[u]) throw UsageError("cannot mutate at frozen vertex " + std::to_string(u));
    Seed r = *this;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i == u || j == u)
                r.B_[i][j] = -B_[i][j];
            else
                r.B_[i][j] = add(B_[i][j], sub(mul(pos(B_[i][u]), pos(B_[u][j])), mul(pos(-B_[i][u]), pos(-B_[u][j]))));
        }
    }
    r.normalize();
    return r;
}

Seed Seed::mutate(const MutSeq& seq) const {
    Seed r = *this;
    for (int u : seq) r = r.mutate(u);
    return r;
}

Seed Seed::opposite() const {
    Seed r = *this;
    for (auto& row : r.B_)
        for (auto& x : row) x = -x;
    return r;
}

Seed Seed::mutable_part() const {
    int m = static_cast<int>(mutable_.size());
    std::vector<Vec> B(m, Vec(m));
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) B[a][c] = B_[mutable_[a]][mutable_[c]];
    return Seed(m, {}, std::move(B), label_.empty() ? "" : label_ + "^mu");
}

Seed Seed::permuted(const std::vector<int>& perm) const {
    std::vector<Vec> B(n_, Vec(n_));
    std::vector<int> fr;
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v) B[perm[u]][perm[v]] = B_[u][v];
    for (int v : frozen_) fr.push_back(perm[v]);
    return Seed(n_, fr, std::move(B), label_);
}

std::string Seed::key() const {
    std::string k;
    k.reserve(8 + n_ * n_ * 2 + frozen_.size());
    auto put = [&](Int x) {
        // zig-zag varint keeps the key short and byte-stable
        std::uint64_t z = (static_cast<std::uint64_t>(x) << 1) ^ static_cast<std::uint64_t>(x >> 63);
        do {
            unsigned char c = z & 0x7f;
            z >>= 7;
            if (z) c |= 0x80;
            k.push_back(static_cast<char>(c));
        } while (z);
    };
    put(n_);
    put(static_cast<Int>(frozen_.size()));
    for (int v : frozen_) put(v);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v) put(B_[u][v]);
    return k;
}

Seed delete_frozen_arrows(const Seed& s) { return Seed(s.n(), s.frozen(), s.matrix(), s.label()); }

std::string canonical_form(const Seed& s) { return s.key(); }

nlohmann::json to_json(const Seed& s) {
    nlohmann::json j;
    j["n"] = s.n();
    j["frozen"] = s.frozen();
    j["B"] = s.matrix();
    if (!s.label().empty()) j["label"] = s.label();
    return j;
}

Seed seed_from_json(const nlohmann::json& j) {
    try {
        int n = j.at("n").get<int>();
        auto frozen = j.value("frozen", std::vector<int>{});
        auto B = j.at("B").get<std::vector<Vec>>();
        return Seed(n, frozen, B, j.value("label", std::string{}));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed seed JSON: ") + e.what());
    }
}

SeedGraph::SeedGraph(Seed root) { find_or_insert(root); }

const Seed& SeedGraph::seed(int id) const {
    std::shared_lock lk(mu_);
    return nodes_.at(id)->seed;
}

std::size_t SeedGraph::size() const {
    std::shared_lock lk(mu_);
    return nodes_.size();
}

int SeedGraph::find_or_insert(const Seed& s) {
    std::string k = s.key();
    {
        std::shared_lock lk(mu_);
        auto it = index_.find(k);
        if (it != index_.end()) return it->second;
    }
    std::unique_lock lk(mu_);
    auto [it, fresh] = index_.try_emplace(k, static_cast<int>(nodes_.size()));
    if (fresh) nodes_.push_back(std::make_unique<Node>(Node{s, std::vector<int>(s.n(), -1)}));
    return it->second;
}

int SeedGraph::neighbor(int id, int u) {
    const Node* node;
    {
        std::shared_lock lk(mu_);
        node = nodes_.at(id).get();
        if (node->next[u] >= 0) return node->next[u];
    }
    // Node storage is stable (unique_ptr), so the seed reference survives growth.
    int to = find_or_insert(node->seed.mutate(u));
    std::unique_lock lk(mu_);
    nodes_[id]->next[u] = to;
    nodes_[to]->next[u] = id;
    return to;
}

int SeedGraph::walk(int id, const MutSeq& seq) {
    for (int u : seq) id = neighbor(id, u);
    return id;
}

}  // namespace cqp
