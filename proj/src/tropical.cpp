#include <cqp/tropical.hpp>

#include <queue>
#include <set>

namespace cqp {

namespace {

void check_mutable(const Seed& s, int u) {
    if (u < 0 || u >= s.n()) throw UsageError("mutation vertex out of range");
    if (s.is_frozen(u)) throw UsageError("cannot mutate at frozen vertex " + std::to_string(u));
}

Vec apply_rule(const Seed& s, const Vec& v, int u, Rule rule) {
    switch (rule) {
        case Rule::Delta: return mutate_delta(s, v, u);
        case Rule::Dcheck: return mutate_dcheck(s, v, u);
        case Rule::APoint: return mutate_apoint(s, v, u);
    }
    return v;
}

Int positive_mass(const Vec& v) {
    Int m = 0;
    for (Int x : v) m = add(m, pos(x));
    return m;
}

}  // namespace

Vec mutate_delta(const Seed& s, const Vec& d, int u) {
    check_mutable(s, u);
    Vec r = d;
    Int du = d[u];
    for (int v = 0; v < s.n(); ++v) {
        if (v == u) continue;
        Int b = s.b(v, u);
        if (b == 0) continue;
        r[v] = add(d[v], sub(mul(pos(-b), pos(du)), mul(pos(b), pos(-du))));
    }
    r[u] = -du;
    return r;
}

Vec mutate_dcheck(const Seed& s, const Vec& d, int u) {
    check_mutable(s, u);
    Vec r = d;
    Int du = d[u];
    for (int v = 0; v < s.n(); ++v) {
        if (v == u) continue;
        Int b = s.b(u, v);
        if (b == 0) continue;
        r[v] = add(d[v], sub(mul(pos(-b), pos(du)), mul(pos(b), pos(-du))));
    }
    r[u] = -du;
    return r;
}

Vec mutate_apoint(const Seed& s, const Vec& a, int u) {
    check_mutable(s, u);
    Int in = 0, out = 0;
    for (int v = 0; v < s.n(); ++v) {
        Int b = s.b(v, u);
        if (b > 0) in = add(in, mul(a[v], b));
        if (b < 0) out = add(out, mul(a[v], -b));
    }
    Vec r = a;
    r[u] = sub(std::max(in, out), a[u]);
    return r;
}

Triple mutate_triple(const Seed& s, const Triple& t, int u) {
    check_mutable(s, u);
    Triple r{mutate_delta(s, t.delta, u), mutate_dcheck(s, t.dcheck, u), t.dim};
    Int in = 0;
    for (int v = 0; v < s.n(); ++v)
        if (s.b(v, u) > 0) in = add(in, mul(t.dim[v], s.b(v, u)));
    r.dim[u] = add(sub(in, t.dim[u]), add(pos(t.delta[u]), pos(-t.dcheck[u])));
    if (r.dim[u] < 0) throw InvariantError("negative dimension after mutation: inconsistent triple");
    return r;
}

Vec transport(const Seed& s, Vec v, const MutSeq& seq, Rule rule) {
    Seed cur = s;
    for (int u : seq) {
        v = apply_rule(cur, v, u, rule);
        cur = cur.mutate(u);
    }
    return v;
}

Triple transport(const Seed& s, Triple t, const MutSeq& seq) {
    Seed cur = s;
    for (int u : seq) {
        t = mutate_triple(cur, t, u);
        cur = cur.mutate(u);
    }
    return t;
}

Vec transport_back(const Seed& s, Vec v, const MutSeq& seq, Rule rule) {
    Seed cur = s.mutate(seq);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        v = apply_rule(cur, v, *it, rule);
        cur = cur.mutate(*it);
    }
    return v;
}

Triple transport_back(const Seed& s, Triple t, const MutSeq& seq) {
    Seed cur = s.mutate(seq);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        t = mutate_triple(cur, t, *it);
        cur = cur.mutate(*it);
    }
    return t;
}

Path::Path(const Seed& start, MutSeq seq) : seq_(std::move(seq)) {
    seeds_.push_back(start);
    for (int u : seq_) seeds_.push_back(seeds_.back().mutate(u));
}

Vec Path::forward(Vec v, Rule rule) const {
    for (std::size_t k = 0; k < seq_.size(); ++k) v = apply_rule(seeds_[k], v, seq_[k], rule);
    return v;
}

Vec Path::backward(Vec v, Rule rule) const {
    for (std::size_t k = seq_.size(); k-- > 0;) v = apply_rule(seeds_[k + 1], v, seq_[k], rule);
    return v;
}

Vec dcheck_of(const Seed& s, const Vec& delta, const Vec& dim) {
    Vec r = delta;
    for (int u = 0; u < s.n(); ++u) {
        if (dim[u] == 0) continue;
        for (int v = 0; v < s.n(); ++v) r[v] = add(r[v], mul(dim[u], s.b(u, v)));
    }
    return r;
}

bool consistent(const Seed& s, const Triple& t) {
    for (Int x : t.dim)
        if (x < 0) return false;
    bool frozen_support = false;
    for (int v : s.frozen())
        if (t.dim[v] != 0) frozen_support = true;
    Vec expect = dcheck_of(s, t.delta, t.dim);
    for (int v = 0; v < s.n(); ++v) {
        if (frozen_support && s.is_frozen(v)) continue;
        if (expect[v] != t.dcheck[v]) return false;
    }
    return true;
}

Engine::Engine(Seed root, Budget budget) : graph_(std::move(root)), budget_(budget) {}

std::optional<MutSeq> Engine::search(int node, const Vec& v, Rule rule) {
    if (nonpositive(v)) return MutSeq{};
    // Deeper-first finds long sequences on mass plateaus quickly; shallower-first
    // is the fallback for wild quivers where deep branches run away.
    std::size_t share = budget_.max_states / 2;
    if (auto r = search(node, v, rule, -1, share)) return r;
    return search(node, v, rule, +1, budget_.max_states - share);
}

std::optional<MutSeq> Engine::search(int node, const Vec& v, Rule rule, int depth_sign, std::size_t max_states) {
    struct State {
        int node;
        Vec v;
        int parent;
        int step;
        int depth;
    };
    std::vector<State> states;
    std::map<std::pair<int, Vec>, int> seen;
    // Best-first on positive mass, ties broken by depth; the result is shortened afterwards.
    using Item = std::tuple<Int, int, int>;  // mass, ±depth, index
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
    states.push_back({node, v, -1, -1, 0});
    seen.emplace(std::make_pair(node, v), 0);
    open.emplace(positive_mass(v), 0, 0);
    std::size_t expanded = 0;
    bool found = false;
    while (!open.empty() && !found) {
        int idx = std::get<2>(open.top());
        open.pop();
        if (++expanded > max_states) return std::nullopt;
        int depth = states[idx].depth;
        if (depth >= budget_.max_depth) continue;
        const Seed& s = graph_.seed(states[idx].node);
        for (int u : s.mutable_vertices()) {
            if (u == states[idx].step) continue;
            Vec w;
            int to;
            try {
                w = apply_rule(s, states[idx].v, u, rule);
                to = graph_.neighbor(states[idx].node, u);
            } catch (const OverflowError&) {
                continue;  // runaway branch of a wild quiver
            }
            int k = static_cast<int>(states.size());
            if (!seen.emplace(std::make_pair(to, w), k).second) continue;
            states.push_back({to, w, idx, u, depth + 1});
            if (nonpositive(w)) {
                found = true;
                break;
            }
            open.emplace(positive_mass(w), depth_sign * (depth + 1), k);
        }
    }
    if (!found) return std::nullopt;

    // Shortest route to a nonpositive state inside the explored region.
    std::vector<int> parent(states.size(), -2), step(states.size(), -1);
    std::queue<int> bfs;
    parent[0] = -1;
    bfs.push(0);
    while (!bfs.empty()) {
        int idx = bfs.front();
        bfs.pop();
        if (nonpositive(states[idx].v)) {
            MutSeq seq;
            for (int j = idx; parent[j] >= 0; j = parent[j]) seq.push_back(step[j]);
            return MutSeq(seq.rbegin(), seq.rend());
        }
        const Seed& s = graph_.seed(states[idx].node);
        for (int u : s.mutable_vertices()) {
            Vec w;
            int to;
            try {
                w = apply_rule(s, states[idx].v, u, rule);
                to = graph_.neighbor(states[idx].node, u);
            } catch (const OverflowError&) {
                continue;
            }
            auto it = seen.find({to, w});
            if (it == seen.end() || parent[it->second] != -2) continue;
            parent[it->second] = idx;
            step[it->second] = u;
            bfs.push(it->second);
        }
    }
    throw InvariantError("negative state lost while shortening a mutation sequence");
}

std::optional<MutSeq> Engine::try_negative_seq(int node, const Vec& v, Rule rule) {
    auto key = std::make_tuple(node, static_cast<int>(rule), v);
    {
        std::lock_guard lk(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto r = search(node, v, rule);
    std::lock_guard lk(cache_mu_);
    cache_.emplace(key, r);
    return r;
}

MutSeq Engine::find_negative_seq(int node, const Vec& v, Rule rule) {
    auto r = try_negative_seq(node, v, rule);
    if (!r) throw ReachabilityError("no negative sequence found within budget for " + to_string(v));
    return *r;
}

MutSeq Engine::find_seed(int node, const std::function<bool(const Seed&)>& pred, const std::string& what) {
    std::vector<std::pair<int, int>> parent{{-1, -1}};  // (parent index, step)
    std::vector<int> nodes{node};
    std::vector<int> depth{0};
    std::set<int> seen{node};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k > budget_.max_states) break;
        const Seed& s = graph_.seed(nodes[k]);
        if (pred(s)) {
            MutSeq seq;
            for (int j = static_cast<int>(k); parent[j].first >= 0; j = parent[j].first) seq.push_back(parent[j].second);
            return MutSeq(seq.rbegin(), seq.rend());
        }
        if (depth[k] >= budget_.max_depth) continue;
        for (int u : s.mutable_vertices()) {
            int to = graph_.neighbor(nodes[k], u);
            if (!seen.insert(to).second) continue;
            nodes.push_back(to);
            parent.push_back({static_cast<int>(k), u});
            depth.push_back(depth[k] + 1);
        }
    }
    throw ReachabilityError("no seed found within budget: " + what);
}

Triple Engine::complete(int node, const Vec& delta) {
    MutSeq seq = find_negative_seq(node, delta);
    const Seed& s = seed(node);
    Vec end = transport(s, delta, seq, Rule::Delta);
    return transport_back(s, negative_triple(end), seq);
}

Triple Engine::complete_dual(int node, const Vec& dcheck) {
    MutSeq seq = find_negative_seq(node, dcheck, Rule::Dcheck);
    const Seed& s = seed(node);
    Vec end = transport(s, dcheck, seq, Rule::Dcheck);
    return transport_back(s, negative_triple(end), seq);
}

bool Engine::negative_reachable(int node, const Vec& delta) { return try_negative_seq(node, delta).has_value(); }

PairValues Engine::pair_along(int node, const Triple& M0, const Triple& N0, const MutSeq& path, bool anchor_on_M) {
    Triple M = M0, N = N0;
    int cur = node;
    std::vector<Int> de, dh;
    for (int u : path) {
        const Seed& s = graph_.seed(cur);
        Int mp = pos(M.delta[u]), mn = pos(-M.delta[u]);
        Int np = pos(N.delta[u]), nn = pos(-N.delta[u]);
        Int ncp = pos(N.dcheck[u]), ncn = pos(-N.dcheck[u]);
        de.push_back(sub(mul(mp, nn), mul(mn, np)));
        dh.push_back(sub(mul(mn, ncn), mul(mp, ncp)));
        M = mutate_triple(s, M, u);
        N = mutate_triple(s, N, u);
        cur = graph_.neighbor(cur, u);
    }
    if (!nonpositive(anchor_on_M ? M.delta : N.delta)) throw UsageError("pairing path does not end at a negative argument");
    PairValues r;
    r.path = path;
    if (anchor_on_M) {
        r.e = dot(-M.delta, N.dim);
        r.hom = 0;
    }
    for (std::size_t k = path.size(); k-- > 0;) {
        r.e = sub(r.e, de[k]);
        r.hom = sub(r.hom, dh[k]);
        if (r.e < 0 || r.hom < 0) throw InvariantError("negative running pairing value");
    }
    return r;
}

PairValues Engine::pair(int node, const Triple& M, const Triple& N) {
    auto sm = try_negative_seq(node, M.delta);
    std::optional<MutSeq> sn;
    if (!sm || !sm->empty()) sn = try_negative_seq(node, N.delta);
    if (sm && (!sn || sm->size() <= sn->size())) return pair_along(node, M, N, *sm, true);
    if (sn) return pair_along(node, M, N, *sn, false);
    throw ReachabilityError("neither argument of the pairing is negative-reachable within budget");
}

Int Engine::trop_f(int node, const Triple& M, const Vec& arg) { return hom_pair(node, complete(node, arg), M); }

Int Engine::trop_f_dual(int node, const Triple& M, const Vec& arg) { return e_pair(node, complete(node, arg), M); }

}  // namespace cqp
