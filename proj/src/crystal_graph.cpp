#include <cqp/crystal_graph.hpp>

#include <nlohmann/json.hpp>

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace cqp {

namespace {

// Runs f(k) for k in [0, count) on up to `jobs` threads; the first exception wins.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) f(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next++) < count;) {
                try {
                    f(k);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

nlohmann::json q_json(const Q& q) {
    if (denominator(q) == 1) return static_cast<Int>(numerator(q));
    return q.str();
}

std::string show(const std::optional<Vec>& v) { return v ? to_string(*v) : std::string("null"); }

class Recorder {
public:
    void add(std::string kind, const Vec& p, int i, std::string detail) {
        std::lock_guard lock(mu_);
        out_.push_back({std::move(kind), p, i, std::move(detail)});
    }
    std::vector<Violation> take() { return std::move(out_); }

private:
    std::mutex mu_;
    std::vector<Violation> out_;
};

void check_point(const Crystal& c, const std::vector<Crystal>& adjacent, const Vec& x, const AxiomOptions& opt,
                 Recorder& rec) {
    const auto& C = c.cartan().C;
    auto wx = c.wt(x);
    for (int i : c.I()) {
        int xi = c.index_of(i);
        Int rho = c.rho(x, i);
        Q lam = c.lambda(x, i);

        if (auto y = c.r(x, i)) {
            auto back = c.l(*y, i);
            if (back != x) rec.add("A1", x, i, "l(r(x)) = " + show(back));
            if (c.rho(*y, i) != rho - 1) rec.add("A1", x, i, "rho does not drop by one");
            if (c.lambda(*y, i) != lam + 1) rec.add("A1", x, i, "lambda does not grow by one");
            auto wy = c.wt(*y);
            for (std::size_t j = 0; j < wy.size(); ++j)
                if (wy[j] != wx[j] + C[xi][j]) rec.add("A1", x, i, "weight does not move by the simple root");
        }
        if (auto y = c.l(x, i)) {
            auto back = c.r(*y, i);
            if (back != x) rec.add("A1", x, i, "r(l(x)) = " + show(back));
        }
        if (lam != Q(rho) + wx[xi]) rec.add("A2", x, i, "lambda - rho differs from wt");

        int k = 0;
        for (Vec z = x; k <= opt.chain_limit;) {
            auto next = c.r(z, i);
            if (!next) break;
            z = std::move(*next);
            ++k;
        }
        if (k != rho) rec.add("upper-seminormal", x, i, "raising chain " + std::to_string(k) + " vs rho " + std::to_string(rho));

        if (opt.lowering_chains && c.mode() == CrystalMode::Seminormal) {
            k = 0;
            for (Vec z = x; k <= opt.chain_limit;) {
                auto next = c.l(z, i);
                if (!next) break;
                z = std::move(*next);
                ++k;
            }
            if (Q(k) != lam) rec.add("seminormal", x, i, "lowering chain " + std::to_string(k) + " vs lambda " + lam.str());
        }

        if (opt.dual) {
            Int rs = c.rho_star(x, i);
            if (auto y = c.r_star(x, i)) {
                if (c.l_star(*y, i) != x) rec.add("dual-A1", x, i, "l*(r*(x)) differs from x");
                if (c.rho_star(*y, i) != rs - 1) rec.add("dual-A1", x, i, "rho* does not drop by one");
            }
            k = 0;
            for (Vec z = x; k <= opt.chain_limit;) {
                auto next = c.r_star(z, i);
                if (!next) break;
                z = std::move(*next);
                ++k;
            }
            if (k != rs) rec.add("dual-upper-seminormal", x, i, "raising chain " + std::to_string(k) + " vs rho* " + std::to_string(rs));
        }
    }

    if (!opt.mutation) return;
    std::size_t a = 0;
    for (int u : c.seed().mutable_vertices()) {
        const Crystal& cu = adjacent[a++];
        std::string tag = "at mu_" + std::to_string(u) + ": ";
        Vec xu = mutate_delta(c.seed(), x, u);
        auto moved = [&](const std::optional<Vec>& v) -> std::optional<Vec> {
            if (!v) return std::nullopt;
            return mutate_delta(c.seed(), *v, u);
        };
        if (!cu.is_mu_supported(xu)) {
            rec.add("mutation", x, -1, tag + "transported point is not mu-supported");
            continue;
        }
        if (cu.wt(xu) != wx) rec.add("mutation", x, -1, tag + "weight changes");
        for (int i : c.I()) {
            if (cu.rho(xu, i) != c.rho(x, i)) rec.add("mutation", x, i, tag + "rho changes");
            if (cu.lambda(xu, i) != c.lambda(x, i)) rec.add("mutation", x, i, tag + "lambda changes");
            if (cu.r(xu, i) != moved(c.r(x, i))) rec.add("mutation", x, i, tag + "r does not commute");
            if (cu.l(xu, i) != moved(c.l(x, i))) rec.add("mutation", x, i, tag + "l does not commute");
        }
    }
}

}  // namespace

void for_each_in_box(int n, Int lo, Int hi, const std::function<void(const Vec&)>& f) {
    if (lo > hi) return;
    Vec d(n, lo);
    while (true) {
        f(d);
        int k = n - 1;
        while (k >= 0 && d[k] == hi) d[k--] = lo;
        if (k < 0) return;
        ++d[k];
    }
}

std::vector<Vec> mu_supported_points(const Crystal& c, Int lo, Int hi, int jobs) {
    // split on the first coordinate, keep lexicographic order
    int n = c.n();
    std::size_t width = static_cast<std::size_t>(hi - lo + 1);
    if (lo > hi || n == 0) return n == 0 ? std::vector<Vec>{Vec{}} : std::vector<Vec>{};
    std::vector<std::vector<Vec>> parts(width);
    parallel_for(width, jobs, [&](std::size_t k) {
        Int first = lo + static_cast<Int>(k);
        for_each_in_box(n - 1, lo, hi, [&](const Vec& rest) {
            Vec d{first};
            d.insert(d.end(), rest.begin(), rest.end());
            if (c.is_mu_supported(d)) parts[k].push_back(std::move(d));
        });
    });
    std::vector<Vec> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

std::vector<Vec> weight_slice(const Crystal& c, const std::vector<Q>& weight, Int lo, Int hi, int jobs) {
    int n = c.n();
    const auto& rows = c.grading().rows;
    if (weight.size() != rows.size()) throw UsageError("weight has the wrong number of entries");
    QMat a;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        QVec row = rows[k];
        row.push_back(weight[k]);
        a.push_back(std::move(row));
    }
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == n) return {};
    std::vector<int> free;
    for (int v = 0; v < n; ++v)
        if (std::find(piv.begin(), piv.end(), v) == piv.end()) free.push_back(v);
    int nf = static_cast<int>(free.size());
    std::size_t width = static_cast<std::size_t>(std::max<Int>(hi - lo + 1, 0));
    std::vector<std::vector<Vec>> parts(width);
    auto fill = [&](const Vec& fx, std::vector<Vec>& out) {
        Vec d(n, 0);
        for (int f = 0; f < nf; ++f) d[free[f]] = fx[f];
        for (std::size_t r = 0; r < piv.size(); ++r) {
            Q x = a[r][n];
            for (int f = 0; f < nf; ++f) x -= a[r][free[f]] * fx[f];
            if (denominator(x) != 1 || x < lo || x > hi) return;
            d[piv[r]] = static_cast<Int>(numerator(x));
        }
        if (c.is_mu_supported(d)) out.push_back(std::move(d));
    };
    if (nf == 0) {
        std::vector<Vec> out;
        fill(Vec{}, out);
        return out;
    }
    parallel_for(width, jobs, [&](std::size_t k) {
        for_each_in_box(nf - 1, lo, hi, [&](const Vec& rest) {
            Vec fx{lo + static_cast<Int>(k)};
            fx.insert(fx.end(), rest.begin(), rest.end());
            fill(fx, parts[k]);
        });
    });
    std::vector<Vec> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(out.begin(), out.end());
    return out;
}

AxiomReport verify_axioms(const Crystal& c, const std::vector<Vec>& points, const AxiomOptions& opt) {
    std::vector<Crystal> adjacent;
    if (opt.mutation)
        for (int u : c.seed().mutable_vertices()) adjacent.push_back(c.mutated(u));
    Recorder rec;
    AxiomReport report;
    report.points = points.size();
    parallel_for(points.size(), opt.jobs, [&](std::size_t k) {
        if (!c.is_mu_supported(points[k])) {
            rec.add("input", points[k], -1, "point is not mu-supported");
            return;
        }
        check_point(c, adjacent, points[k], opt, rec);
    });
    report.violations = rec.take();
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) { return std::tie(a.point, a.i, a.kind) < std::tie(b.point, b.i, b.kind); });
    return report;
}

AxiomReport verify_weyl(const Crystal& c, const std::vector<Vec>& points, int jobs) {
    if (c.mode() != CrystalMode::Seminormal) throw UsageError("the Weyl group action needs the seminormal structure");
    const auto& C = c.cartan().C;
    Recorder rec;
    AxiomReport report;
    report.points = points.size();
    parallel_for(points.size(), jobs, [&](std::size_t k) {
        const Vec& x = points[k];
        auto wx = c.wt(x);
        for (int i : c.I()) {
            int xi = c.index_of(i);
            Vec y = c.weyl(x, i);
            if (!c.is_mu_supported(y)) rec.add("weyl", x, i, "s_i(x) = " + to_string(y) + " is not mu-supported");
            if (c.weyl(y, i) != x) rec.add("weyl", x, i, "s_i is not an involution here");
            auto wy = c.wt(y);
            for (std::size_t j = 0; j < wy.size(); ++j)
                if (wy[j] != wx[j] - wx[xi] * C[xi][j]) rec.add("weyl", x, i, "weight is not reflected");
        }
    });
    report.violations = rec.take();
    return report;
}

CrystalGraph crystal_graph(const Crystal& c, const GraphOptions& opt) {
    CrystalGraph g;
    g.I = c.I();
    std::vector<Vec> pts = opt.weight ? weight_slice(c, *opt.weight, opt.lo, opt.hi, opt.jobs)
                                      : mu_supported_points(c, opt.lo, opt.hi, opt.jobs);
    std::map<Vec, int> index;
    for (std::size_t k = 0; k < pts.size(); ++k) index.emplace(pts[k], static_cast<int>(k));
    g.nodes.resize(pts.size());
    std::vector<std::vector<CrystalEdge>> out_edges(pts.size());
    parallel_for(pts.size(), opt.jobs, [&](std::size_t k) {
        CrystalNode& node = g.nodes[k];
        node.delta = pts[k];
        node.wt = c.wt(pts[k]);
        for (int x = 0; x < static_cast<int>(g.I.size()); ++x) {
            int i = g.I[x];
            node.rho.push_back(c.rho(pts[k], i));
            node.lambda.push_back(c.lambda(pts[k], i));
            if (opt.rho_star) node.rho_star.push_back(c.rho_star(pts[k], i));
            if (auto y = c.r(pts[k], i)) {
                auto it = index.find(*y);
                if (it != index.end()) out_edges[k].push_back({static_cast<int>(k), x, it->second});
            }
        }
    });
    for (auto& e : out_edges) g.edges.insert(g.edges.end(), e.begin(), e.end());

    std::vector<int> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& e : g.edges) parent[find(e.source)] = find(e.target);
    std::map<int, int> label;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        int root = find(static_cast<int>(k));
        auto [it, fresh] = label.emplace(root, static_cast<int>(label.size()));
        g.nodes[k].component = it->second;
        if (std::all_of(g.nodes[k].rho.begin(), g.nodes[k].rho.end(), [](Int r) { return r == 0; }))
            g.highest_weight.push_back(static_cast<int>(k));
    }
    g.components = static_cast<int>(label.size());
    return g;
}

std::vector<Vec> component_of(const Crystal& c, const Vec& x, std::size_t limit) {
    std::set<Vec> seen{x};
    std::queue<Vec> todo;
    todo.push(x);
    while (!todo.empty()) {
        Vec v = todo.front();
        todo.pop();
        for (int i : c.I())
            for (auto y : {c.r(v, i), c.l(v, i)})
                if (y && seen.insert(*y).second) {
                    if (seen.size() > limit) throw ReachabilityError("crystal component exceeds the size limit");
                    todo.push(*y);
                }
    }
    return {seen.begin(), seen.end()};
}

nlohmann::json to_json(const CrystalGraph& g) {
    nlohmann::json j;
    j["I"] = nlohmann::json::array();
    for (int i : g.I) j["I"].push_back(i + 1);
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : g.nodes) {
        nlohmann::json node{{"delta", n.delta}, {"rho", n.rho}, {"component", n.component}};
        nlohmann::json wt = nlohmann::json::array(), lam = nlohmann::json::array();
        for (const auto& q : n.wt) wt.push_back(q_json(q));
        for (const auto& q : n.lambda) lam.push_back(q_json(q));
        node["wt"] = wt;
        node["lambda"] = lam;
        if (!n.rho_star.empty()) node["rho_star"] = n.rho_star;
        j["nodes"].push_back(std::move(node));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) j["edges"].push_back({{"source", e.source}, {"color", g.I[e.color] + 1}, {"target", e.target}});
    j["highest_weight"] = g.highest_weight;
    j["components"] = g.components;
    return j;
}

std::string to_dot(const CrystalGraph& g) {
    static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
    std::ostringstream os;
    os << "digraph crystal {\n  node [shape=box, fontsize=10];\n";
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        os << "  n" << k << " [label=\"" << to_string(g.nodes[k].delta) << "\\nwt (";
        for (std::size_t t = 0; t < g.nodes[k].wt.size(); ++t) os << (t ? "," : "") << g.nodes[k].wt[t];
        os << ")\"];\n";
    }
    for (const auto& e : g.edges)
        os << "  n" << e.source << " -> n" << e.target << " [color=" << palette[e.color % 8] << ", label=\"" << g.I[e.color] + 1
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace cqp
