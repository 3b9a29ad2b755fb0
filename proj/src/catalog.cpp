#include <cqp/catalog.hpp>
#include <cqp/linalg.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cqp {

namespace {

std::vector<int> topological_order(int n, const std::vector<std::pair<int, int>>& arrows) {
    std::vector<int> indeg(n, 0), order;
    for (auto [a, b] : arrows) ++indeg[b];
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (auto [a, b] : arrows)
            if (a == order[k] && --indeg[b] == 0) order.push_back(b);
    if (static_cast<int>(order.size()) != n) throw UsageError("quiver is not acyclic");
    return order;
}

// paths[i][j] = number of paths i -> j
std::vector<Vec> path_counts(int n, const std::vector<std::pair<int, int>>& arrows) {
    auto order = topological_order(n, arrows);
    std::vector<Vec> paths(n, Vec(n, 0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int i = *it;
        paths[i][i] = 1;
        for (auto [a, b] : arrows)
            if (a == i)
                for (int j = 0; j < n; ++j) paths[i][j] = add(paths[i][j], paths[b][j]);
    }
    return paths;
}

struct ZQVertex {
    int orbit;
    int level;
};

// Arrows of ZQ among the given vertices, plus translation arrows M -> τM.
std::vector<Vec> zq_matrix(const std::vector<ZQVertex>& vs, const std::vector<std::pair<int, int>>& arrows) {
    int n = static_cast<int>(vs.size());
    std::map<std::pair<int, int>, int> at;
    for (int k = 0; k < n; ++k) at[{vs[k].orbit, vs[k].level}] = k;
    std::vector<Vec> B(n, Vec(n, 0));
    auto arrow = [&](std::pair<int, int> from, std::pair<int, int> to) {
        auto f = at.find(from), t = at.find(to);
        if (f == at.end() || t == at.end()) return;
        B[f->second][t->second] += 1;
        B[t->second][f->second] -= 1;
    };
    for (const auto& v : vs) {
        int m = v.level;
        for (auto [i, j] : arrows) {
            if (i == v.orbit) {
                arrow({j, m}, {i, m});
                arrow({i, m}, {j, m + 1});
            }
        }
        arrow({v.orbit, m + 1}, {v.orbit, m});
    }
    return B;
}

std::string ar_name(const ARVertex& v) {
    std::string p = "P" + std::to_string(v.orbit + 1);
    if (v.level == 0) return p;
    return "tau^-" + std::to_string(v.level) + " " + p;
}

int parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int x = 0;
    try {
        x = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError("bad " + what + ": '" + s + "'");
    return x;
}

}  // namespace

int DynkinSpec::positive_roots() const {
    switch (letter) {
        case 'A': return rank * (rank + 1) / 2;
        case 'D': return rank * (rank - 1);
        case 'E': return rank == 6 ? 36 : rank == 7 ? 63 : 120;
    }
    return 0;
}

int DynkinSpec::coxeter_number() const {
    switch (letter) {
        case 'A': return rank + 1;
        case 'D': return 2 * rank - 2;
        case 'E': return rank == 6 ? 12 : rank == 7 ? 18 : 30;
    }
    return 0;
}

std::vector<int> DynkinSpec::involution() const {
    std::vector<int> s(rank);
    for (int i = 0; i < rank; ++i) s[i] = i;
    if (letter == 'A')
        for (int i = 0; i < rank; ++i) s[i] = rank - 1 - i;
    if (letter == 'D' && rank % 2 == 1) std::swap(s[rank - 2], s[rank - 1]);
    if (letter == 'E' && rank == 6) {
        std::swap(s[0], s[4]);
        std::swap(s[1], s[3]);
    }
    return s;
}

DynkinSpec dynkin(char letter, int rank) {
    DynkinSpec q;
    q.letter = letter;
    q.rank = rank;
    if (letter == 'A' && rank >= 1) {
        for (int i = 0; i + 1 < rank; ++i) q.arrows.emplace_back(i, i + 1);
    } else if (letter == 'D' && rank >= 4) {
        for (int i = 0; i + 1 < rank - 2; ++i) q.arrows.emplace_back(i, i + 1);
        q.arrows.emplace_back(rank - 3, rank - 2);
        q.arrows.emplace_back(rank - 3, rank - 1);
    } else if (letter == 'E' && rank >= 6 && rank <= 8) {
        for (int i = 0; i + 1 < rank - 1; ++i) q.arrows.emplace_back(i, i + 1);
        q.arrows.emplace_back(2, rank - 1);
    } else {
        throw UsageError(std::string("not a Dynkin type: ") + letter + std::to_string(rank));
    }
    return q;
}

DynkinSpec parse_dynkin(const std::string& s) {
    if (s.size() < 2) throw UsageError("bad Dynkin type '" + s + "'");
    return dynkin(static_cast<char>(std::toupper(s[0])), parse_int(s.substr(1), "Dynkin rank"));
}

std::vector<ARVertex> knit_ar_quiver(const DynkinSpec& q) {
    int n = q.rank;
    auto order = topological_order(n, q.arrows);
    auto paths = path_counts(n, q.arrows);
    std::vector<ARVertex> out;
    std::map<std::pair<int, int>, Vec> dim;
    for (int i = 0; i < n; ++i) {
        dim[{i, 0}] = paths[i];
        out.push_back({i, 0, paths[i]});
    }
    std::vector<char> alive(n, 1);
    int h = q.coxeter_number();
    auto get = [&](int i, int k) {
        auto it = dim.find({i, k});
        return it == dim.end() ? Vec(n, 0) : it->second;
    };
    for (int k = 0; k <= h; ++k) {
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int i = *it;
            if (!alive[i] || !dim.count({i, k})) continue;
            Vec d = -get(i, k);
            for (auto [a, b] : q.arrows) {
                if (a == i) d = d + get(b, k + 1);
                if (b == i) d = d + get(a, k);
            }
            bool positive = !is_zero(d) && std::all_of(d.begin(), d.end(), [](Int x) { return x >= 0; });
            if (!positive) {
                alive[i] = 0;
                continue;
            }
            dim[{i, k + 1}] = d;
            out.push_back({i, k + 1, d});
        }
    }
    if (static_cast<int>(out.size()) != q.positive_roots())
        throw InvariantError("AR knitting produced " + std::to_string(out.size()) + " modules, expected " +
                             std::to_string(q.positive_roots()));
    return out;
}

CatalogSeed unipotent_seed(const DynkinSpec& q) {
    auto ar = knit_ar_quiver(q);
    std::vector<ARVertex> ordered;
    for (const auto& v : ar)
        if (v.level > 0) ordered.push_back(v);
    std::vector<ARVertex> proj;
    for (const auto& v : ar)
        if (v.level == 0) proj.push_back(v);
    std::sort(proj.begin(), proj.end(), [](auto& a, auto& b) { return a.orbit < b.orbit; });
    ordered.insert(ordered.end(), proj.begin(), proj.end());

    std::vector<ZQVertex> zs;
    CatalogSeed cs;
    std::vector<int> frozen;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
        zs.push_back({ordered[k].orbit, ordered[k].level});
        cs.names.push_back(ar_name(ordered[k]));
        if (ordered[k].level == 0) frozen.push_back(static_cast<int>(k));
    }
    int n = static_cast<int>(ordered.size());
    cs.seed = Seed(n, frozen, zq_matrix(zs, q.arrows), std::string("unipotent:") + q.letter + std::to_string(q.rank));
    cs.I = frozen;
    return cs;
}

CatalogSeed base_affine_seed(const DynkinSpec& q) {
    int r = q.rank;
    auto ar = knit_ar_quiver(q);
    auto paths = path_counts(r, q.arrows);
    CatalogSeed u = unipotent_seed(q);
    std::vector<ZQVertex> zs;
    // recover (orbit, level) of the unipotent vertices in their seed order
    std::vector<ARVertex> ordered;
    for (const auto& v : ar)
        if (v.level > 0) ordered.push_back(v);
    for (int i = 0; i < r; ++i)
        for (const auto& v : ar)
            if (v.level == 0 && v.orbit == i) ordered.push_back(v);
    for (const auto& v : ordered) zs.push_back({v.orbit, v.level});
    std::vector<int> frozen = u.seed.frozen();
    CatalogSeed cs;
    cs.names = u.names;
    // the shifted projective P_j[1] = τ^{-1} I_j closes the τ-orbit that ends in I_j
    std::vector<int> shifted_of_row(r, -1);
    for (int j = 0; j < r; ++j) {
        Vec inj(r);
        for (int t = 0; t < r; ++t) inj[t] = paths[t][j];
        auto it = std::find_if(ar.begin(), ar.end(), [&](const ARVertex& v) { return v.dim == inj; });
        if (it == ar.end()) throw InvariantError("injective module missing from the AR quiver");
        shifted_of_row[it->orbit] = j;
    }
    for (int i = 0; i < r; ++i) {
        int last = 0;
        for (const auto& v : ar)
            if (v.orbit == i) last = std::max(last, v.level);
        zs.push_back({i, last + 1});
        frozen.push_back(static_cast<int>(zs.size()) - 1);
        cs.names.push_back("bar" + std::to_string(i + 1) + "=P" + std::to_string(shifted_of_row[i] + 1) + "[1]");
    }
    int n = static_cast<int>(zs.size());
    cs.seed = Seed(n, frozen, zq_matrix(zs, q.arrows), std::string("base-affine:") + q.letter + std::to_string(q.rank));
    cs.I = u.seed.frozen();
    return cs;
}

CatalogSeed grassmannian_seed(int k, int l) {
    if (k < 1 || l < 1) throw UsageError("grassmannian needs k, l >= 1");
    int n = k + l;
    // frozen labels: 0 = (0,0), i = (i,k), l+j = (l,k-j)
    std::vector<std::pair<int, int>> frozen_pos{{0, 0}};
    for (int i = 1; i <= l; ++i) frozen_pos.push_back({i, k});
    for (int j = 1; j < k; ++j) frozen_pos.push_back({l, k - j});
    std::vector<std::pair<int, int>> pos;
    for (int b = 1; b < k; ++b)
        for (int a = 1; a < l; ++a) pos.push_back({a, b});
    int m = static_cast<int>(pos.size());
    pos.insert(pos.end(), frozen_pos.begin(), frozen_pos.end());
    int total = static_cast<int>(pos.size());
    std::map<std::pair<int, int>, int> at;
    for (int v = 0; v < total; ++v) at[pos[v]] = v;
    std::vector<Vec> B(total, Vec(total, 0));
    auto arrow = [&](std::pair<int, int> f, std::pair<int, int> t) {
        auto x = at.find(f), y = at.find(t);
        if (x == at.end() || y == at.end()) return;
        B[x->second][y->second] += 1;
        B[y->second][x->second] -= 1;
    };
    for (int a = 1; a <= l; ++a)
        for (int b = 1; b <= k; ++b) {
            arrow({a, b}, {a + 1, b});
            arrow({a, b}, {a, b + 1});
            arrow({a + 1, b + 1}, {a, b});
        }
    arrow({0, 0}, {1, 1});
    std::vector<int> frozen;
    CatalogSeed cs;
    for (int v = 0; v < total; ++v) {
        if (v >= m) frozen.push_back(v);
        cs.names.push_back("(" + std::to_string(pos[v].first) + "," + std::to_string(pos[v].second) + ")");
    }
    cs.seed = Seed(total, frozen, B, "grassmannian:" + std::to_string(k) + "x" + std::to_string(l));
    cs.I = frozen;
    (void)n;
    return cs;
}

OmegaSeed omega_seed(int n, const std::vector<std::pair<int, int>>& arrows) {
    for (auto [a, b] : arrows)
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw UsageError("bad arrow in quiver");
    topological_order(n, arrows);
    std::vector<Vec> A(n, Vec(n, 0));
    for (auto [a, b] : arrows) A[a][b] += 1;
    std::vector<Vec> B(2 * n, Vec(2 * n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            B[i][j] = A[i][j] - A[j][i];
            // -E_Qᵀ with E_Q = I - A
            Int et = (i == j) - A[j][i];
            B[i][n + j] = -et;
            B[n + j][i] = et;
        }
    std::vector<int> frozen;
    OmegaSeed os;
    for (int i = 0; i < n; ++i) os.cs.names.push_back(std::to_string(i + 1));
    for (int i = 0; i < n; ++i) {
        frozen.push_back(n + i);
        os.cs.names.push_back(std::to_string(i + 1) + "'");
    }
    os.cs.seed = Seed(2 * n, frozen, B, "omega");
    os.cs.I = frozen;

    // W = (I ; (E_Qᵀ)^{-1} B_Q) (I + (E_Qᵀ)^{-1} E_Q)
    QMat Et(n, QVec(n)), E(n, QVec(n)), BQ(n, QVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            E[i][j] = Q((i == j) - A[i][j]);
            Et[j][i] = E[i][j];
            BQ[i][j] = Q(A[i][j] - A[j][i]);
        }
    QMat aug = Et;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) aug[i].push_back(Q(i == j));
    rref(aug);
    QMat inv(n, QVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    auto mm = [n](const QMat& x, const QMat& y) {
        QMat r(x.size(), QVec(n, 0));
        for (std::size_t i = 0; i < x.size(); ++i)
            for (int j = 0; j < n; ++j)
                for (int t = 0; t < n; ++t) r[i][j] += x[i][t] * y[t][j];
        return r;
    };
    QMat right = mm(inv, E);
    for (int i = 0; i < n; ++i) right[i][i] += 1;
    QMat left(2 * n, QVec(n, 0));
    for (int i = 0; i < n; ++i) left[i][i] = 1;
    QMat lower = mm(inv, BQ);
    for (int i = 0; i < n; ++i) left[n + i] = lower[i];
    QMat W = mm(left, right);
    for (const auto& row : W) {
        auto r = to_int(row);
        if (!r) throw InvariantError("grading matrix is not integral");
        os.W.push_back(*r);
    }
    return os;
}

CatalogSeed canonical_type_seed(const std::vector<int>& a) {
    if (a.empty()) throw UsageError("canonical type needs at least one weight");
    for (int x : a)
        if (x < 2) throw UsageError("canonical type weights must be >= 2");
    int r = static_cast<int>(a.size());
    // mutable: 0, arm vertices, ∞
    std::vector<std::string> names{"0"};
    std::vector<std::vector<int>> arm(r);
    for (int k = 0; k < r; ++k)
        for (int j = 1; j < a[k]; ++j) {
            arm[k].push_back(static_cast<int>(names.size()));
            names.push_back(std::to_string(j) + "_" + std::to_string(k + 1));
        }
    int inf = static_cast<int>(names.size());
    names.push_back("inf");
    int m = inf + 1;
    std::vector<Vec> Bm(m, Vec(m, 0));
    auto arrow = [&](int f, int t) {
        Bm[f][t] += 1;
        Bm[t][f] -= 1;
    };
    for (int k = 0; k < r; ++k) {
        int prev = 0;
        for (int v : arm[k]) {
            arrow(prev, v);
            prev = v;
        }
        arrow(prev, inf);
    }
    // a canonical algebra has at least two arms; a single arm is paired with the trivial arm 0 -> ∞
    if (r == 1) arrow(0, inf);
    for (int k = 0; k < r - 2; ++k) arrow(inf, 0);

    std::vector<Vec> weights;
    for (int k = 0; k < r; ++k) {
        for (int v : arm[k]) {
            Vec w = unit(m, v);
            for (int t = 0; t < m; ++t)
                if (Bm[v][t] > 0) w[t] -= Bm[v][t];
            weights.push_back(w);
            names.push_back("S" + names[v]);
        }
        Vec t = unit(m, 0);
        t[arm[k].front()] -= 1;
        weights.push_back(t);
        names.push_back("T" + std::to_string(k + 1));
    }
    int total = m + static_cast<int>(weights.size());
    std::vector<Vec> B(total, Vec(total, 0));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) B[u][v] = Bm[u][v];
    std::vector<int> frozen;
    for (std::size_t f = 0; f < weights.size(); ++f) {
        int i = m + static_cast<int>(f);
        frozen.push_back(i);
        for (int u = 0; u < m; ++u) {
            B[u][i] = -weights[f][u];
            B[i][u] = weights[f][u];
        }
    }
    std::string label = "canonical:";
    for (int k = 0; k < r; ++k) label += (k ? "," : "") + std::to_string(a[k]);
    return CatalogSeed{Seed(total, frozen, B, label), names, frozen};
}

CatalogSeed catalog_lookup(const std::string& name) {
    auto colon = name.find(':');
    std::string kind = colon == std::string::npos ? "" : name.substr(0, colon);
    std::string arg = colon == std::string::npos ? name : name.substr(colon + 1);
    if (kind == "unipotent") return unipotent_seed(parse_dynkin(arg));
    if (kind == "base-affine") return base_affine_seed(parse_dynkin(arg));
    if (kind == "grassmannian") {
        auto x = arg.find('x');
        if (x == std::string::npos) throw UsageError("grassmannian expects KxL, got '" + arg + "'");
        return grassmannian_seed(parse_int(arg.substr(0, x), "k"), parse_int(arg.substr(x + 1), "l"));
    }
    if (kind == "omega" && !arg.empty() && std::string("ADE").find(arg[0]) != std::string::npos &&
        arg.find_first_not_of("0123456789", 1) == std::string::npos) {
        auto q = parse_dynkin(arg);
        return omega_seed(q.rank, q.arrows).cs;
    }
    if (kind == "canonical") {
        std::vector<int> a;
        for (Int x : parse_vec(arg)) a.push_back(static_cast<int>(x));
        return canonical_type_seed(a);
    }
    std::ifstream in(arg);
    if (!in) throw UsageError("unknown seed name or unreadable file: '" + name + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed JSON in '" + arg + "': " + e.what());
    }
    if (kind == "omega") {
        try {
            int n = j.at("n").get<int>();
            std::vector<std::pair<int, int>> arrows;
            for (const auto& e : j.at("arrows")) arrows.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            return omega_seed(n, arrows).cs;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("malformed quiver JSON: ") + e.what());
        }
    }
    if (!kind.empty() && kind != "file") throw UsageError("unknown seed family '" + kind + "'");
    CatalogSeed cs{seed_from_json(j), {}, {}};
    cs.I = cs.seed.frozen();
    for (int v = 0; v < cs.seed.n(); ++v) cs.names.push_back(std::to_string(v + 1));
    return cs;
}

}  // namespace cqp
