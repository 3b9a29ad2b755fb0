#include <cqp/boundary.hpp>

#include <algorithm>

namespace cqp {

Vec simple_dcheck(const Seed& t, int i) { return unit(t.n(), i) + t.row(i); }
Vec source_dcheck(const Seed& t, int i) { return unit(t.n(), i) - t.row(i); }

Boundary::Boundary(const Seed& s, Budget budget, BoundaryScope scope)
    : seed_(s), scope_(scope), full_(std::make_unique<Engine>(s, budget)), mu_(std::make_unique<Engine>(s.mutable_part(), budget)) {
    int n = s.n();
    mu_index_.assign(n, -1);
    const auto& mv = s.mutable_vertices();
    for (std::size_t k = 0; k < mv.size(); ++k) mu_index_[mv[k]] = static_cast<int>(k);
    auto lift = [&](const MutSeq& q) {
        MutSeq r;
        for (int k : q) r.push_back(mv[k]);
        return r;
    };

    for (int i : s.frozen()) {
        BoundaryData d;
        d.i = i;
        d.mu = mu_->complete(0, restrict_mu(-s.column(i)));
        if (!has_dual()) {
            data_[i] = std::move(d);
            continue;
        }
        // Nakayama turns the presentation of M into the copresentation of τM,
        // so δ̌(τM) = -δ(M) and δ(τ^{-1}M) = -δ̌(M).
        d.tau_mu = mu_->complete_dual(0, -d.mu.delta);
        d.tau_inv_mu = mu_->complete(0, -d.mu.dcheck);
        data_[i] = std::move(d);
    }
    for (int i : s.frozen())
        for (int j : s.frozen()) {
            auto pv = mu_->pair(0, data_[i].mu, data_[j].mu);
            e_mu_[{i, j}] = pv.e;
            hom_mu_[{i, j}] = pv.hom;
        }
    for (int i : s.frozen()) {
        BoundaryData& d = data_[i];
        d.rigid = e_mu(i, i) == 0;
        d.eps = unit(n, i);
        d.eps_check = extend_mu(d.mu.dcheck);
        for (int j : s.frozen()) {
            if (j != i) d.eps[j] = -e_mu(j, i);
            d.eps_check[j] = (j == i) - hom_mu(j, i);
        }
        // E_i is simple exactly where E_i^μ becomes negative (i a sink for the mutable part);
        // E_i★ where the weight of E_i^μ becomes nonnegative (i a source).
        d.seq_to_simple = lift(mu_->find_negative_seq(0, d.mu.delta, Rule::Delta));
        if (!is_sink_for_mutables(s.mutate(d.seq_to_simple), i))
            throw InvariantError("simple seed search for frozen vertex " + std::to_string(i) + " is inconsistent");
        d.dim_E = transport_back(s, unit(n, i), d.seq_to_simple, Rule::APoint);
        if (d.dim_E != extend_mu(d.mu.dim) + unit(n, i))
            throw InvariantError("dimension vector of boundary representation " + std::to_string(i) + " disagrees with E_i^mu");
        if (d.eps_check != d.eps + (dcheck_of(s, Vec(n, 0), d.dim_E)))
            throw InvariantError("boundary cross-check failed at frozen vertex " + std::to_string(i) + ": " +
                                 to_string(d.eps_check) + " vs " + to_string(d.eps) + " + dim " + to_string(d.dim_E));
        if (!has_dual()) continue;

        d.eps_star = extend_mu(d.tau_mu.delta);
        for (int j : s.frozen()) d.eps_star[j] = (j == i) - mu_->hom_pair(0, d.tau_mu, data_[j].tau_mu);
        d.dual_seq_to_simple = lift(mu_->find_negative_seq(0, -d.mu.delta, Rule::Dcheck));
        if (!is_source_for_mutables(s.mutate(d.dual_seq_to_simple), i))
            throw InvariantError("dual simple seed search for frozen vertex " + std::to_string(i) + " is inconsistent");
        d.dim_Estar = transport_back(s, unit(n, i), d.dual_seq_to_simple, Rule::APoint);
        // mutable part of ε★ is dim E★ contracted with the mutable rows
        Vec star_mu(mv.size(), 0);
        for (std::size_t k = 0; k < mv.size(); ++k)
            for (int v = 0; v < n; ++v) star_mu[k] = add(star_mu[k], mul(s.b(mv[k], v), d.dim_Estar[v]));
        if (star_mu != restrict_mu(d.eps_star))
            throw InvariantError("dual boundary cross-check failed at frozen vertex " + std::to_string(i) + ": " +
                                 to_string(star_mu) + " vs " + to_string(restrict_mu(d.eps_star)));
    }
}

int Boundary::index_of(int v) const {
    auto it = std::find(frozen().begin(), frozen().end(), v);
    if (it == frozen().end()) throw UsageError("vertex " + std::to_string(v) + " is not frozen");
    return static_cast<int>(it - frozen().begin());
}

Vec Boundary::restrict_mu(const Vec& v) const {
    Vec r;
    for (int u : seed_.mutable_vertices()) r.push_back(v[u]);
    return r;
}

Vec Boundary::extend_mu(const Vec& m) const {
    Vec r(seed_.n(), 0);
    const auto& mv = seed_.mutable_vertices();
    for (std::size_t k = 0; k < mv.size(); ++k) r[mv[k]] = m[k];
    return r;
}

std::vector<Vec> diagram_cartan(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<Vec> C(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) C[i][i] = 2;
    for (auto [a, b] : edges) {
        C[a][b] -= 1;
        C[b][a] -= 1;
    }
    return C;
}

CartanData cartan_matrix(Boundary& b, const std::vector<int>& I, bool with_star) {
    CartanData c;
    c.I = I;
    for (int i : I) b.index_of(i);
    int k = static_cast<int>(c.I.size());
    for (int i : c.I)
        if (!b.data(i).rigid) throw UnsupportedError("frozen vertex " + std::to_string(i) + " is not rigid");
    c.C.assign(k, Vec(k, 0));
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            c.C[x][y] = 2 * (x == y) - b.e_mu(c.I[x], c.I[y]) - b.e_mu(c.I[y], c.I[x]);
    if (!with_star) return c;
    if (!b.has_dual()) throw UsageError("starred Cartan data needs the full boundary scope");
    c.has_star = true;
    c.Cstar.assign(k, Vec(k, 0));
    c.Cstar_check.assign(k, Vec(k, 0));
    const Seed& s = b.seed();
    // Boundary representations mutate as representations, so their weights follow
    // the δ (resp. δ̌) rule; read β_- at i where E_i (resp. E_j★) is simple.
    for (int x = 0; x < k; ++x) {
        int i = c.I[x];
        const MutSeq& seq = b.data(i).seq_to_simple;
        for (int y = 0; y < k; ++y) {
            Vec star = transport(s, b.data(c.I[y]).eps_star, seq, Rule::Delta);
            c.Cstar[x][y] = -neg(star[i]);
        }
    }
    for (int y = 0; y < k; ++y) {
        int j = c.I[y];
        const MutSeq& seq = b.data(j).dual_seq_to_simple;
        for (int x = 0; x < k; ++x) {
            Vec check = transport(s, b.data(c.I[x]).eps_check, seq, Rule::Dcheck);
            c.Cstar_check[y][x] = -neg(check[j]);
        }
    }
    return c;
}

Q evaluate(const QVec& wt, const Vec& delta) {
    Q s = 0;
    for (std::size_t v = 0; v < delta.size(); ++v) s += wt[v] * delta[v];
    return s;
}

std::optional<Vec> integral_row(const WeightGrading& g, int k) { return to_int(g.rows.at(k)); }

WeightGrading compatible_grading(Boundary& b, const CartanData& c) {
    const Seed& s = b.seed();
    int n = s.n();
    int k = static_cast<int>(c.I.size());
    QMat Bd;
    for (int u : s.mutable_vertices()) Bd.push_back(to_q(s.row(u)));
    auto system = [&](auto weight) {
        QMat M = Bd;
        for (int j : c.I) M.push_back(to_q(weight(b.data(j))));
        return M;
    };
    QMat M = system([](const BoundaryData& d) { return d.eps_check; });
    int rB = rank(Bd), rM = rank(M);

    WeightGrading g;
    g.I = c.I;
    g.span_condition = rM == rB + k;
    g.nullity = n - rM;
    auto solve_for = [&](const QMat& sys, const Vec& target) -> std::optional<QVec> {
        QVec rhs(Bd.size(), 0);
        for (Int x : target) rhs.emplace_back(x);
        auto sol = solve(sys, rhs, n);
        if (!sol) return std::nullopt;
        return sol->particular;
    };

    std::vector<std::pair<int, int>> pairs;
    if (b.has_dual()) pairs = tau_exact_pairs(b, c.I);
    std::map<int, int> partner;
    for (auto [i, ib] : pairs) partner.emplace(i, ib);
    bool covered = std::all_of(c.I.begin(), c.I.end(), [&](int i) { return partner.count(i) > 0; });
    if (covered) {
        // wt_i = dim E_i - dim τ^{-1}E_i with τ^{-1}E_i = E★_ī
        for (int x = 0; x < k; ++x) {
            int i = c.I[x];
            QVec w = to_q(b.data(i).dim_E - b.data(partner.at(i)).dim_Estar);
            auto lhs = M * w;
            for (std::size_t r = 0; r < Bd.size(); ++r)
                if (lhs[r] != 0) throw InvariantError("closed-form grading is not compatible");
            for (int y = 0; y < k; ++y)
                if (lhs[Bd.size() + y] != c.C[x][y]) throw InvariantError("closed-form grading is not adapted");
            g.rows.push_back(std::move(w));
        }
        g.closed_form = true;
    } else {
        for (int x = 0; x < k; ++x) {
            auto w = solve_for(M, c.C[x]);
            if (!w)
                throw UnsupportedError(g.span_condition ? "grading system inconsistent"
                                                        : "span condition fails and no adapted grading exists");
            g.rows.push_back(std::move(*w));
        }
    }
    if (covered && g.nullity == 0)
        for (int x = 0; x < k; ++x)
            if (solve_for(M, c.C[x]) != g.rows[x]) throw InvariantError("closed-form grading differs from the linear solve");

    // Singular C: complete by compatible functionals with prescribed values on the ε_j
    // until the pairing matrix against (ε_j) has full rank.
    QMat E = system([](const BoundaryData& d) { return d.eps; });
    QMat acc;
    for (const auto& w : g.rows) {
        QVec r;
        for (int j : c.I) r.push_back(evaluate(w, b.data(j).eps));
        acc.push_back(std::move(r));
    }
    for (int y = 0; y < k && rank(acc) < k; ++y) {
        auto w = solve_for(E, unit(k, y));
        if (!w) continue;
        QMat trial = acc;
        QVec r;
        for (int j : c.I) r.push_back(evaluate(*w, b.data(j).eps));
        trial.push_back(std::move(r));
        if (rank(trial) > rank(acc)) {
            acc = std::move(trial);
            g.extra.push_back(std::move(*w));
        }
    }
    g.integral = std::all_of(g.rows.begin(), g.rows.end(), [](const QVec& r) { return to_int(r).has_value(); });
    return g;
}

std::vector<std::pair<int, int>> tau_exact_pairs(Boundary& b, const std::vector<int>& I) {
    if (!b.has_dual()) throw UsageError("tau-exact pairs need the full boundary scope");
    std::vector<std::pair<int, int>> out;
    Engine& mu = b.mu_engine();
    for (int i : I) {
        const BoundaryData& di = b.data(i);
        for (int ib : b.frozen()) {
            if (di.tau_inv_mu.delta != b.data(ib).tau_mu.delta) continue;
            bool ok = true;
            for (int j : b.frozen()) {
                Int lhs = b.hom_mu(j, i) + mu.hom_pair(0, di.tau_inv_mu, b.data(j).tau_mu);
                if (lhs != (i == j) + (ib == j)) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.emplace_back(i, ib);
        }
    }
    return out;
}

}  // namespace cqp
