#include <cqp/crystal.hpp>

#include <algorithm>

namespace cqp {

namespace {

Int integral(const Q& q, const std::string& what) {
    if (denominator(q) != 1) throw UnsupportedError(what + " is not integral");
    return static_cast<Int>(numerator(q));
}

}  // namespace

Crystal::Crystal(const Seed& s, std::vector<int> I, Budget budget)
    : b_(std::make_unique<Boundary>(s, budget)), I_(std::move(I)) {
    init(std::nullopt);
}

Crystal::Crystal(std::unique_ptr<Boundary> b, std::vector<int> I, std::optional<std::vector<QVec>> grading)
    : b_(std::move(b)), I_(std::move(I)) {
    init(std::move(grading));
}

void Crystal::init(std::optional<std::vector<QVec>> grading) {
    const Seed& s = seed();
    for (int i : I_) b_->index_of(i);
    for (int v : s.frozen())
        paths_.emplace(v, Paths{Path(s, b_->data(v).seq_to_simple), Path(s, b_->data(v).dual_seq_to_simple)});
    cartan_ = cartan_matrix(*b_, I_);
    for (auto [i, ib] : tau_exact_pairs(*b_, I_)) partner_.emplace(i, ib);
    bool covered = std::all_of(I_.begin(), I_.end(), [&](int i) { return partner_.count(i) > 0; });
    mode_ = covered ? CrystalMode::Seminormal : CrystalMode::UpperSeminormal;
    if (grading) {
        grading_.I = I_;
        grading_.rows = std::move(*grading);
        grading_.integral = std::all_of(grading_.rows.begin(), grading_.rows.end(),
                                        [](const QVec& r) { return to_int(r).has_value(); });
    } else {
        grading_ = compatible_grading(*b_, cartan_);
    }
}

std::optional<int> Crystal::partner(int i) const {
    auto it = partner_.find(i);
    if (it == partner_.end()) return std::nullopt;
    return it->second;
}

int Crystal::index_of(int i) const {
    auto it = std::find(I_.begin(), I_.end(), i);
    if (it == I_.end()) throw UsageError("vertex " + std::to_string(i) + " is not in I");
    return static_cast<int>(it - I_.begin());
}

// hom(δ, E_j★) vanishes for every frozen j; read at the seed where E_j★ is simple.
bool Crystal::is_mu_supported(const Vec& d) const {
    for (const auto& [j, p] : paths_)
        if (p.to_dual_simple.forward(d, Rule::Delta)[j] > 0) return false;
    return true;
}

Int Crystal::rho(const Vec& d, int i) const {
    index_of(i);
    return neg(paths(i).to_simple.forward(d, Rule::Delta)[i]);
}

std::optional<Vec> Crystal::r(const Vec& d, int i) const {
    const Path& p = paths(i).to_simple;
    Vec fwd = p.forward(d, Rule::Delta);
    index_of(i);
    Vec out = fwd[i] < 0 ? p.backward(fwd + simple_dcheck(p.end(), i), Rule::Delta) : d + b_->data(i).eps;
    if (!is_mu_supported(out)) return std::nullopt;
    return out;
}

std::optional<Vec> Crystal::l(const Vec& d, int i) const {
    index_of(i);
    const Path& p = paths(i).to_simple;
    Vec out = p.backward(p.forward(d, Rule::Delta) - simple_dcheck(p.end(), i), Rule::Delta);
    if (!is_mu_supported(out)) return std::nullopt;
    return out;
}

Q Crystal::wt(const Vec& d, int i) const { return evaluate(grading_.rows.at(index_of(i)), d); }

std::vector<Q> Crystal::wt(const Vec& d) const {
    std::vector<Q> out;
    for (const auto& row : grading_.rows) out.push_back(evaluate(row, d));
    return out;
}

Q Crystal::lambda(const Vec& d, int i) const {
    if (mode_ == CrystalMode::Seminormal) return rho_star(d, partner_.at(i));
    return Q(rho(d, i)) + wt(d, i);
}

Vec Crystal::dcheck(const Vec& d) const { return b_->engine().complete(0, d).dcheck; }

Vec Crystal::delta_of_dcheck(const Vec& dc) const { return b_->engine().complete_dual(0, dc).delta; }

// ě(E_i★, δ̌): E_i★ is the boundary representation of the opposite seed.
Int Crystal::rho_star(const Vec& d, int i) const {
    return neg(paths(i).to_dual_simple.forward(dcheck(d), Rule::Dcheck)[i]);
}

std::optional<Vec> Crystal::r_star(const Vec& d, int i) const {
    const Path& p = paths(i).to_dual_simple;
    Vec fwd = p.forward(dcheck(d), Rule::Dcheck);
    if (fwd[i] >= 0) return std::nullopt;
    Vec out = delta_of_dcheck(p.backward(fwd + source_dcheck(p.end(), i), Rule::Dcheck));
    if (!is_mu_supported(out)) return std::nullopt;
    return out;
}

std::optional<Vec> Crystal::l_star(const Vec& d, int i) const {
    const Path& p = paths(i).to_dual_simple;
    Vec dc = p.backward(p.forward(dcheck(d), Rule::Dcheck) - source_dcheck(p.end(), i), Rule::Dcheck);
    // the dual lowering can leave the negative-reachable range; that is the auxiliary 0 too
    std::optional<MutSeq> seq = b_->engine().try_negative_seq(0, dc, Rule::Dcheck);
    if (!seq) return std::nullopt;
    Vec out = delta_of_dcheck(dc);
    if (!is_mu_supported(out)) return std::nullopt;
    return out;
}

Vec Crystal::r_max(const Vec& d, int i) const {
    const Path& p = paths(i).to_simple;
    Vec fwd = p.forward(d, Rule::Delta);
    Int k = neg(fwd[i]);
    if (k == 0) return d;
    return p.backward(fwd + k * simple_dcheck(p.end(), i), Rule::Delta);
}

KashiwaraDatum Crystal::kashiwara_data(const Vec& d, const std::vector<int>& word) const {
    KashiwaraDatum out;
    out.word = word;
    Vec x = d;
    for (int i : word) {
        out.values.push_back(rho(x, i));
        x = r_max(x, i);
    }
    out.end = std::move(x);
    return out;
}

Int Crystal::e_pair(const Vec& d, const Vec& eta) const {
    Engine& e = b_->engine();
    return e.e_pair(0, e.complete(0, d), e.complete(0, eta));
}

Triple Crystal::r_max_dual(const Triple& t, int i) const {
    const MutSeq& seq = b_->data(i).seq_to_simple;
    const Seed end = seed().mutate(seq);
    Triple f = transport(seed(), t, seq);
    Int m = neg(f.delta[i]);
    if (m == 0) return t;
    Vec e = unit(n(), i);
    f.delta = f.delta + m * e;
    f.dcheck = f.dcheck + m * simple_dcheck(end, i);
    f.dim = f.dim + m * e;
    return transport_back(seed(), f, seq);
}

std::vector<Triple> Crystal::dual_raising_chain(const std::vector<int>& word) const {
    std::vector<Triple> out;
    for (std::size_t k = 0; k < word.size(); ++k) {
        const BoundaryData& d = b_->data(word[k]);
        Triple x{d.eps, d.eps_check, d.dim_E};
        for (std::size_t t = k; t-- > 0;) x = r_max_dual(x, word[t]);
        out.push_back(std::move(x));
    }
    return out;
}

Vec Crystal::weyl(const Vec& d, int i) const {
    if (mode_ != CrystalMode::Seminormal) throw UsageError("the Weyl group action needs the seminormal structure");
    Int k = integral(wt(d, i), "weight");
    const Path& p = paths(i).to_simple;
    return p.backward(p.forward(d, Rule::Delta) - k * simple_dcheck(p.end(), i), Rule::Delta);
}

Crystal Crystal::with_grading(std::vector<QVec> rows) const {
    if (rows.size() != I_.size()) throw UsageError("one grading row per vertex of I");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n()) throw UsageError("grading row has the wrong length");
    return Crystal(std::make_unique<Boundary>(seed(), b_->engine().budget()), I_, std::move(rows));
}

Crystal Crystal::mutated(int u) const {
    std::vector<QVec> rows;
    for (const auto& w : grading_.rows) rows.push_back(mutate_grading(seed(), w, u));
    auto b = std::make_unique<Boundary>(seed().mutate(u), b_->engine().budget());
    return Crystal(std::move(b), I_, std::move(rows));
}

QVec mutate_grading(const Seed& s, const QVec& w, int u) {
    QVec out = w;
    out[u] = -w[u];
    for (int v = 0; v < s.n(); ++v)
        if (s.b(v, u) > 0) out[u] += w[v] * s.b(v, u);
    return out;
}

std::string to_string(AutomorphismKind k) {
    switch (k) {
        case AutomorphismKind::Direct: return "direct";
        case AutomorphismKind::Opposite: return "opposite";
        case AutomorphismKind::None: return "none";
    }
    return "none";
}

AutomorphismKind cluster_automorphism_check(const Seed& s, const MutSeq& seq, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != s.n()) throw UsageError("permutation has the wrong length");
    for (int v = 0; v < s.n(); ++v)
        if (s.is_frozen(v) != s.is_frozen(perm[v])) throw UsageError("permutation must fix the frozen set");
    Seed t = delete_frozen_arrows(s.mutate(seq).permuted(perm));
    Seed base = delete_frozen_arrows(s);
    if (t.matrix() == base.matrix()) return AutomorphismKind::Direct;
    if (t.matrix() == base.opposite().matrix()) return AutomorphismKind::Opposite;
    return AutomorphismKind::None;
}

KashiwaraMap::KashiwaraMap(const Crystal& c, MutSeq seq, std::vector<int> perm)
    : c_(c), path_(c.seed(), std::move(seq)), perm_(std::move(perm)) {
    if (cluster_automorphism_check(c.seed(), path_.seq(), perm_) != AutomorphismKind::Opposite)
        throw UsageError("the Kashiwara map needs an opposite cluster automorphism");
}

Vec KashiwaraMap::operator()(const Vec& d) const {
    Vec m = path_.forward(d, Rule::Delta);
    Vec p(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) p[perm_[v]] = m[v];
    return c_.delta_of_dcheck(p);
}

DominanceResult dominance_lt(const Seed& s, const Vec& d1, const Vec& d2) {
    const auto& mv = s.mutable_vertices();
    int m = static_cast<int>(mv.size());
    QMat sys(s.n(), QVec(m));
    for (int v = 0; v < s.n(); ++v)
        for (int k = 0; k < m; ++k) sys[v][k] = s.b(mv[k], v);
    DominanceResult out;
    auto sol = solve(sys, to_q(d1 - d2), m);
    if (!sol) return out;
    if (!sol->homogeneous.empty()) {
        out.ambiguous = true;
        return out;
    }
    bool nonzero = false;
    for (const Q& g : sol->particular) {
        if (g < 0 || denominator(g) != 1) return out;
        if (g != 0) nonzero = true;
    }
    out.less = nonzero;
    return out;
}

std::string to_string(RhoOrder o) {
    switch (o) {
        case RhoOrder::StrictlyBelow: return "strictly-below";
        case RhoOrder::Below: return "below";
        case RhoOrder::Incomparable: return "incomparable";
    }
    return "incomparable";
}

RhoOrder rho_order(const Crystal& c, const Vec& x, const Vec& y) {
    bool strict = true, weak = true;
    for (int i : c.I()) {
        Int a = c.rho(x, i), b = c.rho(y, i);
        Int as = c.rho_star(x, i), bs = c.rho_star(y, i);
        if (!(a < b && as < bs)) strict = false;
        if (!(a <= b && as <= bs)) weak = false;
    }
    if (strict) return RhoOrder::StrictlyBelow;
    if (weak) return RhoOrder::Below;
    return RhoOrder::Incomparable;
}

}  // namespace cqp
