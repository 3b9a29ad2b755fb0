#include <cqp/laurent.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cqp {

namespace {

Int total_degree(const Vec& e) { return std::accumulate(e.begin(), e.end(), Int{0}); }

bool unit_coefficient(const LaurentPoly& f) {
    if (f.size() != 1) return false;
    const BigInt& c = f.terms().begin()->second;
    return c == 1 || c == -1;
}

// x^{-e}·(±1) for a unit monomial.
LaurentPoly inverse_monomial(const LaurentPoly& f) {
    const auto& [e, c] = *f.terms().begin();
    return LaurentPoly::monomial(-e, c);
}

std::string vertex_label(int k) { return "x" + std::to_string(k + 1); }

}  // namespace

LaurentPoly LaurentPoly::constant(int n, const BigInt& c) {
    LaurentPoly f(n);
    f.add_term(Vec(n, 0), c);
    return f;
}

LaurentPoly LaurentPoly::monomial(Vec exp, const BigInt& c) {
    LaurentPoly f(static_cast<int>(exp.size()));
    f.add_term(exp, c);
    return f;
}

LaurentPoly LaurentPoly::variable(int n, int k) { return monomial(unit(n, k)); }

BigInt LaurentPoly::coefficient(const Vec& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(const Vec& exp, const BigInt& c) {
    if (static_cast<int>(exp.size()) != n_) throw UsageError("exponent vector has the wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exp, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const BigInt& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, x] : terms_) x *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
    LaurentPoly out = constant(n_, 1), base = *this;
    while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

LaurentPoly LaurentPoly::shifted(const Vec& exp) const {
    LaurentPoly out(n_);
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + exp, c);
    return out;
}

LaurentPoly LaurentPoly::partial(int k) const {
    LaurentPoly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Vec d = e;
        d[k] = sub(d[k], 1);
        out.add_term(d, c * e[k]);
    }
    return out;
}

bool LaurentPoly::polynomial_in(const std::vector<int>& vars) const {
    for (const auto& [e, c] : terms_)
        for (int v : vars)
            if (e[v] < 0) return false;
    return true;
}

bool LaurentPoly::nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

std::vector<std::pair<Vec, BigInt>> LaurentPoly::sorted_terms() const {
    std::vector<std::pair<Vec, BigInt>> out(terms_.begin(), terms_.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        Int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return out;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted_terms()) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool constant_term = cqp::is_zero(e);
        bool wrote = false;
        if (mag != 1 || constant_term) {
            os << mag;
            wrote = true;
        }
        for (int k = 0; k < n_; ++k) {
            if (e[k] == 0) continue;
            os << (wrote ? "*" : "") << vertex_label(k);
            if (e[k] != 1) os << '^' << e[k];
            wrote = true;
        }
    }
    return os.str();
}

LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw InvariantError("division by the zero polynomial");
    if (f.is_zero()) return LaurentPoly(f.n());
    if (unit_coefficient(g)) return f * inverse_monomial(g);
    // Lexicographic order is a group order on exponents, so leading terms divide and the
    // quotient's lowest exponent is fixed in advance; going below it means no quotient exists.
    const auto& [g_top, g_top_c] = *g.terms().rbegin();
    const Vec floor = f.terms().begin()->first - g.terms().begin()->first;
    LaurentPoly rem = f, q(f.n());
    while (!rem.is_zero()) {
        const auto& [e, c] = *rem.terms().rbegin();
        Vec qe = e - g_top;
        if (qe < floor || c % g_top_c != 0) throw InvariantError("division is not exact in the Laurent ring");
        BigInt qc = c / g_top_c;
        q.add_term(qe, qc);
        for (const auto& [eg, cg] : g.terms()) rem.add_term(eg + qe, -qc * cg);
    }
    return q;
}

LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
    const int m = f.n();
    if (static_cast<int>(images.size()) != m) throw UsageError("substitution needs one image per variable");
    if (f.is_zero()) return LaurentPoly(images.empty() ? 0 : images[0].n());
    const int n = images[0].n();
    // clear negative powers of non-monomial images with a common denominator
    Vec clear(m, 0);
    for (const auto& [e, c] : f.terms())
        for (int w = 0; w < m; ++w)
            if (e[w] < 0 && !unit_coefficient(images[w])) clear[w] = std::max(clear[w], -e[w]);
    std::vector<LaurentPoly> inverse(m, LaurentPoly(n));
    for (int w = 0; w < m; ++w)
        if (unit_coefficient(images[w])) inverse[w] = inverse_monomial(images[w]);
    std::vector<std::map<Int, LaurentPoly>> powers(m);
    auto power = [&](int w, Int k) -> const LaurentPoly& {
        auto it = powers[w].find(k);
        if (it != powers[w].end()) return it->second;
        const LaurentPoly& base = k < 0 ? inverse[w] : images[w];
        return powers[w].emplace(k, base.pow(static_cast<unsigned>(k < 0 ? -k : k))).first->second;
    };
    LaurentPoly num(n);
    for (const auto& [e, c] : f.terms()) {
        LaurentPoly t = LaurentPoly::constant(n, c);
        for (int w = 0; w < m; ++w) {
            Int k = add(e[w], clear[w]);
            if (k != 0) t = t * power(w, k);
        }
        num += t;
    }
    LaurentPoly den = LaurentPoly::constant(n, 1);
    for (int w = 0; w < m; ++w)
        if (clear[w] > 0) den = den * power(w, clear[w]);
    return exact_divide(num, den);
}

Int trop_x(const LaurentPoly& f, const Vec& d) {
    if (f.is_zero()) throw UsageError("the zero polynomial has no tropicalization");
    Int best = 0;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        Int v = dot(e, d);
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

nlohmann::json to_json(const LaurentPoly& f) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [e, c] : f.sorted_terms()) out.push_back({{"exp", e}, {"coef", c.str()}});
    return out;
}

LaurentPoly laurent_from_json(const nlohmann::json& j, int n) {
    if (!j.is_array()) throw UsageError("a polynomial must be a JSON array of terms");
    LaurentPoly f(n);
    for (const auto& t : j) {
        if (!t.contains("exp") || !t.contains("coef")) throw UsageError("a term needs \"exp\" and \"coef\"");
        Vec e = t.at("exp").get<Vec>();
        const auto& c = t.at("coef");
        BigInt coef = c.is_string() ? BigInt(c.get<std::string>()) : BigInt(c.get<Int>());
        f.add_term(e, coef);
    }
    return f;
}

ClusterState::ClusterState(Seed initial) : initial_(initial), seed_(std::move(initial)) {
    for (int k = 0; k < seed_.n(); ++k) vars_.push_back(LaurentPoly::variable(seed_.n(), k));
}

ClusterState ClusterState::mutate(int u) const {
    if (u < 0 || u >= seed_.n() || seed_.is_frozen(u)) throw UsageError("can only mutate at a mutable vertex");
    const int n = seed_.n();
    LaurentPoly in = LaurentPoly::constant(n, 1), out = LaurentPoly::constant(n, 1);
    for (int v = 0; v < n; ++v) {
        Int b = seed_.b(v, u);
        if (b > 0) in = in * vars_[v].pow(static_cast<unsigned>(b));
        if (b < 0) out = out * vars_[v].pow(static_cast<unsigned>(-b));
    }
    ClusterState next = *this;
    next.vars_[u] = exact_divide(in + out, vars_[u]);
    if (!next.vars_[u].polynomial_in(seed_.frozen()))
        throw InvariantError("exchanged variable has a frozen variable in its denominator");
    next.seed_ = seed_.mutate(u);
    next.history_.push_back(u);
    return next;
}

ClusterState ClusterState::mutate(const MutSeq& seq) const {
    ClusterState s = *this;
    for (int u : seq) s = s.mutate(u);
    return s;
}

GenericCharacters::GenericCharacters(const Seed& s, Budget budget) : engine_(s, budget), base_(s) {}

const ClusterState& GenericCharacters::state(const MutSeq& seq) {
    if (seq.empty()) return base_;
    auto it = states_.find(seq);
    if (it != states_.end()) return it->second;
    MutSeq prefix(seq.begin(), seq.end() - 1);
    ClusterState next = state(prefix).mutate(seq.back());
    return states_.emplace(seq, std::move(next)).first->second;
}

LaurentPoly GenericCharacters::operator()(const Vec& delta) {
    const Seed& s = base_.seed();
    if (static_cast<int>(delta.size()) != s.n()) throw UsageError("weight has the wrong length");
    std::optional<MutSeq> seq;
    try {
        seq = engine_.try_negative_seq(0, delta, Rule::Delta);
    } catch (const ReachabilityError&) {
    }
    if (!seq)
        throw UnsupportedError("generic characters are only computed for negative-reachable weights; " +
                               cqp::to_string(delta) + " is not reachable within the search budget");
    Vec a = transport(s, delta, *seq, Rule::Delta);
    const ClusterState& st = state(*seq);
    LaurentPoly out = LaurentPoly::constant(s.n(), 1);
    for (int w = 0; w < s.n(); ++w)
        if (a[w] < 0) out = out * st.var(w).pow(static_cast<unsigned>(-a[w]));
    return out;
}

namespace {

// Clusters within `depth` mutations, keyed by the δ-vectors of their variables so that
// seeds reached along different paths are visited once.
template <class Visit>
void for_each_cluster(const Seed& s, int depth, Visit&& visit) {
    struct Node {
        MutSeq seq;
        Seed seed;
    };
    std::set<std::set<Vec>> seen;
    auto key = [&](const Node& nd) {
        std::set<Vec> k;
        for (int w : s.mutable_vertices()) k.insert(transport_back(s, -unit(s.n(), w), nd.seq, Rule::Delta));
        return k;
    };
    std::vector<Node> frontier{{{}, s}};
    seen.insert(key(frontier[0]));
    visit(frontier[0].seq);
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Node> next;
        for (const Node& nd : frontier)
            for (int u : s.mutable_vertices()) {
                if (!nd.seq.empty() && nd.seq.back() == u) continue;
                Node m{nd.seq, nd.seed.mutate(u)};
                m.seq.push_back(u);
                if (!seen.insert(key(m)).second) continue;
                visit(m.seq);
                next.push_back(std::move(m));
            }
        frontier = std::move(next);
    }
}

}  // namespace

std::vector<Vec> cluster_monomial_weights(const Seed& s, int max_exponent, int depth) {
    const int n = s.n();
    std::set<Vec> out;
    for_each_cluster(s, depth, [&](const MutSeq& seq) {
        std::vector<Vec> vars;
        for (int w = 0; w < n; ++w) vars.push_back(transport_back(s, -unit(n, w), seq, Rule::Delta));
        Vec a(n, 0);
        // odometer over the exponent box
        while (true) {
            Vec d(n, 0);
            for (int w = 0; w < n; ++w)
                if (a[w]) d = d + a[w] * vars[w];
            out.insert(d);
            int w = 0;
            while (w < n && a[w] == max_exponent) a[w++] = 0;
            if (w == n) break;
            ++a[w];
        }
    });
    return {out.begin(), out.end()};
}

LaurentSweep laurent_sweep(const Seed& s, int depth) {
    LaurentSweep out;
    std::map<MutSeq, ClusterState> states;
    std::set<Vec> seen_vars;
    for (int w = 0; w < s.n(); ++w) seen_vars.insert(-unit(s.n(), w));
    states.emplace(MutSeq{}, ClusterState(s));
    for_each_cluster(s, depth, [&](const MutSeq& seq) {
        ++out.clusters;
        if (seq.empty()) return;
        MutSeq prefix(seq.begin(), seq.end() - 1);
        // the parent is always a visited cluster, though maybe under another path
        auto it = states.find(prefix);
        if (it == states.end()) it = states.emplace(prefix, ClusterState(s).mutate(prefix)).first;
        ClusterState st = it->second.mutate(seq.back());
        int u = seq.back();
        if (seen_vars.insert(transport_back(s, -unit(s.n(), u), seq, Rule::Delta)).second && out.positive &&
            !st.var(u).nonnegative()) {
            out.positive = false;
            out.detail = "variable after " + cqp::to_string(Vec(seq.begin(), seq.end())) + ": " + st.var(u).to_string();
        }
        states.emplace(seq, std::move(st));
    });
    out.variables = seen_vars.size();
    return out;
}

Derivation::Derivation(std::vector<LaurentPoly> images) : images_(std::move(images)) {
    for (const auto& f : images_)
        if (f.n() != n()) throw UsageError("derivation images must live in the same ring");
}

Derivation Derivation::zero(int n) { return Derivation(std::vector<LaurentPoly>(n, LaurentPoly(n))); }

bool Derivation::is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

LaurentPoly Derivation::operator()(const LaurentPoly& f) const {
    LaurentPoly out(n());
    for (int k = 0; k < n(); ++k) {
        if (images_[k].is_zero()) continue;
        LaurentPoly d = f.partial(k);
        if (!d.is_zero()) out += d * images_[k];
    }
    return out;
}

Derivation operator-(const Derivation& a, const Derivation& b) {
    std::vector<LaurentPoly> im;
    for (int k = 0; k < a.n(); ++k) im.push_back(a.image(k) - b.image(k));
    return Derivation(std::move(im));
}

Derivation bracket(const Derivation& a, const Derivation& b) {
    std::vector<LaurentPoly> im;
    for (int k = 0; k < a.n(); ++k) im.push_back(a(b.image(k)) - b(a.image(k)));
    return Derivation(std::move(im));
}

Derivation ad_power(const Derivation& a, const Derivation& b, int k) {
    Derivation out = b;
    for (int t = 0; t < k; ++t) out = bracket(a, out);
    return out;
}

Derivation derivation_at(const Seed& s, const MutSeq& seq, int i, bool outgoing) {
    const int n = s.n();
    Seed t = s.mutate(seq);
    LaurentPoly target = LaurentPoly::constant(n, 1);
    for (int u = 0; u < n; ++u) {
        Int b = outgoing ? t.b(i, u) : t.b(u, i);
        if (b > 0) target = target * LaurentPoly::variable(n, u).pow(static_cast<unsigned>(b));
    }
    MutSeq back(seq.rbegin(), seq.rend());
    // cluster of s in the variables y of t, and y in the cluster of s
    ClusterState from_t = ClusterState(t).mutate(back);
    const ClusterState at_t = ClusterState(s).mutate(seq);
    std::vector<LaurentPoly> im;
    for (int v = 0; v < n; ++v) {
        LaurentPoly d = from_t.var(v).partial(i);
        im.push_back(d.is_zero() ? LaurentPoly(n) : substitute(d * target, at_t.vars()));
    }
    return Derivation(std::move(im));
}

LiftedStructure::LiftedStructure(const Crystal& c) : c_(c), base_(c.seed()), chars_(c.seed()) {
    Boundary& b = c.boundary();
    for (int i : c.I()) {
        R_.emplace(i, derivation_at(c.seed(), b.data(i).seq_to_simple, i, false));
        Rs_.emplace(i, derivation_at(c.seed(), b.data(i).dual_seq_to_simple, i, true));
        if (auto p = c.partner(i); p && !Rs_.count(*p))
            Rs_.emplace(*p, derivation_at(c.seed(), b.data(*p).dual_seq_to_simple, *p, true));
    }
}

const Derivation& LiftedStructure::L(int i) const {
    auto p = c_.partner(i);
    if (!p) throw UsageError("L_i needs the seminormal structure");
    return Rs_.at(*p);
}

Derivation LiftedStructure::H(int i) const {
    const QVec& row = c_.grading().rows.at(c_.index_of(i));
    const int n = c_.n();
    std::vector<LaurentPoly> im;
    for (int k = 0; k < n; ++k) {
        Q w = -row[k];
        if (denominator(w) != 1) throw UnsupportedError("H_i needs an integral grading");
        im.push_back(LaurentPoly::variable(n, k) * BigInt(numerator(w)));
    }
    return Derivation(std::move(im));
}

namespace {

std::string label(const std::string& op, int i) { return op + "_" + std::to_string(i + 1); }

SerreCheck vanishing(std::string relation, const Derivation& d) {
    SerreCheck out{std::move(relation), d.is_zero(), {}};
    if (!out.holds)
        for (int k = 0; k < d.n(); ++k)
            if (!d.image(k).is_zero()) {
                out.detail = "nonzero on " + vertex_label(k) + ": " + d.image(k).to_string();
                break;
            }
    return out;
}

int mixed_power(Int cstar) { return static_cast<int>(1 - cstar + std::min<Int>(-cstar, 1)); }

}  // namespace

std::vector<SerreCheck> check_serre(const LiftedStructure& ls, int i, int j) {
    const Crystal& c = ls.crystal();
    const CartanData& cd = c.cartan();
    int ii = c.index_of(i), jj = c.index_of(j);
    std::vector<SerreCheck> out;
    const Derivation &Ri = ls.R(i), &Rj = ls.R(j);
    if (i == j) {
        out.push_back(vanishing("[" + label("R", i) + "," + label("R", i) + "] = 0", bracket(Ri, Ri)));
    } else {
        int a = static_cast<int>(-cd.C[ii][jj]);
        std::string ad = "(ad " + label("R", i) + ")^";
        out.push_back(vanishing(ad + std::to_string(a + 1) + "(" + label("R", j) + ") = 0", ad_power(Ri, Rj, a + 1)));
        const LaurentPoly w = ad_power(Ri, Rj, a).image(j);
        out.push_back({ad + std::to_string(a) + "(" + label("R", j) + ")(" + vertex_label(j) + ") != 0", !w.is_zero(),
                       w.is_zero() ? "vanishes" : w.to_string()});
    }
    if (cd.has_star) {
        int p = mixed_power(cd.Cstar[ii][jj]);
        out.push_back(vanishing("(ad " + label("R", i) + ")^" + std::to_string(p) + "(" + label("R*", j) + ") = 0",
                                ad_power(Ri, ls.R_star(j), p)));
        int q = mixed_power(cd.Cstar[jj][ii]);
        out.push_back(vanishing("(ad " + label("R*", i) + ")^" + std::to_string(q) + "(" + label("R", j) + ") = 0",
                                ad_power(ls.R_star(i), Rj, q)));
    }
    if (c.mode() == CrystalMode::Seminormal) {
        Derivation br = bracket(Ri, ls.L(j));
        if (i == j) {
            Derivation diff = br - ls.H(i);
            SerreCheck chk = vanishing("[" + label("R", i) + "," + label("L", i) + "] = " + label("H", i), diff);
            out.push_back(std::move(chk));
        } else {
            out.push_back(vanishing("[" + label("R", i) + "," + label("L", j) + "] = 0", br));
        }
    }
    return out;
}

BiperfectReport check_bk_biperfect(LiftedStructure& ls, const Vec& delta, int i, bool star) {
    const Crystal& c = ls.crystal();
    GenericCharacters& C = ls.characters();
    BiperfectReport rep;
    rep.delta = delta;
    rep.i = i;
    rep.star = star;
    auto fail = [&](std::string why) {
        rep.ok = false;
        rep.detail = std::move(why);
        return rep;
    };
    rep.rho = star ? c.rho_star(delta, i) : c.rho(delta, i);
    const Derivation& D = star ? ls.R_star(i) : ls.R(i);
    LaurentPoly image = D(C(delta));
    LaurentPoly rem = image;
    if (rep.rho > 0) {
        std::optional<Vec> up = star ? c.r_star(delta, i) : c.r(delta, i);
        if (!up) return fail("raising operator returned 0 with a positive string length");
        try {
            rem -= C(*up) * BigInt(rep.rho);
        } catch (const UnsupportedError& e) {
            return fail(std::string("leading term not computable: ") + e.what());
        }
    }
    rep.leading_ok = true;
    const Seed& s = c.seed();
    // peel off pointed elements from the top of the dominance order
    for (int guard = 0; !rem.is_zero(); ++guard) {
        if (guard > 10000) return fail("remainder decomposition did not terminate");
        const Vec* top = nullptr;
        for (const auto& [e, coef] : rem.terms()) {
            Vec eta = -e;
            bool dominated = false;
            for (const auto& [f, cf] : rem.terms())
                if (f != e && dominance_lt(s, eta, -f).less) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                top = &e;
                break;
            }
        }
        if (!top) return fail("no dominance-maximal degree in the remainder");
        Vec eta = -*top;
        BigInt coef = rem.coefficient(*top);
        LaurentPoly basis(s.n());
        try {
            basis = C(eta);
        } catch (const UnsupportedError& e) {
            return fail("remainder degree " + to_string(eta) + " is not computable: " + e.what());
        }
        if (basis.coefficient(-eta) != 1) return fail("generic character at " + to_string(eta) + " is not pointed");
        rem -= basis * coef;
        rep.remainder_degrees.push_back(eta);
        rep.remainder_coefficients.push_back(coef);
        Int r = star ? c.rho_star(eta, i) : c.rho(eta, i);
        if (!(r < rep.rho - 1))
            return fail("remainder degree " + to_string(eta) + " has string length " + std::to_string(r));
    }
    rep.ok = true;
    return rep;
}

}  // namespace cqp
