// crystal-qp: batch front end for the crystal and cluster library.
//
// Vertex labels on the command line and in reports are 1-based; vectors are
// comma-separated integers in the seed's vertex order. Seed JSON keeps the 0-based
// indices of its schema.

#include <cqp/catalog.hpp>
#include <cqp/crystal_graph.hpp>
#include <cqp/laurent.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace cqp;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFindings = 1, kUsage = 2, kFailure = 3;

struct Options {
    std::string seed;
    std::string format = "json";
    std::string out;
    int jobs = 1;
    int max_depth = 64;
    std::size_t max_states = 400000;

    std::string delta, other, seq, word, weight;
    int box = 2;
    int vertex = 0;
    std::string kind = "R";
    std::string check;
    int depth = 4;
    int max_exponent = 2;
    bool star = false, dual = false, no_mutation = false;

    Budget budget() const { return {max_depth, max_states}; }
};

json q_json(const Q& q) {
    if (denominator(q) == 1) return static_cast<Int>(numerator(q));
    return q.str();
}

json q_json(const QVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q_json(q));
    return a;
}

json labels(const std::vector<int>& vs) {
    json a = json::array();
    for (int v : vs) a.push_back(v + 1);
    return a;
}

std::vector<int> parse_labels(const std::string& s, int n, const std::string& what) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (Int x : parse_vec(s)) {
        if (x < 1 || x > n) throw UsageError(what + " label " + std::to_string(x) + " out of range 1.." + std::to_string(n));
        out.push_back(static_cast<int>(x - 1));
    }
    return out;
}

Vec parse_point(const std::string& s, int n, const std::string& flag) {
    if (s.empty()) throw UsageError(flag + " is required");
    Vec v = parse_vec(s);
    if (static_cast<int>(v.size()) != n)
        throw UsageError(flag + " has " + std::to_string(v.size()) + " entries, the seed has " + std::to_string(n) + " vertices");
    return v;
}

int frozen_label(const Crystal& c, int label) {
    int v = label - 1;
    if (v < 0 || v >= c.n() || !c.seed().is_frozen(v)) throw UsageError("vertex " + std::to_string(label) + " is not frozen");
    return v;
}

class Session {
public:
    explicit Session(const Options& o) : o_(o), cs_(catalog_lookup(o.seed)) {}

    const CatalogSeed& catalog() const { return cs_; }
    const Seed& seed() const { return cs_.seed; }
    Crystal& crystal() {
        if (!crystal_) crystal_.emplace(cs_.seed, cs_.I, o_.budget());
        return *crystal_;
    }

private:
    const Options& o_;
    CatalogSeed cs_;
    std::optional<Crystal> crystal_;
};

struct Output {
    json body;
    std::string text;  // preformatted, used for DOT
    int code = kOk;
};

Output cmd_seed(Session& s) {
    json j = to_json(s.seed());
    j["names"] = s.catalog().names;
    j["I"] = labels(s.catalog().I);
    j["canonical_form"] = canonical_form(s.seed());
    return {j};
}

Output cmd_mutate(Session& s, const Options& o) {
    MutSeq seq = parse_labels(o.seq, s.seed().n(), "mutation");
    Seed t = s.seed().mutate(seq);
    json j{{"sequence", labels(seq)}, {"seed", to_json(t)}};
    if (!o.delta.empty()) {
        Vec d = parse_point(o.delta, s.seed().n(), "--delta");
        j["delta"] = transport(s.seed(), d, seq, Rule::Delta);
    }
    return {j};
}

Output cmd_invariants(Session& s) {
    Boundary& b = s.crystal().boundary();
    json verts = json::object();
    for (int i : b.frozen()) {
        const BoundaryData& d = b.data(i);
        json v{{"eps", d.eps}, {"eps_check", d.eps_check}, {"dim_E", d.dim_E}, {"seq_to_simple", labels(d.seq_to_simple)}};
        if (b.has_dual()) {
            v["eps_star"] = d.eps_star;
            v["dim_E_star"] = d.dim_Estar;
            v["dual_seq_to_simple"] = labels(d.dual_seq_to_simple);
            v["rigid"] = d.rigid;
        }
        verts[std::to_string(i + 1)] = v;
    }
    return {json{{"frozen", labels(b.frozen())}, {"boundary", verts}}};
}

Output cmd_cartan(Session& s) {
    Crystal& c = s.crystal();
    const CartanData& cd = c.cartan();
    const WeightGrading& g = c.grading();
    json rows = json::object();
    for (std::size_t k = 0; k < g.I.size(); ++k) rows[std::to_string(g.I[k] + 1)] = q_json(g.rows[k]);
    json pairs = json::array();
    for (int i : c.I())
        if (auto p = c.partner(i)) pairs.push_back({i + 1, *p + 1});
    json j{{"I", labels(cd.I)},
           {"C", cd.C},
           {"grading", rows},
           {"nullity", g.nullity},
           {"span_condition", g.span_condition},
           {"integral", g.integral},
           {"mode", c.mode() == CrystalMode::Seminormal ? "seminormal" : "upper-seminormal"},
           {"tau_exact_pairs", pairs}};
    if (cd.has_star) j["C_star"] = cd.Cstar;
    return {j};
}

Output cmd_graph(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    GraphOptions g;
    g.lo = -o.box;
    g.hi = o.box;
    g.jobs = o.jobs;
    g.rho_star = o.star;
    if (!o.weight.empty()) {
        Vec w = parse_vec(o.weight);
        if (w.size() != c.I().size()) throw UsageError("--weight needs one entry per index in I");
        g.weight = std::vector<Q>(w.begin(), w.end());
    }
    CrystalGraph graph = crystal_graph(c, g);
    if (o.format == "dot") return {json{}, to_dot(graph)};
    return {to_json(graph)};
}

Output cmd_rho(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    Vec d = parse_point(o.delta, c.n(), "--delta");
    if (!c.is_mu_supported(d)) throw UsageError("delta " + to_string(d) + " is not mu-supported");
    json rho = json::object(), star = json::object();
    for (int i : c.I()) rho[std::to_string(i + 1)] = c.rho(d, i);
    json j{{"rho", rho}};
    if (o.star) {
        for (int i : c.I()) star[std::to_string(i + 1)] = c.rho_star(d, i);
        j["rho_star"] = star;
    }
    return {j};
}

Output cmd_kashiwara(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    if (o.word.empty()) throw UsageError("--word is required");
    std::vector<int> word;
    for (Int x : parse_vec(o.word)) word.push_back(frozen_label(c, static_cast<int>(x)));
    if (o.dual) {
        json chain = json::array();
        for (const Triple& t : c.dual_raising_chain(word))
            chain.push_back({{"delta", t.delta}, {"dcheck", t.dcheck}, {"dim", t.dim}});
        return {json{{"word", labels(word)}, {"dual_chain", chain}}};
    }
    Vec d = parse_point(o.delta, c.n(), "--delta");
    if (!c.is_mu_supported(d)) throw UsageError("delta " + to_string(d) + " is not mu-supported");
    KashiwaraDatum k = c.kashiwara_data(d, word);
    return {json{{"word", labels(word)}, {"values", k.values}, {"end", k.end}}};
}

json violations_json(const AxiomReport& r) {
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({{"kind", x.kind}, {"point", x.point}, {"i", x.i < 0 ? json(nullptr) : json(x.i + 1)}, {"detail", x.detail}});
    return v;
}

Output cmd_verify(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    json j{{"check", o.check}};
    bool ok = true;
    if (o.check == "axioms" || o.check == "weyl") {
        auto pts = mu_supported_points(c, -o.box, o.box, o.jobs);
        AxiomReport r;
        if (o.check == "axioms") {
            AxiomOptions opt;
            opt.mutation = !o.no_mutation;
            opt.dual = o.dual;
            opt.jobs = o.jobs;
            r = verify_axioms(c, pts, opt);
        } else {
            r = verify_weyl(c, pts, o.jobs);
        }
        j["box"] = o.box;
        j["points"] = r.points;
        j["violations"] = violations_json(r);
        ok = r.ok();
    } else if (o.check == "serre") {
        LiftedStructure ls(c);
        json rel = json::array();
        for (int i : c.I())
            for (int k : c.I())
                for (const auto& x : check_serre(ls, i, k)) {
                    rel.push_back({{"i", i + 1}, {"j", k + 1}, {"relation", x.relation}, {"holds", x.holds}, {"detail", x.detail}});
                    ok = ok && x.holds;
                }
        j["relations"] = rel;
    } else if (o.check == "bk") {
        LiftedStructure ls(c);
        json reps = json::array(), failures = json::array();
        std::size_t checked = 0;
        for (const Vec& d : cluster_monomial_weights(c.seed(), o.max_exponent, o.depth))
            for (int i : c.I())
                for (bool st : {false, true}) {
                    if (st && !c.boundary().has_dual()) continue;
                    auto r = check_bk_biperfect(ls, d, i, st);
                    ++checked;
                    if (!r.ok)
                        failures.push_back({{"delta", r.delta}, {"i", i + 1}, {"star", st}, {"rho", r.rho}, {"detail", r.detail}});
                }
        j["checked"] = checked;
        j["violations"] = failures;
        ok = failures.empty();
    } else if (o.check == "laurent") {
        auto r = laurent_sweep(c.seed(), o.depth);
        j["depth"] = o.depth;
        j["clusters"] = r.clusters;
        j["variables"] = r.variables;
        j["positive"] = r.positive;
        if (!r.positive) j["detail"] = r.detail;
        ok = r.positive;
    } else {
        throw UsageError("unknown check '" + o.check + "' (axioms, weyl, serre, bk, laurent)");
    }
    j["ok"] = ok;
    return {j, {}, ok ? kOk : kFindings};
}

Output cmd_character(Session& s, const Options& o) {
    Vec d = parse_point(o.delta, s.seed().n(), "--delta");
    GenericCharacters C(s.seed(), o.budget());
    LaurentPoly f = C(d);
    return {json{{"delta", d}, {"terms", to_json(f)}, {"polynomial", f.to_string()}}};
}

Output cmd_derivation(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    int i = frozen_label(c, o.vertex);
    LiftedStructure ls(c);
    Derivation d = o.kind == "R"       ? ls.R(i)
                   : o.kind == "Rstar" ? ls.R_star(i)
                   : o.kind == "L"     ? ls.L(i)
                   : o.kind == "H"     ? ls.H(i)
                                       : throw UsageError("unknown derivation '" + o.kind + "' (R, Rstar, L, H)");
    json images = json::object();
    for (int k = 0; k < d.n(); ++k)
        images["x" + std::to_string(k + 1)] = {{"terms", to_json(d.image(k))}, {"polynomial", d.image(k).to_string()}};
    json j{{"kind", o.kind}, {"vertex", o.vertex}, {"images", images}};
    if (!o.delta.empty()) {
        Vec delta = parse_point(o.delta, c.n(), "--delta");
        LaurentPoly f = d(ls.characters()(delta));
        j["applied"] = {{"delta", delta}, {"terms", to_json(f)}, {"polynomial", f.to_string()}};
    }
    return {j};
}

Output cmd_orders(Session& s, const Options& o) {
    Crystal& c = s.crystal();
    Vec x = parse_point(o.delta, c.n(), "--delta");
    Vec y = parse_point(o.other, c.n(), "--other");
    auto lt = dominance_lt(c.seed(), x, y), gt = dominance_lt(c.seed(), y, x);
    std::string dom = x == y ? "equal" : lt.less ? "below" : gt.less ? "above" : "incomparable";
    json j{{"dominance", dom}, {"ambiguous", lt.ambiguous || gt.ambiguous}};
    if (c.is_mu_supported(x) && c.is_mu_supported(y)) j["rho_order"] = to_string(rho_order(c, x, y));
    return {j};
}

void emit(const Output& out, const Options& o) {
    std::string text = !out.text.empty()  ? out.text
                       : o.format == "pretty" ? out.body.dump(2) + "\n"
                                               : out.body.dump() + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Crystal structures on cluster algebras from quivers with potential"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "catalog name (unipotent:A3, base-affine:A2, grassmannian:2x3, omega:A3, canonical:2,3,6) or seed JSON file")
            ->required();
        sub->add_option("--format", o.format, "json, dot or pretty")->check(CLI::IsMember({"json", "dot", "pretty"}));
        sub->add_option("--out", o.out, "write to this file instead of stdout");
        sub->add_option("--jobs", o.jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--max-depth", o.max_depth, "search budget: mutation depth");
        sub->add_option("--max-states", o.max_states, "search budget: visited states");
    };

    auto* seed = app.add_subcommand("seed", "print the seed");
    auto* mutate = app.add_subcommand("mutate", "mutate the seed and optionally transport a delta-vector");
    mutate->add_option("--seq", o.seq, "mutation sequence, 1-based labels")->required();
    mutate->add_option("--delta", o.delta, "delta-vector to transport");
    auto* inv = app.add_subcommand("invariants", "boundary invariants of every frozen vertex");
    auto* cartan = app.add_subcommand("cartan", "Cartan matrix, grading and tau-exact pairs");
    auto* graph = app.add_subcommand("crystal-graph", "crystal graph on the mu-supported points of a box");
    graph->add_option("--box", o.box, "coordinates in [-box, box]");
    graph->add_option("--weight", o.weight, "keep one weight space");
    graph->add_flag("--star", o.star, "also record rho-star");
    auto* rho = app.add_subcommand("rho", "string lengths of a point");
    rho->add_option("--delta", o.delta)->required();
    rho->add_flag("--star", o.star, "also report rho-star");
    auto* kash = app.add_subcommand("kashiwara", "Kashiwara data along a word of frozen labels");
    kash->add_option("--word", o.word)->required();
    kash->add_option("--delta", o.delta);
    kash->add_flag("--dual", o.dual, "dual raising chain of the word instead of a point's data");
    auto* verify = app.add_subcommand("verify", "run a verification: axioms, weyl, serre, bk or laurent");
    verify->add_option("check", o.check)->required();
    verify->add_option("--box", o.box, "coordinates in [-box, box]");
    verify->add_option("--depth", o.depth, "mutation depth for bk and laurent");
    verify->add_option("--max-exponent", o.max_exponent, "cluster monomial exponents for bk");
    verify->add_flag("--dual", o.dual, "also check the dual operators");
    verify->add_flag("--no-mutation", o.no_mutation, "skip the comparison with adjacent seeds");
    auto* chr = app.add_subcommand("character", "generic character of a reachable delta-vector");
    chr->add_option("--delta", o.delta)->required();
    auto* der = app.add_subcommand("derivation", "a lifted derivation in the initial cluster");
    der->add_option("--vertex", o.vertex, "frozen label i")->required();
    der->add_option("--kind", o.kind, "R, Rstar, L or H");
    der->add_option("--delta", o.delta, "also apply it to the character of this point");
    auto* ord = app.add_subcommand("orders", "dominance and string-length order between two points");
    ord->add_option("--delta", o.delta)->required();
    ord->add_option("--other", o.other)->required();

    for (auto* sub : {seed, mutate, inv, cartan, graph, rho, kash, verify, chr, der, ord}) common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (o.format == "dot" && !graph->parsed()) throw UsageError("--format dot is only available for crystal-graph");
        Session s(o);
        Output out;
        if (seed->parsed()) out = cmd_seed(s);
        else if (mutate->parsed()) out = cmd_mutate(s, o);
        else if (inv->parsed()) out = cmd_invariants(s);
        else if (cartan->parsed()) out = cmd_cartan(s);
        else if (graph->parsed()) out = cmd_graph(s, o);
        else if (rho->parsed()) out = cmd_rho(s, o);
        else if (kash->parsed()) out = cmd_kashiwara(s, o);
        else if (verify->parsed()) out = cmd_verify(s, o);
        else if (chr->parsed()) out = cmd_character(s, o);
        else if (der->parsed()) out = cmd_derivation(s, o);
        else out = cmd_orders(s, o);
        emit(out, o);
        return out.code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ReachabilityError& e) {
        std::cerr << "search budget exhausted: " << e.what() << "\n";
        return kFailure;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kFailure;
    } catch (const OverflowError& e) {
        std::cerr << "integer overflow: " << e.what() << "\n";
        return kFailure;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
