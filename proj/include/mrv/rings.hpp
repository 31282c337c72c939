#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mrv/core.hpp"
#include "mrv/laurent.hpp"
#include "mrv/linalg.hpp"

namespace mrv {

enum class Coeff { Z, Z2 };
enum class Grading { Single, Bigraded };

struct GeneratorSpec {
    std::string name;     // token used in rendering and JSON
    std::string display;  // human-readable form when it differs from name
    int p = 0;
    int q = 0;            // weight for k = 0; families step by +1 per k
    bool family = false;
};

// Affine parameter expression: sum of template variables (with multiplicity)
// plus a constant offset.
struct ParamExpr {
    std::vector<int> vars;
    int offset = 0;

    int eval(const std::vector<int>& vals) const
    {
        int v = offset;
        for (int i : vars) v += vals[size_t(i)];
        return v;
    }
};

struct RelFactor {
    int gen = 0;
    ParamExpr param;
};

struct RelTerm {
    Int coeff;
    std::vector<RelFactor> factors;
};

struct EqualSums {
    std::vector<int> lhs;
    std::vector<int> rhs;

    bool holds(const std::vector<int>& vals) const
    {
        int a = 0, b = 0;
        for (int i : lhs) a += vals[size_t(i)];
        for (int i : rhs) b += vals[size_t(i)];
        return a == b;
    }
};

struct RelationTemplate {
    std::string label;
    int nparams = 0;
    std::optional<EqualSums> constraint;
    std::vector<RelTerm> terms;
};

struct RingPresentation {
    std::string name;
    Coeff coeff = Coeff::Z;
    Grading grading = Grading::Single;
    bool laurent_model = false;  // mod-2 motivic ring: pieces come from laurent.hpp
    std::vector<GeneratorSpec> gens;
    std::vector<RelationTemplate> rels;

    bool bigraded() const { return grading == Grading::Bigraded; }

    int gen_index(const std::string& gname) const
    {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == gname) return int(i);
        throw usage_error("unknown generator '" + gname + "' in ring " + name);
    }

    Bidegree instance_degree(const GenId& id) const
    {
        const GeneratorSpec& g = gens[size_t(id.gen)];
        if (bigraded()) return Bidegree(g.p, g.q + id.param);
        return Bidegree(g.p);
    }

    Bidegree degree(const Monomial& m) const
    {
        Bidegree d = bigraded() ? Bidegree(0, 0) : Bidegree(0);
        for (const auto& [id, e] : m.factors) {
            Bidegree gd = instance_degree(id);
            for (int k = 0; k < e; ++k) d = d + gd;
        }
        return d;
    }

    bool homogeneous(const Element& el, Bidegree* deg_out = nullptr) const
    {
        if (el.is_zero()) return true;
        Bidegree d = degree(el.terms.front().first);
        for (const auto& [m, c] : el.terms)
            if (degree(m) != d) return false;
        if (deg_out) *deg_out = d;
        return true;
    }

    std::string render(const Monomial& m) const
    {
        if (m.is_unit()) return "1";
        std::string out;
        for (const auto& [id, e] : m.factors) {
            if (!out.empty()) out += "\xc2\xb7";
            const GeneratorSpec& g = gens[size_t(id.gen)];
            out += g.name;
            if (g.family) out += "(" + std::to_string(id.param) + ")";
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out;
    }

    std::string render(const Element& el) const
    {
        if (el.is_zero()) return "0";
        std::string out;
        for (const auto& [m, c] : el.terms) {
            if (!out.empty()) out += " + ";
            if (c != 1) out += c.str() + "\xc2\xb7";
            out += render(m);
        }
        return out;
    }

    // Display order: graded-lexicographic; within one degree the monomial
    // with the higher exponent on the earliest generator instance sorts first.
    bool display_less(const Monomial& x, const Monomial& y) const
    {
        Bidegree dx = degree(x), dy = degree(y);
        if (dx != dy) return dx < dy;
        size_t i = 0, j = 0;
        while (i < x.factors.size() && j < y.factors.size()) {
            const auto& [gx, ex] = x.factors[i];
            const auto& [gy, ey] = y.factors[j];
            if (gx == gy) {
                if (ex != ey) return ex > ey;
                ++i;
                ++j;
            } else if (gx < gy) {
                return true;  // x has the earlier instance
            } else {
                return false;
            }
        }
        if (i < x.factors.size()) return true;
        if (j < y.factors.size()) return false;
        return false;
    }

    int family_letters(const Monomial& m) const
    {
        int n = 0;
        for (const auto& [id, e] : m.factors)
            if (gens[size_t(id.gen)].family) n += e;
        return n;
    }

    // Normal form concentrates family parameters in the lexicographically
    // last family factor: at most one nonzero parameter, and none on earlier
    // family generators when a later one is present.
    bool concentrated(const Monomial& m) const
    {
        int last_family_gen = -1;
        for (const auto& [id, e] : m.factors)
            if (gens[size_t(id.gen)].family) last_family_gen = std::max(last_family_gen, id.gen);
        if (last_family_gen < 0) return true;
        int nonzero = 0;
        for (const auto& [id, e] : m.factors) {
            if (!gens[size_t(id.gen)].family || id.param == 0) continue;
            if (id.gen != last_family_gen) return false;
            nonzero += e;
        }
        return nonzero <= 1;
    }

    int y2_exp(const Monomial& m) const
    {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == "y2") return m.total_exp_of_gen(int(i));
        return 0;
    }

    // Column order for quotient elimination: prefer to eliminate monomials
    // with more family letters (later families first), then non-concentrated
    // ones, then higher y2 powers, so surviving basis monomials are the
    // normal forms.
    bool elimination_less(const Monomial& x, const Monomial& y) const
    {
        const int lx = family_letters(x), ly = family_letters(y);
        if (lx != ly) return lx > ly;
        for (int g = int(gens.size()) - 1; g >= 0; --g) {
            if (!gens[size_t(g)].family) continue;
            const int ex = x.total_exp_of_gen(g), ey = y.total_exp_of_gen(g);
            if (ex != ey) return ex > ey;
        }
        const bool cx = concentrated(x), cy = concentrated(y);
        if (cx != cy) return !cx;
        const int yx = y2_exp(x), yy = y2_exp(y);
        if (yx != yy) return yx > yy;
        return display_less(x, y);
    }
};

// ---------------------------------------------------------------------------
// Catalog of the bundled presentations

struct Catalog {
    std::vector<RingPresentation> rings;

    const RingPresentation& ring(const std::string& name) const
    {
        for (const auto& r : rings)
            if (r.name == name) return r;
        throw usage_error("unknown ring '" + name + "'");
    }

    RingPresentation& ring_mut(const std::string& name)
    {
        for (auto& r : rings)
            if (r.name == name) return r;
        throw usage_error("unknown ring '" + name + "'");
    }

    bool has_ring(const std::string& name) const
    {
        for (const auto& r : rings)
            if (r.name == name) return true;
        return false;
    }
};

namespace detail {

inline RelationTemplate monomial_relation(const std::string& label, const Int& coeff,
                                          std::vector<int> gens)
{
    RelationTemplate t;
    t.label = label;
    RelTerm term;
    term.coeff = coeff;
    for (int g : gens) term.factors.push_back({g, {}});
    t.terms.push_back(std::move(term));
    return t;
}

}  // namespace detail

inline Catalog build_catalog()
{
    Catalog cat;

    {
        RingPresentation r;
        r.name = "classical-z2";
        r.coeff = Coeff::Z2;
        r.grading = Grading::Single;
        r.gens = {{"w2", "", 2, 0, false}, {"w3", "", 3, 0, false}, {"w4", "", 4, 0, false}};
        cat.rings.push_back(std::move(r));
    }

    {
        RingPresentation r;
        r.name = "classical-z";
        r.coeff = Coeff::Z;
        r.grading = Grading::Single;
        r.gens = {{"p1", "", 4, 0, false},
                  {"sqp2", "sqrt(p2)", 4, 0, false},
                  {"bw2", "btilde(w2)", 3, 0, false}};
        r.rels.push_back(detail::monomial_relation("2bw2", 2, {2}));
        cat.rings.push_back(std::move(r));
    }

    {
        RingPresentation r;
        r.name = "chow";
        r.coeff = Coeff::Z;
        r.grading = Grading::Single;  // graded by codimension
        r.gens = {{"d2", "", 2, 0, false},
                  {"d3", "", 3, 0, false},
                  {"d4", "", 4, 0, false},
                  {"y2", "", 2, 0, false}};
        r.rels.push_back(detail::monomial_relation("2d3", 2, {1}));
        r.rels.push_back(detail::monomial_relation("y2*d3", 1, {3, 1}));
        {
            RelationTemplate t;
            t.label = "y2^2-4d4";
            t.terms.push_back({Int(1), {{3, {}}, {3, {}}}});
            t.terms.push_back({Int(-4), {{2, {}}}});
            r.rels.push_back(std::move(t));
        }
        cat.rings.push_back(std::move(r));
    }

    // the two integral motivic presentations share generators and the core
    // relation list; they differ in how far products of the torsion families
    // are identified
    auto motivic_base = []() {
        RingPresentation r;
        r.coeff = Coeff::Z;
        r.grading = Grading::Bigraded;
        r.gens = {{"d2", "", 4, 2, false}, {"d3", "", 6, 3, false},  {"d4", "", 8, 4, false},
                  {"y2", "", 4, 2, false}, {"A", "btilde(tau^k w2)", 3, 2, true},
                  {"B", "btilde(tau^(k-1) w2 w4)", 7, 4, true}};
        const int d3 = 1, d4 = 2, y2 = 3, A = 4, B = 5;
        r.rels.push_back(detail::monomial_relation("2d3", 2, {d3}));
        r.rels.push_back(detail::monomial_relation("y2*d3", 1, {y2, d3}));
        {
            RelationTemplate t;
            t.label = "y2^2-4d4";
            t.terms.push_back({Int(1), {{y2, {}}, {y2, {}}}});
            t.terms.push_back({Int(-4), {{d4, {}}}});
            r.rels.push_back(std::move(t));
        }
        auto family_monomial = [](const std::string& label, const Int& coeff, int gen,
                                  std::vector<int> extra) {
            RelationTemplate t;
            t.label = label;
            t.nparams = 1;
            RelTerm term;
            term.coeff = coeff;
            for (int g : extra) term.factors.push_back({g, {}});
            term.factors.push_back({gen, {{0}, 0}});
            t.terms.push_back(std::move(term));
            return t;
        };
        r.rels.push_back(family_monomial("2A", 2, A, {}));
        r.rels.push_back(family_monomial("2B", 2, B, {}));
        r.rels.push_back(family_monomial("y2*A", 1, A, {y2}));
        r.rels.push_back(family_monomial("y2*B", 1, B, {y2}));
        auto identification = [](const std::string& label, int g1, int g2) {
            RelationTemplate t;
            t.label = label;
            t.nparams = 4;
            t.constraint = EqualSums{{0, 1}, {2, 3}};
            t.terms.push_back({Int(1), {{g1, {{0}, 0}}, {g2, {{1}, 0}}}});
            t.terms.push_back({Int(-1), {{g1, {{2}, 0}}, {g2, {{3}, 0}}}});
            return t;
        };
        r.rels.push_back(identification("AA-sum", A, A));
        r.rels.push_back(identification("BB-sum", B, B));
        r.rels.push_back(identification("AB-sum", A, B));
        {
            RelationTemplate t;  // triple products of A drop into d3 * A
            t.label = "AAA=d3A";
            t.nparams = 3;
            t.terms.push_back({Int(1), {{A, {{0}, 0}}, {A, {{1}, 0}}, {A, {{2}, 0}}}});
            t.terms.push_back({Int(-1), {{d3, {}}, {A, {{0, 1, 2}, 1}}}});
            r.rels.push_back(std::move(t));
        }
        return r;
    };

    {
        RingPresentation r = motivic_base();
        r.name = "motivic-z";
        const int d3 = 1, d4 = 2, A = 4, B = 5;
        {
            RelationTemplate t;
            t.label = "BB=d4AA";
            t.nparams = 4;
            t.constraint = EqualSums{{0, 1}, {2, 3}};
            t.terms.push_back({Int(1), {{B, {{0}, 0}}, {B, {{1}, 0}}}});
            t.terms.push_back({Int(-1), {{d4, {}}, {A, {{2}, 0}}, {A, {{3}, 0}}}});
            r.rels.push_back(std::move(t));
        }
        {
            RelationTemplate t;
            t.label = "AAB=d3B";
            t.nparams = 3;
            t.terms.push_back({Int(1), {{A, {{0}, 0}}, {A, {{1}, 0}}, {B, {{2}, 0}}}});
            t.terms.push_back({Int(-1), {{d3, {}}, {B, {{0, 1, 2}, 1}}}});
            r.rels.push_back(std::move(t));
        }
        cat.rings.push_back(std::move(r));
    }

    {
        RingPresentation r = motivic_base();
        r.name = "motivic-z-published";
        const int d4 = 2, A = 4, B = 5;
        {
            RelationTemplate t;  // squares only, as printed
            t.label = "B^2=d4A^2";
            t.nparams = 1;
            t.terms.push_back({Int(1), {{B, {{0}, 0}}, {B, {{0}, 0}}}});
            t.terms.push_back({Int(-1), {{d4, {}}, {A, {{0}, 0}}, {A, {{0}, 0}}}});
            r.rels.push_back(std::move(t));
        }
        cat.rings.push_back(std::move(r));
    }

    {
        RingPresentation r;
        r.name = "motivic-z2";
        r.coeff = Coeff::Z2;
        r.grading = Grading::Bigraded;
        r.laurent_model = true;
        r.gens = {{"tau", "\xcf\x84", 0, 1, false},
                  {"y02", "", 4, 2, false},
                  {"w2a", "w2^alg", 2, 2, false},
                  {"w3a", "w3^alg", 3, 2, false},
                  {"w4a", "w4^alg", 4, 3, false},
                  {"iw22", "tau^-2 (w2^alg)^2", 4, 2, false},
                  {"iw33", "tau^-1 (w3^alg)^2", 6, 3, false},
                  {"iw44", "tau^-2 (w4^alg)^2", 8, 4, false},
                  {"iw23", "tau^-1 w2^alg w3^alg", 5, 3, false},
                  {"iw24", "tau^-1 w2^alg w4^alg", 6, 4, false},
                  {"iw34", "tau^-1 w3^alg w4^alg", 7, 4, false}};
        const int tau = 0, y02 = 1, w2a = 2, w3a = 3, w4a = 4;
        const int iw33 = 6, iw23 = 8, iw24 = 9, iw34 = 10;
        r.rels.push_back(detail::monomial_relation("tau*y02", 1, {tau, y02}));
        r.rels.push_back(detail::monomial_relation("y02^2", 1, {y02, y02}));
        r.rels.push_back(detail::monomial_relation("y02*w2a", 1, {y02, w2a}));
        r.rels.push_back(detail::monomial_relation("y02*w3a", 1, {y02, w3a}));
        r.rels.push_back(detail::monomial_relation("y02*w4a", 1, {y02, w4a}));
        r.rels.push_back(detail::monomial_relation("y02*iw33", 1, {y02, iw33}));
        r.rels.push_back(detail::monomial_relation("y02*iw23", 1, {y02, iw23}));
        r.rels.push_back(detail::monomial_relation("y02*iw24", 1, {y02, iw24}));
        r.rels.push_back(detail::monomial_relation("y02*iw34", 1, {y02, iw34}));
        cat.rings.push_back(std::move(r));
    }

    return cat;
}

// ---------------------------------------------------------------------------
// Spanning monomials of one degree

inline std::vector<Monomial> enumerate_monomials(const RingPresentation& ring, const Bidegree& deg)
{
    if (ring.laurent_model)
        throw internal_error("enumerate_monomials: " + ring.name + " uses the laurent model");
    if (ring.bigraded() != deg.bigraded())
        throw usage_error("degree grading does not match ring " + ring.name);

    struct Instance {
        GenId id;
        int p, q;
    };
    std::vector<Instance> inst;
    for (size_t g = 0; g < ring.gens.size(); ++g) {
        const GeneratorSpec& spec = ring.gens[g];
        if (spec.p <= 0) throw internal_error("enumeration requires positive p-degrees");
        if (!spec.family) {
            inst.push_back({{int(g), 0}, spec.p, spec.q});
        } else {
            const int cap = deg.bigraded() ? deg.q - spec.q : -1;
            for (int k = 0; k <= cap; ++k) inst.push_back({{int(g), k}, spec.p, spec.q + k});
        }
    }

    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(size_t, int, int)> dfs = [&](size_t idx, int p_left, int q_left) {
        if (p_left == 0 && (!deg.bigraded() || q_left == 0)) {
            out.push_back(cur);
            return;
        }
        if (idx == inst.size() || p_left < 0 || (deg.bigraded() && q_left < 0)) return;
        const Instance& in = inst[idx];
        int max_e = p_left / in.p;
        if (deg.bigraded() && in.q > 0) max_e = std::min(max_e, q_left / in.q);
        for (int e = max_e; e >= 1; --e) {
            Monomial saved = cur;
            cur.mul_gen(in.id, e);
            dfs(idx + 1, p_left - e * in.p, deg.bigraded() ? q_left - e * in.q : q_left);
            cur = std::move(saved);
        }
        dfs(idx + 1, p_left, q_left);
    };
    if (deg.p >= 0 && (!deg.bigraded() || deg.q >= 0))
        dfs(0, deg.p, deg.bigraded() ? deg.q : 0);

    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return ring.display_less(a, b); });
    return out;
}

// ---------------------------------------------------------------------------
// Relation instantiation

namespace detail {

inline Monomial term_monomial(const RelTerm& term, const std::vector<int>& vals)
{
    Monomial m;
    for (const RelFactor& f : term.factors) {
        const int k = f.param.eval(vals);
        if (k < 0) throw internal_error("negative family parameter in relation instance");
        m.mul_gen({f.gen, k}, 1);
    }
    return m;
}

inline Element instantiate(const RelationTemplate& t, const std::vector<int>& vals)
{
    Element e;
    for (const RelTerm& term : t.terms) e.add_term(term_monomial(term, vals), term.coeff);
    return e;
}

// All homogeneous instances whose degree fits inside max_deg (componentwise).
inline void instances_within(const RingPresentation& ring, const RelationTemplate& t,
                             const Bidegree& max_deg,
                             const std::function<void(const Element&, const Bidegree&)>& emit)
{
    std::vector<int> vals(size_t(t.nparams), 0);
    std::function<void(int)> rec = [&](int var) {
        // prune: every term must fit inside max_deg for the chosen prefix
        for (const RelTerm& term : t.terms) {
            Bidegree d = ring.bigraded() ? Bidegree(0, 0) : Bidegree(0);
            for (const RelFactor& f : term.factors) {
                const GeneratorSpec& g = ring.gens[size_t(f.gen)];
                int k = f.param.offset;
                for (int v : f.param.vars)
                    if (v < var) k += vals[size_t(v)];
                d.p += g.p;
                if (ring.bigraded()) d.q += g.q + k;
            }
            if (d.p > max_deg.p || (ring.bigraded() && d.q > max_deg.q)) return;
        }
        if (var == t.nparams) {
            if (t.constraint && !t.constraint->holds(vals)) return;
            Element el = instantiate(t, vals);
            if (el.is_zero()) return;
            Bidegree d;
            if (!ring.homogeneous(el, &d))
                throw usage_error("relation '" + t.label + "' instantiates inhomogeneously");
            emit(el, d);
            return;
        }
        const int cap = ring.bigraded() ? max_deg.q : 0;
        for (int k = 0; k <= cap; ++k) {
            vals[size_t(var)] = k;
            rec(var + 1);
        }
    };
    rec(0);
}

}  // namespace detail

// Every relation instance times every complementary-degree monomial, as
// elements of degree exactly `deg`.
inline std::vector<Element> relation_rows(const RingPresentation& ring, const Bidegree& deg)
{
    std::vector<Element> rows;
    std::map<Bidegree, std::vector<Monomial>> complements;
    for (const RelationTemplate& t : ring.rels) {
        detail::instances_within(ring, t, deg, [&](const Element& el, const Bidegree& d) {
            const Bidegree cdeg = deg - d;
            if (cdeg.p < 0 || (ring.bigraded() && cdeg.q < 0)) return;
            auto it = complements.find(cdeg);
            if (it == complements.end())
                it = complements.emplace(cdeg, enumerate_monomials(ring, cdeg)).first;
            for (const Monomial& m : it->second) rows.push_back(el * Element::from(m));
        });
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Graded pieces

struct GradedPiece {
    Bidegree deg;
    AbelianGroup group;
    std::vector<Monomial> free_basis;     // display order
    std::vector<Monomial> torsion_basis;  // display order, orders parallel
    std::vector<Int> torsion_orders;
    std::vector<Monomial> spanning;  // display order
    // eliminated spanning monomial -> integer coordinates over basis()
    std::map<Monomial, std::vector<std::pair<int, Int>>> reduction;

    // combined basis: free then torsion, each display-sorted
    std::vector<Monomial> basis() const
    {
        std::vector<Monomial> b = free_basis;
        b.insert(b.end(), torsion_basis.begin(), torsion_basis.end());
        return b;
    }

    int dim() const { return group.total_dim(); }
};

inline GradedPiece compute_graded_piece(const RingPresentation& ring, const Bidegree& deg)
{
    if (ring.laurent_model)
        throw internal_error("compute_graded_piece: laurent ring uses mod2_motivic_basis");

    GradedPiece piece;
    piece.deg = deg;
    std::vector<Monomial> monos = enumerate_monomials(ring, deg);
    piece.spanning = monos;
    if (monos.empty()) return piece;

    // column order: elimination preference
    std::vector<Monomial> cols = monos;
    std::sort(cols.begin(), cols.end(),
              [&](const Monomial& a, const Monomial& b) { return ring.elimination_less(a, b); });
    std::map<Monomial, int> col_of;
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = int(i);

    std::vector<Element> rows = relation_rows(ring, deg);

    if (ring.coeff == Coeff::Z2) {
        F2Mat mat(int(cols.size()));
        for (const Element& el : rows) {
            Element r = el.mod2();
            if (r.is_zero()) continue;
            F2Vec v(int(cols.size()));
            for (const auto& [m, c] : r.terms) v.flip(col_of.at(m));
            mat.add_row(std::move(v));
        }
        F2Reduced red = f2_row_reduce(mat);
        std::vector<bool> eliminated(cols.size(), false);
        for (int c : red.pivot_cols) eliminated[size_t(c)] = true;
        for (size_t i = 0; i < cols.size(); ++i) {
            if (eliminated[i]) continue;
            piece.torsion_basis.push_back(cols[i]);
            piece.torsion_orders.push_back(2);
        }
        std::sort(piece.torsion_basis.begin(), piece.torsion_basis.end(),
                  [&](const Monomial& a, const Monomial& b) { return ring.display_less(a, b); });
        piece.group.rank = 0;
        piece.group.torsion.assign(piece.torsion_basis.size(), Int(2));
        // reduction data for eliminated monomials
        std::map<Monomial, int> basis_index;
        for (size_t i = 0; i < piece.torsion_basis.size(); ++i)
            basis_index[piece.torsion_basis[i]] = int(i);
        for (size_t k = 0; k < red.pivot_cols.size(); ++k) {
            const F2Vec& row = red.row_basis.rows[k];
            std::vector<std::pair<int, Int>> expr;
            for (size_t i = 0; i < cols.size(); ++i)
                if (int(i) != red.pivot_cols[k] && row.get(int(i)))
                    expr.push_back({basis_index.at(cols[i]), Int(1)});
            piece.reduction[cols[size_t(red.pivot_cols[k])]] = std::move(expr);
        }
        return piece;
    }

    IntLattice lat(int(cols.size()));
    {
        std::set<SparseRow> seen;
        for (const Element& el : rows) {
            SparseRow r;
            for (const auto& [m, c] : el.terms) r.push_back({col_of.at(m), c});
            std::sort(r.begin(), r.end());
            if (!r.empty() && r.front().second < 0)
                for (auto& [c, v] : r) v = -v;
            if (seen.insert(r).second) lat.add_row(r);
        }
    }
    lat.back_substitute();

    std::vector<int> kind(cols.size(), 0);  // 0 free, 1 torsion, 2 eliminated
    for (const auto& [col, idx] : lat.pivots()) {
        const SparseRow& row = lat.row(idx);
        if (row.front().second == 1)
            kind[size_t(col)] = 2;
        else
            kind[size_t(col)] = 1;
    }
    for (size_t i = 0; i < cols.size(); ++i) {
        if (kind[i] == 0)
            piece.free_basis.push_back(cols[i]);
        else if (kind[i] == 1)
            piece.torsion_basis.push_back(cols[i]);
    }
    auto disp = [&](const Monomial& a, const Monomial& b) { return ring.display_less(a, b); };
    std::sort(piece.free_basis.begin(), piece.free_basis.end(), disp);
    std::sort(piece.torsion_basis.begin(), piece.torsion_basis.end(), disp);

    // torsion pivot rows must be pure multiples of their monomial, otherwise
    // the quotient admits no monomial basis and the model is wrong
    std::map<Monomial, int> basis_index;
    {
        int bi = 0;
        for (const Monomial& m : piece.free_basis) basis_index[m] = bi++;
        for (const Monomial& m : piece.torsion_basis) basis_index[m] = bi++;
    }
    piece.torsion_orders.reserve(piece.torsion_basis.size());
    for (const Monomial& m : piece.torsion_basis) {
        const SparseRow& row = *lat.pivot_row(col_of.at(m));
        if (row.size() != 1)
            throw internal_error("graded piece at " + deg.str() + " of " + ring.name +
                                 ": torsion pivot row is not a pure monomial multiple");
        piece.torsion_orders.push_back(row.front().second);
    }
    piece.group.rank = int(piece.free_basis.size());
    {
        std::vector<Int> tors = piece.torsion_orders;
        std::sort(tors.begin(), tors.end());
        piece.group.torsion = std::move(tors);
    }
    for (const auto& [col, idx] : lat.pivots()) {
        const SparseRow& row = lat.row(idx);
        if (row.front().second != 1) continue;
        std::vector<std::pair<int, Int>> expr;
        for (size_t k = 1; k < row.size(); ++k) {
            const Monomial& m = cols[size_t(row[k].first)];
            auto it = basis_index.find(m);
            if (it == basis_index.end())
                throw internal_error("reduction expression hits an eliminated monomial");
            expr.push_back({it->second, -row[k].second});
        }
        piece.reduction[cols[size_t(col)]] = std::move(expr);
    }
    return piece;
}

// ---------------------------------------------------------------------------
// Context: catalog plus piece caches

class Context {
public:
    Context() : catalog_(build_catalog()) {}
    explicit Context(Catalog cat) : catalog_(std::move(cat)) {}

    const Catalog& catalog() const { return catalog_; }
    Catalog& catalog_mut() { return catalog_; }

    const RingPresentation& ring(const std::string& name) const { return catalog_.ring(name); }

    std::shared_ptr<const GradedPiece> piece(const std::string& ring_name, const Bidegree& deg)
    {
        const auto key = std::make_pair(ring_name, deg);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = pieces_.find(key);
            if (it != pieces_.end()) return it->second;
        }
        auto value = std::make_shared<const GradedPiece>(
            compute_graded_piece(catalog_.ring(ring_name), deg));
        std::lock_guard<std::mutex> lk(mu_);
        auto [it, inserted] = pieces_.emplace(key, std::move(value));
        return it->second;
    }

private:
    Catalog catalog_;
    std::mutex mu_;
    std::map<std::pair<std::string, Bidegree>, std::shared_ptr<const GradedPiece>> pieces_;
};

// ---------------------------------------------------------------------------
// Group rendering, tables, Hilbert series

inline std::string render_group(const AbelianGroup& g)
{
    std::string out;
    if (g.rank == 1)
        out = "Z";
    else if (g.rank > 1)
        out = "Z^" + std::to_string(g.rank);
    std::map<Int, int> by_order;
    for (const Int& d : g.torsion) by_order[d]++;
    for (const auto& [d, n] : by_order) {
        if (!out.empty()) out += " + ";
        const std::string cyc = "Z/" + d.str();
        out += n == 1 ? cyc : "(" + cyc + ")^" + std::to_string(n);
    }
    if (out.empty()) out = "0";
    return out;
}

struct PieceView {
    Bidegree deg;
    AbelianGroup group;
    std::vector<std::string> basis;
};

inline PieceView piece_view(Context& ctx, const std::string& ring_name, const Bidegree& deg)
{
    const RingPresentation& ring = ctx.ring(ring_name);
    PieceView v;
    v.deg = deg;
    if (ring.laurent_model) {
        if (!deg.bigraded()) throw usage_error("ring " + ring_name + " needs a weight");
        auto basis = mod2_motivic_basis(deg);
        v.group.rank = 0;
        v.group.torsion.assign(basis.size(), Int(2));
        for (const LMono& m : basis) v.basis.push_back(lrender(m));
        return v;
    }
    if (ring.bigraded() != deg.bigraded())
        throw usage_error(ring.bigraded() ? "ring " + ring_name + " needs a weight"
                                          : "ring " + ring_name + " takes a single degree");
    auto piece = ctx.piece(ring_name, deg);
    v.group = piece->group;
    for (const Monomial& m : piece->basis()) v.basis.push_back(ring.render(m));
    return v;
}

struct PoincareTable {
    std::string ring;
    int p_max = 0;
    int q_max = -1;  // -1 for single-graded rings
    std::vector<std::vector<AbelianGroup>> cells;  // [p][q] (single: [p][0])
};

inline PoincareTable poincare_table(Context& ctx, const std::string& ring_name, int p_max,
                                    int q_max)
{
    const RingPresentation& ring = ctx.ring(ring_name);
    PoincareTable t;
    t.ring = ring_name;
    t.p_max = p_max;
    t.q_max = ring.bigraded() ? q_max : -1;
    for (int p = 0; p <= p_max; ++p) {
        std::vector<AbelianGroup> row;
        if (!ring.bigraded()) {
            row.push_back(piece_view(ctx, ring_name, Bidegree(p)).group);
        } else {
            for (int q = 0; q <= q_max; ++q)
                row.push_back(piece_view(ctx, ring_name, Bidegree(p, q)).group);
        }
        t.cells.push_back(std::move(row));
    }
    return t;
}

// dim_F2 of Z2[w2,w3,w4] in each degree against 1/((1-t^2)(1-t^3)(1-t^4))
inline bool hilbert_series_check(Context& ctx, int n_max, std::vector<int>* mismatches = nullptr)
{
    // denominator (1-t^2)(1-t^3)(1-t^4) expanded
    std::vector<Int> den(10, 0);
    den[0] = 1;
    auto mul_factor = [&](int k) {
        std::vector<Int> next(den.size(), 0);
        for (size_t i = 0; i < den.size(); ++i) {
            if (den[i] == 0) continue;
            next[i] += den[i];
            if (i + size_t(k) < den.size()) next[i + size_t(k)] -= den[i];
        }
        den = std::move(next);
    };
    mul_factor(2);
    mul_factor(3);
    mul_factor(4);

    std::vector<Int> coeff(size_t(n_max) + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
        Int c = (n == 0) ? 1 : 0;
        for (int k = 1; k <= n && k < int(den.size()); ++k) c -= den[size_t(k)] * coeff[size_t(n - k)];
        coeff[size_t(n)] = c;  // den[0] == 1
    }

    bool ok = true;
    for (int n = 0; n <= n_max; ++n) {
        const int dim = piece_view(ctx, "classical-z2", Bidegree(n)).group.torsion_count();
        if (Int(dim) != coeff[size_t(n)]) {
            ok = false;
            if (mismatches) mismatches->push_back(n);
        }
    }
    return ok;
}

}  // namespace mrv
