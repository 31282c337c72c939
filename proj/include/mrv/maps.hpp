#pragma once

#include <string>
#include <vector>

#include "mrv/core.hpp"
#include "mrv/laurent.hpp"
#include "mrv/linalg.hpp"
#include "mrv/rings.hpp"

namespace mrv {

// Fixed generator indices from build_catalog(); guarded by tests.
namespace gens {
// classical-z2
inline constexpr int w2 = 0, w3 = 1, w4 = 2;
// classical-z
inline constexpr int p1 = 0, sqp2 = 1, bw2 = 2;
// chow and motivic-z share the d/y block
inline constexpr int d2 = 0, d3 = 1, d4 = 2, y2 = 3, A = 4, B = 5;
}  // namespace gens

// ---------------------------------------------------------------------------
// Element-level maps

// classical-z normal form: monomials with a btilde(w2) factor are 2-torsion
inline Element classical_z_normalize(const Element& e)
{
    Element out;
    for (const auto& [m, c] : e.terms) {
        if (m.total_exp_of_gen(gens::bw2) > 0) {
            Int r = c % 2;
            if (r < 0) r += 2;
            if (r != 0) out.add_term(m, r);
        } else {
            out.add_term(m, c);
        }
    }
    return out;
}

// mu_C: classical integral -> classical mod 2, reduction of coefficients
inline Element mu_classical(const Element& x)
{
    Element out;
    for (const auto& [m, c] : x.terms) {
        Monomial im;
        for (const auto& [id, e] : m.factors) {
            switch (id.gen) {
                case gens::p1: im.mul_gen({gens::w2, 0}, 2 * e); break;
                case gens::sqp2: im.mul_gen({gens::w4, 0}, e); break;
                case gens::bw2: im.mul_gen({gens::w3, 0}, e); break;
                default: throw usage_error("mu_C: unknown generator in source element");
            }
        }
        out.add_term(im, c);
    }
    return out.mod2();
}

// t: integral motivic -> classical integral realization, with exact signs
inline Element realization_t(const Element& x)
{
    auto gen_image = [](const GenId& id) -> Element {
        Monomial m;
        switch (id.gen) {
            case gens::d2: m.mul_gen({gens::p1, 0}, 1); return Element::from(m, -1);
            case gens::d3: m.mul_gen({gens::bw2, 0}, 2); return Element::from(m);
            case gens::d4: m.mul_gen({gens::sqp2, 0}, 2); return Element::from(m);
            case gens::y2: m.mul_gen({gens::sqp2, 0}, 1); return Element::from(m, 2);
            case gens::A: m.mul_gen({gens::bw2, 0}, 1); return Element::from(m);
            case gens::B:
                m.mul_gen({gens::sqp2, 0}, 1);
                m.mul_gen({gens::bw2, 0}, 1);
                return Element::from(m);
            default: throw usage_error("t: unknown generator in source element");
        }
    };
    Element out;
    for (const auto& [m, c] : x.terms) {
        Element term = Element::one().scaled(c);
        for (const auto& [id, e] : m.factors) {
            Element g = gen_image(id);
            for (int k = 0; k < e; ++k) term = term * g;
        }
        out = out + term;
    }
    return classical_z_normalize(out);
}

// mu_M: integral motivic -> mod-2 motivic (laurent model)
inline LMono mu_motivic_gen(const GenId& id)
{
    switch (id.gen) {
        case gens::d2: return LMono::w(-2, 2, 0, 0);
        case gens::d3: return LMono::w(-1, 0, 2, 0);
        case gens::d4: return LMono::w(-2, 0, 0, 2);
        case gens::y2: return LMono::y(0, 0);
        case gens::A: return LMono::w(id.param, 0, 1, 0);
        case gens::B: return LMono::w(id.param - 1, 0, 1, 1);
        default: throw usage_error("mu_M: unknown generator in source element");
    }
}

inline LElem mu_motivic(const Element& x)
{
    LElem out;
    for (const auto& [m, c] : x.terms) {
        if (c % 2 == 0) continue;
        LElem term = LElem::unit();
        for (const auto& [id, e] : m.factors) {
            LElem g = LElem::from(mu_motivic_gen(id));
            for (int k = 0; k < e; ++k) term = term * g;
        }
        out = out + term;
    }
    return out;
}

// t2: mod-2 motivic -> classical mod 2; tau |-> 1, y-part |-> 0
inline Element realization_t2(const LElem& x)
{
    Element out;
    for (const LMono& m : x.monos) {
        if (m.ypart) continue;
        Monomial im;
        if (m.a > 0) im.mul_gen({gens::w2, 0}, m.a);
        if (m.b > 0) im.mul_gen({gens::w3, 0}, m.b);
        if (m.c > 0) im.mul_gen({gens::w4, 0}, m.c);
        out.add_term(im, 1);
    }
    return out.mod2();
}

// Bockstein on the classical mod-2 ring: derivation with w2 -> w3
inline Element bockstein_classical(const Element& x)
{
    Element out;
    for (const auto& [m, c] : x.terms) {
        if (c % 2 == 0) continue;
        const int a = m.total_exp_of_gen(gens::w2);
        if (a % 2 == 0) continue;
        Monomial im;
        if (a > 1) im.mul_gen({gens::w2, 0}, a - 1);
        im.mul_gen({gens::w3, 0}, m.total_exp_of_gen(gens::w3) + 1);
        const int cc = m.total_exp_of_gen(gens::w4);
        if (cc > 0) im.mul_gen({gens::w4, 0}, cc);
        out.add_term(im, 1);
    }
    return out.mod2();
}

// Bockstein on the mod-2 motivic ring
inline LElem bockstein_motivic(const LElem& x)
{
    LElem out;
    for (const LMono& m : x.monos) {
        if (m.ypart) continue;
        if (m.a % 2 == 0) continue;
        out.flip(LMono::w(m.e, m.a - 1, m.b + 1, m.c));
    }
    return out;
}

// btilde_C on classical mod-2 monomials: zero for even w2-exponent, else the
// torsion class p1^k1 sqp2^k2 bw2^(k3+1)
inline Element beta_tilde_c(const Monomial& m)
{
    const int a = m.total_exp_of_gen(gens::w2);
    const int b = m.total_exp_of_gen(gens::w3);
    const int c = m.total_exp_of_gen(gens::w4);
    if (a % 2 == 0) return Element::zero();
    Monomial im;
    if (a > 1) im.mul_gen({gens::p1, 0}, (a - 1) / 2);
    if (c > 0) im.mul_gen({gens::sqp2, 0}, c);
    im.mul_gen({gens::bw2, 0}, b + 1);
    return Element::from(im);
}

inline Element beta_tilde_c(const Element& x)
{
    Element out;
    for (const auto& [m, c] : x.terms)
        if (c % 2 != 0) out = out + beta_tilde_c(m);
    return classical_z_normalize(out.mod2());
}

// ---------------------------------------------------------------------------
// Matrix extraction on graded pieces

struct MapMatrix {
    std::string hom;
    Bidegree src_deg, dst_deg;
    F2Mat mat;  // rows = target coordinates, cols = source basis
    std::vector<std::string> src_basis, dst_basis;
};

namespace detail {

inline int index_of(const std::vector<Monomial>& list, const Monomial& m)
{
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == m) return int(i);
    return -1;
}

inline int index_of(const std::vector<LMono>& list, const LMono& m)
{
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == m) return int(i);
    return -1;
}

// coordinates of a classical mod-2 element in the monomial list
inline F2Vec coords_z2(const Element& e, const std::vector<Monomial>& basis,
                       const std::string& who)
{
    F2Vec v(int(basis.size()));
    for (const auto& [m, c] : e.mod2().terms) {
        const int idx = index_of(basis, m);
        if (idx < 0) throw internal_error(who + ": image does not reduce into the target piece");
        v.flip(idx);
    }
    return v;
}

inline F2Vec coords_laurent(const LElem& e, const std::vector<LMono>& basis,
                            const std::string& who)
{
    F2Vec v(int(basis.size()));
    for (const LMono& m : e.monos) {
        const int idx = index_of(basis, m);
        if (idx < 0) throw internal_error(who + ": image does not reduce into the target piece");
        v.flip(idx);
    }
    return v;
}

}  // namespace detail

// mu_C tensored over F2: columns are all basis monomials of H^m(Z) (the F2
// basis of H^m(Z) tensor Z2), rows the degree-m w-monomials.
inline MapMatrix matrix_mu_c(Context& ctx, int m)
{
    MapMatrix mm;
    mm.hom = "mu_C";
    mm.src_deg = Bidegree(m);
    mm.dst_deg = Bidegree(m);
    auto src = ctx.piece("classical-z", Bidegree(m));
    auto dst = ctx.piece("classical-z2", Bidegree(m));
    const auto& ring_src = ctx.ring("classical-z");
    const auto& ring_dst = ctx.ring("classical-z2");
    const std::vector<Monomial> src_basis = src->basis();
    const std::vector<Monomial> dst_basis = dst->basis();
    mm.mat = F2Mat(int(dst_basis.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const F2Vec img =
            detail::coords_z2(mu_classical(Element::from(src_basis[j])), dst_basis, "mu_C");
        for (size_t i = 0; i < dst_basis.size(); ++i)
            if (img.get(int(i))) mm.mat.rows[i].set(int(j));
        mm.src_basis.push_back(ring_src.render(src_basis[j]));
    }
    for (const Monomial& mb : dst_basis) mm.dst_basis.push_back(ring_dst.render(mb));
    return mm;
}

// btilde_C into the 2-torsion subgroup of H^(m+1)(Z)
inline MapMatrix matrix_beta_tilde_c(Context& ctx, int m)
{
    MapMatrix mm;
    mm.hom = "btilde_C";
    mm.src_deg = Bidegree(m);
    mm.dst_deg = Bidegree(m + 1);
    auto src = ctx.piece("classical-z2", Bidegree(m));
    auto dst = ctx.piece("classical-z", Bidegree(m + 1));
    const auto& ring_src = ctx.ring("classical-z2");
    const auto& ring_dst = ctx.ring("classical-z");
    const std::vector<Monomial> src_basis = src->basis();
    const std::vector<Monomial>& dst_tors = dst->torsion_basis;
    mm.mat = F2Mat(int(dst_tors.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const Element img = beta_tilde_c(src_basis[j]);
        for (const auto& [mono, c] : img.terms) {
            if (c % 2 == 0) continue;
            const int idx = detail::index_of(dst_tors, mono);
            if (idx < 0)
                throw internal_error("btilde_C: image not in the torsion basis at degree " +
                                     std::to_string(m + 1));
            mm.mat.rows[size_t(idx)].set(int(j));
        }
        mm.src_basis.push_back(ring_src.render(src_basis[j]));
    }
    for (const Monomial& mb : dst_tors) mm.dst_basis.push_back(ring_dst.render(mb));
    return mm;
}

// mu_M tensored over F2 on a bidegree piece of the integral motivic ring
inline MapMatrix matrix_mu_m(Context& ctx, const std::string& ring_name, const Bidegree& deg)
{
    MapMatrix mm;
    mm.hom = "mu_M";
    mm.src_deg = deg;
    mm.dst_deg = deg;
    auto src = ctx.piece(ring_name, deg);
    const auto& ring_src = ctx.ring(ring_name);
    const std::vector<Monomial> src_basis = src->basis();
    const std::vector<LMono> dst_basis = mod2_motivic_basis(deg);
    mm.mat = F2Mat(int(dst_basis.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const F2Vec img =
            detail::coords_laurent(mu_motivic(Element::from(src_basis[j])), dst_basis, "mu_M");
        for (size_t i = 0; i < dst_basis.size(); ++i)
            if (img.get(int(i))) mm.mat.rows[i].set(int(j));
        mm.src_basis.push_back(ring_src.render(src_basis[j]));
    }
    for (const LMono& mb : dst_basis) mm.dst_basis.push_back(lrender(mb));
    return mm;
}

// t2 on a bidegree piece of the mod-2 motivic ring
inline MapMatrix matrix_t2(Context& ctx, const Bidegree& deg)
{
    MapMatrix mm;
    mm.hom = "t2";
    mm.src_deg = deg;
    mm.dst_deg = Bidegree(deg.p);
    const std::vector<LMono> src_basis = mod2_motivic_basis(deg);
    auto dst = ctx.piece("classical-z2", Bidegree(deg.p));
    const auto& ring_dst = ctx.ring("classical-z2");
    const std::vector<Monomial> dst_basis = dst->basis();
    mm.mat = F2Mat(int(dst_basis.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const F2Vec img =
            detail::coords_z2(realization_t2(LElem::from(src_basis[j])), dst_basis, "t2");
        for (size_t i = 0; i < dst_basis.size(); ++i)
            if (img.get(int(i))) mm.mat.rows[i].set(int(j));
        mm.src_basis.push_back(lrender(src_basis[j]));
    }
    for (const Monomial& mb : dst_basis) mm.dst_basis.push_back(ring_dst.render(mb));
    return mm;
}

// t1 = t tensor Z2: integral motivic basis -> all classical monomials mod 2
inline MapMatrix matrix_t1(Context& ctx, const std::string& ring_name, const Bidegree& deg)
{
    MapMatrix mm;
    mm.hom = "t1";
    mm.src_deg = deg;
    mm.dst_deg = Bidegree(deg.p);
    auto src = ctx.piece(ring_name, deg);
    auto dst = ctx.piece("classical-z", Bidegree(deg.p));
    const auto& ring_src = ctx.ring(ring_name);
    const auto& ring_dst = ctx.ring("classical-z");
    const std::vector<Monomial> src_basis = src->basis();
    const std::vector<Monomial> dst_basis = dst->basis();
    mm.mat = F2Mat(int(dst_basis.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const Element img = realization_t(Element::from(src_basis[j]));
        for (const auto& [mono, c] : img.terms) {
            if (c % 2 == 0) continue;
            const int idx = detail::index_of(dst_basis, mono);
            if (idx < 0) throw internal_error("t1: image does not reduce into the target piece");
            mm.mat.rows[size_t(idx)].set(int(j));
        }
        mm.src_basis.push_back(ring_src.render(src_basis[j]));
    }
    for (const Monomial& mb : dst_basis) mm.dst_basis.push_back(ring_dst.render(mb));
    return mm;
}

// Composite t2 . mu_M with source the integral piece
inline F2Mat matrix_t2_mu_m(Context& ctx, const std::string& ring_name, const Bidegree& deg)
{
    auto src = ctx.piece(ring_name, deg);
    auto dst = ctx.piece("classical-z2", Bidegree(deg.p));
    const std::vector<Monomial> src_basis = src->basis();
    const std::vector<Monomial> dst_basis = dst->basis();
    F2Mat mat(int(dst_basis.size()), int(src_basis.size()));
    for (size_t j = 0; j < src_basis.size(); ++j) {
        const Element img = realization_t2(mu_motivic(Element::from(src_basis[j])));
        const F2Vec v = detail::coords_z2(img, dst_basis, "t2.mu_M");
        for (size_t i = 0; i < dst_basis.size(); ++i)
            if (v.get(int(i))) mat.rows[i].set(int(j));
    }
    return mat;
}

// Named dispatch for the CLI surface.
inline MapMatrix map_matrix(Context& ctx, const std::string& hom, const Bidegree& src_deg)
{
    if (hom == "mu_C") {
        if (src_deg.bigraded()) throw usage_error("mu_C takes a single degree");
        return matrix_mu_c(ctx, src_deg.p);
    }
    if (hom == "btilde_C") {
        if (src_deg.bigraded()) throw usage_error("btilde_C takes a single degree");
        return matrix_beta_tilde_c(ctx, src_deg.p);
    }
    if (hom == "mu_M") {
        if (!src_deg.bigraded()) throw usage_error("mu_M needs a bidegree");
        return matrix_mu_m(ctx, "motivic-z", src_deg);
    }
    if (hom == "t2") {
        if (!src_deg.bigraded()) throw usage_error("t2 needs a bidegree");
        return matrix_t2(ctx, src_deg);
    }
    if (hom == "t1") {
        if (!src_deg.bigraded()) throw usage_error("t1 needs a bidegree");
        return matrix_t1(ctx, "motivic-z", src_deg);
    }
    throw usage_error("unknown homomorphism '" + hom + "'");
}

// ---------------------------------------------------------------------------
// Map catalog metadata (for JSON export)

struct MapInfo {
    std::string name;
    std::string kind;  // ring-map | derivation | monomial-formula
    std::string source, target;
    int shift_p = 0, shift_q = 0;
    bool forgets_weight = false;
    std::vector<std::pair<std::string, std::string>> images;  // generator -> image
};

inline std::vector<MapInfo> map_catalog()
{
    std::vector<MapInfo> maps;
    maps.push_back({"mu_C", "ring-map", "classical-z", "classical-z2", 0, 0, false,
                    {{"p1", "w2^2"}, {"sqp2", "w4"}, {"bw2", "w3"}}});
    maps.push_back({"t", "ring-map", "motivic-z", "classical-z", 0, 0, true,
                    {{"d2", "-p1"}, {"d3", "bw2^2"}, {"d4", "sqp2^2"}, {"y2", "2\xc2\xb7sqp2"},
                     {"A(k)", "bw2"}, {"B(k)", "sqp2\xc2\xb7""bw2"}}});
    maps.push_back({"mu_M", "ring-map", "motivic-z", "motivic-z2", 0, 0, false,
                    {{"d2", "\xcf\x84^-2\xc2\xb7w2^2"}, {"d3", "\xcf\x84^-1\xc2\xb7w3^2"},
                     {"d4", "\xcf\x84^-2\xc2\xb7w4^2"}, {"y2", "y02"},
                     {"A(k)", "\xcf\x84^k\xc2\xb7w3"}, {"B(k)", "\xcf\x84^(k-1)\xc2\xb7w3\xc2\xb7w4"}}});
    maps.push_back({"t2", "ring-map", "motivic-z2", "classical-z2", 0, 0, true,
                    {{"\xcf\x84", "1"}, {"w2a", "w2"}, {"w3a", "w3"}, {"w4a", "w4"}, {"y02", "0"}}});
    maps.push_back({"beta", "derivation", "classical-z2", "classical-z2", 1, 0, false,
                    {{"w2", "w3"}, {"w3", "0"}, {"w4", "0"}}});
    maps.push_back({"beta-motivic", "derivation", "motivic-z2", "motivic-z2", 1, 0, false,
                    {{"\xcf\x84", "0"}, {"w2a", "w3a"}, {"w3a", "0"}, {"w4a", "0"}, {"y02", "0"}}});
    maps.push_back({"btilde_C", "monomial-formula", "classical-z2", "classical-z", 1, 0, false,
                    {{"w2^(2k+1)\xc2\xb7w3^a\xc2\xb7w4^b", "p1^k\xc2\xb7sqp2^b\xc2\xb7""bw2^(a+1)"},
                     {"w2^(2k)\xc2\xb7w3^a\xc2\xb7w4^b", "0"}}});
    return maps;
}

}  // namespace mrv
