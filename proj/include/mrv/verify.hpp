#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrv/core.hpp"
#include "mrv/laurent.hpp"
#include "mrv/linalg.hpp"
#include "mrv/maps.hpp"
#include "mrv/rings.hpp"

namespace mrv {

struct Box {
    int p_max = 20;
    int q_max = 12;
    int m_max = 24;
};

enum class CheckStatus { Pass, Fail, Report };

struct Finding {
    Bidegree deg;
    std::string expected;
    std::string computed;
    std::vector<std::string> witness;
};

struct CheckReport {
    std::string name;
    Box box;
    bool report_only = false;
    CheckStatus status = CheckStatus::Pass;
    std::vector<Finding> findings;

    void finish()
    {
        if (report_only)
            status = CheckStatus::Report;
        else
            status = findings.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    }
};

namespace detail {

inline std::string least_witness(const RingPresentation& ring, const std::vector<Monomial>& monos)
{
    if (monos.empty()) return "-";
    const Monomial* best = &monos.front();
    for (const Monomial& m : monos)
        if (ring.display_less(m, *best)) best = &m;
    return ring.render(*best);
}

// rank of the free part on the Chow diagonal below weight q; zero off the
// even diagonal. This is the count of UCT partners the truncated base model
// cannot see (2-torsion base classes times free diagonal monomials).
inline int base_correction(Context& ctx, int p, int q)
{
    if (p % 2 != 0) return 0;
    if (p / 2 >= q) return 0;
    return ctx.piece("chow", Bidegree(p / 2))->group.rank;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hilbert series of Z2[w2,w3,w4]

inline CheckReport check_hilbert(Context& ctx, const Box& box, int n_max = 40)
{
    CheckReport rep;
    rep.name = "hilbert";
    rep.box = box;
    std::vector<int> bad;
    hilbert_series_check(ctx, n_max, &bad);
    for (int n : bad) {
        Finding f;
        f.deg = Bidegree(n);
        f.expected = "series coefficient of 1/((1-t^2)(1-t^3)(1-t^4))";
        f.computed =
            std::to_string(piece_view(ctx, "classical-z2", Bidegree(n)).group.torsion_count());
        f.witness = {"-"};
        rep.findings.push_back(std::move(f));
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// 2-torsion of H^m(BSO4;Z) is nonzero exactly for m in {3,6,7} and m >= 9

inline CheckReport check_torsion_pattern(Context& ctx, const Box& box, int m_max = 40)
{
    CheckReport rep;
    rep.name = "torsion-pattern";
    rep.box = box;
    for (int m = 0; m <= m_max; ++m) {
        const bool expected = (m == 3 || m == 6 || m == 7 || m >= 9);
        auto piece = ctx.piece("classical-z", Bidegree(m));
        const bool nonzero = piece->group.torsion_count() > 0;
        if (nonzero != expected) {
            Finding f;
            f.deg = Bidegree(m);
            f.expected = expected ? "2-torsion nonzero" : "2-torsion zero";
            f.computed = render_group(piece->group);
            f.witness = {detail::least_witness(ctx.ring("classical-z"), piece->torsion_basis)};
            rep.findings.push_back(std::move(f));
        }
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Classical universal coefficient sequence, degree by degree

inline CheckReport check_uct_classical(Context& ctx, const Box& box)
{
    CheckReport rep;
    rep.name = "uct-classical";
    rep.box = box;
    const auto& ring_z = ctx.ring("classical-z");
    for (int m = 0; m <= box.m_max; ++m) {
        MapMatrix mu = matrix_mu_c(ctx, m);
        MapMatrix bt = matrix_beta_tilde_c(ctx, m);
        auto next = ctx.piece("classical-z", Bidegree(m + 1));
        const int dim_mid = ctx.piece("classical-z2", Bidegree(m))->dim();
        const int dim_src = int(mu.src_basis.size());
        const int dim_tors = next->group.torsion_count();

        const int rank_mu = f2_rank(mu.mat);
        const int rank_bt = f2_rank(bt.mat);

        auto fail = [&](const std::string& what, const std::string& got,
                        const std::string& wit) {
            Finding f;
            f.deg = Bidegree(m);
            f.expected = what;
            f.computed = got;
            f.witness = {wit};
            rep.findings.push_back(std::move(f));
        };

        if (rank_mu != dim_src)
            fail("mu_C injective (rank " + std::to_string(dim_src) + ")",
                 "rank " + std::to_string(rank_mu),
                 mu.src_basis.empty() ? "-" : mu.src_basis.front());
        // exactness in the middle: beta_tilde_C . mu_C = 0 and rank identity
        bool composite_zero = true;
        std::string composite_witness = "-";
        for (size_t j = 0; j < mu.src_basis.size() && composite_zero; ++j) {
            F2Vec x(int(mu.src_basis.size()));
            x.set(int(j));
            const F2Vec mid = f2_apply(mu.mat, x);
            if (!f2_apply(bt.mat, mid).zero()) {
                composite_zero = false;
                composite_witness = mu.src_basis[j];
            }
        }
        if (!composite_zero)
            fail("btilde_C . mu_C = 0", "nonzero composite", composite_witness);
        if (rank_mu + rank_bt != dim_mid)
            fail("im(mu_C) = ker(btilde_C): rank " + std::to_string(dim_mid - rank_mu) +
                     " expected for btilde_C",
                 "rank " + std::to_string(rank_bt), mu.dst_basis.empty() ? "-" : mu.dst_basis.front());
        if (rank_bt != dim_tors)
            fail("btilde_C onto the 2-torsion of degree " + std::to_string(m + 1) + " (dim " +
                     std::to_string(dim_tors) + ")",
                 "rank " + std::to_string(rank_bt),
                 detail::least_witness(ring_z, next->torsion_basis));
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Motivic universal coefficient bookkeeping on the working integral ring

inline CheckReport check_uct_motivic(Context& ctx, const Box& box,
                                     const std::string& ring_name = "motivic-z")
{
    CheckReport rep;
    rep.name = "uct-motivic";
    rep.box = box;
    const auto& ring = ctx.ring(ring_name);
    for (int p = 0; p <= box.p_max; ++p) {
        for (int q = 0; q <= box.q_max; ++q) {
            const Bidegree deg(p, q);
            auto cur = ctx.piece(ring_name, deg);
            auto next = ctx.piece(ring_name, Bidegree(p + 1, q));
            const int dim2 = mod2_motivic_dim(deg);
            const int corr = detail::base_correction(ctx, p, q);
            const int expected = cur->dim() + next->group.torsion_count() + corr;
            if (dim2 != expected) {
                Finding f;
                f.deg = deg;
                f.expected = "dim H(Z2) = (r+s) + s(p+1) + base = " + std::to_string(cur->dim()) +
                             " + " + std::to_string(next->group.torsion_count()) + " + " +
                             std::to_string(corr);
                f.computed = "dim H(Z2) = " + std::to_string(dim2);
                f.witness = {detail::least_witness(ring, cur->basis())};
                rep.findings.push_back(std::move(f));
            }
            if (cur->dim() > 0) {
                MapMatrix mu = matrix_mu_m(ctx, ring_name, deg);
                const int rk = f2_rank(mu.mat);
                if (rk != cur->dim()) {
                    Finding f;
                    f.deg = deg;
                    f.expected = "mu_M injective (rank " + std::to_string(cur->dim()) + ")";
                    f.computed = "rank " + std::to_string(rk);
                    f.witness = {mu.src_basis.front()};
                    rep.findings.push_back(std::move(f));
                }
            }
        }
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Commuting square t2 . mu = mu_C . t, and Ker(t1) <-> Ker(t2) equivalence

inline CheckReport check_squares(Context& ctx, const Box& box)
{
    CheckReport rep;
    rep.name = "squares";
    rep.box = box;
    const auto& ring = ctx.ring("motivic-z");
    for (int p = 0; p <= box.p_max; ++p) {
        for (int q = 0; q <= box.q_max; ++q) {
            const Bidegree deg(p, q);
            auto piece = ctx.piece("motivic-z", deg);
            if (piece->dim() == 0) continue;
            for (const Monomial& x : piece->basis()) {
                const Element via_motivic = realization_t2(mu_motivic(Element::from(x)));
                const Element via_classical =
                    mu_classical(realization_t(Element::from(x)));
                if (via_motivic != via_classical) {
                    Finding f;
                    f.deg = deg;
                    f.expected = "t2(mu(x)) = mu_C(t(x))";
                    f.computed = ctx.ring("classical-z2").render(via_motivic) +
                                 " != " + ctx.ring("classical-z2").render(via_classical);
                    f.witness = {ring.render(x)};
                    rep.findings.push_back(std::move(f));
                }
            }
            // kernel equivalence: phi in Ker(t1) iff mu_M(phi) in Ker(t2)
            MapMatrix t1 = matrix_t1(ctx, "motivic-z", deg);
            F2Mat t2mu = matrix_t2_mu_m(ctx, "motivic-z", deg);
            const int cols = piece->dim();
            const int ker1 = cols - f2_rank(t1.mat);
            const int ker2 = cols - f2_rank(t2mu);
            if (ker1 != ker2) {
                Finding f;
                f.deg = deg;
                f.expected = "dim Ker(t1) = dim Ker(t2 . mu_M)";
                f.computed = std::to_string(ker1) + " != " + std::to_string(ker2);
                f.witness = {detail::least_witness(ring, piece->basis())};
                rep.findings.push_back(std::move(f));
            }
        }
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Ker(t2) equals the y-part span in every bidegree

inline CheckReport check_ker_t2(Context& ctx, const Box& box)
{
    CheckReport rep;
    rep.name = "ker-t2";
    rep.box = box;
    for (int p = 0; p <= box.p_max; ++p) {
        for (int q = 0; q <= box.q_max; ++q) {
            const Bidegree deg(p, q);
            const std::vector<LMono> basis = mod2_motivic_basis(deg);
            if (basis.empty()) continue;
            MapMatrix t2 = matrix_t2(ctx, deg);
            int y_count = 0;
            bool y_killed = true;
            std::string bad_y = "-";
            for (size_t j = 0; j < basis.size(); ++j) {
                if (!basis[j].ypart) continue;
                ++y_count;
                F2Vec x(int(basis.size()));
                x.set(int(j));
                if (!f2_apply(t2.mat, x).zero()) {
                    y_killed = false;
                    bad_y = lrender(basis[j]);
                }
            }
            const int ker = int(basis.size()) - f2_rank(t2.mat);
            if (!y_killed || ker != y_count) {
                Finding f;
                f.deg = deg;
                f.expected = "Ker(t2) = y-part span, dim " + std::to_string(y_count);
                f.computed = std::string(y_killed ? "" : "y-part not killed; ") + "dim Ker = " +
                             std::to_string(ker);
                f.witness = {y_killed ? (basis.empty() ? "-" : lrender(basis.front())) : bad_y};
                rep.findings.push_back(std::move(f));
            }
        }
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive square search in one mod-2 motivic piece

inline CheckReport check_no_square_root(Context& ctx, const Box& box, const LElem& target,
                                        const Bidegree& search_deg, int exhaustion_cap = 20)
{
    (void)ctx;
    CheckReport rep;
    rep.name = "no-square-root";
    rep.box = box;
    const std::vector<LMono> basis = mod2_motivic_basis(search_deg);
    const int dim = int(basis.size());
    if (dim > exhaustion_cap)
        throw usage_error("no-square-root: dimension " + std::to_string(dim) +
                          " exceeds the exhaustion cap " + std::to_string(exhaustion_cap));
    std::vector<LElem> squares(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) squares[i] = LElem::from(basis[i]).square();

    LElem acc;  // square of the current subset, walked in Gray-code order
    uint64_t prev = 0;
    const uint64_t total = uint64_t(1) << dim;
    for (uint64_t n = 0; n < total; ++n) {
        const uint64_t gray = n ^ (n >> 1);
        uint64_t delta = gray ^ prev;
        while (delta) {
            const int bit = __builtin_ctzll(delta);
            acc = acc + squares[size_t(bit)];
            delta &= delta - 1;
        }
        prev = gray;
        if (acc == target) {
            LElem x;
            for (int b = 0; b < dim; ++b)
                if ((gray >> b) & 1) x.flip(basis[size_t(b)]);
            Finding f;
            f.deg = search_deg;
            f.expected = "no x with x^2 = " + lrender(target);
            f.computed = "x^2 = target for x = " + lrender(x);
            f.witness = {lrender(x)};
            rep.findings.push_back(std::move(f));
            break;
        }
    }
    rep.finish();
    return rep;
}

// The two bundled instances: no square root of mu(d4) in bidegree (4,2), and
// the generalized target mu(d2)^2 mu(d4) against squares from (8,4).
inline CheckReport check_no_square_root_suite(Context& ctx, const Box& box)
{
    CheckReport rep;
    rep.name = "no-square-root";
    rep.box = box;
    {
        CheckReport one =
            check_no_square_root(ctx, box, LElem::from(LMono::w(-2, 0, 0, 2)), Bidegree(4, 2));
        for (auto& f : one.findings) rep.findings.push_back(std::move(f));
    }
    {
        CheckReport two =
            check_no_square_root(ctx, box, LElem::from(LMono::w(-6, 4, 0, 2)), Bidegree(8, 4));
        for (auto& f : two.findings) rep.findings.push_back(std::move(f));
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// The nine lift families

struct FamilyClassification {
    Int lambda;
    int k = 0;  // power of p1
    int j = 0;  // power of sqrt(p2)
    int l = 0;  // power of btilde(w2)
    int family = 0;
    std::optional<Element> lift;  // element of motivic-z
    int canonical_k = 0;          // weight parameter chosen for the lift
};

inline FamilyClassification classify_family(const Int& lambda, int k, int j, int l)
{
    if (lambda == 0) throw usage_error("classify_family: zero element");
    if (l > 0 && lambda % 2 == 0)
        throw usage_error("classify_family: even multiple of a 2-torsion class is zero");

    FamilyClassification fc;
    fc.lambda = lambda;
    fc.k = k;
    fc.j = j;
    fc.l = l;

    auto mono = [&](int e2, int e3, int e4, int ey, int eA, int eB) {
        Monomial m;
        if (e2 > 0) m.mul_gen({gens::d2, 0}, e2);
        if (e3 > 0) m.mul_gen({gens::d3, 0}, e3);
        if (e4 > 0) m.mul_gen({gens::d4, 0}, e4);
        if (ey > 0) m.mul_gen({gens::y2, 0}, ey);
        if (eA > 0) m.mul_gen({gens::A, 0}, eA);
        if (eB > 0) m.mul_gen({gens::B, 0}, eB);
        return m;
    };

    if (l > 0) {
        const bool l_odd = l % 2 == 1;
        if (j == 0) {
            fc.family = l_odd ? 1 : 2;
            fc.lift = l_odd ? Element::from(mono(k, (l - 1) / 2, 0, 0, 1, 0))
                            : Element::from(mono(k, l / 2, 0, 0, 0, 0));
        } else if (j % 2 == 1) {
            fc.family = l_odd ? 3 : 4;
            fc.lift = l_odd ? Element::from(mono(k, (l - 1) / 2, (j - 1) / 2, 0, 0, 1))
                            : Element::from(mono(k, (l - 2) / 2, (j - 1) / 2, 0, 1, 1));
        } else {
            fc.family = l_odd ? 5 : 6;
            fc.lift = l_odd ? Element::from(mono(k, (l - 1) / 2, j / 2, 0, 1, 0))
                            : Element::from(mono(k, l / 2, j / 2, 0, 0, 0));
        }
        return fc;
    }
    if (j % 2 == 0) {
        fc.family = 7;
        const Int sign = (k % 2 == 0) ? 1 : -1;
        fc.lift = Element::from(mono(k, 0, j / 2, 0, 0, 0), lambda * sign);
        return fc;
    }
    if (lambda % 2 == 0) {
        fc.family = 8;
        const Int sign = (k % 2 == 0) ? 1 : -1;
        fc.lift = Element::from(mono(k, 0, (j - 1) / 2, 1, 0, 0), (lambda / 2) * sign);
        return fc;
    }
    fc.family = 9;
    return fc;
}

// t(lift) must reproduce the input for every monomial of families 1-8; mu of
// the lift must be a well-formed nonzero mod-2 motivic class.
inline CheckReport check_lift_roundtrip(Context& ctx, const Box& box, int deg_max = 24)
{
    CheckReport rep;
    rep.name = "lift-roundtrip";
    rep.box = box;
    const auto& ring_z = ctx.ring("classical-z");
    auto input_monomial = [&](int k, int j, int l) {
        Monomial m;
        if (k > 0) m.mul_gen({gens::p1, 0}, k);
        if (j > 0) m.mul_gen({gens::sqp2, 0}, j);
        if (l > 0) m.mul_gen({gens::bw2, 0}, l);
        return m;
    };
    auto run_case = [&](const Int& lambda, int k, int j, int l) {
        FamilyClassification fc = classify_family(lambda, k, j, l);
        if (fc.family == 9) return;
        const Element input =
            classical_z_normalize(Element::from(input_monomial(k, j, l), lambda));
        const Element round = realization_t(*fc.lift);
        bool ok;
        if (l > 0) {
            ok = round == input;  // both sides already normalized mod the torsion relation
        } else {
            ok = round == input;  // free part must match exactly, signs included
        }
        if (!ok) {
            Finding f;
            f.deg = Bidegree(4 * k + 4 * j + 3 * l);
            f.expected = ring_z.render(input);
            f.computed = ring_z.render(round) + "  [family " + std::to_string(fc.family) +
                         ", lift " + ctx.ring("motivic-z").render(*fc.lift) + "]";
            f.witness = {ring_z.render(input_monomial(k, j, l))};
            rep.findings.push_back(std::move(f));
        }
        const LElem mu = mu_motivic(*fc.lift);
        if (mu.is_zero() || !mu.monos.front().member()) {
            Finding f;
            f.deg = Bidegree(4 * k + 4 * j + 3 * l);
            f.expected = "mu(lift) a nonzero mod-2 motivic class";
            f.computed = lrender(mu);
            f.witness = {ring_z.render(input_monomial(k, j, l))};
            rep.findings.push_back(std::move(f));
        }
    };
    for (int k = 0; 4 * k <= deg_max; ++k)
        for (int j = 0; 4 * k + 4 * j <= deg_max; ++j)
            for (int l = 0; 4 * k + 4 * j + 3 * l <= deg_max; ++l) {
                if (k == 0 && j == 0 && l == 0) continue;
                if (l == 0 && j % 2 == 1) {
                    run_case(2, k, j, l);  // family 8 input 2*p1^k*sqp2^j
                    continue;              // odd multiples are family 9
                }
                run_case(1, k, j, l);
            }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Family 9 has no lift: no odd multiple of p1^k sqp2^j (j odd) lies in the
// image of t over any weight up to q_max. Finite certificate via SNF.

inline CheckReport check_no_lift_family9(Context& ctx, const Box& box, int deg_max = 16)
{
    CheckReport rep;
    rep.name = "no-lift-family9";
    rep.box = box;
    const auto& ring_z = ctx.ring("classical-z");

    for (int k = 0; 4 * k <= deg_max; ++k)
        for (int j = 1; 4 * k + 4 * j <= deg_max; j += 2) {
            const int p = 4 * k + 4 * j;
            auto target_piece = ctx.piece("classical-z", Bidegree(p));
            const std::vector<Monomial>& free_b = target_piece->free_basis;
            const std::vector<Monomial>& tors_b = target_piece->torsion_basis;
            const int nf = int(free_b.size());
            const int nt = int(tors_b.size());

            Monomial target;
            if (k > 0) target.mul_gen({gens::p1, 0}, k);
            target.mul_gen({gens::sqp2, 0}, j);
            const int target_idx = detail::index_of(free_b, target);
            if (target_idx < 0) throw internal_error("family-9 target not a free monomial");

            // image lattice of t across all weights, plus 2 * torsion coords
            std::vector<std::vector<Int>> gens_vec;
            for (int q = 0; q <= box.q_max; ++q) {
                auto piece = ctx.piece("motivic-z", Bidegree(p, q));
                for (const Monomial& m : piece->basis()) {
                    const Element img = realization_t(Element::from(m));
                    std::vector<Int> v(size_t(nf + nt), 0);
                    bool nonzero = false;
                    for (const auto& [mono, c] : img.terms) {
                        int idx = detail::index_of(free_b, mono);
                        if (idx < 0) {
                            const int tidx = detail::index_of(tors_b, mono);
                            if (tidx < 0)
                                throw internal_error("t image outside the degree-" +
                                                     std::to_string(p) + " piece");
                            idx = nf + tidx;
                        }
                        v[size_t(idx)] = c;
                        nonzero = nonzero || c != 0;
                    }
                    if (nonzero) gens_vec.push_back(std::move(v));
                }
            }
            for (int tdx = 0; tdx < nt; ++tdx) {
                std::vector<Int> v(size_t(nf + nt), 0);
                v[size_t(nf + tdx)] = 2;
                gens_vec.push_back(std::move(v));
            }

            // solve: least positive lambda with lambda * target in the lattice
            Int order = 0;  // 0 = no multiple at all
            if (!gens_vec.empty()) {
                IntMat g(nf + nt, int(gens_vec.size()));
                for (size_t cidx = 0; cidx < gens_vec.size(); ++cidx)
                    for (int ridx = 0; ridx < nf + nt; ++ridx)
                        g.at(ridx, int(cidx)) = gens_vec[cidx][size_t(ridx)];
                SmithResult s = smith_normal_form(g);
                std::vector<Int> tvec(size_t(nf + nt), 0);
                tvec[size_t(target_idx)] = 1;
                // coordinates of the target in the SNF basis
                std::vector<Int> tt(size_t(nf + nt), 0);
                for (int ii = 0; ii < nf + nt; ++ii)
                    for (int jj = 0; jj < nf + nt; ++jj)
                        tt[size_t(ii)] += s.left.at(ii, jj) * tvec[size_t(jj)];
                bool reachable = true;
                Int lcm = 1;
                for (int ii = 0; ii < nf + nt; ++ii) {
                    const Int d = (size_t(ii) < s.diagonal.size()) ? s.diagonal[size_t(ii)] : Int(0);
                    if (d == 0) {
                        if (tt[size_t(ii)] != 0) reachable = false;
                        continue;
                    }
                    const Int g2 = gcd_int(d, tt[size_t(ii)]);
                    const Int need = d / g2;
                    lcm = lcm / gcd_int(lcm, need) * need;
                }
                if (reachable) order = lcm;
            }
            const bool lift_exists = order != 0 && order % 2 != 0;
            if (lift_exists) {
                Finding f;
                f.deg = Bidegree(p);
                f.expected = "no odd multiple of " + ring_z.render(target) +
                             " in im(t) for weights <= " + std::to_string(box.q_max);
                f.computed = "multiple " + order.str() + " reachable";
                f.witness = {ring_z.render(target)};
                rep.findings.push_back(std::move(f));
            }
        }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Chow slice: H^(2n,n)(Z) against CH^n

inline CheckReport check_chow_slice(Context& ctx, const Box& box, int n_max = 8)
{
    CheckReport rep;
    rep.name = "chow-slice";
    rep.box = box;
    for (int n = 0; n <= n_max; ++n) {
        auto chow = ctx.piece("chow", Bidegree(n));
        auto diag = ctx.piece("motivic-z", Bidegree(2 * n, n));
        std::vector<std::string> chow_basis, diag_basis;
        for (const Monomial& m : chow->basis()) chow_basis.push_back(ctx.ring("chow").render(m));
        for (const Monomial& m : diag->basis())
            diag_basis.push_back(ctx.ring("motivic-z").render(m));
        std::sort(chow_basis.begin(), chow_basis.end());
        std::sort(diag_basis.begin(), diag_basis.end());
        if (chow->group != diag->group || chow_basis != diag_basis) {
            Finding f;
            f.deg = Bidegree(2 * n, n);
            f.expected = "CH^" + std::to_string(n) + " = " + render_group(chow->group);
            f.computed = render_group(diag->group);
            f.witness = {detail::least_witness(ctx.ring("chow"), chow->basis())};
            rep.findings.push_back(std::move(f));
        }
    }
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Every torsion coefficient anywhere in the box equals 2

inline CheckReport check_torsion_is_2(Context& ctx, const Box& box)
{
    CheckReport rep;
    rep.name = "torsion-is-2";
    rep.box = box;
    auto scan = [&](const std::string& ring_name, const Bidegree& deg) {
        auto piece = ctx.piece(ring_name, deg);
        for (const Int& d : piece->group.torsion)
            if (d != 2) {
                Finding f;
                f.deg = deg;
                f.expected = "torsion coefficient 2 in " + ring_name;
                f.computed = d.str();
                f.witness = {detail::least_witness(ctx.ring(ring_name), piece->torsion_basis)};
                rep.findings.push_back(std::move(f));
            }
    };
    for (int m = 0; m <= box.m_max; ++m) scan("classical-z", Bidegree(m));
    for (int n = 0; 2 * n <= box.p_max; ++n) scan("chow", Bidegree(n));
    for (int p = 0; p <= box.p_max; ++p)
        for (int q = 0; q <= box.q_max; ++q) scan("motivic-z", Bidegree(p, q));
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// Report-only audit of the published presentation against the groups forced
// by the mod-2 ring through the UCT bookkeeping.

inline CheckReport check_presentation_vs_uct(Context& ctx, const Box& box,
                                             const std::string& ring_name = "motivic-z-published")
{
    CheckReport rep;
    rep.name = "presentation-vs-uct";
    rep.box = box;
    rep.report_only = true;
    const auto& ring = ctx.ring(ring_name);

    for (int q = 0; q <= box.q_max; ++q) {
        int s_forced = 0;  // forced torsion dimension at (p, q), advanced in p
        for (int p = 0; p <= box.p_max; ++p) {
            const int r_forced =
                (p % 2 == 0 && q == p / 2) ? ctx.piece("chow", Bidegree(p / 2))->group.rank : 0;
            auto piece = ctx.piece(ring_name, Bidegree(p, q));
            const int r_here = piece->group.rank;
            const int s_here = piece->group.torsion_count();
            if (r_here != r_forced || s_here != s_forced) {
                Finding f;
                f.deg = Bidegree(p, q);
                AbelianGroup forced;
                forced.rank = r_forced;
                forced.torsion.assign(size_t(std::max(s_forced, 0)), Int(2));
                f.expected = "forced " + render_group(forced);
                f.computed = "presented " + render_group(piece->group);
                f.witness = {detail::least_witness(ring, piece->basis())};
                rep.findings.push_back(std::move(f));
            }
            const int corr = detail::base_correction(ctx, p, q);
            s_forced = mod2_motivic_dim(Bidegree(p, q)) - r_forced - s_forced - corr;
        }
    }
    std::sort(rep.findings.begin(), rep.findings.end(),
              [](const Finding& a, const Finding& b) { return a.deg < b.deg; });
    rep.finish();
    return rep;
}

}  // namespace mrv
