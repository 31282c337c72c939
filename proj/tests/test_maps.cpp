#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mrv/maps.hpp"

using namespace mrv;

namespace {

Monomial mono(std::initializer_list<std::pair<int, int>> fs)
{
    Monomial m;
    for (const auto& [g, e] : fs) m.mul_gen({g, 0}, e);
    return m;
}

Monomial fam(int gen, int param, int e = 1)
{
    Monomial m;
    m.mul_gen({gen, param}, e);
    return m;
}

}  // namespace

TEST_CASE("realization t on generators and products")
{
    // t(y2) = 2 sqrt(p2)
    Element y2 = Element::from(mono({{gens::y2, 1}}));
    REQUIRE(realization_t(y2) == Element::from(mono({{gens::sqp2, 1}}), 2));

    // t(d2^2 * y2) = 2 p1^2 sqrt(p2): the sign (-p1)^2 cancels
    Element x = Element::from(mono({{gens::d2, 2}, {gens::y2, 1}}));
    REQUIRE(realization_t(x) ==
            Element::from(mono({{gens::p1, 2}, {gens::sqp2, 1}}), 2));

    // t(d2) = -p1 exactly
    REQUIRE(realization_t(Element::from(mono({{gens::d2, 1}}))) ==
            Element::from(mono({{gens::p1, 1}}), -1));

    // torsion normal form: t(2*A(0)) = 2*bw2 = 0
    REQUIRE(realization_t(Element::from(fam(gens::A, 0), 2)).is_zero());
}

TEST_CASE("realization t2 on laurent classes")
{
    // t2(tau) = 1
    REQUIRE(realization_t2(LElem::from(LMono::w(1, 0, 0, 0))) == Element::one());
    // t2(mu(d2)) = w2^2
    REQUIRE(realization_t2(LElem::from(LMono::w(-2, 2, 0, 0))) ==
            Element::from(mono({{gens::w2, 2}})));
    // the y-part dies
    REQUIRE(realization_t2(LElem::from(LMono::y(2, 1))).is_zero());
}

TEST_CASE("bockstein on both mod-2 rings")
{
    // beta(w2^(2k+1) w3^a w4^b) = w2^(2k) w3^(a+1) w4^b
    Element in = Element::from(mono({{gens::w2, 3}, {gens::w3, 2}, {gens::w4, 1}}));
    REQUIRE(bockstein_classical(in) ==
            Element::from(mono({{gens::w2, 2}, {gens::w3, 3}, {gens::w4, 1}})));
    // beta(w2^2) = 0 in characteristic 2
    REQUIRE(bockstein_classical(Element::from(mono({{gens::w2, 2}}))).is_zero());

    // beta(tau^-1 w2 w4) = tau^-1 w3 w4
    REQUIRE(bockstein_motivic(LElem::from(LMono::w(-1, 1, 0, 1))) ==
            LElem::from(LMono::w(-1, 0, 1, 1)));
    // beta kills tau powers and the y-part
    REQUIRE(bockstein_motivic(LElem::from(LMono::w(5, 0, 0, 0))).is_zero());
    REQUIRE(bockstein_motivic(LElem::from(LMono::y(1, 1))).is_zero());
}

TEST_CASE("beta squares to zero on every piece in the box")
{
    for (int p = 0; p <= 14; ++p)
        for (int q = 0; q <= 10; ++q)
            for (const LMono& m : mod2_motivic_basis({p, q})) {
                const LElem once = bockstein_motivic(LElem::from(m));
                REQUIRE(bockstein_motivic(once).is_zero());
                // membership preservation
                for (const LMono& im : once.monos) REQUIRE(im.member());
            }
}

TEST_CASE("beta equals mu_C composed with btilde_C on classical monomials")
{
    Context ctx;
    for (int m = 0; m <= 24; ++m) {
        auto piece = ctx.piece("classical-z2", Bidegree(m));
        for (const Monomial& x : piece->basis()) {
            const Element lhs = bockstein_classical(Element::from(x));
            const Element rhs = mu_classical(beta_tilde_c(x));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("btilde_C two-case formula")
{
    // w2 -> bw2
    REQUIRE(beta_tilde_c(mono({{gens::w2, 1}})) == Element::from(mono({{gens::bw2, 1}})));
    // even w2-exponent: w4^k -> 0
    REQUIRE(beta_tilde_c(mono({{gens::w4, 3}})).is_zero());
    // w2 w3 w4 -> sqp2 * bw2^2
    REQUIRE(beta_tilde_c(mono({{gens::w2, 1}, {gens::w3, 1}, {gens::w4, 1}})) ==
            Element::from(mono({{gens::sqp2, 1}, {gens::bw2, 2}})));
}

TEST_CASE("map matrices on pinned degrees")
{
    Context ctx;
    {
        // mu_C at degree 3 is the 1x1 identity: bw2 -> w3
        MapMatrix mm = matrix_mu_c(ctx, 3);
        REQUIRE(mm.src_basis == std::vector<std::string>({"bw2"}));
        REQUIRE(mm.dst_basis == std::vector<std::string>({"w3"}));
        REQUIRE(mm.mat.rows[0].get(0));
    }
    {
        // t2 at (4,2) has rank 1: mu(d2) -> w2^2, y02 -> 0
        MapMatrix mm = matrix_t2(ctx, Bidegree(4, 2));
        REQUIRE(f2_rank(mm.mat) == 1);
        F2Vec y(int(mm.src_basis.size()));
        y.set(1);  // y02 is the second basis monomial
        REQUIRE(f2_apply(mm.mat, y).zero());
    }
    {
        // btilde_C from degree 6 onto the two torsion classes in degree 7
        MapMatrix mm = matrix_beta_tilde_c(ctx, 6);
        REQUIRE(mm.src_basis == std::vector<std::string>({"w2^3", "w2\xc2\xb7w4", "w3^2"}));
        REQUIRE(mm.dst_basis ==
                std::vector<std::string>({"p1\xc2\xb7""bw2", "sqp2\xc2\xb7""bw2"}));
        // w2^3 -> p1*bw2, w2*w4 -> sqp2*bw2, w3^2 -> 0
        REQUIRE(mm.mat.rows[0].get(0));
        REQUIRE_FALSE(mm.mat.rows[0].get(1));
        REQUIRE_FALSE(mm.mat.rows[0].get(2));
        REQUIRE(mm.mat.rows[1].get(1));
        REQUIRE_FALSE(mm.mat.rows[1].get(0));
        REQUIRE_FALSE(mm.mat.rows[1].get(2));
    }
}

TEST_CASE("ring maps are multiplicative on random homogeneous pairs")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> exp(0, 2), param(0, 3);
    auto random_motivic_monomial = [&] {
        Monomial m;
        for (int g = gens::d2; g <= gens::y2; ++g) {
            const int e = exp(rng);
            if (e > 0) m.mul_gen({g, 0}, e);
        }
        if (exp(rng) > 0) m.mul_gen({gens::A, param(rng)}, 1);
        if (exp(rng) > 1) m.mul_gen({gens::B, param(rng)}, 1);
        return m;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Monomial a = random_motivic_monomial(), b = random_motivic_monomial();
        const Element ea = Element::from(a), eb = Element::from(b), eab = Element::from(a * b);
        REQUIRE(realization_t(eab) ==
                classical_z_normalize(realization_t(ea) * realization_t(eb)));
        REQUIRE(mu_motivic(eab) == mu_motivic(ea) * mu_motivic(eb));
        // and mu_C on the classical side
        const Element ta = realization_t(ea), tb = realization_t(eb);
        REQUIRE(mu_classical(ta * tb) == (mu_classical(ta) * mu_classical(tb)).mod2());
    }
}

TEST_CASE("defining preimages: bockstein of tau^k w2 patterns matches mu of the families")
{
    for (int k = 0; k <= 8; ++k) {
        // A(k) <- tau^k w2: beta(tau^k w2) = tau^k w3 = mu(A(k))
        REQUIRE(bockstein_motivic(LElem::from(LMono::w(k, 1, 0, 0))) ==
                mu_motivic(Element::from(fam(gens::A, k))));
        // B(k) <- tau^(k-1) w2 w4: beta = tau^(k-1) w3 w4 = mu(B(k))
        REQUIRE(bockstein_motivic(LElem::from(LMono::w(k - 1, 1, 0, 1))) ==
                mu_motivic(Element::from(fam(gens::B, k))));
    }
}

TEST_CASE("every relation dies under t and under mu")
{
    Context ctx;
    for (const char* name : {"motivic-z", "motivic-z-published"}) {
        const auto& ring = ctx.ring(name);
        for (const RelationTemplate& t : ring.rels) {
            detail::instances_within(ring, t, Bidegree(14, 9),
                                     [&](const Element& el, const Bidegree&) {
                                         REQUIRE(realization_t(el).is_zero());
                                         REQUIRE(mu_motivic(el).is_zero());
                                     });
        }
    }
    // in particular mu(y2^2 - 4 d4) = y02^2 = 0
    Element rel = Element::from(mono({{gens::y2, 2}})) -
                  Element::from(mono({{gens::d4, 1}}), 4);
    REQUIRE(mu_motivic(rel).is_zero());
    REQUIRE(realization_t(rel).is_zero());
}

TEST_CASE("maps reject foreign generators and the dispatcher routes by name")
{
    // a chow-style monomial (gen index 3 = y2) is not in mu_C's source ring
    Monomial foreign;
    foreign.mul_gen({gens::y2, 0}, 1);
    REQUIRE_THROWS_AS(mu_classical(Element::from(foreign)), usage_error);

    Context ctx;
    REQUIRE(map_matrix(ctx, "mu_C", Bidegree(3)).dst_basis ==
            std::vector<std::string>({"w3"}));
    REQUIRE(map_matrix(ctx, "t2", Bidegree(4, 2)).hom == "t2");
    REQUIRE(map_matrix(ctx, "t1", Bidegree(4, 2)).dst_basis.size() == 2);
    REQUIRE_THROWS_AS(map_matrix(ctx, "nope", Bidegree(3)), usage_error);
    REQUIRE_THROWS_AS(map_matrix(ctx, "mu_C", Bidegree(3, 2)), usage_error);
    REQUIRE_THROWS_AS(map_matrix(ctx, "mu_M", Bidegree(3)), usage_error);
}

TEST_CASE("mu_M restricted to the torsion summand has full rank")
{
    Context ctx;
    for (int p = 0; p <= 16; ++p)
        for (int q = 0; q <= 10; ++q) {
            auto piece = ctx.piece("motivic-z", Bidegree(p, q));
            if (piece->torsion_basis.empty()) continue;
            const auto dst = mod2_motivic_basis(Bidegree(p, q));
            F2Mat mat(int(dst.size()), int(piece->torsion_basis.size()));
            for (size_t j = 0; j < piece->torsion_basis.size(); ++j) {
                const LElem img = mu_motivic(Element::from(piece->torsion_basis[j]));
                for (const LMono& m : img.monos) {
                    int idx = -1;
                    for (size_t i = 0; i < dst.size(); ++i)
                        if (dst[i] == m) idx = int(i);
                    REQUIRE(idx >= 0);
                    mat.rows[size_t(idx)].set(int(j));
                }
            }
            REQUIRE(f2_rank(mat) == int(piece->torsion_basis.size()));
        }
}
