#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mrv {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b)
{
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// g = u*a + v*b, g >= 0
inline Int xgcd(const Int& a, const Int& b, Int& u, Int& v)
{
    Int old_r = a, r = b;
    Int old_u = 1, uu = 0;
    Int old_v = 0, vv = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t;
        t = old_r - q * r;  old_r = r;  r = t;
        t = old_u - q * uu; old_u = uu; uu = t;
        t = old_v - q * vv; old_v = vv; vv = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    u = old_u;
    v = old_v;
    return old_r;
}

inline Int floor_div(const Int& a, const Int& b)
{
    assert(b > 0);
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cohomological degree p plus weight q; classical rings leave q at the
// ungraded sentinel and all weight arithmetic is skipped for them.
struct Bidegree {
    static constexpr int kUngraded = std::numeric_limits<int>::min();

    int p = 0;
    int q = kUngraded;

    Bidegree() = default;
    explicit Bidegree(int p_) : p(p_) {}
    Bidegree(int p_, int q_) : p(p_), q(q_) {}

    bool bigraded() const { return q != kUngraded; }

    Bidegree operator+(const Bidegree& o) const
    {
        if (bigraded() != o.bigraded())
            throw internal_error("bidegree grading mismatch");
        return bigraded() ? Bidegree(p + o.p, q + o.q) : Bidegree(p + o.p);
    }

    Bidegree operator-(const Bidegree& o) const
    {
        if (bigraded() != o.bigraded())
            throw internal_error("bidegree grading mismatch");
        return bigraded() ? Bidegree(p - o.p, q - o.q) : Bidegree(p - o.p);
    }

    friend bool operator==(const Bidegree& a, const Bidegree& b)
    {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const Bidegree& a, const Bidegree& b) { return !(a == b); }
    friend bool operator<(const Bidegree& a, const Bidegree& b)
    {
        return std::tie(a.p, a.q) < std::tie(b.p, b.q);
    }

    std::string str() const
    {
        if (!bigraded()) return std::to_string(p);
        return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
};

// Generator instance: index into the ring's generator list, plus the family
// parameter k (0 for atomic generators).
struct GenId {
    int gen = 0;
    int param = 0;

    friend bool operator==(const GenId& a, const GenId& b)
    {
        return a.gen == b.gen && a.param == b.param;
    }
    friend bool operator<(const GenId& a, const GenId& b)
    {
        return std::tie(a.gen, a.param) < std::tie(b.gen, b.param);
    }
};

// Formal product of generator instances with strictly positive exponents;
// the empty product is the ring unit.
struct Monomial {
    std::vector<std::pair<GenId, int>> factors;  // sorted by GenId

    static Monomial unit() { return Monomial{}; }

    bool is_unit() const { return factors.empty(); }

    int exp_of(const GenId& g) const
    {
        for (const auto& [id, e] : factors)
            if (id == g) return e;
        return 0;
    }

    int total_exp_of_gen(int gen) const
    {
        int total = 0;
        for (const auto& [id, e] : factors)
            if (id.gen == gen) total += e;
        return total;
    }

    Monomial& mul_gen(const GenId& g, int e)
    {
        assert(e > 0);
        auto it = std::lower_bound(factors.begin(), factors.end(), g,
                                   [](const auto& f, const GenId& id) { return f.first < id; });
        if (it != factors.end() && it->first == g)
            it->second += e;
        else
            factors.insert(it, {g, e});
        return *this;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r = a;
        for (const auto& [id, e] : b.factors) r.mul_gen(id, e);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.factors == b.factors;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        return a.factors < b.factors;
    }
};

// Finite Z-linear combination of monomials, kept sorted with nonzero
// coefficients. Rings over Z/2 reuse this with coefficients reduced mod 2.
struct Element {
    std::vector<std::pair<Monomial, Int>> terms;  // sorted by monomial

    static Element zero() { return Element{}; }

    static Element from(const Monomial& m, Int c = 1)
    {
        Element e;
        if (c != 0) e.terms.push_back({m, std::move(c)});
        return e;
    }

    static Element one() { return from(Monomial::unit()); }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Int& c)
    {
        if (c == 0) return;
        auto it = std::lower_bound(terms.begin(), terms.end(), m,
                                   [](const auto& t, const Monomial& mm) { return t.first < mm; });
        if (it != terms.end() && it->first == m) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        } else {
            terms.insert(it, {m, c});
        }
    }

    friend Element operator+(const Element& a, const Element& b)
    {
        Element r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, c);
        return r;
    }

    friend Element operator-(const Element& a, const Element& b)
    {
        Element r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, -c);
        return r;
    }

    friend Element operator*(const Element& a, const Element& b)
    {
        Element r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms)
                r.add_term(ma * mb, ca * cb);
        return r;
    }

    Element scaled(const Int& c) const
    {
        Element r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms) r.terms.push_back({m, k * c});
        return r;
    }

    // Reduce all coefficients mod 2, dropping even terms.
    Element mod2() const
    {
        Element r;
        for (const auto& [m, c] : terms)
            if (c % 2 != 0) r.terms.push_back({m, 1});
        return r;
    }

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.terms == b.terms;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

}  // namespace mrv
