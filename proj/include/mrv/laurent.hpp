#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mrv/core.hpp"

namespace mrv {

// ---------------------------------------------------------------------------
// The mod-2 motivic ring of BSO4 as a Laurent model: the non-y part is the
// span of tau^e * w2^a * w3^b * w4^c with e >= -deficit(a,b,c), and the
// y-part is y02 * (tau^-2 w2^2)^i * (tau^-2 w4^2)^j, killed by tau, by the
// odd letters, and by itself.

// Largest total tau-denominator a w-monomial supports: maximum-weight pairing
// of the letter multiset, pair weights {w2w2:2, w4w4:2, all others:1}.
inline int deficit(int a, int b, int c)
{
    assert(a >= 0 && b >= 0 && c >= 0);
    static std::map<std::tuple<int, int, int>, int> memo;
    auto key = std::make_tuple(a, b, c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int best = 0;
    for (int n22 = 0; 2 * n22 <= a; ++n22)
        for (int n33 = 0; 2 * n33 <= b; ++n33)
            for (int n44 = 0; 2 * n44 <= c; ++n44) {
                const int a_left = a - 2 * n22;
                const int b_left = b - 2 * n33;
                const int c_left = c - 2 * n44;
                for (int n23 = 0; n23 <= std::min(a_left, b_left); ++n23)
                    for (int n24 = 0; n24 <= std::min(a_left - n23, c_left); ++n24) {
                        const int n34 = std::min(b_left - n23, c_left - n24);
                        const int w = 2 * n22 + n33 + 2 * n44 + n23 + n24 + n34;
                        if (w > best) best = w;
                    }
            }
    memo[key] = best;
    return best;
}

struct LMono {
    bool ypart = false;
    // non-y: tau^e w2^a w3^b w4^c
    int e = 0, a = 0, b = 0, c = 0;
    // y-part: y02 * mu(d2)^i * mu(d4)^j
    int i = 0, j = 0;

    static LMono unit() { return LMono{}; }

    static LMono w(int e, int a, int b, int c)
    {
        LMono m;
        m.e = e;
        m.a = a;
        m.b = b;
        m.c = c;
        return m;
    }

    static LMono y(int i, int j)
    {
        LMono m;
        m.ypart = true;
        m.i = i;
        m.j = j;
        return m;
    }

    Bidegree degree() const
    {
        if (ypart) return Bidegree(4 + 4 * i + 8 * j, 2 + 2 * i + 4 * j);
        return Bidegree(2 * a + 3 * b + 4 * c, e + 2 * a + 2 * b + 3 * c);
    }

    bool member() const
    {
        if (ypart) return i >= 0 && j >= 0;
        return a >= 0 && b >= 0 && c >= 0 && e >= -deficit(a, b, c);
    }

    // canonical order: non-y first by (a,b,c) descending, then y by (i,j)
    // descending; e breaks ties across bidegrees
    friend bool operator<(const LMono& x, const LMono& y)
    {
        if (x.ypart != y.ypart) return !x.ypart;
        if (!x.ypart)
            return std::make_tuple(y.a, y.b, y.c, x.e) < std::make_tuple(x.a, x.b, x.c, y.e);
        return std::make_tuple(y.i, y.j) < std::make_tuple(x.i, x.j);
    }
    friend bool operator==(const LMono& x, const LMono& y)
    {
        if (x.ypart != y.ypart) return false;
        if (x.ypart) return x.i == y.i && x.j == y.j;
        return x.e == y.e && x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator!=(const LMono& x, const LMono& y) { return !(x == y); }
};

// Product of two monomials; nullopt means zero in the ring.
inline std::optional<LMono> lmul(const LMono& x, const LMono& y)
{
    if (x.ypart && y.ypart) return std::nullopt;
    if (!x.ypart && !y.ypart) {
        LMono r = LMono::w(x.e + y.e, x.a + y.a, x.b + y.b, x.c + y.c);
        assert(r.member());
        return r;
    }
    const LMono& yy = x.ypart ? x : y;
    const LMono& ww = x.ypart ? y : x;
    // y02 survives only against the subring Z2[mu(d2), mu(d4)]
    if (ww.b != 0 || ww.a % 2 != 0 || ww.c % 2 != 0) return std::nullopt;
    if (ww.e != -(ww.a + ww.c)) return std::nullopt;
    return LMono::y(yy.i + ww.a / 2, yy.j + ww.c / 2);
}

// F2 combination of Laurent monomials, kept sorted.
struct LElem {
    std::vector<LMono> monos;

    static LElem zero() { return LElem{}; }

    static LElem from(const LMono& m)
    {
        LElem e;
        e.monos.push_back(m);
        return e;
    }

    static LElem unit() { return from(LMono::unit()); }

    bool is_zero() const { return monos.empty(); }

    void flip(const LMono& m)
    {
        auto it = std::lower_bound(monos.begin(), monos.end(), m);
        if (it != monos.end() && *it == m)
            monos.erase(it);
        else
            monos.insert(it, m);
    }

    friend LElem operator+(const LElem& x, const LElem& y)
    {
        LElem r = x;
        for (const LMono& m : y.monos) r.flip(m);
        return r;
    }

    friend LElem operator*(const LElem& x, const LElem& y)
    {
        LElem r;
        for (const LMono& mx : x.monos)
            for (const LMono& my : y.monos)
                if (auto p = lmul(mx, my)) r.flip(*p);
        return r;
    }

    LElem square() const
    {
        // Frobenius in characteristic 2: cross terms vanish
        LElem r;
        for (const LMono& m : monos)
            if (auto p = lmul(m, m)) r.flip(*p);
        return r;
    }

    friend bool operator==(const LElem& x, const LElem& y) { return x.monos == y.monos; }
    friend bool operator!=(const LElem& x, const LElem& y) { return !(x == y); }
};

// Full F2 basis of the (p,q) piece; the listed monomials are already in
// normal form, no reduction step exists in this model.
inline std::vector<LMono> mod2_motivic_basis(const Bidegree& deg)
{
    assert(deg.bigraded());
    std::vector<LMono> out;
    if (deg.p < 0) return out;
    for (int c = 0; 4 * c <= deg.p; ++c)
        for (int b = 0; 3 * b + 4 * c <= deg.p; ++b) {
            const int rem = deg.p - 3 * b - 4 * c;
            if (rem % 2 != 0) continue;
            const int a = rem / 2;
            const int e = deg.q - (2 * a + 2 * b + 3 * c);
            if (e >= -deficit(a, b, c)) out.push_back(LMono::w(e, a, b, c));
        }
    for (int j = 0; 4 + 8 * j <= deg.p; ++j) {
        const int rem = deg.p - 4 - 8 * j;
        if (rem % 4 != 0) continue;
        const int i = rem / 4;
        if (2 + 2 * i + 4 * j == deg.q) out.push_back(LMono::y(i, j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int mod2_motivic_dim(const Bidegree& deg) { return int(mod2_motivic_basis(deg).size()); }

inline std::string lrender(const LMono& m)
{
    auto pow = [](const std::string& s, int e) {
        if (e == 1) return s;
        return s + "^" + std::to_string(e);
    };
    std::string out;
    auto push = [&](const std::string& s) {
        if (!out.empty()) out += "\xc2\xb7";  // middle dot
        out += s;
    };
    if (m.ypart) {
        const int e = -2 * (m.i + m.j);
        if (e != 0) push("\xcf\x84^" + std::to_string(e));
        push("y02");
        if (m.i > 0) push(pow("w2", 2 * m.i));
        if (m.j > 0) push(pow("w4", 2 * m.j));
        return out;
    }
    if (m.e != 0) push(m.e == 1 ? "\xcf\x84" : "\xcf\x84^" + std::to_string(m.e));
    if (m.a > 0) push(pow("w2", m.a));
    if (m.b > 0) push(pow("w3", m.b));
    if (m.c > 0) push(pow("w4", m.c));
    if (out.empty()) out = "1";
    return out;
}

inline std::string lrender(const LElem& e)
{
    if (e.is_zero()) return "0";
    std::string out;
    for (const LMono& m : e.monos) {
        if (!out.empty()) out += " + ";
        out += lrender(m);
    }
    return out;
}

}  // namespace mrv
