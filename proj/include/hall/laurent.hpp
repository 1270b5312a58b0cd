#pragma once

// Exact coefficient arithmetic: Laurent polynomials in v over Z, polynomials
// in q over Z, Gaussian binomials, the bar involution v -> v^-1, and the
// bar-symmetric / negative-part decomposition.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "hall/errors.hpp"

namespace hall {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

using CoeffMap = std::map<long, Int>;

inline void map_add_term(CoeffMap& m, long e, const Int& c) {
    if (c == 0) return;
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

inline CoeffMap map_add(const CoeffMap& a, const CoeffMap& b) {
    CoeffMap r = a;
    for (const auto& [e, c] : b) map_add_term(r, e, c);
    return r;
}

inline CoeffMap map_sub(const CoeffMap& a, const CoeffMap& b) {
    CoeffMap r = a;
    for (const auto& [e, c] : b) map_add_term(r, e, -c);
    return r;
}

inline CoeffMap map_mul(const CoeffMap& a, const CoeffMap& b) {
    CoeffMap r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) map_add_term(r, ea + eb, ca * cb);
    return r;
}

// Long division from the top; exact or throws. The quotient of an exact
// division f = q*g has deg(q) = deg(f)-deg(g) and low(q) = low(f)-low(g),
// which bounds the loop.
inline CoeffMap map_exact_divide(const CoeffMap& f0, const CoeffMap& g) {
    if (g.empty()) throw NonExactDivision("division by zero polynomial");
    if (f0.empty()) return {};
    const long low_bound = f0.begin()->first - g.begin()->first;
    const long g_deg = g.rbegin()->first;
    const Int& g_lead = g.rbegin()->second;
    CoeffMap f = f0, q;
    while (!f.empty()) {
        const long e = f.rbegin()->first - g_deg;
        if (e < low_bound) throw NonExactDivision("remainder in polynomial division");
        Int quot, rem;
        boost::multiprecision::divide_qr(f.rbegin()->second, g_lead, quot, rem);
        if (rem != 0) throw NonExactDivision("leading coefficient does not divide");
        map_add_term(q, e, quot);
        for (const auto& [eg, cg] : g) map_add_term(f, e + eg, -quot * cg);
    }
    return q;
}

inline std::string map_to_string(const CoeffMap& m, const char* var) {
    if (m.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : m) {
        Int a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            out << a;
        } else {
            if (a != 1) out << a << "*";
            out << var;
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

} // namespace detail

// ---------------------------------------------------------------------------
// LaurentPoly: element of Z[v, v^-1], sparse map exponent -> coefficient.
// ---------------------------------------------------------------------------
struct LaurentPoly {
    detail::CoeffMap c;

    LaurentPoly() = default;
    explicit LaurentPoly(const Int& constant) {
        if (constant != 0) c.emplace(0, constant);
    }

    static LaurentPoly monomial(long e, const Int& coeff = 1) {
        LaurentPoly p;
        detail::map_add_term(p.c, e, coeff);
        return p;
    }
    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Int(1)); }

    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c.begin()->first == 0 && c.begin()->second == 1; }
    Int coeff(long e) const {
        auto it = c.find(e);
        return it == c.end() ? Int(0) : it->second;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c == b.c; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        return from_map(detail::map_add(a.c, b.c));
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return from_map(detail::map_sub(a.c, b.c));
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        return from_map(detail::map_mul(a.c, b.c));
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, v] : c) r.c.emplace(e, -v);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    std::string to_string() const { return detail::map_to_string(c, "v"); }

    static LaurentPoly from_map(detail::CoeffMap m) {
        LaurentPoly p;
        p.c = std::move(m);
        return p;
    }
};

// ---------------------------------------------------------------------------
// QPoly: element of Z[q], nonnegative exponents only.
// ---------------------------------------------------------------------------
struct QPoly {
    detail::CoeffMap c;

    QPoly() = default;
    explicit QPoly(const Int& constant) {
        if (constant != 0) c.emplace(0, constant);
    }

    static QPoly monomial(long e, const Int& coeff = 1) {
        if (e < 0) throw ValidationError("QPoly exponent must be nonnegative");
        QPoly p;
        detail::map_add_term(p.c, e, coeff);
        return p;
    }
    static QPoly zero() { return QPoly(); }
    static QPoly one() { return QPoly(Int(1)); }

    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c.begin()->first == 0 && c.begin()->second == 1; }
    Int coeff(long e) const {
        auto it = c.find(e);
        return it == c.end() ? Int(0) : it->second;
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }
    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        return from_map(detail::map_add(a.c, b.c));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        return from_map(detail::map_sub(a.c, b.c));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        return from_map(detail::map_mul(a.c, b.c));
    }
    QPoly operator-() const {
        QPoly r;
        for (const auto& [e, v] : c) r.c.emplace(e, -v);
        return r;
    }
    QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
    QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    std::string to_string() const { return detail::map_to_string(c, "q"); }

    static QPoly from_map(detail::CoeffMap m) {
        QPoly p;
        p.c = std::move(m);
        return p;
    }
};

// ---------------------------------------------------------------------------
// Involutions, decompositions, division, evaluation
// ---------------------------------------------------------------------------

// bar: v -> v^-1.
inline LaurentPoly bar(const LaurentPoly& f) {
    LaurentPoly r;
    for (const auto& [e, c] : f.c) r.c.emplace(-e, c);
    return r;
}

// Unique decomposition f = h + p with bar(h) = h and p supported on strictly
// negative exponents: h = c_0 + sum_{k>=1} c_k (v^k + v^-k) built from the
// nonnegative-exponent coefficients c_k of f.
inline std::pair<LaurentPoly, LaurentPoly> pi_decompose(const LaurentPoly& f) {
    LaurentPoly h;
    for (const auto& [e, c] : f.c) {
        if (e > 0) {
            detail::map_add_term(h.c, e, c);
            detail::map_add_term(h.c, -e, c);
        } else if (e == 0) {
            detail::map_add_term(h.c, 0, c);
        }
    }
    LaurentPoly p = f - h;
    for (const auto& [e, c] : p.c) {
        (void)c;
        if (e >= 0) throw HallError("pi_decompose: residual has nonnegative support");
    }
    return {h, p};
}

inline bool is_bar_symmetric(const LaurentPoly& f) { return bar(f) == f; }

// f supported on strictly negative exponents, i.e. f in v^-1 Z[v^-1].
inline bool in_negative_part(const LaurentPoly& f) {
    return f.c.empty() || f.c.rbegin()->first < 0;
}

inline LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
    return LaurentPoly::from_map(detail::map_exact_divide(f.c, g.c));
}

inline QPoly exact_divide(const QPoly& f, const QPoly& g) {
    QPoly q = QPoly::from_map(detail::map_exact_divide(f.c, g.c));
    if (!q.c.empty() && q.c.begin()->first < 0)
        throw NonExactDivision("quotient escapes Z[q]");
    return q;
}

inline Int eval_q(const QPoly& p, const Int& q) {
    Int acc = 0;
    // Horner over the sparse support, highest exponent first.
    long prev = -1;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        if (prev >= 0)
            for (long k = it->first; k < prev; ++k) acc *= q;
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0)
        for (long k = 0; k < prev; ++k) acc *= q;
    return acc;
}

// Evaluate a Laurent polynomial with even exponents at v^2 = v2.
inline Rational specialize(const LaurentPoly& f, const Int& v2) {
    Rational acc = 0;
    for (const auto& [e, c] : f.c) {
        if (e % 2 != 0)
            throw ValidationError("specialize: odd exponent of v cannot be evaluated at v^2");
        Rational term(c);
        const long k = e / 2;
        for (long s = 0; s < (k >= 0 ? k : -k); ++s) {
            if (k >= 0)
                term *= v2;
            else
                term /= v2;
        }
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Gaussian polynomials. Square brackets:
//   [[N t]] = prod_{i=1..t} (v^{2(N-i+1)} - 1) / (v^{2i} - 1),
// zero when 0 <= N < t; symmetric version [N t] = v^{-t(N-t)} [[N t]];
// [[m]] = (v^{2m}-1)/(v^2-1) and [[t]]! = [[1]][[2]]...[[t]].
// ---------------------------------------------------------------------------

inline LaurentPoly gauss_sq(long N, long t) {
    if (t < 0) throw ValidationError("gauss_sq: t must be nonnegative");
    if (N < 0) throw ValidationError("gauss_sq: N must be nonnegative");
    if (N < t) return LaurentPoly::zero();
    LaurentPoly num = LaurentPoly::one(), den = LaurentPoly::one();
    for (long i = 1; i <= t; ++i) {
        num *= LaurentPoly::monomial(2 * (N - i + 1)) - LaurentPoly::one();
        den *= LaurentPoly::monomial(2 * i) - LaurentPoly::one();
    }
    return exact_divide(num, den);
}

inline LaurentPoly gauss_sym(long N, long t) {
    if (t < 0) throw ValidationError("gauss_sym: t must be nonnegative");
    if (N < 0) throw ValidationError("gauss_sym: N must be nonnegative");
    if (N < t) return LaurentPoly::zero();
    return LaurentPoly::monomial(-t * (N - t)) * gauss_sq(N, t);
}

inline LaurentPoly gauss_bracket(long m) {
    // [[m]] = 1 + v^2 + ... + v^{2(m-1)}
    LaurentPoly r;
    for (long k = 0; k < m; ++k) detail::map_add_term(r.c, 2 * k, 1);
    return r;
}

inline LaurentPoly gauss_fact(long t) {
    if (t < 0) throw ValidationError("gauss_fact: t must be nonnegative");
    LaurentPoly r = LaurentPoly::one();
    for (long m = 1; m <= t; ++m) r *= gauss_bracket(m);
    return r;
}

// The same objects as polynomials in q (q = v^2).
inline QPoly qpoly_gauss(long N, long t) {
    if (t < 0) throw ValidationError("qpoly_gauss: t must be nonnegative");
    if (N < 0) throw ValidationError("qpoly_gauss: N must be nonnegative");
    if (N < t) return QPoly::zero();
    QPoly num = QPoly::one(), den = QPoly::one();
    for (long i = 1; i <= t; ++i) {
        num *= QPoly::monomial(N - i + 1) - QPoly::one();
        den *= QPoly::monomial(i) - QPoly::one();
    }
    return exact_divide(num, den);
}

inline QPoly qpoly_bracket(long m) {
    QPoly r;
    for (long k = 0; k < m; ++k) detail::map_add_term(r.c, k, 1);
    return r;
}

inline QPoly qpoly_fact(long t) {
    if (t < 0) throw ValidationError("qpoly_fact: t must be nonnegative");
    QPoly r = QPoly::one();
    for (long m = 1; m <= t; ++m) r *= qpoly_bracket(m);
    return r;
}

// q = v^2 substitution and its partial inverse.
inline LaurentPoly qpoly_to_laurent(const QPoly& p) {
    LaurentPoly r;
    for (const auto& [e, c] : p.c) r.c.emplace(2 * e, c);
    return r;
}

inline QPoly laurent_to_qpoly(const LaurentPoly& f) {
    QPoly r;
    for (const auto& [e, c] : f.c) {
        if (e < 0 || e % 2 != 0)
            throw NonExactDivision("laurent_to_qpoly: not a polynomial in v^2");
        r.c.emplace(e / 2, c);
    }
    return r;
}

} // namespace hall
