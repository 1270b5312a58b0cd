#pragma once

// Multiplication by a semisimple generator: the untwisted integral Hall
// algebra product u_alpha . u_A (coefficients in Z[q]) and its twisted
// counterpart u~_alpha u~_A (coefficients in Z[v, v^-1]), together with the
// sparse HallVector linear algebra both live in. General products are folds
// of these semisimple steps.

#include <map>
#include <vector>

#include "hall/laurent.hpp"
#include "hall/matrix.hpp"

namespace hall {

// ---------------------------------------------------------------------------
// HallVector: finite coefficient map over basis elements u_A (Coeff = QPoly,
// untwisted) or u~_A (Coeff = LaurentPoly, twisted). The basis tag is the
// coefficient type, so mixing bases fails to compile.
// ---------------------------------------------------------------------------
template <typename Coeff>
struct HallVectorT {
    int n = 2;
    std::map<CyclicMatrix, Coeff> terms;

    HallVectorT() = default;
    explicit HallVectorT(int n_) : n(n_) {
        if (n < 2) throw ValidationError("HallVector: n must be at least 2");
    }

    static HallVectorT unit(const CyclicMatrix& A, const Coeff& c = Coeff(Int(1))) {
        HallVectorT r(A.n);
        r.add_term(A, c);
        return r;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const CyclicMatrix& A, const Coeff& c) {
        if (A.n != n) throw ValidationError("HallVector: mismatched n");
        if (c.is_zero()) return;
        auto [it, inserted] = terms.emplace(A, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend bool operator==(const HallVectorT& a, const HallVectorT& b) {
        return a.n == b.n && a.terms == b.terms;
    }
    friend bool operator!=(const HallVectorT& a, const HallVectorT& b) { return !(a == b); }
};

using HallVectorQ = HallVectorT<QPoly>;        // untwisted, basis u_A
using HallVectorV = HallVectorT<LaurentPoly>;  // twisted, basis u~_A

template <typename C>
HallVectorT<C> hv_add(const HallVectorT<C>& a, const HallVectorT<C>& b) {
    if (a.n != b.n) throw ValidationError("hv_add: mismatched n");
    HallVectorT<C> r = a;
    for (const auto& [A, c] : b.terms) r.add_term(A, c);
    return r;
}

template <typename C>
HallVectorT<C> hv_sub(const HallVectorT<C>& a, const HallVectorT<C>& b) {
    if (a.n != b.n) throw ValidationError("hv_sub: mismatched n");
    HallVectorT<C> r = a;
    for (const auto& [A, c] : b.terms) r.add_term(A, -c);
    return r;
}

template <typename C>
HallVectorT<C> hv_scale(const C& c, const HallVectorT<C>& a) {
    HallVectorT<C> r(a.n);
    for (const auto& [A, x] : a.terms) r.add_term(A, c * x);
    return r;
}

template <typename C>
C hv_coeff(const HallVectorT<C>& a, const CyclicMatrix& A) {
    auto it = a.terms.find(A);
    return it == a.terms.end() ? C() : it->second;
}

// ---------------------------------------------------------------------------
// The row-descending shift: entries move (i,j) -> (i+1,j) with periodic
// index reduction; what lands on the diagonal (from j = i+1) is discarded,
// keeping the strictly upper part T~+.
// ---------------------------------------------------------------------------
inline CyclicMatrix tilde_shift(const CyclicMatrix& T) {
    CyclicMatrix r(T.n);
    for (const auto& [k, v] : T.entries)
        if (k.second > k.first + 1) r.add_entry(k.first + 1, k.second, v);
    return r;
}

namespace detail {

inline void enumerate_T_rec(const DimVector& alpha, const CyclicMatrix& A, int window, int i,
                            int j, long long rem, CyclicMatrix& T,
                            std::vector<CyclicMatrix>& out) {
    const int n = alpha.n;
    if (j > i + window) {
        if (rem != 0) return;
        if (i == n) {
            if (CyclicMatrix::try_sub(A + T, tilde_shift(T))) out.push_back(T);
            return;
        }
        enumerate_T_rec(alpha, A, window, i + 1, i + 2, alpha.at(i + 1), T, out);
        return;
    }
    for (long long v = 0; v <= rem; ++v) {
        if (v > 0) T.add_entry(i, j, 1);
        enumerate_T_rec(alpha, A, window, i, j + 1, rem - v, T, out);
    }
    T.add_entry(i, j, -rem);
}

} // namespace detail

// All summation indices T of the multiplication formula: row(T) = alpha and
// A + T - T~+ entrywise nonnegative. Column support beyond j = i + l(A) + 1
// is provably inadmissible; window_slack widens the scan to test that claim.
inline std::vector<CyclicMatrix> enumerate_T(const DimVector& alpha, const CyclicMatrix& A,
                                             int window_slack = 0) {
    if (alpha.n != A.n) throw ValidationError("enumerate_T: mismatched n");
    if (!alpha.all_nonnegative())
        throw ValidationError("enumerate_T: alpha must be nonnegative");
    const int window = loewy_length(A) + 1 + window_slack;
    std::vector<CyclicMatrix> out;
    CyclicMatrix T(A.n);
    detail::enumerate_T_rec(alpha, A, window, 1, 2, alpha.at(1), T, out);
    std::sort(out.begin(), out.end());
    return out;
}

// q-exponent of the untwisted formula:
//   sum_{1<=i<=n, i<l<j} ( a_{ij} t_{il} - t_{ij} t_{i+1,l} ).
inline long long untwisted_exponent(const CyclicMatrix& A, const CyclicMatrix& T) {
    const int W = std::max(loewy_length(A), loewy_length(T));
    long long e = 0;
    for (int i = 1; i <= A.n; ++i)
        for (int j = i + 2; j <= i + W; ++j)
            for (int l = i + 1; l < j; ++l)
                e += A.entry(i, j) * T.entry(i, l) - T.entry(i, j) * T.entry(i + 1, l);
    return e;
}

// v-exponent of the twisted formula:
//   f_{A,T} =   sum_{j>=l>=i+1} a_{i,j}   t_{i,l}   -  sum_{j>l>=i+1} a_{i+1,j} t_{i,l}
//             - sum_{j>=l>=i+1} t_{i-1,j} t_{i,l}   +  sum_{j>l>=i+1} t_{i,j}   t_{i,l},
// all with 1 <= i <= n and periodic entry access.
inline long long twisted_exponent(const CyclicMatrix& A, const CyclicMatrix& T) {
    const int n = A.n;
    const int W = std::max(loewy_length(A), loewy_length(T)) + 1;
    long long f = 0;
    for (int i = 1; i <= n; ++i)
        for (int l = i + 1; l <= i + W; ++l) {
            const long long til = T.entry(i, l);
            if (til == 0) continue;
            long long s = 0;
            for (int j = l; j <= i + W; ++j) s += A.entry(i, j);
            for (int j = l + 1; j <= i + W + 1; ++j) s -= A.entry(i + 1, j);
            for (int j = l; j <= i + W; ++j) s -= T.entry(i - 1, j);
            for (int j = l + 1; j <= i + W; ++j) s += T.entry(i, j);
            f += s * til;
        }
    return f;
}

// u_alpha . u_A in the untwisted Hall algebra:
//   sum_T q^{e(A,T)} prod_{j>i} [[ a_{ij}+t_{ij}-t_{i-1,j} over t_{ij} ]] u_{A+T-T~+}.
// Brackets with t_{ij} = 0 are 1, so only entries of T contribute factors;
// the bracket top is exactly the entry of the result matrix.
inline HallVectorQ mult_semisimple_q(const DimVector& alpha, const CyclicMatrix& A) {
    HallVectorQ out(A.n);
    for (const auto& T : enumerate_T(alpha, A)) {
        const CyclicMatrix C = *CyclicMatrix::try_sub(A + T, tilde_shift(T));
        QPoly coeff = QPoly::one();
        for (const auto& [k, t] : T.entries)
            coeff *= qpoly_gauss(C.entry(k.first, k.second), t);
        if (coeff.is_zero()) continue;
        const long long e = untwisted_exponent(A, T);
        if (e < 0)
            throw HallError("mult_semisimple_q: negative exponent on a contributing term");
        out.add_term(C, QPoly::monomial(e) * coeff);
    }
    return out;
}

// u~_alpha u~_A in the twisted algebra:
//   sum_T v^{f_{A,T}} prod bar[[ a_{ij}+t_{ij}-t_{i-1,j} over t_{ij} ]] u~_{A+T-T~+}.
inline HallVectorV mult_semisimple_twisted(const DimVector& alpha, const CyclicMatrix& A) {
    HallVectorV out(A.n);
    for (const auto& T : enumerate_T(alpha, A)) {
        const CyclicMatrix C = *CyclicMatrix::try_sub(A + T, tilde_shift(T));
        LaurentPoly coeff = LaurentPoly::one();
        for (const auto& [k, t] : T.entries)
            coeff *= bar(gauss_sq(C.entry(k.first, k.second), t));
        if (coeff.is_zero()) continue;
        out.add_term(C, LaurentPoly::monomial(twisted_exponent(A, T)) * coeff);
    }
    return out;
}

// Linear extensions: multiply every term of a HallVector by u_alpha on the
// left. These folds are how word monomials act.
inline HallVectorQ hv_mult_semisimple_q(const DimVector& alpha, const HallVectorQ& x) {
    HallVectorQ out(x.n);
    for (const auto& [A, c] : x.terms) out = hv_add(out, hv_scale(c, mult_semisimple_q(alpha, A)));
    return out;
}

inline HallVectorV hv_mult_semisimple_twisted(const DimVector& alpha, const HallVectorV& x) {
    HallVectorV out(x.n);
    for (const auto& [A, c] : x.terms)
        out = hv_add(out, hv_scale(c, mult_semisimple_twisted(alpha, A)));
    return out;
}

} // namespace hall
