#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "hall/errors.hpp"
#include "hall/hallmult.hpp"
#include "hall/laurent.hpp"
#include "hall/matrix.hpp"
#include "hall/words.hpp"

namespace hall {

// u_w applied to u_X: fold the letters of w onto u_X right to left, so the
// rightmost letter multiplies first.  A simple letter i^e contributes
// u_{S_i}^e = [[e]]! u_{e S_i}: one semisimple multiplication, scaled.
inline HallVectorQ word_apply_q(const Word& w, const CyclicMatrix& X) {
    if (w.n != X.n) throw ValidationError("word_apply_q: rank mismatch");
    HallVectorQ acc = HallVectorQ::unit(X);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        DimVector weight = it->first.weight();
        if (it->first.is_simple())
            for (int i = 1; i <= w.n; ++i) weight.comp[i - 1] *= it->second;
        acc = hv_mult_semisimple_q(weight, acc);
        if (it->first.is_simple() && it->second > 1)
            acc = hv_scale(qpoly_fact(it->second), acc);
    }
    return acc;
}

// u_w = u_{b_1}^{e_1} ... expanded in the u-basis; coefficients are phi_w^{B'}.
inline HallVectorQ word_expand_q(const Word& w) {
    return word_apply_q(w, CyclicMatrix(w.n));
}

// prod_k [[e_k]]!  (sincere letters carry e_k = 1 and contribute 1)
inline QPoly word_factorial(const Word& w) {
    QPoly f = QPoly::one();
    for (const auto& [b, e] : w.letters)
        if (b.is_simple()) f = f * qpoly_fact(e);
    return f;
}

// gamma_w^X = phi_w^X / prod [[e_k]]!; the division is exact for every X.
inline QPoly gamma(const Word& w, const CyclicMatrix& X) {
    if (w.n != X.n) throw ValidationError("gamma: rank mismatch");
    const QPoly phi = hv_coeff(word_expand_q(w), X);
    if (phi.is_zero()) return QPoly::zero();
    return exact_divide(phi, word_factorial(w));
}

struct HallPolyCache {
    // key order (B, C, A): the recursion varies B fastest within a stratum
    using Key = std::tuple<CyclicMatrix, CyclicMatrix, CyclicMatrix>;

    bool get(const Key& k, QPoly& out) {
        std::lock_guard<std::mutex> g(mu_);
        auto it = memo_.find(k);
        if (it == memo_.end()) return false;
        out = it->second;
        return true;
    }
    void put(const Key& k, const QPoly& val) {
        std::lock_guard<std::mutex> g(mu_);
        memo_.emplace(k, val);
    }
    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [k, v] : memo_) f(k, v);
    }
    std::size_t size() const { return memo_.size(); }

  private:
    std::map<Key, QPoly> memo_;
    mutable std::mutex mu_;
};

// phi^A_{B,C}: the Hall polynomial, h^{M_q(A)}_{M_q(B),M_q(C)} at every prime
// power q.  Recursion over the degeneration order below B:
//   phi^A_{B,C} = gamma^A_{w_B,C} - sum_{B' < B} gamma_{w_B}^{B'} phi^A_{B',C}
// where gamma^A_{w_B,C} = (coefficient of u_A in u_{w_B} applied to u_C)
// divided by phi_{w_B}^B = prod [[e_k]]!.  Correction terms run over the
// support of word_expand_q(w_B) minus B itself; every such B' lies strictly
// below B with the same dimension vector, which bounds the recursion depth.
// This support test replaces the membership test against the generic
// extension of B'*C: any B' outside the support has gamma_{w_B}^{B'} = 0 and
// contributes nothing either way.
inline QPoly hall_polynomial(const CyclicMatrix& A, const CyclicMatrix& B,
                             const CyclicMatrix& C, HallPolyCache& cache) {
    if (A.n != B.n || B.n != C.n) throw ValidationError("hall_polynomial: rank mismatch");
    const DimVector da = dim_vector(A);
    DimVector dbc = dim_vector(B);
    {
        const DimVector dc = dim_vector(C);
        for (int i = 0; i < dbc.n; ++i) dbc.comp[i] += dc.comp[i];
    }
    if (!(da == dbc)) return QPoly::zero();
    if (B.entries.empty()) return A == C ? QPoly::one() : QPoly::zero();

    const HallPolyCache::Key key{B, C, A};
    QPoly cached;
    if (cache.get(key, cached)) return cached;

    const Word wB = distinguished_word(B);
    const QPoly fact = word_factorial(wB);

    QPoly result = QPoly::zero();
    {
        const QPoly phi_word = hv_coeff(word_apply_q(wB, C), A);
        if (!phi_word.is_zero()) result = exact_divide(phi_word, fact);
    }

    const HallVectorQ expand = word_expand_q(wB);
    for (const auto& [Bp, phi] : expand.terms) {
        if (Bp == B) continue;
        if (!deg_lt(Bp, B))
            throw HallError("hall_polynomial: word expansion term not strictly below B");
        const QPoly g = exact_divide(phi, fact);
        if (g.is_zero()) continue;
        const QPoly sub = hall_polynomial(A, Bp, C, cache);
        if (!sub.is_zero()) result = result - g * sub;
    }

    cache.put(key, result);
    return result;
}

inline QPoly hall_polynomial(const CyclicMatrix& A, const CyclicMatrix& B,
                             const CyclicMatrix& C) {
    HallPolyCache cache;
    return hall_polynomial(A, B, C, cache);
}

// Submodules N of M = sum_t a_t S_i[t] with semisimple quotient M/N: for the
// removal pattern d (d_t tops removed among the length-t segments) the count
// is q^{sum_{k<l} d_k (a_l - d_l)} prod_t [[a_t over d_t]]_q.
inline QPoly hall_number_semisimple_top(int vertex, const std::vector<long long>& a,
                                        const std::vector<long long>& d) {
    (void)vertex;
    if (a.size() != d.size())
        throw ValidationError("hall_number_semisimple_top: length mismatch");
    long long expo = 0;
    QPoly out = QPoly::one();
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (d[t] < 0 || a[t] < d[t])
            throw ValidationError("hall_number_semisimple_top: need a_t >= d_t >= 0");
        for (std::size_t l = t + 1; l < a.size(); ++l) expo += d[t] * (a[l] - d[l]);
        out = out * qpoly_gauss(a[t], d[t]);
    }
    return out * QPoly::monomial(expo);
}

} // namespace hall
