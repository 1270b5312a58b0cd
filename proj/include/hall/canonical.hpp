#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hall/errors.hpp"
#include "hall/hallmult.hpp"
#include "hall/laurent.hpp"
#include "hall/matrix.hpp"
#include "hall/words.hpp"

namespace hall {

namespace detail {

inline HallVectorV monomial_expand_uncached(const CyclicMatrix& A) {
    const Word w = distinguished_word(A);
    HallVectorV acc = HallVectorV::unit(CyclicMatrix(A.n));
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        DimVector weight = it->first.weight();
        if (it->first.is_simple())
            for (int i = 1; i <= A.n; ++i) weight.comp[i - 1] *= it->second;
        acc = hv_mult_semisimple_twisted(weight, acc);
    }
    if (!(hv_coeff(acc, A) == LaurentPoly::one()))
        throw LeadingCoefficientNotOne("monomial_expand: coefficient at A is " +
                                       hv_coeff(acc, A).to_string());
    for (const auto& [B, h] : acc.terms)
        if (!(B == A) && !deg_lt(B, A))
            throw HallError("monomial_expand: support term not strictly below A");
    return acc;
}

} // namespace detail

// m^{(A)}: the divided-power monomial along the distinguished word of A,
// expanded in the utilde basis.  Coefficient at A is exactly 1; every other
// support term lies strictly below A.  Cached process-wide.
inline const HallVectorV& monomial_expand(const CyclicMatrix& A) {
    static std::map<CyclicMatrix, HallVectorV> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(A);
        if (it != cache.end()) return it->second;
    }
    HallVectorV val = detail::monomial_expand_uncached(A);
    std::lock_guard<std::mutex> g(mu);
    return cache.emplace(A, std::move(val)).first->second;
}

struct CanonicalElement {
    CyclicMatrix A;
    // B -> p_{B,A}: c_A = sum_B p_{B,A} utilde_B, p_{A,A} = 1, the rest in
    // v^-1 Z[v^-1]
    std::map<CyclicMatrix, LaurentPoly> pbw;
    // leading (A, 1) first, then (B, h'_{B,A}) sorted by matrix, under the
    // convention c_A = m^{(A)} - sum h'_{B,A} m^{(B)}
    std::vector<std::pair<CyclicMatrix, LaurentPoly>> monomials;

    bool tight() const { return monomials.size() == 1; }

    friend bool operator==(const CanonicalElement& x, const CanonicalElement& y) {
        return x.A == y.A && x.pbw == y.pbw && x.monomials == y.monomials;
    }
    friend bool operator!=(const CanonicalElement& x, const CanonicalElement& y) {
        return !(x == y);
    }
};

namespace detail {

inline void check_canonical(const CanonicalElement& el) {
    for (const auto& [B, p] : el.pbw) {
        if (B == el.A) {
            if (!p.is_one()) throw HallError("canonical element: p_{A,A} != 1");
        } else if (!in_negative_part(p)) {
            throw HallError("canonical element: p_{B,A} escapes v^-1 Z[v^-1]");
        }
    }
    for (std::size_t k = 1; k < el.monomials.size(); ++k)
        if (!is_bar_symmetric(el.monomials[k].second))
            throw HallError("canonical element: correction is not bar-symmetric");
}

inline CanonicalElement assemble(const CyclicMatrix& A, const HallVectorV& G,
                                 const std::map<CyclicMatrix, LaurentPoly>& corrections) {
    CanonicalElement el;
    el.A = A;
    for (const auto& [B, p] : G.terms)
        if (!p.is_zero()) el.pbw.emplace(B, p);
    el.monomials.emplace_back(A, LaurentPoly::one());
    for (const auto& [B, h] : corrections)
        if (!h.is_zero()) el.monomials.emplace_back(B, h);
    check_canonical(el);
    return el;
}

} // namespace detail

// Subtraction route: peel maximal support elements layer by layer, splitting
// each offending coefficient as h' + p with h' bar-symmetric and p in
// v^-1 Z[v^-1], and subtracting h' m^{(B)}.  Coefficients of processed
// matrices never change afterwards, since corrections only touch terms
// strictly below the layer.
inline CanonicalElement canonical_element(const CyclicMatrix& A) {
    HallVectorV G = monomial_expand(A);
    std::map<CyclicMatrix, LaurentPoly> corrections;
    std::set<CyclicMatrix> processed;
    std::size_t iter = 0;
    std::optional<std::size_t> ideal_size; // computed lazily, bug guard only
    while (true) {
        std::vector<CyclicMatrix> pending;
        for (const auto& [B, h] : G.terms)
            if (!(B == A) && !h.is_zero() && processed.count(B) == 0) pending.push_back(B);
        if (pending.empty()) break;
        ++iter;
        if (iter > 1024) {
            if (!ideal_size) ideal_size = poset_ideal(A).size();
            if (iter > *ideal_size)
                throw NonTermination("canonical_element: more layers than the ideal holds");
        }
        for (const auto& B : pending) {
            bool maximal = true;
            for (const auto& C : pending)
                if (!(C == B) && deg_lt(B, C)) {
                    maximal = false;
                    break;
                }
            if (!maximal) continue;
            processed.insert(B);
            const auto [h1, p] = pi_decompose(hv_coeff(G, B));
            (void)p;
            if (h1.is_zero()) continue;
            G = hv_sub(G, hv_scale(h1, monomial_expand(B)));
            corrections.emplace(B, h1);
        }
    }
    return detail::assemble(A, G, corrections);
}

namespace detail {

// downward closure of {A} under monomial-expansion support
inline std::vector<CyclicMatrix> support_closure(const CyclicMatrix& A) {
    std::set<CyclicMatrix> seen{A};
    std::vector<CyclicMatrix> queue{A};
    while (!queue.empty()) {
        const CyclicMatrix B = queue.back();
        queue.pop_back();
        for (const auto& [C, h] : monomial_expand(B).terms) {
            (void)h;
            if (seen.insert(C).second) queue.push_back(C);
        }
    }
    return std::vector<CyclicMatrix>(seen.begin(), seen.end());
}

// ascending linear extension of the degeneration order within a stratum
inline std::vector<CyclicMatrix> topo_ascending(std::vector<CyclicMatrix> v) {
    std::map<CyclicMatrix, long long> key;
    for (const auto& B : v) {
        const int L = static_cast<int>(total_dim(B));
        long long s = 0;
        for (int i = 1; i <= B.n; ++i)
            for (int j = i + 1; j <= i + L; ++j) s += sigma(B, i, j);
        key.emplace(B, s);
    }
    std::sort(v.begin(), v.end(), [&](const CyclicMatrix& x, const CyclicMatrix& y) {
        if (key.at(x) != key.at(y)) return key.at(x) < key.at(y);
        return x < y;
    });
    return v;
}

} // namespace detail

// IC route: compute bar(utilde_C) = sum_B r_{B,C} utilde_B by inverting the
// bar-fixed monomial system upward, then solve p_{B,A} = sum_C r_{B,C}
// bar(p_{C,A}) downward, taking at each step the unique solution with
// p_{B,A} in v^-1 Z[v^-1].  Everything lives in the downward closure of A
// under monomial support; outside it both r and p vanish.
inline CanonicalElement canonical_element_ic(const CyclicMatrix& A) {
    const std::vector<CyclicMatrix> order = detail::topo_ascending(detail::support_closure(A));

    std::map<CyclicMatrix, std::map<CyclicMatrix, LaurentPoly>> bar_u;
    for (const auto& C : order) {
        std::map<CyclicMatrix, LaurentPoly> row;
        for (const auto& [D, h] : monomial_expand(C).terms) row[D] += h;
        for (const auto& [D, h] : monomial_expand(C).terms) {
            if (D == C) continue;
            const LaurentPoly hb = bar(h);
            if (hb.is_zero()) continue;
            for (const auto& [E, r] : bar_u.at(D)) row[E] -= hb * r;
        }
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
        if (!(row.count(C) && row.at(C).is_one()))
            throw HallError("canonical_element_ic: bar(utilde) is not unitriangular");
        bar_u.emplace(C, std::move(row));
    }

    std::map<CyclicMatrix, LaurentPoly> p;
    p.emplace(A, LaurentPoly::one());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const CyclicMatrix& B = *it;
        if (B == A) continue;
        LaurentPoly rhs;
        for (const auto& [C, pc] : p) {
            if (C == B) continue;
            auto rc = bar_u.at(C).find(B);
            if (rc == bar_u.at(C).end()) continue;
            rhs += rc->second * bar(pc);
        }
        if (!(bar(rhs) == -rhs) || rhs.coeff(0) != 0)
            throw SingularSystem("canonical_element_ic: defect is not bar-antisymmetric");
        detail::CoeffMap neg;
        for (const auto& [e, cf] : rhs.c)
            if (e < 0) neg.emplace(e, cf);
        const LaurentPoly pb = LaurentPoly::from_map(std::move(neg));
        if (!pb.is_zero()) p.emplace(B, pb);
    }

    // express the solved PBW vector back in the monomial basis
    HallVectorV residual(A.n);
    for (const auto& [B, pc] : p) residual = hv_add(residual, HallVectorV::unit(B, pc));
    std::map<CyclicMatrix, LaurentPoly> corrections;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const LaurentPoly g = hv_coeff(residual, *it);
        if (g.is_zero()) continue;
        residual = hv_sub(residual, hv_scale(g, monomial_expand(*it)));
        if (!(*it == A)) corrections.emplace(*it, -g);
    }
    if (!residual.terms.empty())
        throw HallError("canonical_element_ic: monomial extraction left a residual");

    HallVectorV G(A.n);
    for (const auto& [B, pc] : p) G = hv_add(G, HallVectorV::unit(B, pc));
    return detail::assemble(A, G, corrections);
}

inline bool is_tight(const CyclicMatrix& A) { return canonical_element(A).tight(); }

// ---------------------------------------------------------------------------
// Closed-form slice library, n = 2.  Loewy length l <= 2 only; everything
// else is NotCovered (empty optional) and handled by canonical_element.
// ---------------------------------------------------------------------------

namespace detail {

// the vertex swap 1 <-> 2 of the cyclic quiver with n = 2
inline CyclicMatrix mirror2(const CyclicMatrix& A) {
    CyclicMatrix out(2);
    for (const auto& [k, v] : A.entries) {
        const int i = k.first == 1 ? 2 : 1;
        const int j = k.first == 1 ? k.second + 1 : k.second - 1;
        out.add_entry(i, j, v);
    }
    return out;
}

inline CanonicalElement mirror2(const CanonicalElement& el) {
    CanonicalElement out;
    out.A = mirror2(el.A);
    for (const auto& [B, pc] : el.pbw) out.pbw.emplace(mirror2(B), pc);
    for (const auto& [B, h] : el.monomials) out.monomials.emplace_back(mirror2(B), h);
    std::sort(out.monomials.begin() + 1, out.monomials.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

// A_{(k1,k2)} in the l = 2 parametrization (a, b, c, d fixed)
inline CyclicMatrix a_k1k2(long long a, long long b, long long c, long long d, long long k1,
                           long long k2) {
    CyclicMatrix out(2);
    out.add_entry(1, 2, a + c + d - k1 - k2);
    out.add_entry(1, 3, k1);
    out.add_entry(2, 3, b + c + d - k1 - k2);
    out.add_entry(2, 4, k2);
    return out;
}

inline LaurentPoly gauss_sq_bar(long N, long t) { return bar(gauss_sq(N, t)); }

// m^{(k1,k2)} expanded in the utilde basis (closed form):
//   sum_{t1<=k1, t2<=k2} v^{(a-b-k1+k2+t1-t2)(k1-k2-t1+t2)}
//     bar[[a+c+d-t1-t2, k1-t1]] bar[[b+c+d-t1-t2, k2-t2]] utilde_{A_{(t1,t2)}}
inline HallVectorV m_k1k2_closed(long long a, long long b, long long c, long long d, long long k1,
                                 long long k2) {
    HallVectorV out(2);
    for (long long t1 = 0; t1 <= k1; ++t1)
        for (long long t2 = 0; t2 <= k2; ++t2) {
            const long long e = (a - b - k1 + k2 + t1 - t2) * (k1 - k2 - t1 + t2);
            const LaurentPoly coeff =
                LaurentPoly::monomial(static_cast<long>(e)) *
                gauss_sq_bar(static_cast<long>(a + c + d - t1 - t2), static_cast<long>(k1 - t1)) *
                gauss_sq_bar(static_cast<long>(b + c + d - t1 - t2), static_cast<long>(k2 - t2));
            out = hv_add(out, HallVectorV::unit(a_k1k2(a, b, c, d, t1, t2), coeff));
        }
    return out;
}

inline CanonicalElement tight_element(const CyclicMatrix& A, HallVectorV pbw_vec) {
    CanonicalElement el;
    el.A = A;
    for (const auto& [B, pc] : pbw_vec.terms)
        if (!pc.is_zero()) el.pbw.emplace(B, pc);
    el.monomials.emplace_back(A, LaurentPoly::one());
    check_canonical(el);
    return el;
}

// slice (2,1), first family {(1,2):a, (1,3):c, (2,3):b} with a, b >= 1:
// tight iff a <= b, in which case c_A = m^{(c,0)}; for a > b,
//   c_A = sum_{k<=c} (-1)^{c-k} [a-b-1+c-k, a-b-1] m^{(k,0)}
//       = sum_{t<=c} v^{-t(a+t)} [b+t, t] utilde_{A_{(c-t,0)}}
inline CanonicalElement slice21_element(long long a, long long b, long long c) {
    CanonicalElement el;
    el.A = a_k1k2(a, b, c, 0, c, 0);
    if (a <= b) {
        for (const auto& [B, pc] : m_k1k2_closed(a, b, c, 0, c, 0).terms)
            if (!pc.is_zero()) el.pbw.emplace(B, pc);
    } else {
        for (long long t = 0; t <= c; ++t) {
            const LaurentPoly coeff = LaurentPoly::monomial(static_cast<long>(-t * (a + t))) *
                                      gauss_sym(static_cast<long>(b + t), static_cast<long>(t));
            el.pbw.emplace(a_k1k2(a, b, c, 0, c - t, 0), coeff);
        }
    }
    el.monomials.emplace_back(el.A, LaurentPoly::one());
    if (a > b) {
        for (long long k = c - 1; k >= 0; --k) {
            LaurentPoly h = gauss_sym(static_cast<long>(a - b - 1 + c - k),
                                      static_cast<long>(a - b - 1));
            if ((c - k) % 2 == 0) h = -h;
            el.monomials.emplace_back(a_k1k2(a, b, c, 0, k, 0), h);
        }
        std::sort(el.monomials.begin() + 1, el.monomials.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    check_canonical(el);
    return el;
}

// slice (2,2), family {(1,2):a, (1,3):c, (2,3):b, (2,4):d} with c, d >= 1:
//   a = b: c_A = m^{(c,d)} - m^{(c-1,d-1)}
//   a > b: c_A = sum_{k1<=c} (-1)^{c-k1} [a-b-1+c-k1, a-b-1] m^{(k1,d)}
//              - sum_{l1<c} (-1)^{c-1-l1} [a-b-2+c-l1, a-b-1] m^{(l1,d-1)}
inline CanonicalElement slice22_element(long long a, long long b, long long c, long long d) {
    if (a < b) return mirror2(slice22_element(b, a, d, c));
    std::vector<std::pair<std::pair<long long, long long>, LaurentPoly>> combo;
    combo.emplace_back(std::make_pair(c, d), LaurentPoly::one());
    if (a == b) {
        combo.emplace_back(std::make_pair(c - 1, d - 1), -LaurentPoly::one());
    } else {
        for (long long k1 = 0; k1 < c; ++k1) {
            LaurentPoly h = gauss_sym(static_cast<long>(a - b - 1 + c - k1),
                                      static_cast<long>(a - b - 1));
            if ((c - k1) % 2 != 0) h = -h;
            combo.emplace_back(std::make_pair(k1, d), h);
        }
        for (long long l1 = 0; l1 < c; ++l1) {
            LaurentPoly h = gauss_sym(static_cast<long>(a - b - 2 + c - l1),
                                      static_cast<long>(a - b - 1));
            if ((c - 1 - l1) % 2 == 0) h = -h;
            combo.emplace_back(std::make_pair(l1, d - 1), h);
        }
    }
    CanonicalElement el;
    el.A = a_k1k2(a, b, c, d, c, d);
    HallVectorV vec(2);
    for (const auto& [k, coeff] : combo)
        vec = hv_add(vec, hv_scale(coeff, m_k1k2_closed(a, b, c, d, k.first, k.second)));
    for (const auto& [B, pc] : vec.terms)
        if (!pc.is_zero()) el.pbw.emplace(B, pc);
    el.monomials.emplace_back(el.A, LaurentPoly::one());
    std::map<CyclicMatrix, LaurentPoly> corrections;
    for (std::size_t i = 1; i < combo.size(); ++i)
        corrections[a_k1k2(a, b, c, d, combo[i].first.first, combo[i].first.second)] -=
            combo[i].second;
    for (const auto& [B, h] : corrections)
        if (!h.is_zero()) el.monomials.emplace_back(B, h);
    check_canonical(el);
    return el;
}

} // namespace detail

// Closed forms for the five n=2 slices of Loewy length <= 2:
// (1,0), (1,1), (2,0), (2,1), (2,2).
// Returns the element built from the displayed formulas; empty when A falls
// outside the covered slices.
inline std::optional<CanonicalElement> slice_closed_form(const CyclicMatrix& A) {
    if (A.n != 2 || A.is_zero()) return std::nullopt;
    const int l = loewy_length(A);
    if (l > 2) return std::nullopt;
    const int p = periodicity(A);
    const long long a = A.entry(1, 2), b = A.entry(2, 3);
    const long long c = A.entry(1, 3), d = A.entry(2, 4);

    if (l == 1) // slices (1,0) and (1,1): every semisimple element is tight
        return detail::tight_element(A, HallVectorV::unit(A));

    if (p == 0) {
        // slice (2,0): one of the four tight families
        if (b == 0 && d == 0) {
            // {(1,2):a, (1,3):c} = E_1^{(a+c)} E_2^{(c)}:
            //   sum_{t<=c} v^{-(a+c-t)(c-t)} utilde_{(1,2):a+c-t, (1,3):t, (2,3):c-t}
            HallVectorV vec(2);
            for (long long t = 0; t <= c; ++t) {
                CyclicMatrix B(2);
                B.add_entry(1, 2, a + c - t);
                B.add_entry(1, 3, t);
                B.add_entry(2, 3, c - t);
                vec = hv_add(vec, HallVectorV::unit(B, LaurentPoly::monomial(static_cast<long>(
                                                           -(a + c - t) * (c - t)))));
            }
            return detail::tight_element(A, vec);
        }
        if (a == 0 && c == 0) {
            auto m = slice_closed_form(detail::mirror2(A));
            return m ? std::optional<CanonicalElement>(detail::mirror2(*m)) : std::nullopt;
        }
        // {(1,3):c, (2,3):b} = E_1^{(c)} E_2^{(b+c)} and its mirror: tight,
        // expansion taken from the monomial fold
        return detail::tight_element(A, monomial_expand(A));
    }

    if (p == 1) {
        if (d == 0) return detail::slice21_element(a, b, c);
        auto m = slice_closed_form(detail::mirror2(A));
        return m ? std::optional<CanonicalElement>(detail::mirror2(*m)) : std::nullopt;
    }

    return detail::slice22_element(a, b, c, d);
}

// All canonical elements of the (l, p) slice with entries bounded by `bound`,
// in matrix order.  n = 2 only.
inline std::vector<CanonicalElement> slice(int l, int p, long long bound) {
    if (l < 1) throw ValidationError("slice: Loewy length must be at least 1");
    if (p < 0 || p > l) throw ValidationError("slice: periodicity must lie in [0, l]");
    if (bound < 0) throw ValidationError("slice: bound must be nonnegative");
    std::vector<CyclicMatrix> members;
    std::vector<long long> slots(static_cast<std::size_t>(2 * l), 0);
    while (true) {
        CyclicMatrix A(2);
        for (int dist = 1; dist <= l; ++dist)
            for (int i = 1; i <= 2; ++i) A.add_entry(i, i + dist, slots[2 * (dist - 1) + i - 1]);
        if (loewy_length(A) == l && periodicity(A) == p) members.push_back(A);
        std::size_t k = 0;
        while (k < slots.size() && slots[k] == bound) slots[k++] = 0;
        if (k == slots.size()) break;
        ++slots[k];
    }
    std::sort(members.begin(), members.end());
    std::vector<CanonicalElement> out;
    out.reserve(members.size());
    for (const auto& A : members) out.push_back(canonical_element(A));
    return out;
}

} // namespace hall
