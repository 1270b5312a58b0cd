#pragma once

// Ground-truth engine over small prime fields: build the nilpotent
// representation M_q(A) concretely, enumerate subspaces via reduced
// row-echelon forms, count submodules with prescribed sub/quotient
// isomorphism types, and classify isomorphism types by hom-dimension
// fingerprints.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hall/laurent.hpp"
#include "hall/matrix.hpp"

namespace hall {

namespace fp {

// Dense matrix over F_q, row-major; zero-row / zero-column shapes are legal.
struct FMat {
    int rows = 0, cols = 0;
    std::vector<long long> e;

    FMat() = default;
    FMat(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c, 0) {}

    long long& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    long long at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }

    friend bool operator==(const FMat& a, const FMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
    }
};

inline long long norm_mod(long long a, long long q) {
    long long r = a % q;
    return r < 0 ? r + q : r;
}

inline long long inv_mod(long long a, long long q) {
    // extended Euclid; a nonzero mod q, q prime
    long long t = 0, nt = 1, r = q, nr = norm_mod(a, q);
    while (nr != 0) {
        const long long quo = r / nr;
        t = std::exchange(nt, t - quo * nt);
        r = std::exchange(nr, r - quo * nr);
    }
    if (r != 1) throw ValidationError("inv_mod: element not invertible");
    return norm_mod(t, q);
}

inline FMat mat_mul(const FMat& a, const FMat& b, long long q) {
    if (a.cols != b.rows) throw ValidationError("mat_mul: shape mismatch");
    FMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const long long aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = norm_mod(r.at(i, j) + aik * b.at(k, j), q);
        }
    return r;
}

inline int rank_mod(FMat m, long long q) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const long long inv = inv_mod(m.at(rank, c), q);
        for (int j = c; j < m.cols; ++j) m.at(rank, j) = norm_mod(m.at(rank, j) * inv, q);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            const long long f = m.at(r, c);
            if (f == 0) continue;
            for (int j = c; j < m.cols; ++j)
                m.at(r, j) = norm_mod(m.at(r, j) - f * m.at(rank, j), q);
        }
        ++rank;
    }
    return rank;
}

inline FMat identity(int n) {
    FMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

inline FMat mat_inverse(const FMat& m, long long q) {
    if (m.rows != m.cols) throw ValidationError("mat_inverse: matrix not square");
    const int n = m.rows;
    FMat a = m, inv = identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw ValidationError("mat_inverse: matrix singular");
        for (int j = 0; j < n; ++j) {
            std::swap(a.at(piv, j), a.at(c, j));
            std::swap(inv.at(piv, j), inv.at(c, j));
        }
        const long long s = inv_mod(a.at(c, c), q);
        for (int j = 0; j < n; ++j) {
            a.at(c, j) = norm_mod(a.at(c, j) * s, q);
            inv.at(c, j) = norm_mod(inv.at(c, j) * s, q);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const long long f = a.at(r, c);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = norm_mod(a.at(r, j) - f * a.at(c, j), q);
                inv.at(r, j) = norm_mod(inv.at(r, j) - f * inv.at(c, j), q);
            }
        }
    }
    return inv;
}

inline bool is_rref(const FMat& m) {
    int prev_pivot = -1;
    for (int r = 0; r < m.rows; ++r) {
        int piv = -1;
        for (int c = 0; c < m.cols; ++c)
            if (m.at(r, c) != 0) {
                piv = c;
                break;
            }
        if (piv < 0) {
            // all later rows must be zero too
            for (int r2 = r; r2 < m.rows; ++r2)
                for (int c = 0; c < m.cols; ++c)
                    if (m.at(r2, c) != 0) return false;
            return true;
        }
        if (piv <= prev_pivot || m.at(r, piv) != 1) return false;
        for (int r2 = 0; r2 < m.rows; ++r2)
            if (r2 != r && m.at(r2, piv) != 0) return false;
        prev_pivot = piv;
    }
    return true;
}

} // namespace fp

// ---------------------------------------------------------------------------
// ConcreteRep: the representation M_q(A) with explicit matrices. arrows[v]
// (0-based v) realizes V_{v+1} -> V_{v+2} and has shape dims[v+1] x dims[v]
// (indices mod n). The composite around the cycle is nilpotent.
// ---------------------------------------------------------------------------
struct ConcreteRep {
    int n = 2;
    long long q = 2;
    std::vector<int> dims;        // size n, dims[v] = dim V_{v+1}
    std::vector<fp::FMat> arrows; // size n

    int dim_at(int vertex) const { return dims[DimVector::reduce(vertex, n) - 1]; }
    const fp::FMat& arrow_at(int vertex) const {
        return arrows[DimVector::reduce(vertex, n) - 1];
    }
    long long total() const {
        long long t = 0;
        for (int d : dims) t += d;
        return t;
    }
};

// Block-diagonal sum of segment representations: each copy of S_i[l]
// contributes a chain of basis vectors, the arrow sending layer k at vertex
// i+k to layer k+1, the socle layer to zero.
inline ConcreteRep build_rep(const CyclicMatrix& A, long long q) {
    if (q < 2) throw ValidationError("build_rep: field size must be a prime >= 2");
    ConcreteRep rep;
    rep.n = A.n;
    rep.q = q;
    rep.dims.assign(A.n, 0);

    // (vertex index 0-based, basis slot) per segment layer
    struct Slot {
        int v, idx;
    };
    std::vector<std::vector<Slot>> chains; // one chain per segment copy
    for (const auto& [k, mult] : A.entries) {
        const int i = k.first, l = k.second - k.first;
        for (long long c = 0; c < mult; ++c) {
            std::vector<Slot> chain;
            chain.reserve(l);
            for (int layer = 0; layer < l; ++layer) {
                const int v = DimVector::reduce(i + layer, A.n) - 1;
                chain.push_back({v, rep.dims[v]++});
            }
            chains.push_back(std::move(chain));
        }
    }
    for (int v = 0; v < A.n; ++v)
        rep.arrows.emplace_back(rep.dims[(v + 1) % A.n], rep.dims[v]);
    for (const auto& chain : chains)
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            rep.arrows[chain[k].v].at(chain[k + 1].idx, chain[k].idx) = 1;
    return rep;
}

inline ConcreteRep rep_direct_sum(const ConcreteRep& a, const ConcreteRep& b) {
    if (a.n != b.n || a.q != b.q) throw ValidationError("rep_direct_sum: mismatched reps");
    ConcreteRep r;
    r.n = a.n;
    r.q = a.q;
    r.dims.resize(a.n);
    for (int v = 0; v < a.n; ++v) r.dims[v] = a.dims[v] + b.dims[v];
    for (int v = 0; v < a.n; ++v) {
        const int w = (v + 1) % a.n;
        fp::FMat m(r.dims[w], r.dims[v]);
        for (int i = 0; i < a.dims[w]; ++i)
            for (int j = 0; j < a.dims[v]; ++j) m.at(i, j) = a.arrows[v].at(i, j);
        for (int i = 0; i < b.dims[w]; ++i)
            for (int j = 0; j < b.dims[v]; ++j)
                m.at(a.dims[w] + i, a.dims[v] + j) = b.arrows[v].at(i, j);
        r.arrows.push_back(std::move(m));
    }
    return r;
}

// ---------------------------------------------------------------------------
// RREF enumeration: all reduced row-echelon matrices with m rows, nn columns
// and rank m over F_q; in bijection with m-dimensional subspaces of F_q^nn,
// so exactly [[nn over m]] at v^2 = q of them.
// ---------------------------------------------------------------------------
inline std::vector<fp::FMat> rref_enumerate(int m, int nn, long long q) {
    if (m < 0 || m > nn) throw ValidationError("rref_enumerate: need 0 <= m <= nn");
    std::vector<fp::FMat> out;
    std::vector<int> pivots(m);
    for (int k = 0; k < m; ++k) pivots[k] = k;
    while (true) {
        // free positions: (r, c) with c > pivots[r] and c not a pivot column
        std::vector<bool> is_piv(nn, false);
        for (int p : pivots) is_piv[p] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int r = 0; r < m; ++r)
            for (int c = pivots[r] + 1; c < nn; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);

        std::vector<long long> vals(free_pos.size(), 0);
        while (true) {
            fp::FMat mat(m, nn);
            for (int r = 0; r < m; ++r) mat.at(r, pivots[r]) = 1;
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                mat.at(free_pos[k].first, free_pos[k].second) = vals[k];
            out.push_back(std::move(mat));
            std::size_t k = 0;
            while (k < vals.size() && vals[k] == q - 1) vals[k++] = 0;
            if (k == vals.size()) break;
            ++vals[k];
        }

        // next pivot combination in lexicographic order
        int k = m - 1;
        while (k >= 0 && pivots[k] == nn - m + k) --k;
        if (k < 0) break;
        ++pivots[k];
        for (int j = k + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism type recovery by hom fingerprints. A map S_j[m] -> M is freely
// determined by the image of the top generator, which can be any vector that
// the composite of m consecutive arrows starting at j kills, so
//   dim Hom(S_j[m], M) = dims[j] - rank(arrow_{j+m-1} ... arrow_j).
// Matching against sum_{i,l} mult_{i,l} hom_dim(S_j[m], S_i[l]) gives a
// square linear system for the multiplicities, solved exactly over Q.
// ---------------------------------------------------------------------------
inline CyclicMatrix iso_type(const ConcreteRep& rep) {
    const int n = rep.n;
    CyclicMatrix A(n);
    if (rep.total() == 0) return A;

    // composite ranks r[j][m], m = 1..L; L = nilpotency index
    std::vector<std::vector<long long>> hom(n); // hom[j][m-1] = dim Hom(S_{j+1}[m], rep)
    std::vector<fp::FMat> comp(rep.arrows);
    int L = 0;
    while (true) {
        ++L;
        if (L > rep.total())
            throw ValidationError("iso_type: representation is not nilpotent");
        bool all_zero = true;
        for (int j = 0; j < n; ++j) {
            const int r = fp::rank_mod(comp[j], rep.q);
            hom[j].push_back(rep.dims[j] - r);
            if (r != 0) all_zero = false;
        }
        if (all_zero) break;
        for (int j = 0; j < n; ++j)
            comp[j] = fp::mat_mul(rep.arrows[(j + L) % n], comp[j], rep.q);
    }

    // unknown x_{(i,l)} = mult of S_{i+1}[l], equations indexed by (j,m)
    const int N = n * L;
    auto col = [&](int i, int l) { return i * L + (l - 1); };
    std::vector<std::vector<Rational>> sys(N, std::vector<Rational>(N + 1, 0));
    for (int j = 0; j < n; ++j)
        for (int m = 1; m <= L; ++m) {
            auto& row = sys[j * L + (m - 1)];
            for (int i = 0; i < n; ++i)
                for (int l = 1; l <= L; ++l)
                    row[col(i, l)] = hom_dim(Segment(n, j + 1, m), Segment(n, i + 1, l));
            row[N] = hom[j][m - 1];
        }

    // exact Gaussian elimination
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (sys[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularSystem("iso_type: hom fingerprint system is singular");
        std::swap(sys[piv], sys[c]);
        const Rational s = sys[c][c];
        for (int j = c; j <= N; ++j) sys[c][j] /= s;
        for (int r = 0; r < N; ++r) {
            if (r == c) continue;
            const Rational f = sys[r][c];
            if (f == 0) continue;
            for (int j = c; j <= N; ++j) sys[r][j] -= f * sys[c][j];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int l = 1; l <= L; ++l) {
            const Rational& x = sys[col(i, l)][N];
            if (denominator(x) != 1 || x < 0)
                throw SingularSystem("iso_type: multiplicities not nonnegative integers");
            const Int m = numerator(x);
            if (m != 0) A.add_entry(i + 1, i + 1 + l, static_cast<long long>(m));
        }
    if (dim_vector(A).comp != std::vector<long long>(rep.dims.begin(), rep.dims.end()))
        throw SingularSystem("iso_type: recovered type has wrong dimension vector");
    return A;
}

// ---------------------------------------------------------------------------
// Intertwiner spaces: dim Hom and dim Ext^1 between concrete reps, from the
// two-term complex  sum_v Hom(X_v, Y_v) -> sum_v Hom(X_v, Y_{v+1}),
// phi |-> (Y-arrow . phi_v - phi_{v+1} . X-arrow)_v;  Hom is the kernel and
// Ext^1 the cokernel.
// ---------------------------------------------------------------------------
namespace detail {

struct IntertwinerComplex {
    long long dom = 0, codom = 0, rank = 0;
};

inline IntertwinerComplex intertwiner_complex(const ConcreteRep& X, const ConcreteRep& Y) {
    if (X.n != Y.n || X.q != Y.q) throw ValidationError("intertwiner: mismatched reps");
    const int n = X.n;
    const long long q = X.q;
    std::vector<long long> dom_off(n + 1, 0), cod_off(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        dom_off[v + 1] = dom_off[v] + static_cast<long long>(Y.dims[v]) * X.dims[v];
        cod_off[v + 1] = cod_off[v] + static_cast<long long>(Y.dims[(v + 1) % n]) * X.dims[v];
    }
    fp::FMat big(static_cast<int>(cod_off[n]), static_cast<int>(dom_off[n]));
    auto dom_idx = [&](int v, int r, int c) { return dom_off[v] + r * X.dims[v] + c; };
    for (int v = 0; v < n; ++v) {
        const int w = (v + 1) % n;
        // equation (v, a, b): sum_k Yarr[v](a,k) phi_v(k,b) - sum_k phi_w(a,k) Xarr[v](k,b)
        for (int a = 0; a < Y.dims[w]; ++a)
            for (int b = 0; b < X.dims[v]; ++b) {
                const long long row = cod_off[v] + static_cast<long long>(a) * X.dims[v] + b;
                for (int k = 0; k < Y.dims[v]; ++k)
                    big.at(static_cast<int>(row), static_cast<int>(dom_idx(v, k, b))) =
                        Y.arrows[v].at(a, k);
                for (int k = 0; k < X.dims[w]; ++k) {
                    auto& cell =
                        big.at(static_cast<int>(row), static_cast<int>(dom_idx(w, a, k)));
                    cell = fp::norm_mod(cell - X.arrows[v].at(k, b), q);
                }
            }
    }
    return {dom_off[n], cod_off[n], fp::rank_mod(big, q)};
}

} // namespace detail

inline long long hom_dim_rep(const ConcreteRep& X, const ConcreteRep& Y) {
    const auto c = detail::intertwiner_complex(X, Y);
    return c.dom - c.rank;
}

inline long long ext1_dim_rep(const ConcreteRep& X, const ConcreteRep& Y) {
    const auto c = detail::intertwiner_complex(X, Y);
    return c.codom - c.rank;
}

// ---------------------------------------------------------------------------
// Submodule counting: the Hall number at q, i.e. the number of submodules
// N <= M_q(A) with N iso M_q(C) and M_q(A)/N iso M_q(B).
// ---------------------------------------------------------------------------
inline Int count_submodules(const CyclicMatrix& A, const CyclicMatrix& B, const CyclicMatrix& C,
                            long long q, long long budget = 10'000'000) {
    CyclicMatrix::require_same_n(A, B);
    CyclicMatrix::require_same_n(A, C);
    const int n = A.n;
    if (dim_vector(B) + dim_vector(C) != dim_vector(A)) return 0;
    const DimVector sub_dim = dim_vector(C);
    const ConcreteRep M = build_rep(A, q);
    for (int v = 0; v < n; ++v)
        if (sub_dim.at(v + 1) > M.dims[v]) return 0;

    Int tuples = 1;
    for (int v = 0; v < n; ++v)
        tuples *= eval_q(qpoly_gauss(M.dims[v], sub_dim.at(v + 1)), q);
    if (tuples > budget)
        throw BudgetExceeded("count_submodules: " + tuples.str() +
                             " subspace tuples exceed budget " + std::to_string(budget));

    std::vector<std::vector<fp::FMat>> choices(n);
    for (int v = 0; v < n; ++v)
        choices[v] = rref_enumerate(static_cast<int>(sub_dim.at(v + 1)), M.dims[v], q);

    std::vector<std::size_t> pick(n, 0);
    Int count = 0;
    while (true) {
        // current tuple of subspaces, each an RREF basis-matrix
        bool invariant = true;
        std::vector<std::vector<int>> pivots(n), nonpivots(n);
        for (int v = 0; v < n && invariant; ++v) {
            const fp::FMat& U = choices[v][pick[v]];
            for (int r = 0; r < U.rows; ++r) {
                int c = 0;
                while (U.at(r, c) == 0) ++c;
                pivots[v].push_back(c);
            }
            for (int c = 0; c < U.cols; ++c)
                if (std::find(pivots[v].begin(), pivots[v].end(), c) == pivots[v].end())
                    nonpivots[v].push_back(c);
        }
        // reduce y against the RREF basis of U_w; returns false if y escapes U_w
        auto reduce_into = [&](int w, std::vector<long long>& y,
                               std::vector<long long>* coords) -> bool {
            const fp::FMat& Uw = choices[w][pick[w]];
            for (int r = 0; r < Uw.rows; ++r) {
                const long long c = y[pivots[w][r]];
                if (coords) (*coords)[r] = c;
                if (c == 0) continue;
                for (int j = 0; j < Uw.cols; ++j)
                    y[j] = fp::norm_mod(y[j] - c * Uw.at(r, j), q);
            }
            for (long long x : y)
                if (x != 0) return false;
            return true;
        };
        std::vector<fp::FMat> sub_arrows, quot_arrows;
        for (int v = 0; v < n && invariant; ++v) {
            const int w = (v + 1) % n;
            const fp::FMat& U = choices[v][pick[v]];
            fp::FMat S(static_cast<int>(pivots[w].size()), U.rows);
            for (int r = 0; r < U.rows && invariant; ++r) {
                std::vector<long long> y(M.dims[w], 0);
                for (int a = 0; a < M.dims[w]; ++a)
                    for (int c = 0; c < M.dims[v]; ++c)
                        y[a] = fp::norm_mod(y[a] + M.arrows[v].at(a, c) * U.at(r, c), q);
                std::vector<long long> coords(pivots[w].size(), 0);
                if (!reduce_into(w, y, &coords)) {
                    invariant = false;
                    break;
                }
                for (std::size_t k = 0; k < coords.size(); ++k)
                    S.at(static_cast<int>(k), r) = coords[k];
            }
            if (invariant) sub_arrows.push_back(std::move(S));
        }
        if (invariant) {
            // quotient arrows on the non-pivot coordinate basis
            for (int v = 0; v < n; ++v) {
                const int w = (v + 1) % n;
                fp::FMat Q(static_cast<int>(nonpivots[w].size()),
                           static_cast<int>(nonpivots[v].size()));
                for (std::size_t b = 0; b < nonpivots[v].size(); ++b) {
                    std::vector<long long> y(M.dims[w], 0);
                    for (int a = 0; a < M.dims[w]; ++a)
                        y[a] = M.arrows[v].at(a, nonpivots[v][b]);
                    const fp::FMat& Uw = choices[w][pick[w]];
                    for (int r = 0; r < Uw.rows; ++r) {
                        const long long c = y[pivots[w][r]];
                        if (c == 0) continue;
                        for (int j = 0; j < Uw.cols; ++j)
                            y[j] = fp::norm_mod(y[j] - c * Uw.at(r, j), q);
                    }
                    for (std::size_t a = 0; a < nonpivots[w].size(); ++a)
                        Q.at(static_cast<int>(a), static_cast<int>(b)) = y[nonpivots[w][a]];
                }
                quot_arrows.push_back(std::move(Q));
            }
            ConcreteRep sub{n, q, {}, std::move(sub_arrows)};
            ConcreteRep quot{n, q, {}, std::move(quot_arrows)};
            for (int v = 0; v < n; ++v) {
                sub.dims.push_back(static_cast<int>(pivots[v].size()));
                quot.dims.push_back(static_cast<int>(nonpivots[v].size()));
            }
            if (iso_type(sub) == C && iso_type(quot) == B) ++count;
        }
        int v = 0;
        while (v < n && pick[v] + 1 == choices[v].size()) pick[v++] = 0;
        if (v == n) break;
        ++pick[v];
    }
    return count;
}

// ---------------------------------------------------------------------------
// Structured RREF counting: matrices with row groups of sizes d_1..d_r and
// column groups of sizes a_1..a_r that are globally in RREF, vanish strictly
// below the block diagonal, and whose t-th diagonal block has rank d_t.
// Enumerated concretely and verified; the count factors as
//   q^{sum_{k<l} d_k (a_l - d_l)} prod_t [[a_t over d_t]].
// The vertex argument only records which simple module the groups refer to.
// ---------------------------------------------------------------------------
inline Int count_block_rref(int vertex, const std::vector<long long>& a,
                            const std::vector<long long>& d, long long q,
                            long long budget = 10'000'000) {
    (void)vertex;
    if (a.size() != d.size()) throw ValidationError("count_block_rref: group count mismatch");
    const int r = static_cast<int>(a.size());
    for (int t = 0; t < r; ++t)
        if (d[t] < 0 || a[t] < d[t])
            throw ValidationError("count_block_rref: need 0 <= d_t <= a_t");

    Int expected_work = 1;
    for (int t = 0; t < r; ++t) {
        expected_work *= eval_q(qpoly_gauss(a[t], d[t]), q);
        for (int l = t + 1; l < r; ++l)
            for (long long k = 0; k < d[t] * (a[l] - d[l]); ++k) expected_work *= q;
    }
    if (expected_work > budget)
        throw BudgetExceeded("count_block_rref: " + expected_work.str() +
                             " candidates exceed budget " + std::to_string(budget));

    std::vector<std::vector<fp::FMat>> blocks(r);
    for (int t = 0; t < r; ++t)
        blocks[t] = rref_enumerate(static_cast<int>(d[t]), static_cast<int>(a[t]), q);

    long long rows = 0, cols = 0;
    std::vector<long long> row_off(r), col_off(r);
    for (int t = 0; t < r; ++t) {
        row_off[t] = rows;
        col_off[t] = cols;
        rows += d[t];
        cols += a[t];
    }

    std::vector<std::size_t> pick(r, 0);
    Int count = 0;
    while (true) {
        // free positions: in block (t,l), l > t, the columns that are not
        // pivot columns of block l
        std::vector<std::vector<int>> nonpiv(r);
        for (int t = 0; t < r; ++t) {
            const fp::FMat& B = blocks[t][pick[t]];
            std::vector<bool> is_piv(B.cols, false);
            for (int rr = 0; rr < B.rows; ++rr) {
                int c = 0;
                while (B.at(rr, c) == 0) ++c;
                is_piv[c] = true;
            }
            for (int c = 0; c < B.cols; ++c)
                if (!is_piv[c]) nonpiv[t].push_back(c);
        }
        std::vector<std::pair<int, int>> free_pos;
        for (int t = 0; t < r; ++t)
            for (int l = t + 1; l < r; ++l)
                for (long long rr = 0; rr < d[t]; ++rr)
                    for (int c : nonpiv[l])
                        free_pos.emplace_back(static_cast<int>(row_off[t] + rr),
                                              static_cast<int>(col_off[l] + c));

        std::vector<long long> vals(free_pos.size(), 0);
        while (true) {
            fp::FMat T(static_cast<int>(rows), static_cast<int>(cols));
            for (int t = 0; t < r; ++t) {
                const fp::FMat& B = blocks[t][pick[t]];
                for (int rr = 0; rr < B.rows; ++rr)
                    for (int c = 0; c < B.cols; ++c)
                        T.at(static_cast<int>(row_off[t] + rr),
                             static_cast<int>(col_off[t] + c)) = B.at(rr, c);
            }
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                T.at(free_pos[k].first, free_pos[k].second) = vals[k];
            if (!fp::is_rref(T))
                throw HallError("count_block_rref: assembled matrix is not in RREF");
            ++count;
            std::size_t k = 0;
            while (k < vals.size() && vals[k] == q - 1) vals[k++] = 0;
            if (k == vals.size()) break;
            ++vals[k];
        }

        int t = 0;
        while (t < r && pick[t] + 1 == blocks[t].size()) pick[t++] = 0;
        if (t == r) break;
        ++pick[t];
    }
    return count;
}

} // namespace hall
