#pragma once

// Matrix combinatorics of the positive cone for the cyclic quiver with n
// vertices: a matrix A = (a_{i,j}) with period a_{i+n,j+n} = a_{i,j} is stored
// by its core (rows 1..n, columns j > i, positive entries only) and encodes
// the nilpotent representation M(A) = sum of a_{i,j} copies of the segment
// S_i[j-i] (top S_i, socle S_{j-1}).

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hall/errors.hpp"

namespace hall {

// ---------------------------------------------------------------------------
// DimVector: element of Z^n with cyclic index reduction.
// ---------------------------------------------------------------------------
struct DimVector {
    int n = 0;
    std::vector<long long> comp; // 1-based logically; comp[k] is vertex k+1

    DimVector() = default;
    explicit DimVector(int n_) : n(n_), comp(n_, 0) {
        if (n < 2) throw ValidationError("DimVector: n must be at least 2");
    }
    DimVector(int n_, std::vector<long long> c) : n(n_), comp(std::move(c)) {
        if (n < 2) throw ValidationError("DimVector: n must be at least 2");
        if (static_cast<int>(comp.size()) != n)
            throw ValidationError("DimVector: component count does not match n");
    }
    static DimVector zero(int n) { return DimVector(n, std::vector<long long>(n, 0)); }
    static DimVector unit(int n, int i) {
        DimVector d = zero(n);
        d.at(i) = 1;
        return d;
    }

    // Vertex index reduced into [1, n].
    static int reduce(int i, int n) {
        int r = (i - 1) % n;
        if (r < 0) r += n;
        return r + 1;
    }

    long long& at(int i) { return comp[reduce(i, n) - 1]; }
    long long at(int i) const { return comp[reduce(i, n) - 1]; }

    long long total() const { return std::accumulate(comp.begin(), comp.end(), 0LL); }
    bool is_zero() const { return total() == 0 && all_nonnegative(); }
    bool all_nonnegative() const {
        return std::all_of(comp.begin(), comp.end(), [](long long v) { return v >= 0; });
    }
    bool sincere() const {
        return std::all_of(comp.begin(), comp.end(), [](long long v) { return v > 0; });
    }

    // Cyclic shift: component i of shift(k) is component i-k of the input.
    DimVector shift(int k) const {
        DimVector r = zero(n);
        for (int i = 1; i <= n; ++i) r.at(i) = at(i - k);
        return r;
    }

    friend bool operator==(const DimVector& a, const DimVector& b) {
        return a.n == b.n && a.comp == b.comp;
    }
    friend bool operator!=(const DimVector& a, const DimVector& b) { return !(a == b); }
    friend DimVector operator+(const DimVector& a, const DimVector& b) {
        require_same_n(a, b);
        DimVector r = a;
        for (int k = 0; k < a.n; ++k) r.comp[k] += b.comp[k];
        return r;
    }
    friend DimVector operator-(const DimVector& a, const DimVector& b) {
        require_same_n(a, b);
        DimVector r = a;
        for (int k = 0; k < a.n; ++k) r.comp[k] -= b.comp[k];
        return r;
    }
    friend bool leq_componentwise(const DimVector& a, const DimVector& b) {
        require_same_n(a, b);
        for (int k = 0; k < a.n; ++k)
            if (a.comp[k] > b.comp[k]) return false;
        return true;
    }

    static void require_same_n(const DimVector& a, const DimVector& b) {
        if (a.n != b.n) throw ValidationError("DimVector: mismatched n");
    }

    std::string to_string() const {
        std::ostringstream out;
        for (int k = 0; k < n; ++k) {
            if (k) out << ",";
            out << comp[k];
        }
        return out.str();
    }
};

// Euler form of the cyclic quiver: <a,b> = sum a_i b_i - sum a_i b_{i+1}.
inline long long euler_form(const DimVector& a, const DimVector& b) {
    DimVector::require_same_n(a, b);
    long long r = 0;
    for (int i = 1; i <= a.n; ++i) r += a.at(i) * (b.at(i) - b.at(i + 1));
    return r;
}

// ---------------------------------------------------------------------------
// Segment S_i[l]
// ---------------------------------------------------------------------------
struct Segment {
    int n = 0;
    int i = 1; // vertex in [1, n]
    int l = 1; // length >= 1

    Segment(int n_, int i_, int l_) : n(n_), i(i_), l(l_) {
        if (l < 1) throw ValidationError("Segment: length must be at least 1");
        i = DimVector::reduce(i, n);
    }

    DimVector dim() const {
        DimVector d = DimVector::zero(n);
        for (int k = 0; k < l; ++k) d.at(i + k) += 1;
        return d;
    }
};

// dim Hom(S_i[l], S_j[m]): a nonzero map factors as quotient-of-source onto
// sub-of-target, so its image S_i[t] must match the socle-anchored submodule
// S_{j+m-t}[t]; each admissible t contributes one dimension:
//   dim Hom = #{ 1 <= t <= min(l,m) : t = j - i + m (mod n) }.
// Validated against the finite-field intertwiner oracle.
inline long long hom_dim(const Segment& s, const Segment& t) {
    if (s.n != t.n) throw ValidationError("hom_dim: mismatched n");
    const int n = s.n;
    long long count = 0;
    const int lim = std::min(s.l, t.l);
    for (int k = 1; k <= lim; ++k)
        if ((k - (t.i - s.i + t.l)) % n == 0) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// CyclicMatrix
// ---------------------------------------------------------------------------
struct CyclicMatrix {
    int n = 2;
    // (i, j) -> a_{i,j} with 1 <= i <= n, j > i, a > 0.
    std::map<std::pair<int, int>, long long> entries;

    CyclicMatrix() = default;
    explicit CyclicMatrix(int n_) : n(n_) {
        if (n < 2) throw ValidationError("CyclicMatrix: n must be at least 2");
    }

    static CyclicMatrix zero(int n) { return CyclicMatrix(n); }

    // Canonical key: shift (i, j) so the row lands in [1, n].
    std::pair<int, int> reduce_key(int i, int j) const {
        int r = (i - 1) % n;
        if (r < 0) r += n;
        const int shift = (r + 1) - i;
        return {i + shift, j + shift};
    }

    long long entry(int i, int j) const {
        const auto key = reduce_key(i, j);
        if (key.second <= key.first) return 0;
        auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second;
    }

    void add_entry(int i, int j, long long v) {
        const auto key = reduce_key(i, j);
        if (key.second <= key.first)
            throw ValidationError("CyclicMatrix: entries must lie strictly above the diagonal");
        auto it = entries.find(key);
        const long long cur = (it == entries.end()) ? 0 : it->second;
        const long long next = cur + v;
        if (next < 0) throw ValidationError("CyclicMatrix: entry would become negative");
        if (next == 0) {
            if (it != entries.end()) entries.erase(it);
        } else if (it == entries.end()) {
            entries.emplace(key, next);
        } else {
            it->second = next;
        }
    }

    void set_entry(int i, int j, long long v) {
        add_entry(i, j, v - entry(i, j));
    }

    bool is_zero() const { return entries.empty(); }

    friend bool operator==(const CyclicMatrix& a, const CyclicMatrix& b) {
        return a.n == b.n && a.entries == b.entries;
    }
    friend bool operator!=(const CyclicMatrix& a, const CyclicMatrix& b) { return !(a == b); }
    // Canonical total order: by n, then lexicographic on the sorted entry map.
    friend bool operator<(const CyclicMatrix& a, const CyclicMatrix& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.entries < b.entries;
    }

    friend CyclicMatrix operator+(const CyclicMatrix& a, const CyclicMatrix& b) {
        require_same_n(a, b);
        CyclicMatrix r = a;
        for (const auto& [k, v] : b.entries) r.add_entry(k.first, k.second, v);
        return r;
    }

    // Entrywise difference; empty when some entry would go negative.
    static std::optional<CyclicMatrix> try_sub(const CyclicMatrix& a, const CyclicMatrix& b) {
        require_same_n(a, b);
        CyclicMatrix r = a;
        for (const auto& [k, v] : b.entries) {
            if (r.entry(k.first, k.second) < v) return std::nullopt;
            r.add_entry(k.first, k.second, -v);
        }
        return r;
    }

    static void require_same_n(const CyclicMatrix& a, const CyclicMatrix& b) {
        if (a.n != b.n) throw ValidationError("CyclicMatrix: mismatched n");
    }

    // The diagonal part {(i, i+L)} as a matrix of its own.
    CyclicMatrix diagonal(int L) const {
        CyclicMatrix d(n);
        for (int i = 1; i <= n; ++i) {
            const long long v = entry(i, i + L);
            if (v != 0) d.add_entry(i, i + L, v);
        }
        return d;
    }

    std::vector<std::pair<Segment, long long>> segments() const {
        std::vector<std::pair<Segment, long long>> out;
        out.reserve(entries.size());
        for (const auto& [k, v] : entries)
            out.emplace_back(Segment(n, k.first, k.second - k.first), v);
        return out;
    }
};

inline std::optional<CyclicMatrix> try_sub(const CyclicMatrix& a, const CyclicMatrix& b) {
    return CyclicMatrix::try_sub(a, b);
}

// A single segment as a matrix: a_{i, i+l} = mult.
inline CyclicMatrix segment_matrix(int n, int i, int l, long long mult = 1) {
    CyclicMatrix m(n);
    if (mult != 0) m.add_entry(DimVector::reduce(i, n), DimVector::reduce(i, n) + l, mult);
    return m;
}

// The semisimple module S_alpha as a matrix: a_{i, i+1} = alpha_i.
inline CyclicMatrix semisimple_matrix(const DimVector& alpha) {
    CyclicMatrix m(alpha.n);
    for (int i = 1; i <= alpha.n; ++i)
        if (alpha.at(i) != 0) m.add_entry(i, i + 1, alpha.at(i));
    return m;
}

// ---------------------------------------------------------------------------
// Dimension data and structural measures
// ---------------------------------------------------------------------------

inline DimVector row_vector(const CyclicMatrix& T) {
    DimVector r = DimVector::zero(T.n);
    for (const auto& [k, v] : T.entries) r.at(k.first) += v;
    return r;
}

inline DimVector col_vector(const CyclicMatrix& T) {
    DimVector c = DimVector::zero(T.n);
    for (const auto& [k, v] : T.entries) c.at(k.second) += v;
    return c;
}

inline DimVector dim_vector(const CyclicMatrix& A) {
    DimVector d = DimVector::zero(A.n);
    for (const auto& [k, v] : A.entries)
        for (int j = k.first; j < k.second; ++j) d.at(j) += v;
    return d;
}

inline long long total_dim(const CyclicMatrix& A) { return dim_vector(A).total(); }

inline int loewy_length(const CyclicMatrix& A) {
    int l = 0;
    for (const auto& [k, v] : A.entries) {
        (void)v;
        l = std::max(l, k.second - k.first);
    }
    return l;
}

// p(A): the largest l >= 1 whose whole diagonal a_{i,i+l} (i = 1..n) is
// nonzero; 0 when no diagonal is fully supported (A aperiodic).
inline int periodicity(const CyclicMatrix& A) {
    const int l = loewy_length(A);
    for (int d = l; d >= 1; --d) {
        bool full = true;
        for (int i = 1; i <= A.n; ++i)
            if (A.entry(i, i + d) == 0) {
                full = false;
                break;
            }
        if (full) return d;
    }
    return 0;
}

inline bool aperiodic(const CyclicMatrix& A) { return periodicity(A) == 0; }

inline bool strongly_periodic(const CyclicMatrix& A) {
    const int p = periodicity(A);
    return p > 0 && p == loewy_length(A);
}

// sigma_{i,j}(A) = sum over s <= i, t >= j of a_{s,t}, summed over all
// periodic translates (finitely many contribute for i != j).
inline long long sigma(const CyclicMatrix& A, int i, int j) {
    if (i == j) throw ValidationError("sigma: i and j must differ");
    long long total = 0;
    for (const auto& [k, v] : A.entries) {
        // shifts k with  r + k n <= i  and  c + k n >= j
        const long long hi = ((long long)i - k.first) >= 0
                                 ? ((long long)i - k.first) / A.n
                                 : -((((long long)k.first - i) + A.n - 1) / A.n);
        const long long lo_num = (long long)j - k.second;
        const long long lo = lo_num >= 0 ? (lo_num + A.n - 1) / A.n : -((-lo_num) / A.n);
        if (hi >= lo) total += v * (hi - lo + 1);
    }
    return total;
}

// B preceq A: sigma_{i,j}(B) <= sigma_{i,j}(A) for all i < j. Entries beyond
// the common bandwidth contribute zero on both sides, so the window
// j <= i + max(l(A), l(B)) is complete.
inline bool preceq(const CyclicMatrix& B, const CyclicMatrix& A) {
    CyclicMatrix::require_same_n(A, B);
    const int w = std::max(loewy_length(A), loewy_length(B));
    for (int i = 1; i <= A.n; ++i)
        for (int j = i + 1; j <= i + w; ++j)
            if (sigma(B, i, j) > sigma(A, i, j)) return false;
    return true;
}

inline bool deg_leq(const CyclicMatrix& B, const CyclicMatrix& A) {
    return dim_vector(B) == dim_vector(A) && preceq(B, A);
}

inline bool deg_lt(const CyclicMatrix& B, const CyclicMatrix& A) {
    return B != A && deg_leq(B, A);
}

// dim End(M(A)) via the segment hom formula.
inline long long end_dim(const CyclicMatrix& A) {
    const auto segs = A.segments();
    long long total = 0;
    for (const auto& [s, ms] : segs)
        for (const auto& [t, mt] : segs) total += ms * mt * hom_dim(s, t);
    return total;
}

// delta(A) = dim End(M(A)) - dim M(A); the twist exponent of u~_A = v^delta u_A.
inline long long delta(const CyclicMatrix& A) { return end_dim(A) - total_dim(A); }

// ---------------------------------------------------------------------------
// Enumeration of strata and poset ideals
// ---------------------------------------------------------------------------

namespace detail {

inline void enumerate_rec(int n, const std::vector<Segment>& segs, std::size_t idx,
                          DimVector& remaining, CyclicMatrix& acc,
                          std::vector<CyclicMatrix>& out) {
    if (remaining.total() == 0) {
        out.push_back(acc);
        // fall through: only zero multiplicities can follow, which duplicate;
        // stop this branch here.
        return;
    }
    if (idx == segs.size()) return;
    const Segment& s = segs[idx];
    const DimVector sd = s.dim();
    // multiplicity 0 first, then as many copies as the remaining vector allows
    enumerate_rec(n, segs, idx + 1, remaining, acc, out);
    long long m = 0;
    while (true) {
        bool fits = true;
        for (int i = 1; i <= n; ++i)
            if (remaining.at(i) < sd.at(i)) {
                fits = false;
                break;
            }
        if (!fits) break;
        ++m;
        for (int i = 1; i <= n; ++i) remaining.at(i) -= sd.at(i);
        acc.add_entry(s.i, s.i + s.l, 1);
        enumerate_rec(n, segs, idx + 1, remaining, acc, out);
    }
    // undo
    for (long long k = 0; k < m; ++k) acc.add_entry(s.i, s.i + s.l, -1);
    for (int i = 1; i <= n; ++i) remaining.at(i) += m * sd.at(i);
}

} // namespace detail

// All matrices with the given dimension vector; complete and duplicate-free,
// sorted in the canonical matrix order.
inline std::vector<CyclicMatrix> enumerate_by_dimvec(const DimVector& d) {
    if (!d.all_nonnegative())
        throw ValidationError("enumerate_by_dimvec: components must be nonnegative");
    const int n = d.n;
    const long long total = d.total();
    std::vector<Segment> segs;
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= total; ++l) segs.emplace_back(n, i, l);
    std::vector<CyclicMatrix> out;
    DimVector remaining = d;
    CyclicMatrix acc(n);
    detail::enumerate_rec(n, segs, 0, remaining, acc, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// The interval (0, A] in the degeneration order: all B with the same
// dimension vector and B <=_dg A (A itself included).
inline std::vector<CyclicMatrix> poset_ideal(const CyclicMatrix& A) {
    std::vector<CyclicMatrix> out;
    for (const auto& B : enumerate_by_dimvec(dim_vector(A)))
        if (deg_leq(B, A)) out.push_back(B);
    return out;
}

// ---------------------------------------------------------------------------
// Matrix text format: `n=<int>;<i>,<j>:<a>;...`, entries sorted, zero matrix
// rendered as `n=<int>;`.
// ---------------------------------------------------------------------------

inline std::string format_matrix(const CyclicMatrix& A) {
    std::ostringstream out;
    out << "n=" << A.n;
    if (A.entries.empty()) {
        out << ";";
        return out.str();
    }
    for (const auto& [k, v] : A.entries) out << ";" << k.first << "," << k.second << ":" << v;
    return out.str();
}

namespace detail {

inline long long parse_ll(const std::string& text, std::size_t& pos, const char* what) {
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw ValidationError(std::string("expected ") + what + " at position " +
                              std::to_string(start) + " in '" + text + "'");
    return std::stoll(text.substr(start, pos - start));
}

inline void expect_char(const std::string& text, std::size_t& pos, char c) {
    if (pos >= text.size())
        throw ValidationError(std::string("expected '") + c + "' at position " +
                              std::to_string(pos) + " in '" + text + "' but input ended");
    if (text[pos] != c)
        throw ValidationError(std::string("expected '") + c + "' at position " +
                              std::to_string(pos) + " in '" + text + "', found '" + text[pos] +
                              "'");
    ++pos;
}

} // namespace detail

inline CyclicMatrix parse_matrix(const std::string& text) {
    std::size_t pos = 0;
    detail::expect_char(text, pos, 'n');
    detail::expect_char(text, pos, '=');
    const long long n = detail::parse_ll(text, pos, "quiver rank");
    if (n < 2) throw ValidationError("matrix text: n must be at least 2 in '" + text + "'");
    CyclicMatrix A(static_cast<int>(n));
    if (pos == text.size())
        throw ValidationError("matrix text: expected ';' at position " + std::to_string(pos) +
                              " in '" + text + "'");
    detail::expect_char(text, pos, ';');
    if (pos == text.size()) return A; // zero matrix "n=<int>;"
    while (true) {
        const long long i = detail::parse_ll(text, pos, "row index");
        detail::expect_char(text, pos, ',');
        const long long j = detail::parse_ll(text, pos, "column index");
        detail::expect_char(text, pos, ':');
        const long long a = detail::parse_ll(text, pos, "multiplicity");
        if (i < 1 || i > n)
            throw ValidationError("matrix text: row index " + std::to_string(i) +
                                  " out of range in '" + text + "'");
        if (j <= i)
            throw ValidationError("matrix text: column index " + std::to_string(j) +
                                  " must exceed row index in '" + text + "'");
        if (a < 1)
            throw ValidationError("matrix text: multiplicity " + std::to_string(a) +
                                  " must be positive in '" + text + "'");
        if (A.entry(static_cast<int>(i), static_cast<int>(j)) != 0)
            throw ValidationError("matrix text: duplicate entry " + std::to_string(i) + "," +
                                  std::to_string(j) + " in '" + text + "'");
        A.add_entry(static_cast<int>(i), static_cast<int>(j), a);
        if (pos == text.size()) break;
        detail::expect_char(text, pos, ';');
        if (pos == text.size())
            throw ValidationError("matrix text: trailing ';' at position " +
                                  std::to_string(pos - 1) + " in '" + text + "'");
    }
    return A;
}

inline DimVector parse_dimvec(int n, const std::string& text) {
    std::vector<long long> comp;
    std::size_t pos = 0;
    while (true) {
        comp.push_back(detail::parse_ll(text, pos, "component"));
        if (pos == text.size()) break;
        detail::expect_char(text, pos, ',');
    }
    if (static_cast<int>(comp.size()) != n)
        throw ValidationError("dimension vector '" + text + "' does not have " +
                              std::to_string(n) + " components");
    for (long long v : comp)
        if (v < 0)
            throw ValidationError("dimension vector '" + text + "' has a negative component");
    return DimVector(n, std::move(comp));
}

} // namespace hall
