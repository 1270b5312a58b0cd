#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hall/errors.hpp"
#include "hall/hallmult.hpp"
#include "hall/matrix.hpp"

namespace hall {

// A letter is either a simple vertex in [1, n] or a sincere dimension vector.
struct Letter {
    int n = 0;
    int vertex = 0; // in [1, n] for simple letters, 0 for sincere ones
    std::optional<DimVector> sincere;

    static Letter simple(int n, int i) {
        if (i < 1 || i > n)
            throw ValidationError("simple letter vertex " + std::to_string(i) +
                                  " out of range [1," + std::to_string(n) + "]");
        Letter b;
        b.n = n;
        b.vertex = i;
        return b;
    }

    static Letter sincere_letter(DimVector alpha) {
        if (!alpha.sincere())
            throw ValidationError("sincere letter requires all components >= 1, got " +
                                  alpha.to_string());
        Letter b;
        b.n = alpha.n;
        b.sincere = std::move(alpha);
        return b;
    }

    bool is_simple() const { return vertex != 0; }

    // dimension vector contributed by one copy of the letter
    DimVector weight() const {
        return is_simple() ? DimVector::unit(n, vertex) : *sincere;
    }

    bool operator==(const Letter& o) const {
        return n == o.n && vertex == o.vertex && sincere == o.sincere;
    }
    bool operator!=(const Letter& o) const { return !(*this == o); }
};

// Word in tight form: adjacent equal simple letters are merged into one
// exponent, sincere letters always carry exponent 1.
struct Word {
    int n;
    std::vector<std::pair<Letter, long long>> letters;

    explicit Word(int n_) : n(n_) {
        if (n < 2) throw ValidationError("word requires n >= 2, got " + std::to_string(n));
    }

    void append(const Letter& b, long long e) {
        if (b.n != n) throw ValidationError("letter rank does not match word rank");
        if (e < 1) throw ValidationError("letter exponent must be >= 1, got " + std::to_string(e));
        if (!b.is_simple() && e != 1)
            throw ValidationError("sincere letters carry exponent 1, got " + std::to_string(e));
        if (!letters.empty() && letters.back().first == b && b.is_simple()) {
            letters.back().second += e;
            return;
        }
        letters.emplace_back(b, e);
    }

    void append_word(const Word& w) {
        if (w.n != n) throw ValidationError("word rank mismatch in concatenation");
        for (const auto& [b, e] : w.letters) append(b, e);
    }

    bool empty() const { return letters.empty(); }

    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        for (const auto& [b, e] : letters) {
            if (!first) out << ".";
            first = false;
            if (b.is_simple()) {
                out << b.vertex << "^" << e;
            } else {
                out << "(";
                for (int i = 1; i <= n; ++i) out << (i > 1 ? "," : "") << b.sincere->at(i);
                out << ")";
            }
        }
        return out.str();
    }

    bool operator==(const Word& o) const { return n == o.n && letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

inline Word parse_word(int n, const std::string& text) {
    Word w(n);
    if (text.empty()) return w;
    std::size_t pos = 0;
    while (true) {
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            std::vector<long long> comp;
            for (int i = 1; i <= n; ++i) {
                if (i > 1) detail::expect_char(text, pos, ',');
                comp.push_back(detail::parse_ll(text, pos, "sincere component"));
            }
            detail::expect_char(text, pos, ')');
            for (long long c : comp)
                if (c < 1)
                    throw ValidationError("sincere letter requires all components >= 1 in '" +
                                          text + "'");
            w.append(Letter::sincere_letter(DimVector(n, comp)), 1);
        } else {
            const std::size_t at = pos;
            const long long i = detail::parse_ll(text, pos, "vertex");
            if (i < 1 || i > n)
                throw ValidationError("vertex " + std::to_string(i) + " out of range [1," +
                                      std::to_string(n) + "] at position " + std::to_string(at) +
                                      " in '" + text + "'");
            long long e = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                e = detail::parse_ll(text, pos, "exponent");
            }
            w.append(Letter::simple(n, static_cast<int>(i)), e);
        }
        if (pos == text.size()) break;
        detail::expect_char(text, pos, '.');
    }
    return w;
}

// Generic extension of the semisimple module of alpha by M(A): the unique
// degeneration-maximal candidate A + T - shift(T), which also has strictly
// minimal endomorphism dimension among the candidates.
inline CyclicMatrix generic_extension(const DimVector& alpha, const CyclicMatrix& A) {
    if (alpha.n != A.n) throw ValidationError("rank mismatch in generic extension");
    if (!alpha.all_nonnegative())
        throw ValidationError("generic extension requires alpha >= 0, got " + alpha.to_string());
    std::vector<CyclicMatrix> cands;
    for (const auto& T : enumerate_T(alpha, A)) {
        const CyclicMatrix C = *CyclicMatrix::try_sub(A + T, tilde_shift(T));
        // keep only genuine extensions: the Gaussian product over the entries
        // of T vanishes unless C dominates T entrywise
        bool extension = true;
        for (const auto& [key, t] : T.entries)
            if (C.entry(key.first, key.second) < t) {
                extension = false;
                break;
            }
        if (extension) cands.push_back(C);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const CyclicMatrix* top = nullptr;
    for (const auto& C : cands) {
        bool maximal = true;
        for (const auto& D : cands)
            if (!deg_leq(D, C)) {
                maximal = false;
                break;
            }
        if (maximal) {
            top = &C;
            break;
        }
    }
    if (top == nullptr)
        throw NoUniqueMaximum("no degeneration-maximal extension candidate for alpha = " +
                              alpha.to_string() + " onto " + format_matrix(A));
    const long long top_end = end_dim(*top);
    for (const auto& C : cands)
        if (C != *top && end_dim(C) <= top_end)
            throw NoUniqueMaximum("endomorphism tie-break failed for alpha = " +
                                  alpha.to_string() + " onto " + format_matrix(A));
    return *top;
}

// The word-to-module map: fold generic extensions right to left, so the last
// letter of the word sits deepest (at the socle).
inline CyclicMatrix wp(const Word& w) {
    CyclicMatrix acc(w.n);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        DimVector weight = it->first.weight();
        if (it->first.is_simple())
            for (int i = 1; i <= w.n; ++i) weight.comp[i - 1] *= it->second;
        acc = generic_extension(weight, acc);
    }
    return acc;
}

// Split A into its strongly periodic top A' (Loewy length p(A)) and aperiodic
// remainder A'' (columns shifted down by p(A)).
inline std::pair<CyclicMatrix, CyclicMatrix> distinguished_pair(const CyclicMatrix& A) {
    const int n = A.n;
    const long long p = periodicity(A);
    if (p == 0) return {CyclicMatrix(n), A};
    const long long l = loewy_length(A);
    CyclicMatrix Ap(n);
    CyclicMatrix App(n);
    for (int i = 1; i <= n; ++i) {
        for (long long d = 1; d < p; ++d) Ap.add_entry(i, i + d, A.entry(i, i + d));
        long long colsum = 0;
        for (long long i0 = i + p - l; i0 <= i; ++i0) colsum += A.entry(i0, i + p);
        Ap.add_entry(i, i + p, colsum);
        for (long long d = 1; d <= l - p; ++d) App.add_entry(i, i + d, A.entry(i, i + d + p));
    }
    if (!strongly_periodic(Ap))
        throw HallError("strongly periodic part is not strongly periodic: " + format_matrix(Ap));
    if (!aperiodic(App))
        throw HallError("aperiodic part is not aperiodic: " + format_matrix(App));
    return {Ap, App};
}

struct PeriodicStep {
    DimVector letter;
    CyclicMatrix after;
};

// Peel the strongly periodic matrix diagonal by diagonal, deepest first; each
// step removes one full diagonal and shifts it one row down.
inline Word word_strongly_periodic(const CyclicMatrix& Ap,
                                   std::vector<PeriodicStep>* trace = nullptr) {
    Word w(Ap.n);
    if (Ap.is_zero()) return w;
    if (!strongly_periodic(Ap))
        throw InputNotStronglyPeriodic("input is not strongly periodic: " + format_matrix(Ap));
    const long long p = loewy_length(Ap);
    CyclicMatrix B = Ap;
    for (long long j = 1; j <= p; ++j) {
        const CyclicMatrix T = B.diagonal(p - j + 1);
        const DimVector a = row_vector(T);
        if (!a.sincere())
            throw HallError("strongly periodic step produced a non-sincere letter on " +
                            format_matrix(Ap));
        const auto next = CyclicMatrix::try_sub(B + tilde_shift(T), T);
        if (!next) throw HallError("strongly periodic step cannot remove its own diagonal");
        B = *next;
        w.append(Letter::sincere_letter(a), 1);
        if (trace) trace->push_back({a, B});
    }
    if (!B.is_zero())
        throw HallError("strongly periodic peeling left a remainder: " + format_matrix(B));
    return w;
}

struct AperiodicStep {
    int row;             // selected row j
    long long jprime;    // inner cutoff j'
    CyclicMatrix removed; // T
    CyclicMatrix after;  // B after the step
    long long exponent;
};

// Peel the aperiodic matrix by diagonals from the deepest one; on each pass
// take the right-most entry of the current diagonal whose cyclic successor on
// that diagonal vanishes, and remove the row segment starting at the smallest
// depth exceeding the Loewy length of the next row.
inline Word word_aperiodic(const CyclicMatrix& App, std::vector<AperiodicStep>* trace = nullptr) {
    if (!aperiodic(App)) throw InputNotAperiodic("input is not aperiodic: " + format_matrix(App));
    const int n = App.n;
    Word w(n);
    CyclicMatrix B = App;
    for (long long L = loewy_length(App); L >= 1; --L) {
        while (!B.diagonal(L).is_zero()) {
            int j = 0;
            for (int r = n; r >= 1; --r)
                if (B.entry(r, r + L) != 0 && B.entry(r + 1, r + 1 + L) == 0) {
                    j = r;
                    break;
                }
            if (j == 0)
                throw HallError("aperiodic peeling stalled on diagonal " + std::to_string(L) +
                                " of " + format_matrix(B));
            long long next_row_loewy = 0;
            for (long long m = 1; m <= L; ++m)
                if (B.entry(j + 1, j + 1 + m) != 0) next_row_loewy = m;
            long long jprime = 0;
            for (long long d = next_row_loewy + 1; d <= L; ++d)
                if (B.entry(j, j + d) != 0) {
                    jprime = d;
                    break;
                }
            if (jprime == 0)
                throw HallError("no admissible segment start in row " + std::to_string(j) +
                                " of " + format_matrix(B));
            CyclicMatrix T(n);
            long long e = 0;
            for (long long d = jprime; d <= L; ++d) {
                const long long b = B.entry(j, j + d);
                T.add_entry(j, j + d, b);
                e += b;
            }
            const auto next = CyclicMatrix::try_sub(B + tilde_shift(T), T);
            if (!next) throw HallError("aperiodic step cannot remove its own segment");
            B = *next;
            w.append(Letter::simple(n, j), e);
            if (trace) trace->push_back({j, jprime, T, B, e});
        }
    }
    if (!B.is_zero()) throw HallError("aperiodic peeling left a remainder: " + format_matrix(B));
    return w;
}

// Distinguished word of A: aperiodic letters first, strongly periodic letters
// last (deepest).
inline Word distinguished_word(const CyclicMatrix& A) {
    const auto [Ap, App] = distinguished_pair(A);
    Word w = word_aperiodic(App);
    w.append_word(word_strongly_periodic(Ap));
    return w;
}

// n = 2 only: the aperiodic matrix whose distinguished word is
// i^{a_1} (i+1)^{a_2} ... for a pyramidic exponent sequence.
inline CyclicMatrix pyramidic_to_matrix(int start_vertex, const std::vector<long long>& a) {
    const int n = 2;
    if (start_vertex < 1 || start_vertex > n)
        throw ValidationError("start vertex " + std::to_string(start_vertex) +
                              " out of range [1,2]");
    if (a.empty()) throw NotPyramidic("empty exponent sequence");
    for (long long x : a)
        if (x < 1) throw NotPyramidic("pyramidic entries must be >= 1, got " + std::to_string(x));
    // strictly increasing up to the peak, non-increasing afterwards; the peak
    // is forced to be the end of the longest strictly increasing prefix
    std::size_t peak = 0;
    while (peak + 1 < a.size() && a[peak] < a[peak + 1]) ++peak;
    for (std::size_t k = peak; k + 1 < a.size(); ++k)
        if (a[k] < a[k + 1])
            throw NotPyramidic("sequence rises again after its peak at index " +
                               std::to_string(k + 2));
    Word w(n);
    for (std::size_t k = 0; k < a.size(); ++k)
        w.append(Letter::simple(n, 1 + static_cast<int>((start_vertex - 1 + k) % n)), a[k]);
    const CyclicMatrix A = wp(w);
    if (!aperiodic(A) || distinguished_word(A) != w)
        throw HallError("pyramidic sequence does not round-trip through its matrix: " +
                        w.to_string());
    return A;
}

} // namespace hall
