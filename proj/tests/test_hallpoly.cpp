#include <catch2/catch_amalgamated.hpp>

#include "hall/hallpoly.hpp"
#include "hall/oracle.hpp"

using namespace hall;

namespace {

CyclicMatrix mat(int n, std::initializer_list<std::pair<std::pair<int, int>, long long>> es) {
    CyclicMatrix A(n);
    for (const auto& [k, v] : es) A.add_entry(k.first, k.second, v);
    return A;
}

std::vector<DimVector> all_alphas(int n, long long max_total) {
    std::vector<DimVector> out;
    std::vector<long long> comp(n, 0);
    while (true) {
        long long t = 0;
        for (long long c : comp) t += c;
        if (t <= max_total) out.emplace_back(n, comp);
        int k = 0;
        while (k < n && comp[k] == max_total) comp[k++] = 0;
        if (k == n) break;
        ++comp[k];
    }
    return out;
}

std::vector<CyclicMatrix> all_matrices(int n, long long max_total) {
    std::vector<CyclicMatrix> out;
    for (const auto& alpha : all_alphas(n, max_total))
        for (const auto& A : enumerate_by_dimvec(alpha)) out.push_back(A);
    return out;
}

} // namespace

TEST_CASE("word expansion", "[hallpoly]") {
    const QPoly q1 = QPoly::monomial(1) + QPoly::one(); // q + 1

    Word w1(2);
    w1.append(Letter::simple(2, 1), 1);
    const HallVectorQ e1 = word_expand_q(w1);
    REQUIRE(e1.terms.size() == 1);
    CHECK(hv_coeff(e1, mat(2, {{{1, 2}, 1}})) == QPoly::one());

    // 1.1 merges to 1^2; the expansion picks up [[2]]! = q+1
    const HallVectorQ e2 = word_expand_q(parse_word(2, "1^1.1^1"));
    REQUIRE(e2.terms.size() == 1);
    CHECK(hv_coeff(e2, mat(2, {{{1, 2}, 2}})) == q1);

    const HallVectorQ e3 = word_expand_q(parse_word(2, "1^1.2^1"));
    REQUIRE(e3.terms.size() == 2);
    CHECK(hv_coeff(e3, mat(2, {{{1, 2}, 1}, {{2, 3}, 1}})) == QPoly::one());
    CHECK(hv_coeff(e3, mat(2, {{{1, 3}, 1}})) == QPoly::one());

    // the empty word acts as the identity
    const CyclicMatrix X = mat(2, {{{1, 3}, 1}, {{2, 3}, 1}});
    const HallVectorQ id = word_apply_q(Word(2), X);
    REQUIRE(id.terms.size() == 1);
    CHECK(hv_coeff(id, X) == QPoly::one());

    CHECK_THROWS_AS(word_apply_q(Word(2), CyclicMatrix(3)), ValidationError);
}

TEST_CASE("gamma normalization", "[hallpoly]") {
    CHECK(gamma(parse_word(2, "1^2"), mat(2, {{{1, 2}, 2}})) == QPoly::one());

    // support of 1.2 stops below S_2[2]
    CHECK(gamma(parse_word(2, "1^1.2^1"), mat(2, {{{2, 3}, 1}, {{1, 2}, 1}})) == QPoly::one());
    CHECK(gamma(parse_word(2, "1^1.2^1"), mat(2, {{{2, 4}, 1}})) == QPoly::zero());
    CHECK(gamma(parse_word(2, "1^2"), mat(2, {{{1, 2}, 1}, {{2, 3}, 1}})) == QPoly::zero());

    // gamma_{w_A}^A = 1 for every distinguished word
    for (int n : {2, 3}) {
        const long long cap = n == 2 ? 5 : 4;
        for (const auto& A : all_matrices(n, cap)) {
            if (A.is_zero()) continue;
            CHECK(gamma(distinguished_word(A), A) == QPoly::one());
        }
    }
}

TEST_CASE("word expansion coefficients divide by the letter factorials", "[hallpoly]") {
    // every phi_w^X is exactly divisible by prod [[e_k]]!: gamma never throws
    std::vector<Word> words;
    for (int i1 = 1; i1 <= 2; ++i1)
        for (long long e1 = 1; e1 <= 3; ++e1)
            for (int i2 = 1; i2 <= 2; ++i2)
                for (long long e2 = 1; e2 <= 3; ++e2)
                    for (int i3 = 1; i3 <= 2; ++i3)
                        for (long long e3 = 1; e3 <= 2; ++e3) {
                            Word w(2);
                            w.append(Letter::simple(2, i1), e1);
                            w.append(Letter::simple(2, i2), e2);
                            w.append(Letter::simple(2, i3), e3);
                            words.push_back(w);
                        }
    Word mixed(3);
    mixed.append(Letter::simple(3, 2), 2);
    mixed.append(Letter::sincere_letter(DimVector(3, {1, 1, 1})), 1);
    mixed.append(Letter::simple(3, 2), 2);
    words.push_back(mixed);

    for (const auto& w : words) {
        const HallVectorQ ex = word_expand_q(w);
        const QPoly fact = word_factorial(w);
        for (const auto& [X, phi] : ex.terms) {
            const QPoly g = exact_divide(phi, fact); // throws NonExactDivision on failure
            CHECK(g == gamma(w, X));
        }
    }
}

TEST_CASE("hall polynomial examples", "[hallpoly]") {
    const QPoly q1 = QPoly::monomial(1) + QPoly::one();
    const CyclicMatrix s1 = mat(2, {{{1, 2}, 1}});
    const CyclicMatrix s2 = mat(2, {{{2, 3}, 1}});

    CHECK(hall_polynomial(mat(2, {{{1, 2}, 2}}), s1, s1) == q1);
    CHECK(hall_polynomial(mat(2, {{{1, 3}, 1}}), s1, s2) == QPoly::one());
    CHECK(hall_polynomial(mat(2, {{{1, 2}, 1}, {{2, 3}, 1}}), s1, s2) == QPoly::one());

    // C = 0 forces A = B
    for (const auto& A : all_matrices(2, 3))
        for (const auto& B : all_matrices(2, 3)) {
            const QPoly expect = A == B ? QPoly::one() : QPoly::zero();
            CHECK(hall_polynomial(A, B, CyclicMatrix(2)) == expect);
        }

    // B = 0 forces A = C
    CHECK(hall_polynomial(s1, CyclicMatrix(2), s1) == QPoly::one());
    CHECK(hall_polynomial(s2, CyclicMatrix(2), s1) == QPoly::zero());

    // inconsistent dimension vectors vanish
    CHECK(hall_polynomial(mat(2, {{{1, 2}, 2}}), s1, s2) == QPoly::zero());
    CHECK_THROWS_AS(hall_polynomial(CyclicMatrix(2), CyclicMatrix(3), CyclicMatrix(2)),
                    ValidationError);
}

TEST_CASE("hall polynomials count submodules", "[hallpoly]") {
    HallPolyCache cache;
    for (int n : {2, 3}) {
        for (const auto& A : all_matrices(n, 4)) {
            const DimVector da = dim_vector(A);
            for (const auto& beta : all_alphas(n, da.total())) {
                bool fits = true;
                DimVector rest(n);
                for (int i = 0; i < n; ++i) {
                    rest.comp[i] = da.comp[i] - beta.comp[i];
                    if (rest.comp[i] < 0) fits = false;
                }
                if (!fits) continue;
                for (const auto& B : enumerate_by_dimvec(beta))
                    for (const auto& C : enumerate_by_dimvec(rest)) {
                        const QPoly phi = hall_polynomial(A, B, C, cache);
                        for (long long q : {2, 3})
                            CHECK(eval_q(phi, Int(q)) == count_submodules(A, B, C, q));
                        for (long long q : {4, 5})
                            CHECK(eval_q(phi, Int(q)) >= 0);
                    }
            }
        }
    }
}

TEST_CASE("products expand through hall polynomials", "[hallpoly]") {
    HallPolyCache cache;
    for (int n : {2, 3}) {
        for (const auto& alpha : all_alphas(n, 2)) {
            if (alpha.total() == 0) continue;
            for (const auto& C : all_matrices(n, 3)) {
                const HallVectorQ prod = mult_semisimple_q(alpha, C);
                const CyclicMatrix B = semisimple_matrix(alpha);
                for (const auto& [X, c] : prod.terms)
                    CHECK(hall_polynomial(X, B, C, cache) == c);
            }
        }
    }

    // an A outside the product support vanishes
    const DimVector a11(2, {1, 1});
    const CyclicMatrix C = mat(2, {{{1, 2}, 1}});
    const CyclicMatrix absent = mat(2, {{{1, 4}, 1}, {{1, 2}, 1}}); // wrong dim vector
    CHECK(hall_polynomial(absent, semisimple_matrix(a11), C, cache) == QPoly::zero());
}

TEST_CASE("semisimple quotients factor by top vertex", "[hallpoly]") {
    const QPoly q = QPoly::monomial(1);
    const QPoly q1 = q + QPoly::one();

    // single vertex: A = 2 S_1 + S_1[2], quotient S_1
    const CyclicMatrix A1 = mat(2, {{{1, 2}, 2}, {{1, 3}, 1}});
    const CyclicMatrix B1 = mat(2, {{{1, 2}, 1}});
    CHECK(hall_polynomial(A1, B1, mat(2, {{{1, 2}, 1}, {{1, 3}, 1}})) ==
          hall_number_semisimple_top(1, {2, 1}, {1, 0}));
    CHECK(hall_polynomial(A1, B1, mat(2, {{{1, 2}, 2}, {{2, 3}, 1}})) ==
          hall_number_semisimple_top(1, {2, 1}, {0, 1}));
    CHECK(hall_number_semisimple_top(1, {2, 1}, {1, 0}) == q * q1);
    CHECK(hall_number_semisimple_top(1, {2, 1}, {0, 1}) == QPoly::one());

    // two top vertices, one segment each: both factors 1
    const CyclicMatrix A2 = mat(3, {{{1, 3}, 1}, {{2, 5}, 1}});
    const CyclicMatrix B2 = mat(3, {{{1, 2}, 1}, {{2, 3}, 1}});
    const CyclicMatrix C2 = mat(3, {{{2, 3}, 1}, {{3, 5}, 1}});
    CHECK(hall_polynomial(A2, B2, C2) ==
          hall_number_semisimple_top(1, {0, 1}, {0, 1}) *
              hall_number_semisimple_top(2, {0, 0, 1}, {0, 0, 1}));
    CHECK(hall_polynomial(A2, B2, C2) == QPoly::one());

    // two top vertices, a nontrivial factor at vertex 1
    const CyclicMatrix A3 = mat(3, {{{1, 2}, 2}, {{2, 4}, 1}});
    const CyclicMatrix C3 = mat(3, {{{1, 2}, 1}, {{3, 4}, 1}});
    CHECK(hall_polynomial(A3, B2, C3) ==
          hall_number_semisimple_top(1, {2}, {1}) *
              hall_number_semisimple_top(2, {0, 1}, {0, 1}));
    CHECK(hall_polynomial(A3, B2, C3) == q1);

    for (long long qv : {2, 3}) {
        CHECK(eval_q(hall_polynomial(A2, B2, C2), Int(qv)) == count_submodules(A2, B2, C2, qv));
        CHECK(eval_q(hall_polynomial(A3, B2, C3), Int(qv)) == count_submodules(A3, B2, C3, qv));
    }
}

TEST_CASE("semisimple top counts", "[hallpoly]") {
    const QPoly q = QPoly::monomial(1);
    const QPoly q1 = q + QPoly::one();

    CHECK(hall_number_semisimple_top(1, {2}, {1}) == q1);
    CHECK(hall_number_semisimple_top(2, {3, 1, 2}, {0, 0, 0}) == QPoly::one());
    CHECK(hall_number_semisimple_top(1, {1, 1}, {1, 0}) == q);

    CHECK_THROWS_AS(hall_number_semisimple_top(1, {1, 1}, {1}), ValidationError);
    CHECK_THROWS_AS(hall_number_semisimple_top(1, {1}, {2}), ValidationError);
    CHECK_THROWS_AS(hall_number_semisimple_top(1, {1}, {-1}), ValidationError);

    // matches the brute-force count of block RREF matrices
    std::vector<std::vector<long long>> lists;
    for (long long a1 = 0; a1 <= 2; ++a1)
        for (long long a2 = 0; a2 <= 2; ++a2)
            for (long long a3 = 0; a3 <= 2; ++a3) lists.push_back({a1, a2, a3});
    for (long long a1 = 0; a1 <= 3; ++a1)
        for (long long a2 = 0; a2 <= 3; ++a2) lists.push_back({a1, a2});
    for (const auto& a : lists) {
        std::vector<long long> d(a.size(), 0);
        while (true) {
            const QPoly h = hall_number_semisimple_top(1, a, d);
            for (long long qv : {2, 3})
                CHECK(eval_q(h, Int(qv)) == count_block_rref(1, a, d, qv));
            std::size_t k = 0;
            while (k < d.size() && d[k] == a[k]) d[k++] = 0;
            if (k == d.size()) break;
            ++d[k];
        }
    }
}
