#include <catch2/catch_amalgamated.hpp>

#include "hall/oracle.hpp"
#include "hall/words.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace hall;

namespace {

CyclicMatrix mat(int n, std::initializer_list<std::pair<std::pair<int, int>, long long>> es) {
    CyclicMatrix A(n);
    for (const auto& [k, v] : es) A.add_entry(k.first, k.second, v);
    return A;
}

std::vector<CyclicMatrix> all_matrices(int n, long long max_total) {
    std::vector<CyclicMatrix> out;
    std::vector<long long> comp(n, 0);
    while (true) {
        long long t = 0;
        for (long long c : comp) t += c;
        if (t <= max_total)
            for (const auto& A : enumerate_by_dimvec(DimVector(n, comp))) out.push_back(A);
        int k = 0;
        while (k < n && comp[k] == max_total) comp[k++] = 0;
        if (k == n) break;
        ++comp[k];
    }
    return out;
}

// independent definition of the generic extension of M(X) by M(Y): the unique
// degeneration-maximal iso class admitting a submodule of type Y with quotient
// of type X over a finite field
CyclicMatrix oracle_star(const CyclicMatrix& X, const CyclicMatrix& Y) {
    std::vector<CyclicMatrix> support;
    for (const auto& C : enumerate_by_dimvec(dim_vector(X) + dim_vector(Y)))
        if (count_submodules(C, X, Y, 2) > 0 || count_submodules(C, X, Y, 3) > 0)
            support.push_back(C);
    REQUIRE(!support.empty());
    for (const auto& C : support) {
        bool maximal = true;
        for (const auto& D : support)
            if (!deg_leq(D, C)) {
                maximal = false;
                break;
            }
        if (maximal) return C;
    }
    FAIL("no degeneration-maximal extension in oracle support");
    return CyclicMatrix(X.n);
}

} // namespace

TEST_CASE("letters and words", "[words]") {
    Word w(3);
    w.append(Letter::simple(3, 1), 2);
    w.append(Letter::simple(3, 1), 3); // merges
    w.append(Letter::simple(3, 2), 1);
    w.append(Letter::sincere_letter(DimVector(3, {1, 2, 1})), 1);
    REQUIRE(w.letters.size() == 3);
    CHECK(w.letters[0].second == 5);
    CHECK(w.to_string() == "1^5.2^1.(1,2,1)");
    CHECK(parse_word(3, w.to_string()) == w);

    CHECK(parse_word(2, "") == Word(2));
    CHECK(parse_word(2, "1").to_string() == "1^1"); // bare vertex reads as exponent 1
    CHECK(parse_word(2, "1.1^2") == parse_word(2, "1^3"));

    CHECK_THROWS_AS(Letter::simple(2, 3), ValidationError);
    CHECK_THROWS_AS(Letter::simple(2, 0), ValidationError);
    CHECK_THROWS_AS(Letter::sincere_letter(DimVector(2, {1, 0})), ValidationError);
    CHECK_THROWS_AS(Word(2).append(Letter::simple(2, 1), 0), ValidationError);
    CHECK_THROWS_AS(Word(3).append(Letter::sincere_letter(DimVector(3, {1, 1, 1})), 2),
                    ValidationError);
    CHECK_THROWS_AS(Word(3).append(Letter::simple(2, 1), 1), ValidationError);

    CHECK_THROWS_AS(parse_word(2, "3^1"), ValidationError);
    CHECK_THROWS_AS(parse_word(2, "1^0"), ValidationError);
    CHECK_THROWS_AS(parse_word(2, "1^2."), ValidationError);
    CHECK_THROWS_AS(parse_word(2, "1^2,2^1"), ValidationError);
    CHECK_THROWS_AS(parse_word(3, "(1,2)"), ValidationError);
    CHECK_THROWS_AS(parse_word(2, "(1,0)"), ValidationError);
    CHECK_THROWS_AS(parse_word(2, "(1,2"), ValidationError);
}

TEST_CASE("generic extensions", "[words]") {
    // nonsplit beats split
    CHECK(generic_extension(DimVector(2, {1, 0}), mat(2, {{{2, 3}, 1}})) ==
          mat(2, {{{1, 3}, 1}}));
    // self-extensions of a simple vanish
    CHECK(generic_extension(DimVector(2, {0, 1}), mat(2, {{{2, 3}, 1}})) ==
          mat(2, {{{2, 3}, 2}}));
    // extension by zero
    CHECK(generic_extension(DimVector(2, {2, 1}), CyclicMatrix(2)) ==
          semisimple_matrix(DimVector(2, {2, 1})));

    CHECK_THROWS_AS(generic_extension(DimVector(2, {-1, 1}), CyclicMatrix(2)), ValidationError);
    CHECK_THROWS_AS(generic_extension(DimVector(3, {1, 1, 1}), CyclicMatrix(2)), ValidationError);

    // agreement with the finite-field definition
    for (const auto& alpha :
         {DimVector(2, {1, 0}), DimVector(2, {0, 1}), DimVector(2, {1, 1}), DimVector(2, {2, 0})})
        for (const auto& A : all_matrices(2, 3))
            CHECK(generic_extension(alpha, A) == oracle_star(semisimple_matrix(alpha), A));
}

TEST_CASE("generic extension monoid associativity", "[words]") {
    std::vector<DimVector> gens;
    for (long long a = 0; a <= 3; ++a)
        for (long long b = 0; b <= 3; ++b)
            if (a + b >= 1 && a + b <= 3) gens.emplace_back(2, std::vector<long long>{a, b});
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& z : gens) {
                if (x.total() + y.total() + z.total() > 5) continue;
                const CyclicMatrix right =
                    generic_extension(x, generic_extension(y, semisimple_matrix(z)));
                const CyclicMatrix left = oracle_star(
                    oracle_star(semisimple_matrix(x), semisimple_matrix(y)), semisimple_matrix(z));
                CHECK(left == right);
            }
}

TEST_CASE("word to module map", "[words]") {
    for (int n = 2; n <= 3; ++n)
        for (int i = 1; i <= n; ++i) {
            Word w(n);
            w.append(Letter::simple(n, i), 1);
            CHECK(wp(w) == segment_matrix(n, i, 1));
        }

    // 1^(a+b).2^b lands on the two-row matrix (a, b)
    for (long long a = 0; a <= 3; ++a)
        for (long long b = 1; b <= 3; ++b) {
            Word w(2);
            w.append(Letter::simple(2, 1), a + b);
            w.append(Letter::simple(2, 2), b);
            CyclicMatrix expect(2);
            expect.add_entry(1, 2, a);
            expect.add_entry(1, 3, b);
            CHECK(wp(w) == expect);
        }

    CHECK(wp(Word(2)).is_zero());
}

TEST_CASE("distinguished pair", "[words]") {
    const CyclicMatrix A = parse_matrix(
        "n=3;1,2:1;1,3:1;1,5:3;1,6:1;1,7:2;1,8:1;1,9:3;2,4:2;2,5:3;2,6:1;2,8:1;2,9:1;"
        "3,4:3;3,6:1;3,7:1;3,8:1");
    const auto [Ap, App] = distinguished_pair(A);
    CHECK(Ap == parse_matrix("n=3;1,2:1;1,3:1;1,5:6;2,4:2;2,5:3;2,6:6;3,4:3;3,6:1;3,7:3"));
    CHECK(App == parse_matrix("n=3;1,2:1;1,3:2;1,4:1;1,5:3;2,4:1;2,5:1;3,4:1"));
    CHECK(strongly_periodic(Ap));
    CHECK(loewy_length(Ap) == periodicity(A));
    CHECK(aperiodic(App));

    const CyclicMatrix aper = mat(2, {{{1, 3}, 1}, {{2, 3}, 2}});
    REQUIRE(aperiodic(aper));
    const auto [p1, p2] = distinguished_pair(aper);
    CHECK(p1.is_zero());
    CHECK(p2 == aper);

    const CyclicMatrix sp = mat(2, {{{1, 3}, 1}, {{2, 4}, 2}});
    REQUIRE(strongly_periodic(sp));
    const auto [q1, q2] = distinguished_pair(sp);
    CHECK(q1 == sp);
    CHECK(q2.is_zero());
}

TEST_CASE("strongly periodic word", "[words]") {
    CHECK(word_strongly_periodic(CyclicMatrix(2)).empty());
    CHECK(word_strongly_periodic(mat(2, {{{1, 2}, 1}, {{2, 3}, 1}})).to_string() == "(1,1)");
    CHECK_THROWS_AS(word_strongly_periodic(mat(2, {{{1, 2}, 1}})), InputNotStronglyPeriodic);
    CHECK_THROWS_AS(word_strongly_periodic(mat(2, {{{1, 3}, 1}, {{2, 3}, 1}})),
                    InputNotStronglyPeriodic);
}

TEST_CASE("aperiodic word", "[words]") {
    CHECK(word_aperiodic(CyclicMatrix(3)).empty());
    CHECK(word_aperiodic(mat(2, {{{1, 3}, 1}})).to_string() == "1^1.2^1");
    CHECK(word_aperiodic(mat(2, {{{1, 2}, 4}})).to_string() == "1^4");
    CHECK_THROWS_AS(word_aperiodic(mat(2, {{{1, 2}, 1}, {{2, 3}, 1}})), InputNotAperiodic);
}

TEST_CASE("distinguished word golden trace", "[words]") {
    std::ifstream in(std::string(HALL_TEST_DATA_DIR) + "/distword_n3.txt");
    REQUIRE(in.good());
    CyclicMatrix A(3), Ap(3), App(3);
    std::string word_text;
    struct ApLine {
        int row;
        long long jprime, exponent;
        CyclicMatrix T{3}, B{3};
    };
    std::vector<ApLine> ap_lines;
    std::vector<std::pair<DimVector, CyclicMatrix>> sp_lines;
    std::string key;
    while (in >> key) {
        if (key == "matrix") {
            std::string t;
            in >> t;
            A = parse_matrix(t);
        } else if (key == "aprime") {
            std::string t;
            in >> t;
            Ap = parse_matrix(t);
        } else if (key == "adoubleprime") {
            std::string t;
            in >> t;
            App = parse_matrix(t);
        } else if (key == "word") {
            in >> word_text;
        } else if (key == "ap_step") {
            ApLine s;
            std::string tt, bt;
            in >> s.row >> s.jprime >> s.exponent >> tt >> bt;
            s.T = parse_matrix(tt);
            s.B = parse_matrix(bt);
            ap_lines.push_back(s);
        } else if (key == "sp_step") {
            std::string lt, bt;
            in >> lt >> bt;
            const Word one = parse_word(3, lt);
            REQUIRE(one.letters.size() == 1);
            sp_lines.emplace_back(*one.letters[0].first.sincere, parse_matrix(bt));
        } else {
            FAIL("unknown golden key: " + key);
        }
    }
    REQUIRE(!A.is_zero());
    REQUIRE(ap_lines.size() == 7);
    REQUIRE(sp_lines.size() == 4);

    const auto [ap, app] = distinguished_pair(A);
    CHECK(ap == Ap);
    CHECK(app == App);

    std::vector<AperiodicStep> ap_trace;
    const Word wa = word_aperiodic(App, &ap_trace);
    REQUIRE(ap_trace.size() == ap_lines.size());
    for (std::size_t k = 0; k < ap_lines.size(); ++k) {
        CHECK(ap_trace[k].row == ap_lines[k].row);
        CHECK(ap_trace[k].jprime == ap_lines[k].jprime);
        CHECK(ap_trace[k].exponent == ap_lines[k].exponent);
        CHECK(ap_trace[k].removed == ap_lines[k].T);
        CHECK(ap_trace[k].after == ap_lines[k].B);
        // each peel inverts a generic extension by the emitted letter
        const CyclicMatrix before = k == 0 ? App : ap_lines[k - 1].B;
        DimVector alpha(3);
        alpha.comp[ap_lines[k].row - 1] = ap_lines[k].exponent;
        CHECK(generic_extension(alpha, ap_lines[k].B) == before);
    }

    std::vector<PeriodicStep> sp_trace;
    const Word ws = word_strongly_periodic(Ap, &sp_trace);
    REQUIRE(sp_trace.size() == sp_lines.size());
    for (std::size_t k = 0; k < sp_lines.size(); ++k) {
        CHECK(sp_trace[k].letter == sp_lines[k].first);
        CHECK(sp_trace[k].after == sp_lines[k].second);
    }

    Word w = wa;
    w.append_word(ws);
    CHECK(w.to_string() == word_text);
    CHECK(distinguished_word(A) == w);
    CHECK(wp(w) == A);
}

TEST_CASE("distinguished word round trip", "[words]") {
    for (int n = 2; n <= 3; ++n) {
        const long long cap = (n == 2) ? 6 : 5;
        for (const auto& A : all_matrices(n, cap)) {
            const auto [Ap, App] = distinguished_pair(A);
            CHECK((Ap.is_zero() || strongly_periodic(Ap)));
            CHECK(aperiodic(App));
            if (periodicity(A) > 0) CHECK(loewy_length(Ap) == periodicity(A));

            const Word w = distinguished_word(A);
            CHECK(wp(w) == A);
        }
    }
}

TEST_CASE("strongly periodic shift inequality", "[words]") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& A : all_matrices(n, 6)) {
            if (A.is_zero() || !strongly_periodic(A)) continue;
            const Word w = word_strongly_periodic(A);
            for (std::size_t k = 0; k + 1 < w.letters.size(); ++k) {
                const DimVector& aj = *w.letters[k].first.sincere;
                const DimVector& anext = *w.letters[k + 1].first.sincere;
                CHECK(leq_componentwise(aj.shift(1), anext));
            }
        }
}

TEST_CASE("distinguished words are distinguished", "[words]") {
    // the monomial along w_A expands as utilde_A plus strictly smaller terms,
    // with coefficient exactly 1 on utilde_A
    for (int n = 2; n <= 3; ++n) {
        const long long cap = (n == 2) ? 5 : 4;
        for (const auto& A : all_matrices(n, cap)) {
            const Word w = distinguished_word(A);
            HallVectorV acc = HallVectorV::unit(CyclicMatrix(n));
            for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
                DimVector weight = it->first.weight();
                if (it->first.is_simple())
                    for (int i = 0; i < n; ++i) weight.comp[i] *= it->second;
                acc = hv_mult_semisimple_twisted(weight, acc);
            }
            CHECK(hv_coeff(acc, A) == LaurentPoly::one());
            for (const auto& [B, c] : acc.terms)
                if (B != A) CHECK(deg_lt(B, A));
        }
    }
}

TEST_CASE("pyramidic sequences", "[words]") {
    CHECK(pyramidic_to_matrix(1, {2, 3, 5, 8, 9, 6, 4, 3, 1}) ==
          parse_matrix("n=2;1,2:1;1,5:1;1,6:1;1,9:1;1,10:1;2,4:2;2,5:1;2,9:1"));
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 1; b <= 2; ++b) {
            std::vector<long long> seq{a + b, b};
            CyclicMatrix expect(2);
            expect.add_entry(1, 2, a);
            expect.add_entry(1, 3, b);
            CHECK(pyramidic_to_matrix(1, seq) == expect);
        }
    CHECK(pyramidic_to_matrix(1, {3}) == mat(2, {{{1, 2}, 3}}));
    CHECK(pyramidic_to_matrix(2, {3}) == mat(2, {{{2, 3}, 3}}));

    CHECK_THROWS_AS(pyramidic_to_matrix(1, {2, 1, 2}), NotPyramidic);
    // ties are allowed on the descent only: (2,1,1) is fine, (1,1,2) is not
    CHECK(pyramidic_to_matrix(1, {2, 1, 1}) == mat(2, {{{1, 2}, 1}, {{1, 4}, 1}}));
    CHECK_THROWS_AS(pyramidic_to_matrix(1, {1, 1, 2}), NotPyramidic);
    CHECK_THROWS_AS(pyramidic_to_matrix(1, {1, 0, 1}), NotPyramidic);
    CHECK_THROWS_AS(pyramidic_to_matrix(1, {}), NotPyramidic);
    CHECK_THROWS_AS(pyramidic_to_matrix(5, {1}), ValidationError);
}

TEST_CASE("pyramidic sequences exhaust aperiodic matrices", "[words]") {
    for (long long total = 1; total <= 6; ++total) {
        std::set<CyclicMatrix> image;
        long long count = 0;
        // compositions of total into positive parts, filtered to pyramidic
        std::vector<std::vector<long long>> comps;
        std::vector<long long> cur;
        const std::function<void(long long)> rec = [&](long long rem) {
            if (rem == 0) {
                comps.push_back(cur);
                return;
            }
            for (long long part = 1; part <= rem; ++part) {
                cur.push_back(part);
                rec(rem - part);
                cur.pop_back();
            }
        };
        rec(total);
        for (const auto& seq : comps) {
            std::size_t peak = 0;
            while (peak + 1 < seq.size() && seq[peak] < seq[peak + 1]) ++peak;
            bool pyramidic = true;
            for (std::size_t k = peak; k + 1 < seq.size(); ++k)
                if (seq[k] < seq[k + 1]) pyramidic = false;
            if (!pyramidic) continue;
            for (int vertex = 1; vertex <= 2; ++vertex) {
                image.insert(pyramidic_to_matrix(vertex, seq));
                ++count;
            }
        }
        std::set<CyclicMatrix> aper;
        for (const auto& A : all_matrices(2, total))
            if (total_dim(A) == total && aperiodic(A) && !A.is_zero()) aper.insert(A);
        CHECK(image == aper);
        CHECK(count == static_cast<long long>(image.size())); // injective
    }
}
