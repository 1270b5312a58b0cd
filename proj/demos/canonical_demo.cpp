// Walks one module class through the full pipeline: distinguished word,
// monomial expansion in the PBW basis, and the canonical basis element.

#include <iostream>

#include "hall/canonical.hpp"
#include "hall/io.hpp"

using namespace hall;

int main() {
    // A = S_1 + S_1[2] + S_2[2]: Loewy length 2, periodicity 1, not tight
    const CyclicMatrix A = parse_matrix("n=2;1,2:2;1,3:1;2,3:1");

    std::cout << "A = " << format_matrix(A) << "\n";
    std::cout << "dimension vector " << dim_vector(A).to_string() << ", loewy length "
              << loewy_length(A) << ", periodicity " << periodicity(A) << "\n\n";

    const Word w = distinguished_word(A);
    std::cout << "distinguished word: " << w.to_string() << "\n";
    std::cout << "  latex: " << to_latex(w) << "\n\n";

    std::cout << "monomial expansion m^{(A)} = " << to_plain(monomial_expand(A)) << "\n\n";

    const CanonicalElement c = canonical_element(A);
    std::cout << "canonical element:\n" << to_plain(c) << "\n";
    std::cout << "latex: " << to_latex(c) << "\n\n";

    // the closed-form library covers every Loewy length <= 2 class for n = 2
    const auto cf = slice_closed_form(A);
    std::cout << "closed form agrees with the subtraction algorithm: "
              << (cf.has_value() && *cf == c ? "yes" : "NO") << "\n";

    // tight classes are those whose monomial already is canonical
    for (const char* t : {"n=2;1,2:1;1,3:1;2,3:2", "n=2;1,2:2;1,3:1;2,3:1"}) {
        const CyclicMatrix M = parse_matrix(t);
        std::cout << "is_tight(" << t << ") = " << (is_tight(M) ? "true" : "false") << "\n";
    }
    return 0;
}
