// Multiplies Hall algebra basis elements for the cyclic quiver with two
// vertices and cross-checks one structure constant against brute-force
// submodule counting over small finite fields.

#include <iostream>

#include "hall/hallpoly.hpp"
#include "hall/io.hpp"
#include "hall/oracle.hpp"

using namespace hall;

// u_B u_C = sum_A phi^A_{B,C}(q) u_A over all A of the right dimension vector
static HallVectorQ product(const CyclicMatrix& B, const CyclicMatrix& C, HallPolyCache& cache) {
    HallVectorQ out(B.n);
    for (const auto& A : enumerate_by_dimvec(dim_vector(B) + dim_vector(C))) {
        const QPoly phi = hall_polynomial(A, B, C, cache);
        if (!phi.is_zero()) out.terms.emplace(A, phi);
    }
    return out;
}

int main() {
    // u_B u_C for B = S_1, C = S_2: the extension S_1[2] shows up alongside
    // the semisimple S_1 + S_2
    const CyclicMatrix B = parse_matrix("n=2;1,2:1");
    const CyclicMatrix C = parse_matrix("n=2;2,3:1");

    std::cout << "B = " << format_matrix(B) << "  (simple S_1)\n";
    std::cout << "C = " << format_matrix(C) << "  (simple S_2)\n\n";

    HallPolyCache cache;
    const HallVectorQ prod = product(B, C, cache);
    std::cout << "u_B u_C = " << to_plain(prod) << "\n\n";

    // the structure constant at A = S_1[2] is a Hall polynomial; its value at
    // a prime power q counts submodules of M_q(A) of type C with quotient B
    const CyclicMatrix A = parse_matrix("n=2;1,3:1");
    const QPoly phi = hall_polynomial(A, B, C, cache);
    std::cout << "hall polynomial at A = " << format_matrix(A) << ": "
              << phi.to_string() << "\n";
    for (long long q : {2, 3, 5})
        std::cout << "  q=" << q << ": polynomial value " << eval_q(phi, q).str()
                  << ", submodule count " << count_submodules(A, B, C, q).str() << "\n";

    // a bigger product between non-semisimple classes
    const HallVectorQ big = product(A, parse_matrix("n=2;1,2:1;2,3:1"), cache);
    std::cout << "\nu_{S_1[2]} u_{S_1+S_2} = " << to_plain(big) << "\n";
    return 0;
}
