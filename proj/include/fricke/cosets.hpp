#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fricke {

// psi(N) = N prod_{p|N} (1 + 1/p), the index of Gamma_0(N) in SL2(Z).
long psi(long N);

// Integer 2x2 matrix (a b; c d).
struct CosetMatrix {
    long a, b, c, d;
    long det() const { return a * d - b * c; }
    bool operator==(const CosetMatrix&) const = default;
};

// Reduced upper-triangular class (A B; 0 D) with AD = N and 0 <= B < D.
struct ReducedTriple {
    long A, B, D;
    bool operator==(const ReducedTriple&) const = default;
    auto operator<=>(const ReducedTriple&) const = default;
};

// All (A,B,D): A|N, D = N/A, 0 <= B < D, gcd(A,B,D) = 1. There are psi(N) of them.
std::vector<ReducedTriple> reduced_triples(long N);

// Representatives of Gamma_0(N) \ Gamma. For prime ell: (1 0; c 1) for 0 <= c < ell
// and (0 -1; 1 ell). For composite N, a deterministic SL2 lift of each reduced triple.
std::vector<CosetMatrix> coset_representatives(long N);

// Gamma-reduction of a determinant-N matrix to (A B; 0 D): A = gcd(a,c), D = N/A.
ReducedTriple reduce_matrix(const CosetMatrix& M, long N);

// True iff R1 R2^{-1} is in Gamma_0(N) (same coset).
bool same_coset(const CosetMatrix& r1, const CosetMatrix& r2, long N);

}  // namespace fricke
