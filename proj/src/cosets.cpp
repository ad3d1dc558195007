#include "fricke/cosets.hpp"

#include <numeric>
#include <stdexcept>

namespace fricke {

long psi(long N) {
    if (N < 1) throw std::invalid_argument("psi: N must be positive");
    long r = N;
    long n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        r += r / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) r += r / n;
    return r;
}

std::vector<ReducedTriple> reduced_triples(long N) {
    std::vector<ReducedTriple> out;
    for (long A = 1; A <= N; ++A) {
        if (N % A) continue;
        long D = N / A;
        for (long B = 0; B < D; ++B) {
            if (std::gcd(std::gcd(A, B), D) == 1) out.push_back({A, B, D});
        }
    }
    return out;
}

namespace {

// extended gcd: g = ax + by, g >= 0
long ext_gcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Deterministic SL2(Z) lift of a reduced triple: the first (a, c) in a small
// zigzag scan with gcd(a, c) = 1 whose completed matrix reduces back to t.
CosetMatrix lift_triple(const ReducedTriple& t, long N) {
    auto complete = [](long a, long c) -> CosetMatrix {
        long d, me;
        ext_gcd(a, c, d, me);  // a*d + c*me = 1
        return {a, -me, c, d};
    };
    const long bound = 4 * N + 4;
    for (long a = 0; a <= bound; ++a) {
        for (long cc = 0; cc <= 2 * bound; ++cc) {
            long c = (cc % 2) ? -(cc + 1) / 2 : cc / 2;
            if (std::gcd(a, c) != 1) continue;
            CosetMatrix R = complete(a, c);
            CosetMatrix scaled{N * R.a, N * R.b, R.c, R.d};
            if (reduce_matrix(scaled, N) == t) return R;
        }
    }
    throw std::logic_error("lift_triple: no lift found");
}

}  // namespace

std::vector<CosetMatrix> coset_representatives(long N) {
    if (N < 2) throw std::invalid_argument("coset_representatives: N must be >= 2");
    std::vector<CosetMatrix> out;
    if (is_prime_long(N)) {
        for (long c = 0; c < N; ++c) out.push_back({1, 0, c, 1});
        out.push_back({0, -1, 1, N});
        return out;
    }
    for (const auto& t : reduced_triples(N)) out.push_back(lift_triple(t, N));
    return out;
}

ReducedTriple reduce_matrix(const CosetMatrix& M, long N) {
    if (M.det() != N) throw std::invalid_argument("reduce_matrix: det != N");
    long u, v;
    long A = ext_gcd(M.a, M.c, u, v);  // A = gcd(a,c) = u a + v c > 0
    if (A == 0) throw std::invalid_argument("reduce_matrix: zero column");
    long D = N / A;
    long B0 = u * M.b + v * M.d;
    long B = ((B0 % D) + D) % D;
    return {A, B, D};
}

bool same_coset(const CosetMatrix& r1, const CosetMatrix& r2, long N) {
    if (r1.det() != 1 || r2.det() != 1) throw std::invalid_argument("same_coset: need SL2 inputs");
    long c = r1.c * r2.d - r1.d * r2.c;  // lower-left entry of r1 * r2^{-1}
    return c % N == 0;
}

}  // namespace fricke
