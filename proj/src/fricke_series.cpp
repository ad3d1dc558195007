#include "fricke/fricke_series.hpp"

#include <cmath>
#include <mutex>
#include <thread>

#include "fricke/crt.hpp"

namespace fricke {

int form_weight(FormTag f) {
    switch (f) {
        case FormTag::E4: return 4;
        case FormTag::E6: return 6;
        case FormTag::Delta: return 12;
    }
    return 4;
}

int working_order(int w, long deg, int order_guard) {
    return int((long(w) * (deg) + 11) / 12) + order_guard;
}

namespace {

// family-specific root scaling relative to the raw conjugates:
// U uses the kappa_1 normalization directly; V carries A* = -3 ell^4 E4(q^ell),
// W carries B* = -2 ell^6 E6(q^ell).
long family_root_scale(Family fam) {
    switch (fam) {
        case Family::V: return -3;
        case Family::W: return -2;
        default: return 1;
    }
}

template <class R>
std::vector<std::map<Mono4, typename R::Elem>> family_coefficients(long ell, Family fam, R ring,
                                                                   int order_guard) {
    int w = family_weight(fam);
    int T = working_order(w, ell + 1, order_guard);
    if (fam == Family::U) {
        auto ps = power_sums_U(ell, T, ring);
        return detail::assemble_coefficients(ps, ring);
    }
    auto ps = power_sums_fN(fam == Family::V ? FormTag::E4 : FormTag::E6, ell, T, ring);
    ps.weight_w = w;
    return detail::assemble_coefficients(ps, ring, family_root_scale(fam));
}

TriPoly u2_polynomial() {
    // U_2 = X^3 + A X + B = X^3 - 3 E4 X - 2 E6 (minimal polynomial of the
    // 2-torsion abscissas); the odd-ell coset machinery does not apply.
    TriPoly p;
    p.ell = 2;
    p.weight_w = 2;
    p.family = Family::U;
    p.add_term({3, 0, 0, 0}, 1);
    p.add_term({1, 1, 0, 0}, -3);
    p.add_term({0, 0, 1, 0}, -2);
    return p;
}

}  // namespace

TriPoly compute_fricke_polynomial(long ell, Family fam, int order_guard) {
    if (fam != Family::U && fam != Family::V && fam != Family::W)
        throw std::invalid_argument("compute_fricke_polynomial: family must be U, V or W");
    if (fam == Family::U && ell == 2) return u2_polynomial();
    if (ell < 3) throw std::invalid_argument("compute_fricke_polynomial: need odd prime ell");
    auto cs = family_coefficients(ell, fam, QQ{}, order_guard);
    TriPoly p;
    p.ell = ell;
    p.weight_w = family_weight(fam);
    p.family = fam;
    p.add_term({int(ell) + 1, 0, 0, 0}, 1);
    for (long t = 1; t <= ell + 1; ++t) {
        for (const auto& [m, c] : cs[std::size_t(t - 1)])
            p.add_term({int(ell + 1 - t), m.i4, m.i6, m.i12}, c);
    }
    return p;
}

TriPolyMod compute_fricke_polynomial_mod(long ell, Family fam, u64 prime, int order_guard) {
    if (ell < 3) throw std::invalid_argument("compute_fricke_polynomial_mod: need odd prime ell");
    if (prime <= u64(ell + 1) || prime <= 3)
        throw std::invalid_argument("compute_fricke_polynomial_mod: p too small");
    GF ring(prime);
    auto cs = family_coefficients(ell, fam, ring, order_guard);
    TriPolyMod p;
    p.ell = ell;
    p.weight_w = family_weight(fam);
    p.family = fam;
    p.p = prime;
    p.add_term({int(ell) + 1, 0, 0, 0}, 1);
    for (long t = 1; t <= ell + 1; ++t) {
        for (const auto& [m, c] : cs[std::size_t(t - 1)])
            p.add_term({int(ell + 1 - t), m.i4, m.i6, m.i12}, c);
    }
    return p;
}

namespace {

std::vector<u64> word_primes_descending(std::size_t count, u64 below) {
    std::vector<u64> out;
    u64 c = below - 1;
    while (out.size() < count) {
        if (is_prime_u64(c)) out.push_back(c);
        --c;
    }
    return out;
}

}  // namespace

TriPoly compute_fricke_polynomial_crt(long ell, Family fam, int order_guard, int jobs,
                                      bool verify_extra_prime) {
    int w = family_weight(fam);
    double bound = double(w) * double(ell + 1) * std::log(double(ell)) + 2.0 * std::log(double(ell));
    // V/W scalings inflate coefficients by at most |scale|^{ell+1}
    if (fam != Family::U) bound += double(ell + 1) * std::log(3.0);
    const u64 kBelow = u64(1) << 62;
    double per_prime = 62.0 * std::log(2.0) - 1.0;
    std::size_t count = std::size_t((bound + std::log(2.0) + 2.0) / per_prime) + 1;
    auto primes = word_primes_descending(count + (verify_extra_prime ? 1 : 0), kBelow);
    u64 check_prime = 0;
    if (verify_extra_prime) {
        check_prime = primes.back();
        primes.pop_back();
    }

    std::vector<std::map<Mono4, u64>> runs(primes.size());
    int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (next >= primes.size()) return;
                i = next++;
            }
            auto pm = compute_fricke_polynomial_mod(ell, fam, primes[i], order_guard);
            runs[i] = std::move(pm.monomials);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CrtAccumulator<Mono4> acc(bound);
    for (std::size_t i = 0; i < primes.size(); ++i) acc.add_prime_run(runs[i], primes[i]);
    if (!acc.complete()) throw std::runtime_error("compute_fricke_polynomial_crt: modulus below bound");
    auto lifted = acc.lift_symmetric(runs);

    TriPoly p;
    p.ell = ell;
    p.weight_w = w;
    p.family = fam;
    for (const auto& [m, v] : lifted) p.add_term(m, Rat(v));

    if (verify_extra_prime) {
        auto expect = compute_fricke_polynomial_mod(ell, fam, check_prime, order_guard);
        if (reduce_mod(p, check_prime) != expect)
            throw std::runtime_error("compute_fricke_polynomial_crt: verification prime mismatch");
    }
    return p;
}

TriPoly compute_fricke_polynomial_auto(long ell, Family fam, int order_guard, int jobs) {
    if (ell <= 37 || fam != Family::U) return compute_fricke_polynomial(ell, fam, order_guard);
    return compute_fricke_polynomial_crt(ell, fam, order_guard, jobs);
}

TriPoly compute_phi_general(long N, FormTag tag, int order_guard) {
    if (N < 2) throw std::invalid_argument("compute_phi_general: need N >= 2");
    int w = form_weight(tag);
    long deg = psi(N);
    int T = working_order(w, deg, order_guard);
    auto ps = power_sums_fN(tag, N, T, QQ{});
    auto cs = detail::assemble_coefficients(ps, QQ{});
    TriPoly p;
    p.ell = N;
    p.weight_w = w;
    p.family = Family::Phi;
    p.add_term({int(deg), 0, 0, 0}, 1);
    for (long t = 1; t <= deg; ++t) {
        for (const auto& [m, c] : cs[std::size_t(t - 1)])
            p.add_term({int(deg - t), m.i4, m.i6, m.i12}, c);
    }
    return p;
}

namespace {

// dense little gaussian solver over Q; rows >= cols, requires full column rank
// and consistency of every extra row.
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
    std::size_t nrows = M.size(), ncols = M.empty() ? 0 : M[0].size();
    std::vector<std::size_t> pivot_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t pr = r;
        while (pr < nrows && M[pr][c] == 0) ++pr;
        if (pr == nrows) continue;
        std::swap(M[pr], M[r]);
        std::swap(rhs[pr], rhs[r]);
        Rat pv = M[r][c];
        for (std::size_t j = c; j < ncols; ++j) {
            M[r][j] /= pv;
            M[r][j].canonicalize();
        }
        rhs[r] /= pv;
        rhs[r].canonicalize();
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t j = c; j < ncols; ++j) {
                M[i][j] -= f * M[r][j];
                M[i][j].canonicalize();
            }
            rhs[i] -= f * rhs[r];
            rhs[i].canonicalize();
        }
        pivot_row.push_back(c);
        ++r;
    }
    if (pivot_row.size() != ncols)
        throw std::domain_error("compute_numerators_series: singular/rank-deficient system");
    for (std::size_t i = r; i < nrows; ++i)
        if (rhs[i] != 0) throw std::domain_error("compute_numerators_series: inconsistent system");
    std::vector<Rat> sol(ncols);
    for (std::size_t i = 0; i < ncols; ++i) sol[i] = rhs[i];
    return sol;
}

std::vector<Mono3> numerator_support(long ell, long grade) {
    // monomials X^r A^i2 B^i3 with r + 2 i2 + 3 i3 = grade, r <= ell
    std::vector<Mono3> out;
    for (long r = 0; r <= ell; ++r) {
        long rem = grade - r;
        if (rem < 0) continue;
        for (long i3 = 0; 3 * i3 <= rem; ++i3) {
            if ((rem - 3 * i3) % 2 == 0) out.push_back({int(r), int((rem - 3 * i3) / 2), int(i3)});
        }
    }
    return out;
}

}  // namespace

std::pair<ABPoly, ABPoly> compute_numerators_series(long ell, const TriPoly& U) {
    if (ell < 3) throw std::invalid_argument("compute_numerators_series: need odd prime ell");
    QQ ring;
    auto supA = numerator_support(ell, ell + 2);
    auto supB = numerator_support(ell, ell + 3);
    int M = int(std::max(supA.size(), supB.size())) + 9;

    auto G = half_multiplier_series(int(ell), M, ring);
    auto X = G.scaled_long(-ell);  // kappa_1(q), the distinguished root
    auto A = eisenstein_series(2, M, ring).scaled_long(-3);
    auto B = eisenstein_series(3, M, ring).scaled_long(-2);
    int small = M / int(ell) + 2;
    auto E4l = dilate(eisenstein_series(2, small, ring), int(ell), M);
    auto E6l = dilate(eisenstein_series(3, small, ring), int(ell), M);

    // cached powers
    auto powers = [&](const Series<QQ>& s, int emax) {
        std::vector<Series<QQ>> p{series_one(ring, M)};
        for (int e = 1; e <= emax; ++e) p.push_back(p.back() * s);
        return p;
    };
    int rmax = int(ell);
    auto Xp = powers(X, rmax);
    auto Ap = powers(A, int(ell + 3) / 2);
    auto Bp = powers(B, int(ell + 3) / 3);

    auto ab = to_ab_form(U);
    Series<QQ> Uprime(ring, M);
    for (const auto& [m, c] : ab.monomials) {
        if (m.r == 0) continue;
        auto term = Xp[std::size_t(m.r - 1)] * Ap[std::size_t(m.iA)] * Bp[std::size_t(m.iB)];
        Uprime = Uprime + term.scaled(Rat(m.r) * c);
    }

    auto solve_one = [&](const std::vector<Mono3>& sup, const Series<QQ>& lead, Family fam) {
        auto lhs = lead * Uprime;
        std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(M), std::vector<Rat>(sup.size()));
        std::vector<Rat> rhs(static_cast<std::size_t>(M));
        for (std::size_t j = 0; j < sup.size(); ++j) {
            auto col = Xp[std::size_t(sup[j].r)] * Ap[std::size_t(sup[j].iA)] *
                       Bp[std::size_t(sup[j].iB)];
            for (int n = 0; n < M; ++n) rows[std::size_t(n)][j] = col.c[std::size_t(n)];
        }
        for (int n = 0; n < M; ++n) rhs[std::size_t(n)] = lhs.c[std::size_t(n)];
        auto sol = solve_exact(std::move(rows), std::move(rhs));
        ABPoly out;
        out.ell = ell;
        out.weight_w = 2;
        out.family = fam;
        for (std::size_t j = 0; j < sup.size(); ++j) out.add_term(sup[j], sol[j]);
        return out;
    };

    auto numA = solve_one(supA, E4l.scaled(Rat(-3) * Rat(int_pow(Int(ell), 4))), Family::NumA);
    auto numB = solve_one(supB, E6l.scaled(Rat(-2) * Rat(int_pow(Int(ell), 6))), Family::NumB);
    return {numA, numB};
}

}  // namespace fricke
