#include "fricke/volcano.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "fricke/crt.hpp"
#include "fricke/formbasis.hpp"
#include "fricke/fpx.hpp"
#include "fricke/fricke_series.hpp"
#include "fricke/newton.hpp"

namespace fricke {

ClassPolynomial load_class_polynomial(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open class polynomial file: " + path);
    ClassPolynomial hd;
    in >> hd.D >> hd.h;
    std::string tok;
    while (in >> tok) hd.coeffs.emplace_back(tok);
    if (long(hd.coeffs.size()) != hd.h + 1)
        throw std::runtime_error("class polynomial file: expected h+1 coefficients");
    return hd;
}

void save_class_polynomial(const ClassPolynomial& hd, const std::string& path) {
    std::ofstream out(path);
    out << hd.D << " " << hd.h << "\n";
    for (const auto& c : hd.coeffs) out << c.get_str() << "\n";
}

VolcanoParams find_volcano_prime(long ell, long D, long h, u64 pmin, u64 pmax) {
    if (D >= 0 || D % ell == 0) throw std::invalid_argument("find_volcano_prime: bad D");
    if (h < ell + 2) throw std::invalid_argument("find_volcano_prime: need h(D) >= ell + 2");
    long absD = -D;
    u64 best_p = 0;
    long best_t = 0, best_v = 0;
    for (long v = 1;; ++v) {
        if (v % ell == 0) continue;
        u64 base = u64(ell) * u64(ell) * u64(v) * u64(v) * u64(absD);
        if (base > 4 * pmax) break;
        for (long t = 1; u64(t) * u64(t) + base <= 4 * pmax; ++t) {
            u64 four_p = u64(t) * u64(t) + base;
            if (four_p % 4) continue;
            u64 p = four_p / 4;
            if (p < pmin || p > pmax) continue;
            if (best_p && p >= best_p) continue;
            if (p % u64(ell) != 1) continue;
            if (!is_prime_u64(p)) continue;
            long tn;
            if (t % ell == 2 % ell) tn = t;
            else if ((ell - t % ell) % ell == 2 % ell) tn = -t;
            else continue;
            best_p = p;
            best_t = tn;
            best_v = v;
        }
    }
    if (!best_p) throw std::runtime_error("find_volcano_prime: none found in range");
    VolcanoParams out;
    out.ell = ell;
    out.D = D;
    out.p = best_p;
    out.t = best_t;
    out.v = best_v;
    out.h = h;
    out.m = Int(static_cast<unsigned long>(best_p)) + 1 - best_t;
    if (out.m % ell != 0) throw std::logic_error("find_volcano_prime: ell does not divide m");
    return out;
}

std::vector<VolcanoSite> partial_volcano(const VolcanoParams& params, const ClassPolynomial& hd,
                                         Rng& rng) {
    const long ell = params.ell;
    Fp F(params.p);
    // roots of H_D mod p (must split completely)
    std::vector<Int> low_first(hd.coeffs.rbegin(), hd.coeffs.rend());
    auto hdp = fpx::from_int_coeffs(F, low_first);
    auto roots = fpx::roots(F, hdp, rng);
    if (long(roots.size()) != hd.h)
        throw std::runtime_error("partial_volcano: H_D does not split completely mod p");
    std::set<u64> crater_js(roots.begin(), roots.end());

    std::vector<VolcanoSite> sites;
    for (u64 j : roots) {
        VolcanoSite site;
        site.j = j;
        site.E = curve_with_cardinality(j, params.m, params.p, params.t, rng);
        // subgroups are keyed by the kernel abscissa set, which refines the
        // j(E')-key of Step 2.2.3 (two floor neighbors may share j)
        std::set<std::vector<u64>> seen_kernels;
        Point gen_a{}, gen_b{};
        bool have_a = false, have_b = false;
        auto take = [&](const Point& Q) {
            auto rec = velu_isogenous_curve(site.E, Q, ell);
            if (!seen_kernels.insert(rec.kernel_xs).second) return;
            if (!have_a) {
                gen_a = Q;
                have_a = true;
            } else if (!have_b) {
                gen_b = Q;
                have_b = true;
            }
            rec.crater = crater_js.count(rec.j_codomain) != 0;
            site.iso.push_back(std::move(rec));
        };
        long budget = 64 * (ell + 1);
        while (long(site.iso.size()) < ell + 1 && budget-- > 0) {
            take(random_l_torsion_point(site.E, params.m, ell, rng));
            // the sampler is biased toward the distinguished line when
            // ell^2 | m; two independent generators span E[ell], so the
            // remaining subgroups come from their combinations
            if (have_b && long(site.iso.size()) < ell + 1) {
                Point R = gen_b;
                for (long c = 0; c < ell; ++c) {
                    take(ec_add(site.E, gen_a, R));
                    R = ec_add(site.E, R, gen_b);
                }
            }
        }
        if (long(site.iso.size()) != ell + 1)
            throw std::runtime_error("partial_volcano: fewer than ell+1 distinct subgroups found");
        long crater = 0;
        for (const auto& r : site.iso) crater += r.crater ? 1 : 0;
        if (crater != 2)
            throw std::runtime_error("partial_volcano: crater neighbor count is not 2");
        std::sort(site.iso.begin(), site.iso.end(),
                  [](const IsogenyRecord& a, const IsogenyRecord& b) { return a.r < b.r; });
        sites.push_back(std::move(site));
    }
    std::sort(sites.begin(), sites.end(),
              [](const VolcanoSite& a, const VolcanoSite& b) { return a.j < b.j; });
    return sites;
}

namespace {

// sigma_{t,i} for the requested family: power sums of the U-roots (r), or of
// the V/W-roots (-A*/3 or -B*/2 scaled back to the CCR normalization by -3/-2,
// i.e. A* and B* themselves).
u64 site_power_sum(const Fp& F, const VolcanoSite& site, Family fam, long t) {
    u64 acc = 0;
    for (const auto& rec : site.iso) {
        u64 root;
        switch (fam) {
            case Family::U: root = rec.r; break;
            case Family::V: root = rec.Astar; break;
            default: root = rec.Bstar; break;
        }
        acc = F.add(acc, F.pow(root, u64(t)));
    }
    return acc;
}

struct FpNewtonOps {
    Fp F;
    using V = std::map<Mono4, u64>;
    static void add_to(const Fp& F, V& v, const Mono4& m, u64 c) {
        if (!c) return;
        auto it = v.find(m);
        if (it == v.end()) {
            v.emplace(m, c);
        } else {
            it->second = F.add(it->second, c);
            if (!it->second) v.erase(it);
        }
    }
    V add(const V& a, const V& b) const {
        V r = a;
        for (auto& [m, c] : b) add_to(F, r, m, c);
        return r;
    }
    V mul(const V& a, const V& b) const {
        V r;
        for (auto& [m1, c1] : a)
            for (auto& [m2, c2] : b)
                add_to(F, r, {m1.r + m2.r, m1.i4 + m2.i4, m1.i6 + m2.i6, m1.i12 + m2.i12},
                       F.mul(c1, c2));
        // canonicalize E6^2 = E4^3 - 1728 Delta
        bool again = true;
        while (again) {
            again = false;
            for (auto it = r.begin(); it != r.end(); ++it) {
                if (it->first.i6 < 2) continue;
                Mono4 m = it->first;
                u64 c = it->second;
                r.erase(it);
                add_to(F, r, {m.r, m.i4 + 3, m.i6 - 2, m.i12}, c);
                add_to(F, r, {m.r, m.i4, m.i6 - 2, m.i12 + 1}, F.mul(F.neg(1728 % F.p), c));
                again = true;
                break;
            }
        }
        return r;
    }
    V neg(const V& a) const {
        V r;
        for (auto& [m, c] : a) r.emplace(m, F.neg(c));
        return r;
    }
    V mul_long(const V& a, long k) const {
        V r;
        u64 kk = F.reduce_int(k);
        for (auto& [m, c] : a) add_to(F, r, m, F.mul(c, kk));
        return r;
    }
    V div_long(const V& a, long k) const {
        u64 kk = F.reduce_int(k);
        if (!kk) throw std::domain_error("newton mod p: t not invertible");
        u64 ik = F.inv(kk);
        V r;
        for (auto& [m, c] : a) r.emplace(m, F.mul(c, ik));
        return r;
    }
};

// overdetermined consistent solve mod p; returns solution of full column rank
std::vector<u64> solve_mod(const Fp& F, std::vector<std::vector<u64>> M, std::vector<u64> b) {
    std::size_t nrows = M.size(), ncols = M.empty() ? 0 : M[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t pr = r;
        while (pr < nrows && M[pr][c] == 0) ++pr;
        if (pr == nrows) continue;
        std::swap(M[pr], M[r]);
        std::swap(b[pr], b[r]);
        u64 inv = F.inv(M[r][c]);
        for (std::size_t j = c; j < ncols; ++j) M[r][j] = F.mul(M[r][j], inv);
        b[r] = F.mul(b[r], inv);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            u64 f = M[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                M[i][j] = F.sub(M[i][j], F.mul(f, M[r][j]));
            b[i] = F.sub(b[i], F.mul(f, b[r]));
        }
        piv.push_back(c);
        ++r;
    }
    if (piv.size() != ncols)
        throw std::domain_error("volcano solve: singular system (degenerate site set)");
    for (std::size_t i = r; i < nrows; ++i)
        if (b[i]) throw std::domain_error("volcano solve: inconsistent overdetermined system");
    std::vector<u64> sol(ncols, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) sol[piv[i]] = b[i];
    return sol;
}

}  // namespace

TriPolyMod compute_poly_mod(const std::vector<VolcanoSite>& sites, long ell, Family fam, u64 p) {
    Fp F(p);
    int w = family_weight(fam);
    long deg = ell + 1;
    // basis rows per site, shared across weights via the grid
    auto mul = [&](u64 a, u64 b) { return F.mul(a, b); };
    std::vector<u64> e4s, e6s, dls;
    for (const auto& s : sites) {
        u64 e4 = F.div(F.neg(s.E.A), 3);
        u64 e6 = F.div(F.neg(s.E.B), 2);
        u64 dl = F.div(F.sub(F.pow(e4, 3), F.mul(e6, e6)), 1728 % p);
        e4s.push_back(e4);
        e6s.push_back(e6);
        dls.push_back(dl);
    }
    using V = std::map<Mono4, u64>;
    std::vector<V> psums;
    for (long t = 1; t <= deg; ++t) {
        long wt = long(w) * t;
        V v;
        if (wt == 2) {
            for (std::size_t i = 0; i < sites.size(); ++i)
                if (site_power_sum(F, sites[i], fam, t) != 0)
                    throw std::domain_error("compute_poly_mod: nonzero weight-2 power sum");
        } else {
            auto sols = lemma_solutions(int(wt / 2));
            std::vector<std::vector<u64>> rows;
            std::vector<u64> rhs;
            for (std::size_t i = 0; i < sites.size(); ++i) {
                rows.push_back(point_rows<u64>(int(wt), e4s[i], e6s[i], dls[i], 1, mul));
                rhs.push_back(site_power_sum(F, sites[i], fam, t));
            }
            auto sol = solve_mod(F, std::move(rows), std::move(rhs));
            for (std::size_t j = 0; j < sol.size(); ++j)
                if (sol[j]) v.emplace(Mono4{0, sols[j].i4, sols[j].eps, sols[j].i12}, sol[j]);
        }
        psums.push_back(std::move(v));
    }
    FpNewtonOps ops{F};
    auto cs = newton_to_coefficients(psums, int(deg), ops);
    TriPolyMod out;
    out.ell = ell;
    out.weight_w = w;
    out.family = fam;
    out.p = p;
    out.add_term({int(deg), 0, 0, 0}, 1);
    for (long t = 1; t <= deg; ++t)
        for (auto& [m, c] : cs[std::size_t(t - 1)])
            out.add_term({int(deg - t), m.i4, m.i6, m.i12}, c);
    return out;
}

namespace {

std::vector<Mono3> numerator_support_mod(long ell, long grade) {
    std::vector<Mono3> out;
    for (long r = 0; r <= ell; ++r) {
        long rem = grade - r;
        if (rem < 0) continue;
        for (long i3 = 0; 3 * i3 <= rem; ++i3)
            if ((rem - 3 * i3) % 2 == 0) out.push_back({int(r), int((rem - 3 * i3) / 2), int(i3)});
    }
    return out;
}

u64 eval_abpoly_mod(const Fp& F, const ABPolyMod& P, u64 x, u64 a, u64 b, bool ddx) {
    u64 acc = 0;
    for (const auto& [m, c] : P.monomials) {
        if (ddx && m.r == 0) continue;
        u64 term = F.mul(c, F.pow(x, u64(ddx ? m.r - 1 : m.r)));
        if (ddx) term = F.mul(term, F.reduce_int(m.r));
        term = F.mul(term, F.pow(a, u64(m.iA)));
        term = F.mul(term, F.pow(b, u64(m.iB)));
        acc = F.add(acc, term);
    }
    return acc;
}

}  // namespace

ABPolyMod compute_numerators_mod(const std::vector<VolcanoSite>& sites, long ell,
                                 const TriPolyMod& U, Family which) {
    Fp F(U.p);
    auto Uab = to_ab_form(U);
    long grade = (which == Family::NumA) ? ell + 2 : ell + 3;
    auto sup = numerator_support_mod(ell, grade);
    u64 lead_pow = F.pow(F.reduce_int(ell), which == Family::NumA ? 4 : 6);
    std::vector<std::vector<u64>> rows;
    std::vector<u64> rhs;
    for (const auto& site : sites) {
        u64 A = site.E.A, B = site.E.B;
        for (const auto& rec : site.iso) {
            // dual record: (X, Y, Z) = (-ell kappa_1, A*, B*), rhs = ell^{4|6} A|B U'(...)
            u64 X = F.neg(F.mul(F.reduce_int(ell), rec.kappa1));
            std::vector<u64> row;
            for (const auto& mc : sup) {
                u64 t = F.pow(X, u64(mc.r));
                t = F.mul(t, F.pow(rec.Astar, u64(mc.iA)));
                t = F.mul(t, F.pow(rec.Bstar, u64(mc.iB)));
                row.push_back(t);
            }
            u64 up = eval_abpoly_mod(F, Uab, X, rec.Astar, rec.Bstar, true);
            u64 r = F.mul(lead_pow, F.mul(which == Family::NumA ? A : B, up));
            rows.push_back(std::move(row));
            rhs.push_back(r);
        }
        if (rows.size() > 3 * sup.size() + 16) break;  // plenty of rows already
    }
    std::vector<u64> sol;
    try {
        sol = solve_mod(F, rows, rhs);
    } catch (const std::domain_error&) {
        throw std::domain_error(
            "compute_numerators_mod: rank-deficient dual system; add sites from a second "
            "discriminant");
    }
    ABPolyMod out;
    out.ell = ell;
    out.weight_w = 2;
    out.family = which;
    out.p = U.p;
    for (std::size_t j = 0; j < sup.size(); ++j) out.add_term(sup[j], sol[j]);
    return out;
}

PrimalSystem build_primal_system(const std::vector<VolcanoSite>& sites, long ell, u64 p) {
    // the paper's ell = 11 shape: ell+1 rows from site 1, the rest from site 2,
    // as many rows as unknowns
    Fp F(p);
    PrimalSystem out;
    out.support = numerator_support_mod(ell, ell + 2);
    std::size_t need = out.support.size();
    for (const auto& site : sites) {
        u64 A = site.E.A, B = site.E.B;
        for (const auto& rec : site.iso) {
            if (out.matrix.size() == need) break;
            std::vector<u64> row;
            for (const auto& mc : out.support) {
                u64 t = F.pow(rec.kappa1, u64(mc.r));
                t = F.mul(t, F.pow(A, u64(mc.iA)));
                t = F.mul(t, F.pow(B, u64(mc.iB)));
                row.push_back(t);
            }
            out.matrix.push_back(std::move(row));
        }
        if (out.matrix.size() == need) break;
    }
    out.rank = int(rank_mod_p(out.matrix, p));
    return out;
}

long rank_mod_p(std::vector<std::vector<u64>> M, u64 p) {
    Fp F(p);
    std::size_t nrows = M.size(), ncols = M.empty() ? 0 : M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t pr = r;
        while (pr < nrows && M[pr][c] == 0) ++pr;
        if (pr == nrows) continue;
        std::swap(M[pr], M[r]);
        u64 inv = F.inv(M[r][c]);
        for (std::size_t j = c; j < ncols; ++j) M[r][j] = F.mul(M[r][j], inv);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            u64 f = M[i][c];
            for (std::size_t j = c; j < ncols; ++j) M[i][j] = F.sub(M[i][j], F.mul(f, M[r][j]));
        }
        ++r;
    }
    return long(r);
}

TriPoly volcano_crt(long ell, Family fam, long D, const ClassPolynomial& hd, u64 seed, int jobs,
                    u64 pmin_hint) {
    int w = family_weight(fam);
    double bound = double(w) * double(ell + 1) * std::log(double(ell)) + 2.0 * std::log(double(ell));
    if (fam != Family::U) bound += double(ell + 1) * std::log(3.0);
    // collect enough volcano primes
    std::vector<VolcanoParams> params;
    double acc = 0;
    u64 pmin = pmin_hint ? pmin_hint : u64(1800);
    while (acc < bound + std::log(2.0) + 2.0) {
        auto vp = find_volcano_prime(ell, D, hd.h, pmin, pmin * 64);
        params.push_back(vp);
        acc += std::log(double(vp.p));
        pmin = vp.p + 1;
    }
    std::vector<std::map<Mono4, u64>> runs(params.size());
    std::mutex mtx;
    std::size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (next >= params.size()) return;
                i = next++;
            }
            Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * params[i].p));
            auto sites = partial_volcano(params[i], hd, rng);
            runs[i] = compute_poly_mod(sites, ell, fam, params[i].p).monomials;
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    CrtAccumulator<Mono4> accum(bound);
    for (std::size_t i = 0; i < params.size(); ++i) accum.add_prime_run(runs[i], params[i].p);
    if (!accum.complete()) throw std::runtime_error("volcano_crt: modulus below height bound");
    auto lifted = accum.lift_symmetric(runs);
    TriPoly out;
    out.ell = ell;
    out.weight_w = w;
    out.family = fam;
    for (auto& [m, v] : lifted) out.add_term(m, Rat(v));
    return out;
}

}  // namespace fricke
