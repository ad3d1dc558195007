#include "fricke/fricke_float.hpp"

#include <cmath>

#include "fricke/formbasis.hpp"
#include "fricke/fricke_series.hpp"

namespace fricke {

std::vector<Real> solve_accumulated(SystemAccumulator& sys, mpfr_prec_t prec) {
    std::size_t n = std::size_t(sys.unknowns);
    if (sys.rows.size() < n) throw std::invalid_argument("solve_accumulated: not enough rows");
    // Gauss-Jordan over all accumulated rows with row pivoting; the rows left
    // without a pivot end up with zero coefficients and their rhs entries are
    // the residuals of the overdetermination.
    auto M = sys.rows;
    auto b = sys.rhs;
    std::size_t nrows = M.size();
    double rhs_scale = -1e300;
    for (const auto& x : sys.rhs) rhs_scale = std::max(rhs_scale, x.log2_abs());
    double piv_min = 1e300, piv_max = -1e300;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t i = c + 1; i < nrows; ++i)
            if (M[i][c].log2_abs() > M[best][c].log2_abs()) best = i;
        std::swap(M[best], M[c]);
        std::swap(b[best], b[c]);
        double pl = M[c][c].log2_abs();
        piv_min = std::min(piv_min, pl);
        piv_max = std::max(piv_max, pl);
        if (pl < -1e299) throw std::domain_error("solve_accumulated: singular system");
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == c) continue;
            Real f = M[i][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
            b[i] -= f * b[c];
        }
    }
    if (piv_max - piv_min > double(prec) / 2)
        throw std::domain_error("solve_accumulated: condition estimate exceeds 2^(prec/2)");
    std::vector<Real> sol;
    for (std::size_t i = 0; i < n; ++i) sol.push_back(b[i] / M[i][i]);
    double res = -1e300;
    for (std::size_t i = n; i < nrows; ++i) res = std::max(res, b[i].log2_abs() - rhs_scale);
    sys.residual_log2 = res;
    if (nrows > n && res > -double(prec) / 2)
        throw std::domain_error("solve_accumulated: residual above 2^{-prec/2} threshold");
    sys.solution = sol;
    sys.solved = true;
    return sol;
}

std::vector<Int> round_to_integers(const std::vector<Real>& v, double tol) {
    if (!(tol < 0.5)) throw std::invalid_argument("round_to_integers: tol must be < 0.5");
    std::vector<Int> out;
    for (const auto& x : v) {
        auto [z, gap] = x.round_to_int();
        if (gap > tol) throw std::domain_error("round_to_integers: rounding failure");
        out.push_back(z);
    }
    return out;
}

namespace {

struct NodeValues {
    std::vector<Cplx> roots;      // the ell+2 scaled roots
    Real e4, e6, delta;           // at q_rho, for the basis rows
};

NodeValues eval_node(long ell, Family fam, const Real& rho, const EvalContext& ctx) {
    mpfr_prec_t prec = ctx.prec;
    Real two_pi = Real::pi(prec).mul_long(2);
    Real z = (-(two_pi * rho).div_long(ell)).exp();
    Real q = z.pow_ui(static_cast<unsigned long>(ell));
    Real ql = (-(two_pi * rho).mul_long(ell)).exp();  // q^ell

    double err = -double(prec) - 8;
    int Nz = truncation_terms_log2(z.log2_abs(), err, 3);
    int Nq = truncation_terms_log2(q.log2_abs(), err, 3);
    int Nql = truncation_terms_log2(ql.log2_abs(), err, 3);

    auto Torb = evaluate_conjugate_values(ell, z, Nz, ctx.xi, 3);
    auto Tq = evaluate_many_T(q, Nq, 3);
    auto Tql = evaluate_many_T(ql, Nql, 3);
    auto Eq = eisenstein_from_T(Tq[0], Tq[1], Tq[2], Tq[3]);
    auto Eql = eisenstein_from_T(Tql[0], Tql[1], Tql[2], Tql[3]);

    NodeValues out{{},
                   Eq.e4,
                   Eq.e6,
                   (Eq.e4.pow_ui(3) - Eq.e6.pow_ui(2)).div_long(1728)};
    long l4 = 1, l6 = 1;
    for (int i = 0; i < 4; ++i) l4 *= ell;
    l6 = l4 * ell * ell;
    // distinguished root
    if (fam == Family::U) {
        out.roots.push_back(
            Cplx::of_real((Eql.e2.mul_long(ell) - Eq.e2).mul_long(ell).div_long(2)));
    } else if (fam == Family::V) {
        out.roots.push_back(Cplx::of_real(Eql.e4.mul_long(-3 * l4)));
    } else {
        out.roots.push_back(Cplx::of_real(Eql.e6.mul_long(-2 * l6)));
    }
    // conjugate orbit
    for (long h = 0; h < ell; ++h) {
        auto Eh = eisenstein_from_T(Torb[0][std::size_t(h)], Torb[1][std::size_t(h)],
                                    Torb[2][std::size_t(h)], Torb[3][std::size_t(h)]);
        if (fam == Family::U) {
            out.roots.push_back((Eh.e2 - Cplx::of_real(Eq.e2.mul_long(ell))).div_long(2));
        } else if (fam == Family::V) {
            out.roots.push_back(Eh.e4.mul_long(-3));
        } else {
            out.roots.push_back(Eh.e6.mul_long(-2));
        }
    }
    return out;
}

}  // namespace

TriPoly compute_fricke_float(long ell, Family fam, const FloatOptions& opts) {
    if (ell < 5 || ell % 2 == 0)
        throw std::invalid_argument("compute_fricke_float: need odd prime ell > 3");
    int w = family_weight(fam);

    int guard = opts.guard_bits;
    for (int attempt = 0;; ++attempt) {
        mpfr_prec_t prec =
            mpfr_prec_t(std::ceil(double(w) * double(ell + 1) * std::log2(double(ell)))) + guard;
        EvalContext ctx(prec, ell);

        long deg = ell + 1;
        std::vector<SystemAccumulator> systems(std::size_t(deg + 1));
        int max_unknowns = 0;
        for (int t = 1; t <= deg; ++t) {
            systems[std::size_t(t)].t = t;
            systems[std::size_t(t)].unknowns = (w * t == 2) ? 0 : basis_dim(w * t);
            if (w * t == 2) systems[std::size_t(t)].solved = true;  // C_1 = 0
            max_unknowns = std::max(max_unknowns, systems[std::size_t(t)].unknowns);
        }

        bool fail = false;
        int node = 0;
        for (;;) {
            bool all = true;
            for (int t = 1; t <= deg; ++t)
                if (!systems[std::size_t(t)].solved) all = false;
            if (all) break;
            ++node;
            if (node > 3 * max_unknowns + 8) {
                throw std::runtime_error(
                    "compute_fricke_float: systems still singular after the rho budget");
            }
            // rho = 1 + node * step, exactly as a small rational
            Real rho = Real::of_long(1000 + long(node) * opts.rho_step_milli, prec).div_long(1000);
            if (!(rho < Real::of_long(5, prec)))
                throw std::runtime_error("compute_fricke_float: rho >= 5 (basis rows degenerate)");
            auto nv = eval_node(ell, fam, rho, ctx);

            // power sums of the roots, incrementally
            std::vector<Cplx> pw = nv.roots;
            auto mulR = [](const Real& a, const Real& b) { return a * b; };
            for (int t = 1; t <= deg; ++t) {
                auto& sys = systems[std::size_t(t)];
                if (t > 1)
                    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = pw[i] * nv.roots[i];
                if (sys.solved) continue;
                Cplx sum(prec);
                for (const auto& x : pw) sum += x;
                // imaginary parts cancel; require them far below the real scale
                if (sum.im.log2_abs() > sum.re.log2_abs() - 8 && sum.im.log2_abs() > -double(prec) / 2)
                    throw std::runtime_error("compute_fricke_float: power sum not real");
                auto row = point_rows<Real>(w * t, nv.e4, nv.e6, nv.delta,
                                            Real::of_long(1, prec), mulR);
                if (opts.row_hook) opts.row_hook(t, node, row, sum.re);
                sys.rows.push_back(row);
                sys.rhs.push_back(sum.re);
                if (int(sys.rows.size()) >= sys.unknowns + 1) {
                    try {
                        solve_accumulated(sys, prec);
                    } catch (const std::domain_error&) {
                        // keep accumulating nodes
                    }
                }
            }
        }

        // round and rebuild exactly
        try {
            using V = std::map<Mono4, Rat>;
            std::vector<V> psums;
            QQ ring;
            for (int t = 1; t <= deg; ++t) {
                V v;
                auto& sys = systems[std::size_t(t)];
                if (sys.unknowns > 0) {
                    auto ints = round_to_integers(sys.solution, opts.round_tol);
                    auto sols = lemma_solutions(w * t / 2);
                    for (std::size_t j = 0; j < ints.size(); ++j) {
                        if (ints[j] == 0) continue;
                        v.emplace(Mono4{0, sols[j].i4, sols[j].eps, sols[j].i12}, Rat(ints[j]));
                    }
                }
                psums.push_back(std::move(v));
            }
            detail::MonoMapOps<QQ> ops{ring};
            auto cs = newton_to_coefficients(psums, int(deg), ops);
            TriPoly p;
            p.ell = ell;
            p.weight_w = w;
            p.family = fam;
            p.add_term({int(deg), 0, 0, 0}, 1);
            for (long t = 1; t <= deg; ++t)
                for (const auto& [m, c] : cs[std::size_t(t - 1)])
                    p.add_term({int(deg - t), m.i4, m.i6, m.i12}, c);
            return p;
        } catch (const std::domain_error&) {
            fail = true;
        }
        if (fail) {
            if (attempt >= opts.max_retries)
                throw std::runtime_error(
                    "compute_fricke_float: rounding failed after doubling guard bits");
            guard *= 2;  // insufficient precision: double the guard and rerun
        }
    }
}

}  // namespace fricke
