#pragma once

#include <functional>

#include "fricke/eisenval.hpp"
#include "fricke/tripoly.hpp"

namespace fricke {

// One linear system L_t: rows of basis values plus the power-sum right-hand
// sides, accumulated across rho-nodes until it can be solved with a residual
// check on the overdetermination row.
struct SystemAccumulator {
    int t = 0;
    int unknowns = 0;
    std::vector<std::vector<Real>> rows;
    std::vector<Real> rhs;
    bool solved = false;
    std::vector<Real> solution;
    double residual_log2 = -1e300;
};

// Elimination with partial pivoting on the first `unknowns` rows; every extra
// row is used as a residual check. Throws when the pivot ratio signals a
// condition number beyond 2^{prec/2} (caller should add nodes instead).
std::vector<Real> solve_accumulated(SystemAccumulator& sys, mpfr_prec_t prec);

// Nearest integers; fails when any entry is further than tol from an integer.
std::vector<Int> round_to_integers(const std::vector<Real>& v, double tol);

// Optional hook receiving every appended row (t, node index starting at 1 for
// rho = 1 + step, row values, rhs).
using FloatRowHook =
    std::function<void(int t, int node, const std::vector<Real>& row, const Real& rhs)>;

struct FloatOptions {
    int guard_bits = 64;
    int rho_step_milli = 100;  // rho advances by rho_step_milli/1000 before each node
    double round_tol = 0.01;
    int max_retries = 3;
    FloatRowHook row_hook;
};

// Evaluation/interpolation computation of U/V/W: accumulate the systems L_t
// across rho-nodes, solve, round to integers, Newton. Exact integer output.
TriPoly compute_fricke_float(long ell, Family fam, const FloatOptions& opts = {});

}  // namespace fricke
