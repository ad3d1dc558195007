#include <cmath>
#include <stdexcept>

#include "fricke/tripoly.hpp"

namespace fricke {

double relative_height(const ABPoly& p) {
    if (p.monomials.empty()) throw std::domain_error("relative_height: zero polynomial");
    if (p.ell < 2) throw std::domain_error("relative_height: need ell >= 2");
    double h = -1e300;
    for (const auto& [m, c] : p.monomials) h = std::max(h, ln_abs(c));
    return h / (double(p.ell + 1) * std::log(double(p.ell)));
}

double relative_height(const TriPoly& p) { return relative_height(to_ab_form(p)); }

}  // namespace fricke
