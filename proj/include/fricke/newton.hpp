#pragma once

#include <stdexcept>
#include <vector>

namespace fricke {

// Newton's identities: from power sums p_1..p_n recover c_1..c_n with
// X^n + c_1 X^{n-1} + ... + c_n = prod (X - r_i).  Works over any commutative
// ring with invertible 1..n; V is any value type with +,* and scalar division
// supplied through the ops object.
//
// Ops must provide: V add(V,V), V mul(V,V), V neg(V), V div_long(V, long)
// (exact division by t, throws if impossible).
template <class V, class Ops>
std::vector<V> newton_to_coefficients(const std::vector<V>& psums, int n, const Ops& ops) {
    if (int(psums.size()) < n) throw std::invalid_argument("newton_to_coefficients: need n power sums");
    std::vector<V> cs;
    cs.reserve(std::size_t(n));
    for (int t = 1; t <= n; ++t) {
        V acc = psums[std::size_t(t - 1)];
        for (int i = 1; i < t; ++i)
            acc = ops.add(acc, ops.mul(cs[std::size_t(i - 1)], psums[std::size_t(t - i - 1)]));
        cs.push_back(ops.div_long(ops.neg(acc), t));
    }
    return cs;
}

// Inverse direction (used by round-trip property tests): power sums from coefficients.
template <class V, class Ops>
std::vector<V> coefficients_to_power_sums(const std::vector<V>& cs, int n, const Ops& ops) {
    std::vector<V> ps;
    ps.reserve(std::size_t(n));
    for (int t = 1; t <= n; ++t) {
        // p_t = -t c_t - sum_{i=1}^{t-1} c_i p_{t-i}
        V acc = ops.mul_long(cs[std::size_t(t - 1)], t);
        for (int i = 1; i < t; ++i)
            acc = ops.add(acc, ops.mul(cs[std::size_t(i - 1)], ps[std::size_t(t - i - 1)]));
        ps.push_back(ops.neg(acc));
    }
    return ps;
}

}  // namespace fricke
