#pragma once

#include <map>
#include <tuple>

#include "fricke/series.hpp"

namespace fricke {

// Solutions (i6, i4, i12) of 2 i4 + 3 i6 + 6 i12 = k with i6 in {0,1}:
// (eps, m-3j, j) for 0 <= j <= floor(m/3), where k = 2 k0 + eps, m = k0 - eps.
struct LemmaSolution {
    int eps, i4, i12;
    bool operator==(const LemmaSolution&) const = default;
};

inline std::vector<LemmaSolution> lemma_solutions(int k) {
    if (k <= 1) throw std::invalid_argument("lemma_solutions: k must be > 1");
    int eps = k % 2;
    int m = k / 2 - eps;
    std::vector<LemmaSolution> out;
    for (int j = 0; 3 * j <= m; ++j) out.push_back({eps, m - 3 * j, j});
    return out;
}

inline int basis_dim(int w) { return int(lemma_solutions(w / 2).size()); }

// The basis P_{w,j} = E6^eps E4^{m-3j} Delta^j = q^j + O(q^{j+1}).
template <class R>
struct WeightBasis {
    int w = 0, eps = 0, m = 0, j_max = 0;
    std::vector<Series<R>> P;
};

// Incremental evaluation: Delta-ladder first, then descending E4-cube steps.
template <class R>
WeightBasis<R> build_basis(int w, const Series<R>& e4, const Series<R>& e6,
                           const Series<R>& delta) {
    if (w % 2 || w < 4) throw std::invalid_argument("build_basis: need even weight >= 4");
    auto sols = lemma_solutions(w / 2);
    WeightBasis<R> b;
    b.w = w;
    b.eps = sols[0].eps;
    b.m = sols[0].i4;
    b.j_max = int(sols.size()) - 1;
    int T = e4.order();
    Series<R> cur = b.eps ? e6 : series_one(e4.ring, T);
    b.P.push_back(cur);
    for (int j = 1; j <= b.j_max; ++j) {
        cur = cur * delta;
        b.P.push_back(cur);
    }
    Series<R> q3 = (e4 * e4) * e4;
    int tail = b.m - 3 * b.j_max;  // in {0,1,2}
    Series<R> s = series_one(e4.ring, T);
    if (tail >= 1) s = e4;
    if (tail == 2) s = s * e4;
    if (tail > 0) b.P[std::size_t(b.j_max)] = b.P[std::size_t(b.j_max)] * s;
    for (int j = b.j_max - 1; j >= 0; --j) {
        s = s * q3;
        b.P[std::size_t(j)] = b.P[std::size_t(j)] * s;
    }
    return b;
}

// Express a weight-w form as sum c_j P_{w,j} by the subtraction cascade.
// Throws if the residual is nonzero past j_max (wrong weight / insufficient order).
template <class R>
std::vector<typename R::Elem> express_form(const Series<R>& f, const WeightBasis<R>& b) {
    if (f.v0 != 0) throw std::invalid_argument("express_form: v0 must be 0");
    if (f.order() <= b.j_max) throw std::invalid_argument("express_form: insufficient order");
    Series<R> g = f;
    std::vector<typename R::Elem> cs;
    for (int j = 0; j <= b.j_max; ++j) {
        auto cj = g.c[std::size_t(j)];
        cs.push_back(cj);
        if (!g.ring.is_zero(cj)) g = g - b.P[std::size_t(j)].scaled(cj);
    }
    for (int n = 0; n < g.order(); ++n) {
        if (!g.ring.is_zero(g.c[std::size_t(n)]))
            throw std::domain_error("express_form: nonzero residual (not in span)");
    }
    return cs;
}

// ---- point-value machinery (shared by the float and volcano pipelines) ----

// P_{w,j} evaluated at concrete values of (E4, E6, Delta); one row per sample.
template <class V, class Mul>
std::vector<V> point_rows(int w, const V& e4, const V& e6, const V& delta, const V& one, Mul mul) {
    auto sols = lemma_solutions(w / 2);
    int eps = sols[0].eps, m = sols[0].i4, j_max = int(sols.size()) - 1;
    std::vector<V> out;
    V dpow = one;
    for (int j = 0; j <= j_max; ++j) {
        if (j > 0) dpow = mul(dpow, delta);
        V v = dpow;
        for (int i = 0; i < m - 3 * j; ++i) v = mul(v, e4);
        if (eps) v = mul(v, e6);
        out.push_back(v);
    }
    return out;
}

// Shared grid of Algorithms 2-3: every product E6^eps E4^x Delta^y needed by
// the weights w*r, r = 1..psi, computed once with incremental products.
struct GridKey {
    int eps, x, y;
    auto operator<=>(const GridKey&) const = default;
};

template <class V>
struct SharedGrid {
    std::map<GridKey, V> values;
    long mults = 0;
};

// The exact index set: union over r of the lemma solutions at k*r.
inline std::vector<GridKey> grid_index_set(long psi_count, int k) {
    std::map<GridKey, bool> want;
    for (long r = 1; r <= psi_count; ++r) {
        long K = k * r;
        if (K < 2) continue;
        for (const auto& s : lemma_solutions(int(K))) want[{s.eps, s.i4, s.i12}] = true;
    }
    std::vector<GridKey> out;
    for (const auto& [kk, _] : want) out.push_back(kk);
    return out;
}

template <class V, class Mul>
SharedGrid<V> build_shared_grid(long psi_count, int k, const V& e4, const V& e6, const V& delta,
                                const V& one, Mul mul) {
    SharedGrid<V> g;
    auto keys = grid_index_set(psi_count, k);
    int xmax = 0;
    for (const auto& kk : keys) xmax = std::max(xmax, kk.x);
    std::vector<V> e4pow;
    e4pow.push_back(one);
    for (int x = 1; x <= xmax; ++x) {
        e4pow.push_back(mul(e4pow.back(), e4));
        ++g.mults;
    }
    // per (eps, column): Delta ladder upward
    for (std::size_t i = 0; i < keys.size();) {
        int eps = keys[i].eps, x = keys[i].x;
        int ytop = keys[i].y;
        std::size_t jend = i;
        while (jend < keys.size() && keys[jend].eps == eps && keys[jend].x == x) {
            ytop = keys[jend].y;
            ++jend;
        }
        V base = e4pow[std::size_t(x)];
        if (eps) {
            base = mul(base, e6);
            ++g.mults;
        }
        V v = base;
        for (int y = 0; y <= ytop; ++y) {
            if (y > 0) {
                v = mul(v, delta);
                ++g.mults;
            }
            GridKey key{eps, x, y};
            if (std::binary_search(keys.begin() + std::ptrdiff_t(i),
                                   keys.begin() + std::ptrdiff_t(jend), key))
                g.values[key] = v;
        }
        i = jend;
    }
    return g;
}

}  // namespace fricke
