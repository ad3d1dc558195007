#include <set>

#include "doctest.h"
#include "fricke/classical.hpp"
#include "fricke/formbasis.hpp"

using namespace fricke;

TEST_SUITE_BEGIN("formbasis");

TEST_CASE("lemma solutions") {
    auto s6 = lemma_solutions(6);
    REQUIRE(s6.size() == 2);
    CHECK(s6[0] == LemmaSolution{0, 3, 0});
    CHECK(s6[1] == LemmaSolution{0, 0, 1});
    auto s2 = lemma_solutions(2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == LemmaSolution{0, 1, 0});
    auto s7 = lemma_solutions(7);
    REQUIRE(s7.size() == 1);
    CHECK(s7[0] == LemmaSolution{1, 2, 0});
    CHECK_THROWS(lemma_solutions(1));
    // enumeration oracle: brute force 2 i4 + 3 i6 + 6 i12 = k
    for (int k = 2; k <= 40; ++k) {
        std::set<std::tuple<int, int, int>> brute;
        for (int i6 = 0; i6 <= 1; ++i6)
            for (int i4 = 0; 2 * i4 <= k; ++i4)
                for (int i12 = 0; 6 * i12 <= k; ++i12)
                    if (2 * i4 + 3 * i6 + 6 * i12 == k) brute.insert({i6, i4, i12});
        std::set<std::tuple<int, int, int>> mine;
        for (auto& s : lemma_solutions(k)) mine.insert({s.eps, s.i4, s.i12});
        CHECK(mine == brute);
    }
}

TEST_CASE("build_basis: w=12 gives {E4^3, Delta}, w=4 gives {E4}, triangularity") {
    int T = 12;
    auto e4 = eisenstein_series(2, T, ZZ{});
    auto e6 = eisenstein_series(3, T, ZZ{});
    auto d = delta_series(T, ZZ{});
    auto b12 = build_basis(12, e4, e6, d);
    REQUIRE(b12.P.size() == 2);
    CHECK(b12.P[0] == e4 * e4 * e4);
    CHECK(b12.P[1] == d);
    CHECK(b12.P[1].coeff(0) == 0);
    CHECK(b12.P[1].coeff(1) == 1);
    auto b4 = build_basis(4, e4, e6, d);
    REQUIRE(b4.P.size() == 1);
    CHECK(b4.P[0] == e4);
    // triangularity for a spread of weights
    for (int w : {8, 10, 14, 16, 24, 36, 48}) {
        auto b = build_basis(w, e4, e6, d);
        for (int j = 0; j <= b.j_max; ++j) {
            for (int n = 0; n < j; ++n) CHECK(b.P[std::size_t(j)].coeff(n) == 0);
            CHECK(b.P[std::size_t(j)].coeff(j) == 1);
        }
    }
}

TEST_CASE("express_form: sigma_6 example and recovery property") {
    int T = 12;
    auto e4 = eisenstein_series(2, T, ZZ{});
    auto e6 = eisenstein_series(3, T, ZZ{});
    auto d = delta_series(T, ZZ{});
    auto b12 = build_basis(12, e4, e6, d);
    // sigma_6 = 1000320 E4^3 - 534159360 Delta = 1000320 + 186071040 q + ...
    auto s6 = b12.P[0].scaled_long(1000320) - b12.P[1].scaled_long(534159360);
    CHECK(s6.coeff(0) == 1000320);
    CHECK(s6.coeff(1) == 186071040);
    auto cs = express_form(s6, b12);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == 1000320);
    CHECK(cs[1] == -534159360);
    // trivial expressions
    auto e43 = express_form(b12.P[0], b12);
    CHECK(e43 == std::vector<Int>{1, 0});
    auto dd = express_form(d, b12);
    CHECK(dd == std::vector<Int>{0, 1});
    // random integer combinations recover exactly (w <= 48)
    Rng rng(23);
    for (int w : {16, 28, 36, 48}) {
        auto b = build_basis(w, e4, e6, d);
        Series<ZZ> f(ZZ{}, T);
        std::vector<Int> want;
        for (int j = 0; j <= b.j_max; ++j) {
            long a = long(rng.below(20001)) - 10000;
            want.push_back(a);
            f = f + b.P[std::size_t(j)].scaled_long(a);
        }
        CHECK(express_form(f, b) == want);
    }
    // wrong-weight input must be rejected
    auto b16 = build_basis(16, e4, e6, d);
    CHECK_THROWS(express_form(e6, b16));
}

TEST_CASE("point_rows examples") {
    // mod-1811 row for the volcano curve with E4 = 680: (680^3, 1067)
    Fp F(1811);
    auto mul = [&](u64 a, u64 b) { return F.mul(a, b); };
    u64 e4 = 680, e6 = 1360;
    u64 delta = F.div(F.sub(F.pow(e4, 3), F.mul(e6, e6)), 1728 % 1811);
    CHECK(delta == 1067);
    auto rows = point_rows<u64>(12, e4, e6, delta, 1, mul);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == F.pow(680, 3));
    CHECK(rows[1] == 1067);
    auto r4 = point_rows<u64>(4, e4, e6, delta, 1, mul);
    REQUIRE(r4.size() == 1);
    CHECK(r4[0] == 680);
}

TEST_CASE("shared grid equals the lemma-solution union; I_1 empty for even k") {
    Fp F(10007);
    auto mul = [&](u64 a, u64 b) { return F.mul(a, b); };
    Rng rng(3);
    for (int k : {1, 2, 3}) {
        long psi_count = 6;  // ell = 5
        u64 e4 = 1 + rng.below(10000), e6 = 1 + rng.below(10000), dl = 1 + rng.below(10000);
        auto grid = build_shared_grid<u64>(psi_count, k, e4, e6, dl, 1, mul);
        std::set<GridKey> keys;
        for (auto& [kk, v] : grid.values) {
            keys.insert(kk);
            // value correctness vs direct powering
            u64 want = F.mul(F.pow(e4, u64(kk.x)), F.pow(dl, u64(kk.y)));
            if (kk.eps) want = F.mul(want, e6);
            CHECK(v == want);
        }
        std::set<GridKey> want_keys;
        for (long r = 1; r <= psi_count; ++r) {
            long K = k * r;
            if (K < 2) continue;
            for (auto& s : lemma_solutions(int(K))) want_keys.insert({s.eps, s.i4, s.i12});
        }
        CHECK(keys == want_keys);
        if (k % 2 == 0)
            for (auto& kk : keys) CHECK(kk.eps == 0);
        // cost stays linear in the point count
        CHECK(grid.mults <= 2 * long(keys.size()) + 40);
    }
}

TEST_SUITE_END();
