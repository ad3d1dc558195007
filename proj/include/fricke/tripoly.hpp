#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fricke/ints.hpp"

namespace fricke {

// Monomial X^r E4^i4 E6^i6 Delta^i12 (canonical form keeps i6 in {0,1}).
struct Mono4 {
    int r = 0, i4 = 0, i6 = 0, i12 = 0;
    auto operator<=>(const Mono4&) const = default;
};

// Monomial X^r A^iA B^iB.
struct Mono3 {
    int r = 0, iA = 0, iB = 0;
    auto operator<=>(const Mono3&) const = default;
};

enum class Family { U, V, W, NumA, NumB, Phi };

std::string family_tag(Family f);
std::optional<Family> family_from_tag(const std::string& s);

// X-weight (ϖ) of the family's root form: U:2, V:4, W:6; the numerators carry
// the same grading as U.
int family_weight(Family f);

// Weight-homogeneous polynomial in X and (E4, E6, Delta), exact coefficients.
// The grading counts half-weights: X |-> weight_w/2, E4 |-> 2, E6 |-> 3, Delta |-> 6.
struct TriPoly {
    long ell = 0;      // level (prime ell, or N for Phi-type polynomials)
    int weight_w = 2;  // ϖ, weight of the variable X
    Family family = Family::U;
    std::map<Mono4, Rat> monomials;

    void add_term(const Mono4& m, const Rat& c);
    // rewrite E6^2 = E4^3 - 1728 Delta until every i6 is 0 or 1
    void canonicalize();
    int degree_x() const;
    bool is_integral() const;
    bool operator==(const TriPoly&) const = default;

    // total weight of a monomial in the half-weight grading
    long mono_weight(const Mono4& m) const {
        return (long(weight_w) / 2) * m.r + 2L * m.i4 + 3L * m.i6 + 6L * m.i12;
    }
    // every monomial has this weight when homogeneous
    bool is_weight_homogeneous(long total) const;
};

// Same polynomial shape over variables (X, A, B) where A = -3E4, B = -2E6.
struct ABPoly {
    long ell = 0;
    int weight_w = 2;
    Family family = Family::U;
    std::map<Mono3, Rat> monomials;

    void add_term(const Mono3& m, const Rat& c);
    int degree_x() const;
    bool is_integral() const;
    bool operator==(const ABPoly&) const = default;
    long mono_weight(const Mono3& m) const {
        return (long(weight_w) / 2) * m.r + 2L * m.iA + 3L * m.iB;
    }
    bool is_weight_homogeneous(long total) const;
};

// Exact conversions (A = -3E4, B = -2E6, Delta = -(4A^3+27B^2)/186624).
ABPoly to_ab_form(const TriPoly& p);
TriPoly from_ab_form(const ABPoly& p);

// Mod-p variants used by the volcano pipeline.
struct TriPolyMod {
    long ell = 0;
    int weight_w = 2;
    Family family = Family::U;
    u64 p = 0;
    std::map<Mono4, u64> monomials;
    void add_term(const Mono4& m, u64 c);
    bool operator==(const TriPolyMod&) const = default;
};

struct ABPolyMod {
    long ell = 0;
    int weight_w = 2;
    Family family = Family::U;
    u64 p = 0;
    std::map<Mono3, u64> monomials;
    void add_term(const Mono3& m, u64 c);
    bool operator==(const ABPolyMod&) const = default;
};

TriPolyMod reduce_mod(const TriPoly& p, u64 prime);
ABPolyMod reduce_mod(const ABPoly& p, u64 prime);
ABPolyMod to_ab_form(const TriPolyMod& p);

// Relative height H~(P) = ln(max |coeff|) / ((ell+1) ln ell), measured on the
// (X, A, B) form (the only convention reproducing the paper's tables).
double relative_height(const ABPoly& p);
double relative_height(const TriPoly& p);

// --- serialization (poly_io.cpp) ---
std::string to_json(const TriPoly& p, const std::map<std::string, std::string>& meta = {});
std::string to_json(const ABPoly& p, const std::map<std::string, std::string>& meta = {});
TriPoly tripoly_from_json(const std::string& text);
ABPoly abpoly_from_json(const std::string& text);
bool json_vars_are_ab(const std::string& text);

// Human-readable mirror in the paper's display order (descending X-degree).
std::string to_text(const TriPoly& p);
std::string to_text(const ABPoly& p);

}  // namespace fricke
