#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fricke/atkin.hpp"
#include "fricke/eisenval.hpp"
#include "fricke/fricke_float.hpp"
#include "fricke/fricke_series.hpp"
#include "fricke/volcano.hpp"

namespace py = pybind11;
using namespace fricke;

namespace {

Family parse_family(const std::string& s) {
    auto f = family_from_tag(s);
    if (!f) throw std::invalid_argument("family must be U, V, W, A or B");
    return *f;
}

// polynomials cross the boundary as {(r, i4, i6, i12): "coeff"} dicts
py::dict tri_to_dict(const TriPoly& p) {
    py::dict d;
    for (const auto& [m, c] : p.monomials) {
        py::tuple k = py::make_tuple(m.r, m.i4, m.i6, m.i12);
        d[k] = c.get_str();
    }
    return d;
}

py::dict ab_to_dict(const ABPoly& p) {
    py::dict d;
    for (const auto& [m, c] : p.monomials) {
        py::tuple k = py::make_tuple(m.r, m.iA, m.iB);
        d[k] = c.get_str();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_fricke, m) {
    m.doc() = "Fricke/Charlap-Coley-Robbins modular polynomials";

    m.def("psi", &psi, py::arg("n"));

    m.def(
        "compute_polynomial",
        [](long ell, const std::string& family, const std::string& method, int jobs) {
            Family fam = parse_family(family);
            TriPoly P;
            if (fam == Family::NumA || fam == Family::NumB) {
                auto U = compute_fricke_polynomial_auto(ell, Family::U, 4, jobs);
                auto [na, nb] = compute_numerators_series(ell, U);
                const ABPoly& nm = fam == Family::NumA ? na : nb;
                py::dict out;
                out["family"] = family;
                out["ell"] = ell;
                out["vars"] = "AB";
                out["monomials"] = ab_to_dict(nm);
                out["relative_height"] = relative_height(nm);
                return out;
            }
            if (method == "series")
                P = compute_fricke_polynomial_auto(ell, fam, 4, jobs);
            else if (method == "float")
                P = compute_fricke_float(ell, fam);
            else
                throw std::invalid_argument("method must be series or float");
            py::dict out;
            out["family"] = family;
            out["ell"] = ell;
            out["vars"] = "E4E6D";
            out["monomials"] = tri_to_dict(P);
            out["relative_height"] = relative_height(P);
            return out;
        },
        py::arg("ell"), py::arg("family") = "U", py::arg("method") = "series",
        py::arg("jobs") = 1);

    m.def(
        "to_ab",
        [](long ell, const std::string& family) {
            auto P = compute_fricke_polynomial_auto(ell, parse_family(family), 4, 1);
            return ab_to_dict(to_ab_form(P));
        },
        py::arg("ell"), py::arg("family") = "U");

    m.def(
        "eisenstein_series",
        [](int k, int order) {
            auto s = eisenstein_series(k, order, ZZ{});
            std::vector<std::string> out;
            for (const auto& c : s.c) out.push_back(c.get_str());
            return out;
        },
        py::arg("k"), py::arg("order"), "coefficients of E_{2k} as decimal strings");

    m.def(
        "eval_at_rho",
        [](double rho, int prec) {
            auto v = eval_at_rho(Real::of_double(rho, prec), prec);
            int digits = int(double(prec) * 0.301) - 2;
            py::dict d;
            d["E2"] = v.e2.str(digits);
            d["E4"] = v.e4.str(digits);
            d["E6"] = v.e6.str(digits);
            d["Delta"] = v.delta.str(digits);
            d["j"] = v.j.str(digits);
            return d;
        },
        py::arg("rho"), py::arg("prec") = 128);

    m.def(
        "isogenous",
        [](unsigned long long p, unsigned long long A, unsigned long long B, long ell) {
            auto U = compute_fricke_polynomial_auto(ell, Family::U, 4, 1);
            Rng rng(0xA7C1EULL);
            auto out = isogenous_from_U(ell, A, B, p, U, rng);
            std::vector<py::tuple> rows;
            for (const auto& c : out) {
                if (c.degenerate) continue;
                rows.push_back(py::make_tuple(c.kappa, c.Astar, c.Bstar, c.kappa1));
            }
            return rows;
        },
        py::arg("p"), py::arg("a"), py::arg("b"), py::arg("ell"),
        "rows (kappa, A*, B*, kappa/2) for every F_p-rational root of U_ell");

    m.def(
        "relative_heights",
        [](long ell) {
            auto u = compute_fricke_polynomial_auto(ell, Family::U, 4, 1);
            auto v = compute_fricke_polynomial_auto(ell, Family::V, 4, 1);
            auto w = compute_fricke_polynomial_auto(ell, Family::W, 4, 1);
            auto [na, nb] = compute_numerators_series(ell, u);
            py::dict d;
            d["U"] = relative_height(u);
            d["V"] = relative_height(v);
            d["W"] = relative_height(w);
            d["A"] = relative_height(na);
            d["B"] = relative_height(nb);
            return d;
        },
        py::arg("ell"));
}
