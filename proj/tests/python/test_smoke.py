import fricke


def test_psi():
    assert fricke.psi(5) == 6
    assert fricke.psi(6) == 12


def test_u5():
    out = fricke.compute_polynomial(5, "U", "series")
    m = out["monomials"]
    assert m[(6, 0, 0, 0)] == "1"
    assert m[(4, 1, 0, 0)] == "-60"
    assert m[(0, 0, 0, 1)] == "552960"
    assert abs(out["relative_height"] - 0.526) < 0.002


def test_u5_ab():
    ab = fricke.to_ab(5, "U")
    assert ab[(4, 1, 0)] == "20"
    assert ab[(3, 0, 1)] == "160"
    assert ab[(0, 0, 2)] == "-80"


def test_numerator_a5():
    out = fricke.compute_polynomial(5, "A", "series")
    m = out["monomials"]
    assert m[(5, 1, 0)] == "630"
    assert m[(0, 2, 1)] == "3200"


def test_eisenstein_series():
    e4 = fricke.eisenstein_series(2, 3)
    assert e4 == ["1", "240", "2160"]


def test_eval_at_rho():
    vals = fricke.eval_at_rho(1.0, 128)
    assert abs(float(vals["E6"])) < 1e-30
    assert abs(float(vals["j"]) - 1728.0) < 1e-20


def test_isogenous_section_6_3():
    rows = fricke.isogenous(1009, 1, 3, 5)
    assert (584, 441, 997, 292) in rows


def test_float_matches_series():
    a = fricke.compute_polynomial(5, "U", "series")["monomials"]
    b = fricke.compute_polynomial(5, "U", "float")["monomials"]
    assert a == b
