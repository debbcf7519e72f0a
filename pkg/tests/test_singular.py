import random
from fractions import Fraction

from fcpm.rings import MPoly
from fcpm.singular import (build_R_x, build_R_z, evaluate_R_x,
                           on_singular_locus, poly_terms_json, poly_to_string,
                           unirational_point)

F = Fraction

# Expanded closed forms, frozen from an independent symbolic expansion of
# the defining product of linear forms (sympy), cross-checked against the
# displayed polynomials for the four small shapes.
R_X_TABLE = {
    (2, 2): {(0, 0): 1, (0, 1): -2, (0, 2): 1, (1, 0): -2, (1, 1): -2,
             (2, 0): 1},
    (3, 2): {(0, 0): 1, (0, 1): -3, (0, 2): 3, (0, 3): -1, (1, 0): -3,
             (1, 1): -21, (1, 2): -3, (2, 0): 3, (2, 1): -3, (3, 0): -1},
    (4, 2): {(0, 0): 1, (0, 1): -4, (0, 2): 6, (0, 3): -4, (0, 4): 1,
             (1, 0): -4, (1, 1): -124, (1, 2): -124, (1, 3): -4, (2, 0): 6,
             (2, 1): -124, (2, 2): 6, (3, 0): -4, (3, 1): -4, (4, 0): 1},
    (2, 3): {(0, 0, 0): 1, (0, 0, 1): -4, (0, 0, 2): 6, (0, 0, 3): -4,
             (0, 0, 4): 1, (0, 1, 0): -4, (0, 1, 1): 4, (0, 1, 2): 4,
             (0, 1, 3): -4, (0, 2, 0): 6, (0, 2, 1): 4, (0, 2, 2): 6,
             (0, 3, 0): -4, (0, 3, 1): -4, (0, 4, 0): 1, (1, 0, 0): -4,
             (1, 0, 1): 4, (1, 0, 2): 4, (1, 0, 3): -4, (1, 1, 0): 4,
             (1, 1, 1): -40, (1, 1, 2): 4, (1, 2, 0): 4, (1, 2, 1): 4,
             (1, 3, 0): -4, (2, 0, 0): 6, (2, 0, 1): 4, (2, 0, 2): 6,
             (2, 1, 0): 4, (2, 1, 1): 4, (2, 2, 0): 6, (3, 0, 0): -4,
             (3, 0, 1): -4, (3, 1, 0): -4, (4, 0, 0): 1},
}


# ---------------------------------------------------------------------------
# table reproduction

def test_r_x_table_exact():
    for (p, m), table in R_X_TABLE.items():
        R = build_R_x(p, m)
        got = {exp: c for exp, c in R.terms.items()}
        assert got == {exp: F(c) for exp, c in table.items()}, (p, m)


def test_r_x_degrees_match_table():
    for (p, m) in R_X_TABLE:
        assert build_R_x(p, m).total_degree() == p ** (m - 1)


def test_r_x_display_string():
    s = poly_to_string(build_R_x(2, 2))
    assert s == "1 - 2*x1 - 2*x2 + x1^2 - 2*x1*x2 + x2^2"


def test_poly_terms_json_roundtrip():
    R = build_R_x(3, 2)
    rows = poly_terms_json(R)
    assert {tuple(r["exp"]): F(r["coef"]) for r in rows} == dict(R.terms)
    # graded-lex order for stable diffs
    exps = [tuple(r["exp"]) for r in rows]
    assert exps == sorted(exps, key=lambda e: (sum(e), tuple(-c for c in e)))


# ---------------------------------------------------------------------------
# structural invariants of R

def test_r_z_m1_closed_form():
    for p in (2, 3, 5):
        R = build_R_z(p, 1)
        assert dict(R.terms) == {(0,): F(1), (p,): F(-1)}


def test_r_z_p2m2_expansion():
    # (1-z1^2-z2^2)^2 - 4 z1^2 z2^2
    R = build_R_z(2, 2)
    u = MPoly.monomial(2, (2, 0))
    v = MPoly.monomial(2, (0, 2))
    one = MPoly.const(2, F(1))
    want = (one - u - v) ** 2 - (u * v).scale(F(4))
    assert dict(R.terms) == dict(want.terms)


def test_r_z_constant_term_and_divisible_exponents():
    for (p, m) in [(2, 2), (3, 2), (2, 3)]:
        R = build_R_z(p, m)
        assert R.coefficient((0,) * m) == 1
        for exp in R.terms:
            assert all(e % p == 0 for e in exp)


def test_degree_grid():
    # deg R(x) = p^(m-1) across the full small grid
    for p in (2, 3, 4):
        for m in (1, 2, 3):
            R = build_R_x(p, m)
            assert R.total_degree() == p ** (m - 1), (p, m)
            assert R.coefficient((0,) * m) == 1  # so no monomial divides R


def test_restriction_to_last_variable_zero():
    # setting x_m = 0 collapses the product over the last index to a power
    for (p, m) in [(2, 2), (3, 2), (4, 2), (2, 3)]:
        R = build_R_x(p, m)
        restricted = {}
        for exp, c in R.terms.items():
            if exp[-1] == 0:
                restricted[exp[:-1]] = c
        lower = build_R_x(p, m - 1) ** p
        assert restricted == dict(lower.terms), (p, m)


def test_unirational_points_lie_on_locus():
    rng = random.Random(21)
    for (p, m) in [(2, 2), (3, 2), (2, 3)]:
        for _ in range(20):
            z = unirational_point(p, m, rng)
            assert sum(z) == 1
            x = tuple(v ** p for v in z)
            assert evaluate_R_x(p, m, x) == 0
            assert on_singular_locus(x, p, m)


# ---------------------------------------------------------------------------
# membership tests

def test_on_singular_locus_examples():
    assert on_singular_locus((F(0), F(1, 3)), 2, 2)  # coordinate hyperplane
    assert on_singular_locus((F(1, 4), F(1, 4)), 2, 2)
    assert not on_singular_locus((F(1, 16), F(1, 16)), 2, 2)


def test_on_singular_locus_float():
    assert on_singular_locus((0.25, 0.25), 2, 2)
    assert not on_singular_locus((1 / 16, 1 / 16), 2, 2)
    assert on_singular_locus((0.0, 0.7), 2, 2)


def test_evaluate_r_x_exact_vs_complex():
    rng = random.Random(22)
    for (p, m) in [(2, 2), (3, 2)]:
        for _ in range(5):
            x = tuple(F(rng.randrange(-8, 9), 17) for _ in range(m))
            exact = evaluate_R_x(p, m, x)
            approx = evaluate_R_x(p, m, tuple(float(v) for v in x))
            assert abs(complex(approx) - float(exact)) <= 1e-12 * (1 + abs(float(exact)))


def test_evaluate_r_x_real_on_reals():
    val = evaluate_R_x(3, 2, (0.12, -0.3))
    assert isinstance(val, (float, complex))
    assert abs(complex(val).imag) < 1e-14
