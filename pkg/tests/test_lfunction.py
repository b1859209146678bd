"""L-polynomial tests: coefficients, functional equation, Weil bound."""

import math

import pytest

from fflambda.algebra import Poly, field_make, kronecker, monic_enum, parse_poly, quad_char
from fflambda.errors import (
    DegreeTooSmall,
    EvenDegree,
    FunctionalEquationViolation,
    IndexOutOfRange,
    NotMonic,
    NotSquarefree,
)
from fflambda.lfunction import (
    LData,
    check_good,
    compute_c,
    compute_L,
    inverse_roots,
    phi,
)

F3 = field_make(3)
F5 = field_make(5)


def good(ctx, text):
    return check_good(parse_poly(ctx, text))


def brute_c(pair, n):
    # oracle: the definition, summed with the standalone Kronecker symbol
    return sum(kronecker(pair.D, f) for f in monic_enum(pair.ctx, n))


# -- validation ------------------------------------------------------------------

def test_check_good_accepts():
    pair = good(F5, "T^3+T+1")
    assert pair.genus == 1 and pair.ctx is F5


def test_check_good_rejects():
    with pytest.raises(EvenDegree):
        check_good(parse_poly(F3, "T^2"))
    with pytest.raises(DegreeTooSmall):
        check_good(parse_poly(F3, "T"))
    with pytest.raises(NotSquarefree):
        check_good(parse_poly(F3, "T^3"))
    with pytest.raises(NotMonic):
        check_good(parse_poly(F5, "2*T^3+1"))


# -- coefficients ------------------------------------------------------------------

def test_c1_example_f5():
    pair = good(F5, "T^3+T+1")
    by_values = sum(quad_char(F5, parse_poly(F5, "T^3+T+1")(F5.element(x)))
                    for x in range(5))
    assert by_values == 3  # 1 - 1 + 1 + 1 + 1
    assert compute_c(pair, 1) == 3 == brute_c(pair, 1)


def test_c0_always_one():
    assert compute_c(good(F3, "T^3+T"), 0) == 1


def test_c1_vanishes_for_t3_plus_t():
    pair = good(F3, "T^3+T")
    # oracle via the point count: N_1 = 4 so the Frobenius trace is 0
    from fflambda.curve import count_points
    a = 3 + 1 - count_points(pair, 1)
    assert a == 0
    assert compute_c(pair, 1) == -a == 0


def test_compute_L_examples():
    assert compute_L(good(F3, "T^3+T")).c == (1, 0, 3)
    assert compute_L(good(F5, "T^3+T+1")).c == (1, 3, 5)
    # degree-2 coefficient by direct enumeration equals q*c_0
    assert brute_c(good(F5, "T^3+T+1"), 2) == 5


def test_compute_L_main_witness():
    L = compute_L(good(F5, "T^5-T"))
    assert L.c == (1, 0, -10, 0, 25)  # (1 - 5u^2)^2


def test_vanishing_beyond_degree():
    pair = good(F3, "T^3+T+2")
    assert brute_c(pair, 3) == 0
    assert brute_c(pair, 4) == 0


def test_functional_equation_exhaustive_small():
    # every good pair with q = 3, deg 3; the q <= 5 deg <= 5 sweep runs in acceptance
    count = 0
    for f in monic_enum(F3, 3):
        try:
            pair = check_good(f)
        except Exception:
            continue
        count += 1
        L = compute_L(pair)
        for n in range(L.g + 1):
            assert L.c[L.g + n] == 3 ** n * L.c[L.g - n]
    assert count == 18  # 3^3 - 3^2 monic squarefree cubics


def test_ldata_validation():
    with pytest.raises(FunctionalEquationViolation):
        LData(q=3, g=1, c=(1, 0, 4)).validate()
    with pytest.raises(FunctionalEquationViolation):
        LData(q=3, g=1, c=(2, 0, 6)).validate()
    with pytest.raises(FunctionalEquationViolation):
        LData(q=3, g=1, c=(1, 0, 3, 0)).validate()


def test_genus1_bridge_exhaustive():
    # c_1 equals both the character sum over roots and minus the Frobenius trace
    from fflambda.curve import count_points
    for ctx in (F3, F5, field_make(7)):
        q = ctx.q
        for f in monic_enum(ctx, 3):
            try:
                pair = check_good(f)
            except Exception:
                continue
            c1 = compute_c(pair, 1)
            by_char = sum(ctx.quad_char_code(f.eval_code(x)) for x in range(q))
            a = q + 1 - count_points(pair, 1)
            assert c1 == by_char == -a


# -- phi -----------------------------------------------------------------------------

def test_phi_values():
    L = compute_L(good(F3, "T^3+T"))
    assert phi(L, 0) == 0.0
    assert phi(L, 1) == pytest.approx(math.sqrt(3))
    L5 = compute_L(good(F5, "T^3+T+1"))
    assert phi(L5, 0) == 3.0
    assert phi(L5, 1) == pytest.approx(math.sqrt(5))
    with pytest.raises(IndexOutOfRange):
        phi(L5, 2)


def test_phi_leading_never_vanishes():
    for text, ctx in [("T^3+T", F3), ("T^5-T", F5), ("T^5+T+1", F5)]:
        L = compute_L(good(ctx, text))
        assert phi(L, L.g) == pytest.approx(float(ctx.q) ** (L.g / 2))


# -- inverse roots --------------------------------------------------------------------

def test_inverse_roots_pure_imaginary():
    roots, ok = inverse_roots(compute_L(good(F3, "T^3+T")))
    assert ok
    assert sorted(round(z.imag, 9) for z in roots) == pytest.approx([-math.sqrt(3), math.sqrt(3)])
    assert all(abs(z.real) < 1e-9 for z in roots)


def test_inverse_roots_double():
    roots, ok = inverse_roots(compute_L(good(F5, "T^5-T")))
    assert ok and len(roots) == 4
    vals = sorted(round(z.real, 6) for z in roots)
    s5 = round(math.sqrt(5), 6)
    assert vals == [-s5, -s5, s5, s5]


def test_inverse_roots_conjugate_pair():
    roots, ok = inverse_roots(compute_L(good(F5, "T^3+T+1")))
    assert ok and len(roots) == 2
    assert roots[0] == pytest.approx(roots[1].conjugate())
    for z in roots:
        assert abs(z) == pytest.approx(math.sqrt(5), abs=1e-9)


def test_json_roundtrip():
    L = compute_L(good(F5, "T^3+T+1"))
    d = L.to_json_dict()
    assert d == {"q": 5, "g": 1, "c": [1, 3, 5], "D": "T^3+T+1"}
    back = LData.from_json_dict(d, F5)
    assert back.c == L.c and back.D == L.D
