"""Field and polynomial arithmetic tests, with enumeration oracles."""

import random

import pytest

from fflambda.algebra import (
    FactorTable,
    Poly,
    embed,
    factor_table,
    field_make,
    format_poly,
    irreducibles,
    is_irreducible,
    kronecker,
    monic_enum,
    parse_field,
    parse_poly,
    poly_factor,
    poly_is_squarefree,
    quad_char,
    residue_symbol,
    trace_to_subfield,
)
from fflambda.errors import (
    ContextMismatch,
    EvenCharacteristic,
    NoEmbedding,
    NotMonic,
    NotPrime,
    ParseError,
    SizeExceeded,
    ZeroPolynomial,
)


# -- contexts -----------------------------------------------------------------

def test_field_make_prime():
    F3 = field_make(3)
    assert F3.q == 3 and F3.r == 1
    assert F3.modulus == (0, 1)  # placeholder: the monic linear T


def test_field_make_canonical_identity():
    assert field_make(3) is field_make(3, 1)
    assert field_make(3, 2) is field_make(3, 2)


def test_field_make_extension_modulus_is_lex_smallest():
    # oracle: enumerate monic quadratics over F_3 constant-term-first and take
    # the first irreducible (no roots in F_3)
    F3 = field_make(3)
    first = None
    for f in monic_enum(F3, 2):
        if all(f.eval_code(x) != 0 for x in range(3)):
            first = f
            break
    assert field_make(3, 2).modulus == first.coeffs == (1, 0, 1)


def test_field_make_rejections():
    with pytest.raises(EvenCharacteristic):
        field_make(2, 3)
    with pytest.raises(NotPrime):
        field_make(9)
    with pytest.raises(SizeExceeded):
        field_make(3, 64)


def test_parse_field():
    assert parse_field("5").q == 5
    assert parse_field("3^2") is field_make(3, 2)
    assert parse_field(9) is field_make(3, 2)
    assert parse_field(25) is field_make(5, 2)
    with pytest.raises(EvenCharacteristic):
        parse_field(4)
    with pytest.raises(NotPrime):
        parse_field(12)


def test_element_arithmetic_f9():
    F9 = field_make(3, 2)
    t = F9.element(3)  # the residue of T
    assert (t * t).code == 2  # T^2 = -1 mod T^2+1
    assert (t + t + t).code == 0
    inv = t ** -1
    assert (inv * t).code == 1
    with pytest.raises(ContextMismatch):
        t + field_make(5).element(1)


def test_element_field_axioms_random():
    rng = random.Random(7)
    for ctx in (field_make(7), field_make(3, 2), field_make(5, 2)):
        for _ in range(60):
            a, b, c = (ctx.element(rng.randrange(ctx.q)) for _ in range(3))
            assert ((a + b) + c) == (a + (b + c))
            assert (a * (b + c)) == (a * b + a * c)
            assert (a * b) == (b * a)
            if a.code:
                assert (a / a).code == 1


# -- quadratic character --------------------------------------------------------

def test_quad_char_f5_examples():
    F5 = field_make(5)
    squares = {(x * x) % 5 for x in range(5)}  # oracle by enumeration: {0, 1, 4}
    assert squares == {0, 1, 4}
    assert quad_char(F5, F5.element(0)) == 0
    assert quad_char(F5, F5.element(4)) == 1
    assert quad_char(F5, F5.element(2)) == -1


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)])
def test_quad_char_multiplicative_exhaustive(p, r):
    ctx = field_make(p, r)
    qc = ctx.quad_char_code
    for a in range(1, ctx.q):
        assert qc(a) * qc(a) == 1
        assert qc(ctx.mul_c(a, a)) == 1
        for b in range(1, ctx.q):
            assert qc(ctx.mul_c(a, b)) == qc(a) * qc(b)


def test_quad_char_context_mismatch():
    with pytest.raises(ContextMismatch):
        quad_char(field_make(3), field_make(5).element(1))


# -- trace ----------------------------------------------------------------------

def test_trace_fixes_subfield():
    F3 = field_make(3)
    F9 = field_make(3, 2)
    for c in range(3):
        e = embed(F3.element(c), F9)
        assert trace_to_subfield(e, F3).code == (2 * c) % 3  # n * e with n = 2


def test_trace_of_modulus_root():
    # the residue of T in F9 has minimal polynomial T^2+1, so trace = -(0) = 0
    F3 = field_make(3)
    F9 = field_make(3, 2)
    assert trace_to_subfield(F9.element(3), F3).code == 0
    assert trace_to_subfield(F9.element(0), F3).code == 0


def test_trace_surjective_and_additive():
    F3 = field_make(3)
    F27 = field_make(3, 3)
    values = [trace_to_subfield(F27.element(c), F3).code for c in range(27)]
    assert set(values) == {0, 1, 2}
    assert values.count(0) == 9  # kernel of a nonzero linear form has q^(n-1) points


def test_trace_no_embedding():
    with pytest.raises(NoEmbedding):
        trace_to_subfield(field_make(3, 2).element(5), field_make(5))
    with pytest.raises(NoEmbedding):
        # F_9 built directly over F_3 is not on the tower of F_27
        trace_to_subfield(field_make(3, 3).element(5), field_make(3, 2))


# -- polynomial basics -----------------------------------------------------------

def test_parse_format_roundtrip():
    F5 = field_make(5)
    for text in ["T^5+2*T+1", "T^3+T+1", "T", "1", "T^2", "4*T^7+3*T^2+2"]:
        f = parse_poly(F5, text)
        assert parse_poly(F5, format_poly(f)) == f
    assert str(parse_poly(F5, "T^3 - T")) == "T^3+4*T"
    assert str(parse_poly(F5, "-T")) == "4*T"
    assert parse_poly(F5, "7*T") == parse_poly(F5, "2*T")


def test_parse_rejections():
    F5 = field_make(5)
    for bad in ["", "x^2", "T^", "2**T", "T^2++1"]:
        with pytest.raises(ParseError):
            parse_poly(F5, bad)


def test_poly_divmod_random():
    rng = random.Random(11)
    F7 = field_make(7)
    for _ in range(100):
        a = Poly(F7, [rng.randrange(7) for _ in range(rng.randrange(1, 8))])
        b = Poly(F7, [rng.randrange(7) for _ in range(rng.randrange(1, 5))])
        if b.is_zero:
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_poly_gcd_agrees_with_common_factor():
    F5 = field_make(5)
    a = parse_poly(F5, "T+1")
    f = a * parse_poly(F5, "T^2+2")
    g = a * parse_poly(F5, "T+3")
    assert f.gcd(g) == a


# -- squarefreeness ----------------------------------------------------------------

def test_squarefree_examples():
    F3 = field_make(3)
    F5 = field_make(5)
    assert poly_is_squarefree(parse_poly(F3, "T^3-T")) is True
    assert poly_is_squarefree(parse_poly(F3, "T^2")) is False
    assert poly_is_squarefree(parse_poly(F3, "T^3")) is False  # derivative vanishes
    assert poly_is_squarefree(parse_poly(F5, "T^5")) is False
    with pytest.raises(ZeroPolynomial):
        poly_is_squarefree(Poly.zero(F3))


def test_squarefree_matches_factorization_exhaustive():
    F3 = field_make(3)
    for n in (1, 2, 3, 4):
        for f in monic_enum(F3, n):
            by_factor = all(m == 1 for _, m in poly_factor(f))
            assert poly_is_squarefree(f) == by_factor


# -- enumeration ----------------------------------------------------------------

def test_monic_enum_counts_and_distinct():
    F3 = field_make(3)
    F5 = field_make(5)
    assert [str(f) for f in monic_enum(F3, 0)] == ["1"]
    assert [str(f) for f in monic_enum(F3, 1)] == ["T", "T+1", "T+2"]
    seen = set(f.coeffs for f in monic_enum(F5, 4))
    assert len(seen) == 625
    assert all(len(c) == 5 and c[-1] == 1 for c in seen)


def test_monic_enum_size_guard():
    with pytest.raises(SizeExceeded):
        monic_enum(field_make(5), 14)


def test_monic_enum_exhaustive_distinct_large():
    # q^n up to 10^6-scale distinctness check
    F9 = field_make(3, 2)
    seen = set(f.coeffs for f in monic_enum(F9, 3))
    assert len(seen) == 9 ** 3


# -- factorization ----------------------------------------------------------------

def test_poly_factor_examples():
    F3 = field_make(3)
    F5 = field_make(5)
    fs = poly_factor(parse_poly(F3, "T^2-1"))
    assert [(str(P), m) for P, m in fs] == [("T+1", 1), ("T+2", 1)]
    irr = parse_poly(F5, "T^2+2")  # no root in F_5: -2 = 3 is a nonsquare
    assert poly_factor(irr) == [(irr, 1)]
    assert poly_factor(parse_poly(F5, "T^3")) == [(parse_poly(F5, "T"), 3)]
    with pytest.raises(NotMonic):
        poly_factor(parse_poly(F5, "2*T^2"))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_poly_factor_remultiplies_exhaustive(p):
    ctx = field_make(p)
    max_deg = 5
    for n in range(1, max_deg + 1):
        for f in monic_enum(ctx, n):
            prod = Poly.one(ctx)
            for P, m in poly_factor(f):
                assert is_irreducible(P)
                for _ in range(m):
                    prod = prod * P
            assert prod == f


def test_irreducible_counts():
    # necklace counting: #irr(d) over F_q is (1/d) sum_{e|d} mu(e) q^(d/e)
    F3 = field_make(3)
    F5 = field_make(5)
    assert len(irreducibles(F3, 1)) == 3
    assert len(irreducibles(F3, 2)) == 3
    assert len(irreducibles(F3, 3)) == 8
    assert len(irreducibles(F5, 2)) == 10
    assert len(irreducibles(F5, 3)) == 40


# -- Kronecker symbol -------------------------------------------------------------

def test_kronecker_examples():
    F5 = field_make(5)
    D = parse_poly(F5, "T^3+T+1")
    assert kronecker(D, parse_poly(F5, "T")) == quad_char(F5, F5.element(1)) == 1
    # shared factor
    assert kronecker(parse_poly(F5, "T^3+T"), parse_poly(F5, "T")) == 0
    assert kronecker(D, Poly.one(F5)) == 1


def test_kronecker_multiplicative_random():
    rng = random.Random(23)
    for p in (3, 5, 7):
        ctx = field_make(p)
        monics = [f for n in range(1, 5) for f in monic_enum(ctx, n)] if p == 3 else None
        for _ in range(40):
            def rand_monic(max_deg):
                n = rng.randrange(1, max_deg + 1)
                return Poly(ctx, [rng.randrange(p) for _ in range(n)] + [1])
            D = rand_monic(4)
            f = rand_monic(4)
            g = rand_monic(4)
            assert kronecker(D, f * g) == kronecker(D, f) * kronecker(D, g)


def test_kronecker_nonzero_on_coprime_irreducible():
    F3 = field_make(3)
    D = parse_poly(F3, "T^3-T+1")  # squarefree
    assert poly_is_squarefree(D)
    for d in (1, 2, 3):
        for P in irreducibles(F3, d):
            if (D % P).is_zero:
                continue
            assert kronecker(D, P) in (-1, 1)


def test_kronecker_requires_monic_and_same_ctx():
    F3, F5 = field_make(3), field_make(5)
    with pytest.raises(ContextMismatch):
        kronecker(parse_poly(F3, "T^3+T+1"), parse_poly(F5, "T"))
    with pytest.raises(NotMonic):
        kronecker(parse_poly(F3, "2*T^3+1"), parse_poly(F3, "T"))
    with pytest.raises(ZeroPolynomial):
        kronecker(parse_poly(F3, "T^3+T+1"), Poly.zero(F3))


def test_residue_symbol_matches_quad_char_of_value():
    # for a linear prime P = T - x, (D/P) = chi(D(x))
    F7 = field_make(7)
    D = parse_poly(F7, "T^3+2*T+1")
    for x in range(7):
        P = Poly(F7, [(-x) % 7, 1])
        assert residue_symbol(D, P) == F7.quad_char_code(D.eval_code(x))


# -- factor table ------------------------------------------------------------------

def test_factor_table_matches_poly_factor():
    for p in (3, 5):
        ctx = field_make(p)
        tbl = FactorTable(ctx, 4)
        for n in range(5):
            for f in monic_enum(ctx, n):
                assert tbl.factorization(f) == poly_factor(f)


def test_factor_table_grows_and_is_shared():
    ctx = field_make(7)
    t1 = factor_table(ctx, 2)
    t2 = factor_table(ctx, 3)
    assert t1 is t2 and t1.max_deg >= 3
