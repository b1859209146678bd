"""Quadratic Dirichlet L-functions of F_q[T].

For a good pair -- monic squarefree D of odd degree >= 3 over an odd-order
field -- the L-function is the character sum

    L(s, chi_D) = sum over monic f of chi_D(f) * q^(-s deg f),

a polynomial of degree 2g in u = q^(-s) with integer coefficients c_0..c_2g,
where g = (deg D - 1)/2 is the genus of y^2 = D(x) and chi_D = (D/.) is the
Kronecker symbol.  The completed function q^(gs) L is symmetric under
s -> 1-s, which in coefficient form reads c_{g+n} = q^n c_{g-n}; on the
critical line it becomes the cosine series with coefficients
Phi_n = c_{g-n} q^(n/2).

Everything here is exact integer arithmetic except :func:`phi` and
:func:`inverse_roots`; downstream double-root detection depends on the
coefficients being exact.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import FieldCtx, Poly, factor_table, monic_enum, parse_poly, residue_symbol
from .errors import (
    DegreeTooSmall,
    EvenDegree,
    FunctionalEquationViolation,
    IndexOutOfRange,
    NotMonic,
    NotSquarefree,
    RootFindingFailure,
    SizeExceeded,
)

#: default ceiling for the vanishing spot-check enumeration in compute_L
SPOT_CHECK_LIMIT = 20_000


@dataclass(frozen=True)
class GoodPair:
    """A validated (D, q): monic squarefree D of odd degree >= 3."""

    ctx: FieldCtx
    D: Poly

    @property
    def genus(self) -> int:
        return (self.D.degree - 1) // 2


def check_good(D: Poly) -> GoodPair:
    """Validate D; raises the first violation in documented order.

    Order: monic, odd degree, degree >= 3, squarefree.  (The field context
    is odd-characteristic by construction.)
    """
    if not D.is_monic:
        raise NotMonic(f"{D} is not monic")
    if D.degree % 2 == 0:
        raise EvenDegree(f"deg {D} = {D.degree} is even")
    if D.degree < 3:
        raise DegreeTooSmall(f"deg {D} = {D.degree} < 3")
    if not algebra.poly_is_squarefree(D):
        raise NotSquarefree(f"{D} has a repeated factor")
    return GoodPair(D.ctx, D)


@dataclass(frozen=True)
class LData:
    """The L-polynomial: integer coefficients c_0..c_2g in u = q^(-s).

    Invariants (checked by :meth:`validate`): c_0 = 1, len(c) = 2g + 1, and
    the functional equation c_{g+n} = q^n c_{g-n} for 0 <= n <= g.
    """

    q: int
    g: int
    c: tuple
    D: Poly | None = None

    def validate(self) -> "LData":
        if len(self.c) != 2 * self.g + 1:
            raise FunctionalEquationViolation(
                f"coefficient vector has length {len(self.c)}, expected {2 * self.g + 1}")
        if self.c[0] != 1:
            raise FunctionalEquationViolation(f"c_0 = {self.c[0]} != 1")
        for n in range(self.g + 1):
            if self.c[self.g + n] != self.q ** n * self.c[self.g - n]:
                raise FunctionalEquationViolation(
                    f"c_{self.g + n} = {self.c[self.g + n]} != "
                    f"q^{n} * c_{self.g - n} = {self.q ** n * self.c[self.g - n]}")
        return self

    def to_json_dict(self) -> dict:
        return {"q": self.q, "g": self.g, "c": list(self.c),
                "D": str(self.D) if self.D is not None else None}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict, ctx: FieldCtx | None = None) -> "LData":
        D = None
        if d.get("D") is not None and ctx is not None:
            D = parse_poly(ctx, d["D"])
        return cls(q=int(d["q"]), g=int(d["g"]), c=tuple(int(v) for v in d["c"]),
                   D=D).validate()

    def csv_row(self):
        return [self.q, str(self.D) if self.D is not None else ""] + list(self.c)


# -- character sums ------------------------------------------------------------

class _ChiCache:
    """Memoized chi_D values on the ranked irreducibles of a factor table."""

    def __init__(self, pair: GoodPair):
        self.pair = pair
        self.sym = []

    def chi(self, table, f: Poly) -> int:
        ranks = table.fact[f.degree][f.coeffs]
        sym = self.sym
        result = 1
        for rank in ranks:
            while len(sym) <= rank:
                sym.append(None)
            s = sym[rank]
            if s is None:
                s = residue_symbol(self.pair.D, table.irr[rank])
                sym[rank] = s
            if s == 0:
                return 0
            result *= s
        return result


@functools.lru_cache(maxsize=32)
def _chi_cache(pair: GoodPair) -> _ChiCache:
    return _ChiCache(pair)


def compute_c(pair: GoodPair, n: int, enum_limit: int = algebra.ENUM_LIMIT) -> int:
    """Exact integer c_n = sum of chi_D(f) over the q^n monic f of degree n."""
    ctx = pair.ctx
    if n < 0:
        raise IndexOutOfRange("coefficient index must be >= 0")
    if ctx.q ** n > enum_limit:
        raise SizeExceeded(f"c_{n} needs {ctx.q}^{n} summands, over the limit {enum_limit}")
    if n == 0:
        return 1
    total_table = sum(ctx.q ** d for d in range(n + 1))
    if total_table <= algebra.FACTOR_TABLE_LIMIT:
        table = factor_table(ctx, n)
        chi = _chi_cache(pair).chi
        return sum(chi(table, f) for f in monic_enum(ctx, n))
    # streaming fallback for enumerations too large to cache
    return sum(algebra.kronecker(pair.D, f) for f in monic_enum(ctx, n))


@functools.lru_cache(maxsize=64)
def compute_L(pair: GoodPair, vanishing_check: bool = True,
              spot_limit: int = SPOT_CHECK_LIMIT) -> LData:
    """All coefficients c_0..c_2g of L(s, chi_D), invariants verified.

    The functional equation is asserted on the computed integers; a failure
    is an arithmetic bug, never expected on valid input.  When affordable
    (q^deg D <= spot_limit) the first vanishing coefficient c_{deg D} = 0 is
    also asserted rather than assumed.
    """
    g = pair.genus
    c = tuple(compute_c(pair, n) for n in range(2 * g + 1))
    L = LData(q=pair.ctx.q, g=g, c=c, D=pair.D).validate()
    if vanishing_check and pair.ctx.q ** (2 * g + 1) <= spot_limit:
        extra = compute_c(pair, 2 * g + 1)
        if extra != 0:
            raise FunctionalEquationViolation(
                f"c_{2 * g + 1} = {extra} != 0 beyond the polynomial degree")
    return L


def phi(L: LData, n: int) -> float:
    """Fourier coefficient Phi_n = c_{g-n} * q^(n/2) of the completed L on the circle."""
    if not 0 <= n <= L.g:
        raise IndexOutOfRange(f"Phi index {n} outside 0..{L.g}")
    return L.c[L.g - n] * float(L.q) ** (n / 2)


def inverse_roots(L: LData, tol_weil: float = 1e-9):
    """The 2g inverse roots alpha_i with L = prod (1 - alpha_i u).

    Roots are eigenvalues of the companion matrix of each squarefree factor
    (separating repeated roots keeps double eigenvalues well-conditioned),
    polished with one Newton step.  Returns (roots, weil_ok) where weil_ok
    is max_i | |alpha_i| - sqrt(q) | <= tol_weil.
    """
    # inverse roots are the roots of the reversed polynomial R(x) = sum c_n x^(2g-n);
    # reversal distributes over the squarefree factors since c_0 = 1 != 0, and the
    # ascending coefficients of a factor read highest-first are exactly its reversal
    roots: list[complex] = []
    for factor, mult in _squarefree_decomposition(list(L.c)):
        if len(factor) <= 1:
            continue
        rev_f = np.array(factor, dtype=float)
        rs = np.roots(rev_f)
        if not np.all(np.isfinite(rs)):
            raise RootFindingFailure("companion eigenvalues did not converge")
        drev = np.polyder(rev_f)
        for z in rs:
            fz = np.polyval(rev_f, z)
            dz = np.polyval(drev, z)
            if abs(dz) > 1e-12 * max(1.0, abs(fz)):
                z = z - fz / dz  # one Newton polish step
            roots.extend([complex(z)] * mult)
    if len(roots) != 2 * L.g:
        raise RootFindingFailure(
            f"found {len(roots)} inverse roots, expected {2 * L.g}")
    sq = float(L.q) ** 0.5
    weil_ok = max((abs(abs(z) - sq) for z in roots), default=0.0) <= tol_weil
    return roots, weil_ok


def _squarefree_decomposition(coeffs):
    """Yun decomposition of an integer polynomial given low-to-high.

    Yields (factor_coeffs_low_to_high, multiplicity) over the rationals; the
    coefficients returned are floats of exact rational values.
    """
    from fractions import Fraction

    a = [Fraction(v) for v in coeffs]
    while a and a[-1] == 0:
        a.pop()
    if len(a) <= 1:
        return
    d = _fr_deriv(a)
    g = _fr_gcd(a, d)
    w = _fr_div(a, g)
    y = _fr_div(d, g)
    i = 1
    while len(w) > 1:
        z = _fr_sub(y, _fr_deriv(w))
        f = _fr_gcd(w, z) if any(z) else list(w)
        if len(f) > 1:
            yield [float(v) for v in f], i
        w = _fr_div(w, f)
        y = _fr_div(z, f) if any(z) else _fr_deriv(w)
        i += 1


def _fr_deriv(a):
    return [a[k] * k for k in range(1, len(a))]


def _fr_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _fr_divmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - 1, len(b) - 2, -1):
        if a[k] == 0:
            continue
        f = a[k] / b[-1]
        q[k - len(b) + 1] = f
        for j in range(len(b)):
            a[k - len(b) + 1 + j] -= f * b[j]
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _fr_div(a, b):
    q, r = _fr_divmod(a, b)
    assert not r, "exact polynomial division left a remainder"
    while q and q[-1] == 0:
        q.pop()
    return q


def _fr_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _fr_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a
