"""The heat-flow deformation of a completed L-function and its constant Lambda.

On the critical line the completed L-function is the cosine series
Xi(x) = Phi_0 + sum_{n=1..g} Phi_n * 2cos(nx); its deformation multiplies
the n-th coefficient by e^(t n^2):

    Xi_t(x) = Phi_0 + sum_{n=1..g} Phi_n e^(t n^2) (e^(inx) + e^(-inx)).

Lambda is the threshold t above which Xi_t has only real zeros and below
which a nonreal zero exists; real-rootedness persists upward in t, and the
function-field Riemann hypothesis pins Lambda <= 0.  Substituting u = cos x
turns the question into whether a degree-g real polynomial G_t has all g of
its roots (with multiplicity) in [-1, 1]: that halves the degree, makes
Sturm counting applicable, and avoids tolerance ambiguity for self-inversive
polynomials on the unit circle.

Decision policy: the boolean is decided by companion-matrix eigenvalues and
cross-checked against a Sturm count of distinct roots in the closed
interval; a disagreement raises IndeterminateNearBoundary instead of

guessing.  Double roots of the L-polynomial itself (the Lambda = 0
certificate) are detected exactly over the integers, never in floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import chebyshev

from .errors import FFError, IndeterminateNearBoundary, RootFindingFailure
from .lfunction import LData, phi

TOL_T = 1e-8
TOL_ROOT = 1e-8
T_FLOOR = -30.0

EXACT_ZERO = "exact0"
NUMERIC = "numeric"
NEG_INFINITY = "neginf"
FLOOR_HIT = "floor"


@dataclass(frozen=True)
class XiSeries:
    """Coefficients Phi_0..Phi_g of the cosine series of a completed L-function."""

    q: int
    g: int
    phi: tuple

    def __post_init__(self):
        assert self.phi[self.g] > 0  # Phi_g = q^(g/2) since c_0 = 1


def xi_series(L: LData) -> XiSeries:
    return XiSeries(q=L.q, g=L.g, phi=tuple(phi(L, n) for n in range(L.g + 1)))


def xi_at(xs: XiSeries, t: float, x: float) -> float:
    """Xi_t(x) = Phi_0 + sum Phi_n e^(t n^2) 2cos(nx); real for real x."""
    total = xs.phi[0]
    for n in range(1, xs.g + 1):
        total += xs.phi[n] * math.exp(t * n * n) * 2.0 * math.cos(n * x)
    return total


def cos_poly(xs: XiSeries, t: float) -> np.ndarray:
    """Coefficients (ascending in u) of G_t with G_t(cos x) = Xi_t(x).

    Expands 2cos(nx) = 2 T_n(cos x) through the Chebyshev basis; the leading
    coefficient is 2 Phi_g e^(t g^2) 2^(g-1), never zero.
    """
    cheb = [xs.phi[0]] + [2.0 * xs.phi[n] * math.exp(t * n * n)
                          for n in range(1, xs.g + 1)]
    return chebyshev.cheb2poly(np.array(cheb))


def _cos_poly_balanced(xs: XiSeries, t: float) -> np.ndarray:
    # G_t rescaled by e^(-t g^2 / 2): same roots, but representable for
    # deeply negative t where the raw leading coefficient underflows
    g = xs.g
    shift = -t * g * g / 2.0
    cheb = [xs.phi[0] * math.exp(min(shift, 700.0))]
    for n in range(1, g + 1):
        cheb.append(2.0 * xs.phi[n] * math.exp(t * n * n + shift))
    coeffs = chebyshev.cheb2poly(np.array(cheb))
    if not np.all(np.isfinite(coeffs)) or coeffs[-1] == 0.0:
        raise RootFindingFailure(
            f"deformed coefficients not representable at t={t} (genus {g})")
    return coeffs


def sturm_count(coeffs, a: float, b: float) -> int:
    """Number of distinct real roots in (a, b] by Sturm sign variations.

    Coefficients ascend.  Remainders whose leading coefficients fall below
    the chain's noise floor are truncated (the perturbation guard), which
    also makes the chain terminate at a near-gcd for multiple roots.
    """
    chain = [np.trim_zeros(np.array(coeffs, dtype=float), "b")]
    if chain[0].size <= 1:
        return 0
    d = np.polynomial.polynomial.polyder(chain[0])
    chain.append(np.trim_zeros(d, "b"))
    scale = max(np.max(np.abs(chain[0])), np.max(np.abs(chain[1])), 1.0)
    eps = 1e-13 * scale
    while chain[-1].size > 1:
        rem = -_poly_rem(chain[-2], chain[-1])
        rem = _trim_noise(rem, eps)
        if rem.size == 0:
            break
        chain.append(rem)

    def variations(x):
        signs = []
        for p in chain:
            v = _horner(p, x)
            if v != 0.0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for s, t_ in zip(signs, signs[1:]) if s != t_)

    return variations(a) - variations(b)


def _poly_rem(a, b):
    a = a.copy()
    db = b.size - 1
    for k in range(a.size - 1, db - 1, -1):
        f = a[k] / b[-1]
        if f:
            a[k - db: k + 1] -= f * b
    return a[:db] if db else np.array([])


def _trim_noise(p, eps):
    n = p.size
    while n and abs(p[n - 1]) <= eps:
        n -= 1
    return p[:n]


def _horner(p, x):
    acc = 0.0
    for c in p[::-1]:
        acc = acc * x + c
    return acc


def is_real_rooted(xs: XiSeries, t: float, tol_root: float = TOL_ROOT) -> bool:
    """True iff G_t has all g roots (with multiplicity) real and in [-1, 1].

    Eigenvalues of the companion matrix decide; a Sturm count of distinct
    roots in the widened interval must agree with the eigenvalue clustering,
    otherwise IndeterminateNearBoundary is raised for the caller to handle.
    """
    coeffs = _cos_poly_balanced(xs, t)
    if coeffs.size <= 1:
        raise RootFindingFailure("deformed polynomial degenerated to a constant")
    roots = np.roots(coeffs[::-1])
    if not np.all(np.isfinite(roots)):
        raise RootFindingFailure(f"eigenvalue iteration failed at t={t}")
    scale = max(1.0, float(np.max(np.abs(roots))))
    lo, hi = -1.0 - tol_root, 1.0 + tol_root
    in_window = [z for z in roots
                 if abs(z.imag) <= tol_root * scale and lo <= z.real <= hi]
    all_real_in = len(in_window) == len(roots)

    sturm_n = sturm_count(coeffs, lo, hi)
    eig_distinct = _cluster_count(sorted(z.real for z in in_window), tol_root)
    if sturm_n != eig_distinct:
        raise IndeterminateNearBoundary(
            f"Sturm count {sturm_n} vs eigenvalue count {eig_distinct} at t={t}")
    return all_real_in


def _cluster_count(values, gap):
    count = 0
    prev = None
    for v in values:
        if prev is None or v - prev > gap:
            count += 1
        prev = v
    return count


def has_double_root(L: LData) -> bool:
    """Exact: does P(u) = sum c_n u^n share a factor with P' over the rationals?"""
    P = [Fraction(c) for c in L.c]
    dP = [k * P[k] for k in range(1, len(P))]
    return len(_frac_gcd(P, dP)) > 1


def _frac_gcd(a, b):
    a, b = list(a), list(b)
    while any(b):
        r = list(a)
        db = len(b) - 1
        for k in range(len(r) - 1, db - 1, -1):
            f = r[k] / b[-1]
            if f:
                for j in range(db + 1):
                    r[k - db + j] -= f * b[j]
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return a


def repeated_factor(L: LData):
    """Monic gcd(P, P') over the rationals, as a Fraction list (ascending)."""
    P = [Fraction(c) for c in L.c]
    dP = [k * P[k] for k in range(1, len(P))]
    g = _frac_gcd(P, dP)
    if len(g) > 1:
        lead = g[-1]
        return [v / lead for v in g]
    return [Fraction(1)]


@dataclass(frozen=True)
class LambdaResult:
    """Status-tagged De Bruijn-Newman constant.

    status is one of "exact0", "numeric", "neginf", "floor"; value and
    halfwidth are set for numeric results only.
    """

    status: str
    value: float | None
    halfwidth: float | None
    witness: str

    def to_json_dict(self) -> dict:
        return {"status": self.status, "value": self.value,
                "halfwidth": self.halfwidth, "witness": self.witness}


def compute_lambda(L: LData, tol_t: float = TOL_T, t_floor: float = T_FLOOR,
                   tol_root: float = TOL_ROOT, method: str = "auto") -> LambdaResult:
    """De Bruijn-Newman constant of the deformation of L.

    Resolution order:
      * a double root of the L-polynomial certifies Lambda = 0 exactly;
      * genus 1 with c_1 = 0 gives Lambda = -infinity (Xi_t is a pure
        rescaled cosine for every t);
      * genus 1 otherwise has the closed form log(|c_1| / (2 sqrt(q)));
      * otherwise bisect is_real_rooted over [t_floor, 0], relying on
        upward persistence of real-rootedness; reaching the floor while
        still real-rooted reports FloorHit, never -infinity.

    method="bisect" forces the generic path (used to validate the genus-1
    closed form against the search).
    """
    if has_double_root(L):
        g = repeated_factor(L)
        locs = np.roots(np.array([float(v) for v in reversed(g)]))
        where = ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in np.sort_complex(locs))
        return LambdaResult(EXACT_ZERO, 0.0, 0.0,
                            f"repeated inverse root(s) of modulus sqrt(q) at u = {where}")
    if method == "auto" and L.g == 1:
        c1 = L.c[1]
        if c1 == 0:
            return LambdaResult(
                NEG_INFINITY, None, None,
                "genus 1 with c_1 = 0: Xi_t = 2 sqrt(q) e^t cos(x) is real-rooted for all t")
        value = math.log(abs(c1) / (2.0 * math.sqrt(L.q)))
        return LambdaResult(NUMERIC, value, 0.0,
                            "genus-1 closed form log(|c_1| / (2 sqrt(q)))")
    return _bisect_lambda(L, tol_t, t_floor, tol_root)


def _bisect_lambda(L: LData, tol_t, t_floor, tol_root) -> LambdaResult:
    xs = xi_series(L)
    try:
        if is_real_rooted(xs, t_floor, tol_root):
            return LambdaResult(FLOOR_HIT, None, None,
                                f"still real-rooted at the probe floor t = {t_floor}")
        hi = 0.0
        if not is_real_rooted(xs, hi, tol_root):
            raise FFError(
                "Xi_0 is not real-rooted; contradicts the Riemann hypothesis bound")
        lo = t_floor
        while hi - lo > 2.0 * tol_t:
            mid = 0.5 * (lo + hi)
            if is_real_rooted(xs, mid, tol_root):
                hi = mid
            else:
                lo = mid
    except IndeterminateNearBoundary as exc:
        raise IndeterminateNearBoundary(str(exc), bracket=(t_floor, 0.0)) from exc
    value = 0.5 * (lo + hi)
    return LambdaResult(NUMERIC, value, 0.5 * (hi - lo),
                        f"nonreal deformed zero persists at t = {lo:.10g}")
