"""Exact arithmetic for odd-characteristic finite fields and for F_q[T].

A field context (:class:`FieldCtx`) fixes one concrete model of F_{p^r}: the
prime field F_p for r = 1, otherwise F_p[X]/(m(X)) for the lexicographically
smallest monic irreducible m of degree r, comparing coefficient vectors from
the constant term upward.  Extension fields F_{q^m} are built the same way on
top of an existing context, so towers such as F_3 -> F_9 -> F_{9^n} are
canonical and identical across runs and machines.

Elements are stored as integer codes in [0, q): the code is the little-endian
digit expansion of the coefficient vector over the base field.  A constant c
of the base field therefore keeps the code of c in every extension, which
makes subfield inclusion the identity on codes.  :class:`FieldElem` wraps a
code with operator overloading; performance-sensitive callers use the ``*_c``
methods on the context, which work on raw codes, or the ``bulk_*`` methods,
which work on numpy arrays of digit vectors.

Polynomials over a context (:class:`Poly`) are dense tuples of coefficient
codes, constant term first, trailing zeros stripped; the zero polynomial is
the empty tuple.  The text grammar accepted by :func:`parse_poly` (and used
by the command line and file formats) is: terms ``c*T^k``, ``T^k``, ``c``
joined by ``+``/``-``, coefficients decimal integers reduced mod p, variable
letter ``T``, whitespace insignificant.  Example: ``T^5+2*T+1``.  Extension
field constants outside the prime subfield are written as bracketed codes,
e.g. ``[5]*T^2``, which is an extension of the base grammar.
"""

from __future__ import annotations

import functools
import itertools
import re
from typing import Iterator

import numpy as np

from .errors import (
    ContextMismatch,
    EvenCharacteristic,
    FFError,
    NoEmbedding,
    NotMonic,
    NotPrime,
    ParseError,
    SizeExceeded,
    ZeroPolynomial,
)

ENUM_LIMIT = 2 ** 31        # hard ceiling for any single enumeration
TABLE_LIMIT = 1024          # full scalar op tables up to this field size
QC_TABLE_LIMIT = 1 << 20    # quadratic-character lookup tables up to this size
BULK_LIMIT = 1 << 21        # whole-field numpy enumeration cap
FACTOR_TABLE_LIMIT = 2_000_000  # cached factorization tables up to this many polys

_CTX_TOKEN = object()


def is_prime_int(n: int) -> bool:
    """Deterministic primality by trial division (desk-scale inputs)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Field contexts
# ---------------------------------------------------------------------------

class FieldCtx:
    """Arithmetic context for F_{p^r}, or for an extension of another context.

    Instances are canonical: :func:`field_make` and :meth:`extension` cache
    and reuse them, and context equality is object identity.  All state is
    immutable after construction, so contexts may be shared freely across
    threads or processes.
    """

    def __init__(self, p, base, rel_deg, modulus, _token=None):
        if _token is not _CTX_TOKEN:
            raise TypeError("use field_make() or FieldCtx.extension()")
        self.p = p
        self.base = base                  # None for the prime field
        self.rel_deg = rel_deg            # degree over the base
        self.modulus = modulus            # tuple of base codes, monic
        if base is None:
            self.q = p
            self.r = 1
        else:
            self.q = base.q ** rel_deg
            self.r = base.r * rel_deg
        self.one = 1 if self.q > 1 else 0
        self.neg_one = (p - 1) if base is None else base.neg_one
        self._ext_cache = {}
        self._qc_arr = None
        self._add_np = None
        self._mul_np = None
        self._inv_np = None
        if base is not None:
            self._red_rows = self._reduction_rows()
            if self.q <= TABLE_LIMIT:
                self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _reduction_rows(self):
        # digits of T^(m+i) mod modulus for i = 0..m-2, used to fold products
        base, m = self.base, self.rel_deg
        cur = [base.neg_c(c) for c in self.modulus[:m]]
        rows = [tuple(cur)]
        for _ in range(m - 2):
            top = cur[m - 1]
            cur = [0] + cur[: m - 1]
            if top:
                r0 = rows[0]
                cur = [base.add_c(cur[j], base.mul_c(top, r0[j])) for j in range(m)]
            rows.append(tuple(cur))
        return rows

    def _build_tables(self):
        q = self.q
        digits = self.bulk_digits(np.arange(q, dtype=np.int64))
        xa = digits[:, None, :]
        xb = digits[None, :, :]
        add = self._base_arr_add(np.broadcast_to(xa, (q, q, self.rel_deg)),
                                 np.broadcast_to(xb, (q, q, self.rel_deg)))
        self._add_np = self.bulk_encode(add.reshape(q * q, -1)).reshape(q, q).astype(np.int32)
        mul = self.bulk_mul(np.repeat(digits, q, axis=0), np.tile(digits, (q, 1)))
        self._mul_np = self.bulk_encode(mul).reshape(q, q).astype(np.int32)
        inv = np.zeros(q, dtype=np.int32)
        rows, cols = np.nonzero(self._mul_np == 1)
        inv[rows] = cols
        self._inv_np = inv
        self._add_list = self._add_np.ravel().tolist()
        self._mul_list = self._mul_np.ravel().tolist()
        self._inv_list = inv.tolist()

    def extension(self, m: int) -> "FieldCtx":
        """Degree-m extension of this field with its deterministic modulus."""
        if m == 1:
            return self
        ctx = self._ext_cache.get(m)
        if ctx is None:
            if self.q ** m > ENUM_LIMIT:
                raise SizeExceeded(f"extension field of size {self.q}^{m} exceeds bounds")
            modulus = _smallest_irreducible(self, m)
            ctx = FieldCtx(self.p, self, m, modulus, _token=_CTX_TOKEN)
            self._ext_cache[m] = ctx
        return ctx

    def __repr__(self):
        return f"F({self.p}^{self.r})" if self.r > 1 else f"F({self.p})"

    def __reduce__(self):
        if self.base is None:
            return (field_make, (self.p, 1))
        if self.base.base is None and self.base.rel_deg == 1:
            return (field_make, (self.p, self.rel_deg))
        return (FieldCtx.extension, (self.base, self.rel_deg))

    # -- scalar arithmetic on codes -------------------------------------------

    def add_c(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        if self._add_np is not None:
            return self._add_list[a * self.q + b]
        return self._undigits([self.base.add_c(x, y)
                               for x, y in zip(self._digits(a), self._digits(b))])

    def sub_c(self, a, b):
        return self.add_c(a, self.neg_c(b))

    def neg_c(self, a):
        if self.base is None:
            return (-a) % self.p
        base = self.base
        return self._undigits([base.neg_c(x) for x in self._digits(a)])

    def mul_c(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        if self._mul_np is not None:
            return self._mul_list[a * self.q + b]
        return self._undigits(self._mul_digits(self._digits(a), self._digits(b)))

    def inv_c(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._inv_np is not None:
            return self._inv_list[a]
        return self.pow_c(a, self.q - 2)

    def pow_c(self, a, e):
        if e < 0:
            a = self.inv_c(a)
            e = -e
        if a == 0:
            return self.one if e == 0 else 0
        e %= self.q - 1
        if self.base is None:
            return pow(a, e, self.p)
        result = self.one
        while e:
            if e & 1:
                result = self.mul_c(result, a)
            a = self.mul_c(a, a)
            e >>= 1
        return result

    def quad_char_code(self, a) -> int:
        """Legendre-style quadratic character of a code: 0, 1 or -1."""
        if a == 0:
            return 0
        if self._qc_arr is None and self.q <= QC_TABLE_LIMIT:
            self._qc_arr = self._build_qc_table()
        if self._qc_arr is not None:
            return int(self._qc_arr[a])
        s = self.pow_c(a, (self.q - 1) // 2)
        if s == self.one:
            return 1
        if s == self.neg_one:
            return -1
        raise FFError("quadratic character did not evaluate to +-1")

    def _build_qc_table(self):
        qc = np.full(self.q, -1, dtype=np.int8)
        qc[0] = 0
        if self.base is None:
            x = np.arange(self.q, dtype=np.int64)
            qc[(x * x) % self.p] = 1
            qc[0] = 0
            return qc
        try:
            digits = self.bulk_all()
            sq = self.bulk_encode(self.bulk_mul(digits, digits))
        except FFError:
            sq = [self.mul_c(c, c) for c in range(self.q)]  # slow tower fallback
        qc[np.asarray(sq, dtype=np.int64)] = 1
        qc[0] = 0
        return qc

    # -- digit vectors --------------------------------------------------------

    def _digits(self, code):
        bq = self.base.q
        out = []
        for _ in range(self.rel_deg):
            out.append(code % bq)
            code //= bq
        return out

    def _undigits(self, ds):
        bq = self.base.q
        code = 0
        for d in reversed(ds):
            code = code * bq + d
        return code

    def _mul_digits(self, A, B):
        base, m = self.base, self.rel_deg
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(A):
            if ai:
                for j, bj in enumerate(B):
                    if bj:
                        prod[i + j] = base.add_c(prod[i + j], base.mul_c(ai, bj))
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                row = self._red_rows[k - m]
                for j in range(m):
                    if row[j]:
                        prod[j] = base.add_c(prod[j], base.mul_c(c, row[j]))
        return prod[:m]

    # -- bulk (numpy) arithmetic on arrays of digit vectors --------------------

    def _base_arr_add(self, X, Y):
        base = self.base
        if base.base is None:
            return (X + Y) % base.p
        if base._add_np is not None:
            return base._add_np[X, Y]
        raise FFError("bulk arithmetic unsupported at this tower depth")

    def _base_arr_mul(self, X, Y):
        base = self.base
        if base.base is None:
            return (X.astype(np.int64) * Y) % base.p
        if base._mul_np is not None:
            return base._mul_np[X, Y]
        raise FFError("bulk arithmetic unsupported at this tower depth")

    def bulk_all(self):
        """(q, rel_deg) array of the digit vectors of every element, in code order."""
        if self.q > BULK_LIMIT:
            raise SizeExceeded(f"field of size {self.q} exceeds bulk enumeration cap")
        return self.bulk_digits(np.arange(self.q, dtype=np.int64))

    def bulk_digits(self, codes):
        if self.base is None:
            return np.asarray(codes, dtype=np.int64).reshape(-1, 1)
        bq = self.base.q
        out = np.empty((len(codes), self.rel_deg), dtype=np.int64)
        c = np.asarray(codes, dtype=np.int64).copy()
        for i in range(self.rel_deg):
            out[:, i] = c % bq
            c //= bq
        return out

    def bulk_encode(self, X):
        if self.base is None:
            return X[:, 0].copy()
        bq = self.base.q
        weights = bq ** np.arange(self.rel_deg, dtype=np.int64)
        return X @ weights

    def bulk_mul(self, X, Y):
        if self.base is None:
            return (X * Y) % self.p
        base, m = self.base, self.rel_deg
        prime = base.base is None
        if prime:
            acc = np.zeros((X.shape[0], 2 * m - 1), dtype=np.int64)
            for i in range(m):
                xi = X[:, i]
                for j in range(m):
                    acc[:, i + j] += xi * Y[:, j]
            acc %= base.p
        else:
            acc = np.zeros((X.shape[0], 2 * m - 1), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    acc[:, i + j] = self._base_arr_add(acc[:, i + j],
                                                       self._base_arr_mul(X[:, i], Y[:, j]))
        for k in range(2 * m - 2, m - 1, -1):
            c = acc[:, k]
            row = self._red_rows[k - m]
            for j in range(m):
                if row[j]:
                    if prime:
                        acc[:, j] += c * row[j]
                    else:
                        acc[:, j] = self._base_arr_add(
                            acc[:, j], self._base_arr_mul(c, np.int64(row[j])))
        out = acc[:, :m]
        if prime:
            out = out % base.p
        return out

    def bulk_add_const(self, X, c_code):
        """Add a base-field constant (code) to every digit vector in place-free form."""
        if self.base is None:
            return (X + c_code) % self.p
        out = X.copy()
        out[:, 0] = self._base_arr_add(out[:, 0], np.int64(c_code))
        return out

    # -- elements ---------------------------------------------------------------

    def element(self, code: int) -> "FieldElem":
        if not 0 <= code < self.q:
            raise ContextMismatch(f"code {code} outside field of size {self.q}")
        return FieldElem(self, code)

    def from_int(self, n: int) -> "FieldElem":
        """The prime-subfield constant n mod p (same code at every tower level)."""
        return FieldElem(self, n % self.p)

    def zero_elem(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one_elem(self) -> "FieldElem":
        return FieldElem(self, self.one)

    def elements(self) -> Iterator["FieldElem"]:
        for code in range(self.q):
            yield FieldElem(self, code)

    def tower_chain(self):
        chain = [self]
        while chain[-1].base is not None:
            chain.append(chain[-1].base)
        return chain


class FieldElem:
    """Element of a :class:`FieldCtx`, wrapping an integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def rep(self):
        """Coefficient vector over the base field (residues mod p at depth one)."""
        if self.ctx.base is None:
            return (self.code,)
        return tuple(self.ctx._digits(self.code))

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise ContextMismatch("elements of different field contexts")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.add_c(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub_c(self.code, c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul_c(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul_c(self.code, self.ctx.inv_c(c)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg_c(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow_c(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p and self.code < self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __repr__(self):
        return f"{self.ctx!r}:{self.code}"


def field_make(p: int, r: int = 1) -> FieldCtx:
    """Deterministic context for F_{p^r}; rejects even or composite p."""
    return _field_make(p, r)


@functools.lru_cache(maxsize=None)
def _field_make(p: int, r: int) -> FieldCtx:
    if not isinstance(p, int) or not is_prime_int(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic-2 fields are not supported")
    if r < 1:
        raise ParseError("extension degree must be >= 1")
    if p ** r > ENUM_LIMIT:
        raise SizeExceeded(f"field of size {p}^{r} exceeds machine bounds")
    if r == 1:
        # identity placeholder modulus: the monic linear polynomial T
        return FieldCtx(p, None, 1, (0, 1), _token=_CTX_TOKEN)
    return _field_make(p, 1).extension(r)


def parse_field(spec) -> FieldCtx:
    """Parse a field given as q, "q" or "p^r" into its context."""
    if isinstance(spec, FieldCtx):
        return spec
    text = str(spec).strip()
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?", text)
    if not m:
        raise ParseError(f"cannot parse field spec {spec!r}")
    n = int(m.group(1))
    if m.group(2):
        return field_make(n, int(m.group(2)))
    if n < 2:
        raise ParseError(f"field size must be >= 3, got {n}")
    # decompose a prime power q = p^r
    p = n
    for f in range(2, n):
        if f * f > n:
            break
        if n % f == 0:
            p = f
            break
    r = 0
    m_ = n
    while m_ % p == 0 and m_ > 1:
        m_ //= p
        r += 1
    if m_ != 1:
        raise NotPrime(f"{n} is not a prime power")
    return field_make(p, r)


def quad_char(ctx: FieldCtx, e: FieldElem) -> int:
    """Quadratic character of e in ctx: 0 for zero, else e^((q-1)/2) as +-1."""
    if e.ctx is not ctx:
        raise ContextMismatch("element does not belong to the given context")
    return ctx.quad_char_code(e.code)


def trace_to_subfield(e: FieldElem, target: FieldCtx) -> FieldElem:
    """Field trace of e down to a subfield along the construction tower.

    At each tower level E/B the trace is sum(e^(|B|^i)) for i < [E:B];
    levels are composed when the target sits more than one step down.
    """
    ctx = e.ctx
    chain = ctx.tower_chain()
    if target not in chain:
        raise NoEmbedding(f"{target!r} is not a subfield of {ctx!r} along its tower")
    code = e.code
    while ctx is not target:
        base = ctx.base
        acc = code
        frob = code
        for _ in range(ctx.rel_deg - 1):
            frob = ctx.pow_c(frob, base.q)
            acc = ctx.add_c(acc, frob)
        if acc >= base.q:
            raise FFError("trace did not land in the base field")
        code = acc
        ctx = base
    return FieldElem(target, code)


def embed(e: FieldElem, ext: FieldCtx) -> FieldElem:
    """Inclusion of e into an extension built on top of its context."""
    if e.ctx not in ext.tower_chain():
        raise NoEmbedding(f"{e.ctx!r} is not a subfield of {ext!r} along its tower")
    return FieldElem(ext, e.code)  # little-endian codes make inclusion the identity


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial over a field context.

    Coefficients are element codes, constant term first, trailing zeros
    stripped; the zero polynomial is the empty tuple and has degree -1.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = _strip(tuple(coeffs))

    @classmethod
    def from_ints(cls, ctx, ints):
        """Build from integer coefficients, reduced into the prime subfield."""
        return cls(ctx, [n % ctx.p for n in ints])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (ctx.one,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, ctx.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    def _check(self, other):
        if other.ctx is not self.ctx:
            raise ContextMismatch("polynomials over different contexts")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add_c
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ctx.neg_c
        return Poly(self.ctx, [neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.ctx)
        ctx = self.ctx
        if ctx.base is None:
            p = ctx.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(ctx, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = ctx.add_c(out[i + j], ctx.mul_c(ai, bj))
        return Poly(ctx, out)

    def scale(self, c_code):
        mul = self.ctx.mul_c
        return Poly(self.ctx, [mul(c_code, c) for c in self.coeffs])

    def monic(self):
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        if self.is_monic:
            return self
        return self.scale(self.ctx.inv_c(self.coeffs[-1]))

    def divmod(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = other.degree
        lb_inv = ctx.inv_c(other.coeffs[-1])
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = ctx.mul_c(c, lb_inv)
                quo[k - db] = f
                for j in range(db + 1):
                    rem[k - db + j] = ctx.sub_c(rem[k - db + j], ctx.mul_c(f, other.coeffs[j]))
        return Poly(ctx, quo), Poly(ctx, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self):
        ctx = self.ctx
        out = []
        for k in range(1, len(self.coeffs)):
            out.append(ctx.mul_c(k % ctx.p, self.coeffs[k]))
        return Poly(ctx, out)

    def eval_code(self, x_code):
        ctx = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add_c(ctx.mul_c(acc, x_code), c)
        return acc

    def __call__(self, x: FieldElem) -> FieldElem:
        if x.ctx is not self.ctx:
            raise ContextMismatch("evaluation point from a different context")
        return FieldElem(self.ctx, self.eval_code(x.code))

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        ctx = self.ctx
        if ctx.base is None:
            res = _powmod_prime(ctx.p, list((self % modulus).coeffs),
                                e, list(modulus.coeffs))
            return Poly(ctx, res)
        result = Poly.one(ctx)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.ctx is self.ctx
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.ctx!r}, {format_poly(self)!r})"


def _powmod_prime(p, a, e, m):
    """pow(a, e) mod m over F_p on plain int lists; m monic."""
    dm = len(m) - 1
    a = (a + [0] * dm)[:dm]

    def mulmod(x, y):
        prod = [0] * (2 * dm - 1 if dm > 1 else 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        for k in range(len(prod) - 1, dm - 1, -1):
            c = prod[k] % p
            if c:
                off = k - dm
                for j in range(dm):
                    prod[off + j] -= c * m[j]
        return [v % p for v in prod[:dm]]

    result = [0] * dm
    if dm:
        result[0] = 1
    while e:
        if e & 1:
            result = mulmod(result, a)
        a = mulmod(a, a)
        e >>= 1
    return result


# -- text grammar -------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:"
    r"(?:(?P<coef>\d+|\[\d+\])\*?)?T(?:\^(?P<exp>\d+))?"
    r"|(?P<const>\d+|\[\d+\])"
    r")$"
)


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Parse the polynomial text grammar over the given context."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial string")
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs = {}
    for raw in s.split("+"):
        if not raw:
            raise ParseError(f"malformed polynomial {text!r}")
        negative = raw.startswith("-")
        if negative:
            raw = raw[1:]
        m = _TERM_RE.match(raw)
        if not m:
            raise ParseError(f"bad term {raw!r} in polynomial {text!r}")
        if m.group("const") is not None:
            k = 0
            ctext = m.group("const")
        else:
            k = int(m.group("exp")) if m.group("exp") else 1
            ctext = m.group("coef") if m.group("coef") else "1"
        if ctext.startswith("["):
            code = int(ctext[1:-1])
            if not 0 <= code < ctx.q:
                raise ParseError(f"coefficient code {code} outside field of size {ctx.q}")
        else:
            code = int(ctext) % ctx.p
        if negative:
            code = ctx.neg_c(code)
        coeffs[k] = ctx.add_c(coeffs.get(k, 0), code)
    n = max(coeffs) + 1
    out = [0] * n
    for k, c in coeffs.items():
        out[k] = c
    return Poly(ctx, out)


def format_poly(f: Poly) -> str:
    """Canonical text form; inverse of parse_poly on its own output."""
    if f.is_zero:
        return "0"
    ctx = f.ctx
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        if c < ctx.p:
            ctext = str(c)
        else:
            ctext = f"[{c}]"  # extension-field constant: bracketed code
        if k == 0:
            parts.append(ctext)
        elif ctext == "1":
            parts.append("T" if k == 1 else f"T^{k}")
        else:
            parts.append(f"{ctext}*T" if k == 1 else f"{ctext}*T^{k}")
    return "+".join(parts)


# -- irreducibility, enumeration, factorization --------------------------------

def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test: T^(q^n) = T mod f and coprimality at maximal subdegrees."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    ctx = f.ctx
    f = f.monic()
    x = Poly.x(ctx)
    h = x.pow_mod(ctx.q ** n, f)
    if h != x % f:
        return False
    for d in _prime_divisors(n):
        g = x.pow_mod(ctx.q ** (n // d), f) - (x % f)
        if g.gcd(f).degree != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_irreducible(ctx: FieldCtx, m: int):
    for tail in itertools.product(range(ctx.q), repeat=m):
        f = Poly(ctx, tail + (ctx.one,))
        if is_irreducible(f):
            return tail + (ctx.one,)
    raise FFError("no irreducible polynomial found")  # unreachable: fields of every degree exist


def monic_enum(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All q^n monic polynomials of degree n, constant-term-first lexicographic order."""
    if n < 0:
        raise ParseError("degree must be >= 0")
    if ctx.q ** n > ENUM_LIMIT:
        raise SizeExceeded(f"enumeration of {ctx.q}^{n} polynomials exceeds bounds")
    return _monic_enum_iter(ctx, n)


def _monic_enum_iter(ctx, n):
    if n == 0:
        yield Poly.one(ctx)
        return
    for tail in itertools.product(range(ctx.q), repeat=n):
        yield Poly(ctx, tail + (ctx.one,))


@functools.lru_cache(maxsize=None)
def irreducibles(ctx: FieldCtx, d: int):
    """All monic irreducibles of degree d, in enumeration order (cached)."""
    if ctx.q ** d > 10 ** 6:
        raise SizeExceeded(f"irreducible enumeration at degree {d} over q={ctx.q} too large")
    return tuple(f for f in monic_enum(ctx, d) if is_irreducible(f))


def poly_is_squarefree(f: Poly) -> bool:
    """True iff gcd(f, f') is a nonzero constant."""
    if f.is_zero:
        raise ZeroPolynomial("squarefreeness of the zero polynomial is undefined")
    if f.degree == 0:
        return True
    df = f.derivative()
    if df.is_zero:
        return False  # f is a p-th power
    return f.gcd(df).degree == 0


def poly_factor(f: Poly):
    """Factor a monic polynomial by trial division against enumerated irreducibles.

    Returns a list of (irreducible, multiplicity) pairs sorted by (degree,
    coefficient order); candidates only need degree <= deg(f)/2, anything
    left over is itself irreducible.
    """
    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if not f.is_monic:
        raise NotMonic("factorization requires a monic polynomial")
    work = f
    out = []
    d = 1
    while 2 * d <= work.degree:
        for P in irreducibles(f.ctx, d):
            if work.degree < 2 * d:
                break
            mult = 0
            while True:
                quo, rem = work.divmod(P)
                if rem.is_zero:
                    work = quo
                    mult += 1
                else:
                    break
            if mult:
                out.append((P, mult))
        d += 1
    if work.degree >= 1:
        out.append((work, 1))
    out.sort(key=lambda pm: (pm[0].degree, pm[0].coeffs))
    return out


def kronecker(D: Poly, f: Poly) -> int:
    """Quadratic residue symbol (D/f) in F_q[T], multiplicative in f.

    For irreducible P the symbol is (D mod P)^((q^deg P - 1)/2) reduced mod P
    and mapped to {-1, 0, 1}; it extends multiplicatively over the
    factorization of f, with (D/1) = 1.
    """
    if D.ctx is not f.ctx:
        raise ContextMismatch("polynomials over different contexts")
    if f.is_zero:
        raise ZeroPolynomial("Kronecker symbol with zero denominator")
    if not D.is_monic or not f.is_monic:
        raise NotMonic("Kronecker symbol requires monic arguments")
    result = 1
    for P, mult in poly_factor(f):
        s = residue_symbol(D, P)
        if s == 0:
            return 0
        if mult % 2 == 1:
            result *= s
    return result


def residue_symbol(D: Poly, P: Poly) -> int:
    """(D/P) for irreducible monic P: the quadratic character in F_q[T]/(P)."""
    ctx = D.ctx
    Dp = D % P
    if Dp.is_zero:
        return 0
    e = (ctx.q ** P.degree - 1) // 2
    s = Dp.pow_mod(e, P)
    if s.coeffs == (ctx.one,):
        return 1
    if s.coeffs == (ctx.neg_one,):
        return -1
    raise FFError("residue symbol undefined: modulus is not irreducible")


class FactorTable:
    """Factorizations of every monic polynomial up to a degree bound.

    Built multiplicatively: each composite is generated exactly once as
    (smallest irreducible factor) * (cofactor whose factors all rank at
    least as high), and whatever monic polynomial is never generated that
    way is a newly discovered irreducible.  Equivalent to trial division
    but far cheaper when q^d reaches ~10^5.

    Attributes:
        irr:  irreducibles in rank order (degree, then enumeration order).
        fact: per-degree dict, coefficient tuple -> ascending tuple of ranks
              (repeats encode multiplicity).
    """

    def __init__(self, ctx: FieldCtx, max_deg: int = 0):
        self.ctx = ctx
        self.irr = []
        self.fact = [{(ctx.one,): ()}]
        self.max_deg = 0
        if max_deg:
            self.ensure(max_deg)

    def ensure(self, max_deg: int):
        total = sum(self.ctx.q ** d for d in range(max_deg + 1))
        if total > FACTOR_TABLE_LIMIT:
            raise SizeExceeded(f"factor table with {total} entries exceeds cap")
        while self.max_deg < max_deg:
            self._extend_one()

    def _extend_one(self):
        d = self.max_deg + 1
        ctx = self.ctx
        comp = {}
        for rank, P in enumerate(self.irr):
            k = P.degree
            if k >= d:
                break
            for h_coeffs, h_ranks in self.fact[d - k].items():
                if h_ranks and h_ranks[0] < rank:
                    continue
                prod = P * Poly(ctx, h_coeffs)
                comp[prod.coeffs] = (rank,) + h_ranks
        for f in monic_enum(ctx, d):
            if f.coeffs not in comp:
                rank = len(self.irr)
                self.irr.append(f)
                comp[f.coeffs] = (rank,)
        self.fact.append(comp)
        self.max_deg = d

    def factorization(self, f: Poly):
        """(irreducible, multiplicity) pairs for a table entry."""
        ranks = self.fact[f.degree][f.coeffs]
        out = []
        for rank in ranks:
            if out and out[-1][0] is self.irr[rank]:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((self.irr[rank], 1))
        return out


_factor_tables = {}


def factor_table(ctx: FieldCtx, max_deg: int) -> FactorTable:
    """Shared, growable factorization table for a context."""
    tbl = _factor_tables.get(id(ctx))
    if tbl is None:
        tbl = FactorTable(ctx)
        _factor_tables[id(ctx)] = tbl
    tbl.ensure(max_deg)
    return tbl
