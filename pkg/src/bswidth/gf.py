"""Exact arithmetic in GF(p^k).

Fields are modelled by a deterministic modulus polynomial (the
lexicographically smallest monic irreducible, coefficients compared
low-degree-first), so the same (p, k) yields bit-identical arithmetic on
every run.  Elements are indexed 0..q-1 by their coefficient vector read as
base-p digits, low degree first; index order is also the fixed enumeration
order used by the deterministic solvers.

For q <= TABLE_CAP full lookup tables are built once per field and shared
with the group-engine kernels; larger fields fall back to direct polynomial
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arith import is_prime

FIELD_CAP = 1 << 16  # make_field refuses q beyond this unless told otherwise
TABLE_CAP = 256  # lookup tables (and hence the group kernels) need q <= 256


class FieldError(ValueError):
    pass


# -- polynomial helpers over GF(p), coefficient tuples low-degree-first


def _ptrim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _pdivmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    if len(a) - 1 < db:
        return (), _ptrim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = (c * inv_lb) % p
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _ptrim(q), _ptrim(a)


def _ppowmod(a, e, m, p):
    result = (1,)
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(poly, p):
    """poly monic of degree k >= 1 over GF(p)."""
    k = len(poly) - 1
    if k == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    x = (0, 1)
    # x^(p^k) == x mod poly, and gcd(x^(p^(k/l)) - x, poly) == 1 for primes l | k
    xq = _ppowmod(x, p**k, poly, p)
    if xq != x:
        return False
    for l in range(2, k + 1):
        if k % l == 0 and is_prime(l):
            xe = _ppowmod(x, p ** (k // l), poly, p)
            diff = list(xe) + [0] * (2 - len(xe))
            diff[1] = (diff[1] - 1) % p
            g = _pgcd(_ptrim(diff), poly, p)
            if len(g) - 1 > 0:
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)  # the prime field, modulus x
    # scan candidates in base-p index order (low-degree digit least significant),
    # i.e. coefficient vectors compared low-degree-first as integers
    for n in range(p**k):
        coeffs = []
        m = n
        for _ in range(k):
            m, r = divmod(m, p)
            coeffs.append(r)
        poly = tuple(coeffs) + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """A fixed model of GF(p^k): prime, degree and modulus polynomial."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.k

    def __str__(self):
        return f"GF({self.q})"

    # -- index <-> coefficient vector

    def coeffs_of(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return tuple(out)

    def index_of(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = list(_pmod(coeffs, self.modulus, self.p))
        idx = 0
        for c in reversed(coeffs[: self.k] + [0] * (self.k - len(coeffs))):
            idx = idx * self.p + (c % self.p)
        return idx

    # -- element constructors

    def element(self, value) -> "FieldElem":
        """Coerce an integer scalar (mod p) or a coefficient tuple."""
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise FieldError("field mismatch")
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.index_of(value))

    def from_index(self, idx: int) -> "FieldElem":
        if not 0 <= idx < self.q:
            raise FieldError(f"index {idx} out of range for {self}")
        return FieldElem(self, idx)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The residue of x; a generator of the extension (not of the units)."""
        return FieldElem(self, self.p if self.k > 1 else 1)

    def elements(self):
        return (FieldElem(self, i) for i in range(self.q))

    # -- index-level arithmetic (lookup tables when available)

    def tables(self) -> "GFTables":
        tab = _TABLES.get(self)
        if tab is None:
            if self.q > TABLE_CAP:
                raise FieldError(f"{self}: no lookup tables beyond q={TABLE_CAP}")
            tab = GFTables(self)
            _TABLES[self] = tab
        return tab

    def fadd(self, a: int, b: int) -> int:
        if self.q <= TABLE_CAP:
            t = self.tables()
            return t.add[a * self.q + b]
        return self._poly_add(a, b)

    def fmul(self, a: int, b: int) -> int:
        if self.q <= TABLE_CAP:
            t = self.tables()
            return t.mul[a * self.q + b]
        return self._poly_mul(a, b)

    def fneg(self, a: int) -> int:
        if self.q <= TABLE_CAP:
            return self.tables().neg[a]
        return self.index_of([(-c) % self.p for c in self.coeffs_of(a)])

    def fsub(self, a: int, b: int) -> int:
        return self.fadd(a, self.fneg(b))

    def finv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.q <= TABLE_CAP:
            return self.tables().inv[a]
        return self._poly_inv(a)

    def ffrob(self, a: int, m: int = 1) -> int:
        """a -> a^(p^m)."""
        if self.q <= TABLE_CAP:
            t = self.tables()
            for _ in range(m % self.k if self.k > 1 else 0):
                a = t.frob[a]
            return a
        out = a
        for _ in range(m % self.k if self.k > 1 else 0):
            out = self._poly_pow(out, self.p)
        return out

    def fconj(self, a: int) -> int:
        """a -> a^q0 with q0 = p^(k/2); only for even k."""
        if self.k % 2:
            raise FieldError(f"{self} is not a quadratic extension")
        return self.ffrob(a, self.k // 2)

    def fpow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.finv(a), -e
        out, base = 1, a
        while e:
            if e & 1:
                out = self.fmul(out, base)
            base = self.fmul(base, base)
            e >>= 1
        return out

    # -- raw polynomial paths (work at any q)

    def _poly_add(self, a, b):
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        return self.index_of([(x + y) % self.p for x, y in zip(ca, cb)])

    def _poly_mul(self, a, b):
        prod = _pmul(self.coeffs_of(a), self.coeffs_of(b), self.p)
        return self.index_of(_pmod(prod, self.modulus, self.p))

    def _poly_pow(self, a, e):
        return self.index_of(_ppowmod(self.coeffs_of(a), e, self.modulus, self.p))

    def _poly_inv(self, a):
        # extended Euclid in GF(p)[x]
        r0, r1 = self.modulus, _ptrim(list(self.coeffs_of(a)))
        s0, s1 = (), (1,)
        while r1:
            q, r = _pdivmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _ptrim([(x - y) % self.p for x, y in _zippad(s0, _pmul(q, s1, self.p))])
        # r0 = gcd (a unit since modulus irreducible and a != 0)
        c = pow(r0[0], self.p - 2, self.p)
        return self.index_of(_pmul(s0, (c,), self.p))


def _zippad(a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return zip(a, b)


class GFTables:
    """Dense index-level lookup tables for one field (q <= TABLE_CAP)."""

    def __init__(self, spec: FieldSpec):
        q, p = spec.q, spec.p
        self.spec = spec
        self.q = q
        add = bytearray(q * q)
        mul = bytearray(q * q)
        coeffs = [spec.coeffs_of(i) for i in range(q)]
        for a in range(q):
            ca = coeffs[a]
            for b in range(a, q):
                cb = coeffs[b]
                s = spec.index_of([(x + y) % p for x, y in zip(ca, cb)])
                m = spec.index_of(_pmod(_pmul(ca, cb, p), spec.modulus, p))
                add[a * q + b] = add[b * q + a] = s
                mul[a * q + b] = mul[b * q + a] = m
        self.add = bytes(add)
        self.mul = bytes(mul)
        neg = bytearray(q)
        inv = bytearray(q)
        frob = bytearray(q)
        for a in range(q):
            neg[a] = spec.index_of([(-c) % p for c in coeffs[a]])
            if a:
                inv[a] = spec._poly_inv(a)
            frob[a] = spec._poly_pow(a, p)
        self.neg = bytes(neg)
        self.inv = bytes(inv)
        self.frob = bytes(frob)  # a -> a^p

    def frob_power_table(self, m: int) -> bytes:
        """Entrywise map a -> a^(p^m) as a flat table."""
        out = bytes(range(self.q))
        for _ in range(m % self.spec.k if self.spec.k > 1 else 0):
            out = bytes(self.frob[v] for v in out)
        return out


_TABLES: dict[FieldSpec, GFTables] = {}
_FIELDS: dict[tuple[int, int], FieldSpec] = {}


def make_field(p: int, k: int, cap: int = FIELD_CAP) -> FieldSpec:
    """GF(p^k) with the deterministic smallest modulus; cached per (p, k)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("k must be positive")
    if p**k > cap:
        raise FieldError(f"q = {p}^{k} exceeds the configured cap {cap}")
    spec = _FIELDS.get((p, k))
    if spec is None:
        spec = FieldSpec(p, k, _smallest_irreducible(p, k))
        _FIELDS[(p, k)] = spec
    return spec


class FieldElem:
    """Immutable element of a FieldSpec, stored by enumeration index."""

    __slots__ = ("spec", "idx")

    def __init__(self, spec: FieldSpec, idx: int):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "idx", idx)

    def __setattr__(self, *a):
        raise AttributeError("FieldElem is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs_of(self.idx)

    def is_zero(self) -> bool:
        return self.idx == 0

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise FieldError("field mismatch")
            return other
        if isinstance(other, int):
            return FieldElem(self.spec, other % self.spec.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.spec, self.spec.fadd(self.idx, o.idx))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.spec, self.spec.fsub(self.idx, o.idx))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.spec, self.spec.fmul(self.idx, o.idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElem(self.spec, self.spec.fmul(self.idx, self.spec.finv(o.idx)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return FieldElem(self.spec, self.spec.fneg(self.idx))

    def __pow__(self, e: int):
        return FieldElem(self.spec, self.spec.fpow(self.idx, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.finv(self.idx))

    def frobenius(self, m: int = 1) -> "FieldElem":
        return FieldElem(self.spec, self.spec.ffrob(self.idx, m))

    def conj(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.fconj(self.idx))

    def multiplicative_order(self) -> int:
        if self.idx == 0:
            raise FieldError("0 has no multiplicative order")
        o, x = 1, self.idx
        while x != 1:
            x = self.spec.fmul(x, self.idx)
            o += 1
        return o

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElem(self.spec, other % self.spec.p)
        return isinstance(other, FieldElem) and self.spec == other.spec and self.idx == other.idx

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.idx))

    def __repr__(self):
        if self.spec.k == 1:
            return f"{self.idx}"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                if d == 0:
                    terms.append(f"{c}")
                else:
                    xs = "x" if d == 1 else f"x^{d}"
                    terms.append(xs if c == 1 else f"{c}{xs}")
        return "+".join(terms) if terms else "0"


# -- spec-level operations


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.spec != b.spec:
        raise FieldError("field mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown op {op!r}")


def frobenius(a: FieldElem, m: int) -> FieldElem:
    if m < 0:
        raise FieldError("frobenius exponent must be nonnegative")
    return a.frobenius(m)


def conj(a: FieldElem) -> FieldElem:
    """a -> a^q0 over GF(q0^2); the involution fixing exactly the subfield."""
    return a.conj()


def solve_special(spec: FieldSpec, which: str) -> FieldElem:
    """First element (in enumeration order) solving one of the stock equations
    over a quadratic extension: trace_zero (nonzero b with b+conj(b)=0),
    trace_minus_one (g+conj(g)=-1), norm_minus_one (m*conj(m)=-1)."""
    if spec.k % 2:
        raise FieldError(f"{spec} is not a quadratic extension")
    minus_one = spec.fneg(1)
    for i in range(spec.q):
        c = spec.fconj(i)
        if which == "trace_zero":
            if i != 0 and spec.fadd(i, c) == 0:
                return FieldElem(spec, i)
        elif which == "trace_minus_one":
            if spec.fadd(i, c) == minus_one:
                return FieldElem(spec, i)
        elif which == "norm_minus_one":
            if spec.fmul(i, c) == minus_one:
                return FieldElem(spec, i)
        else:
            raise FieldError(f"unknown equation {which!r}")
    raise FieldError(f"no solution for {which} in {spec}")
