"""Matrices over finite fields, hermitian/alternating forms, the tau and phi
automorphisms, classical group orders, and certified generator sets.

Convention throughout: vectors are rows and matrices act on the right, so a
matrix preserves a form G exactly when A * G * sigma(A)^T == G (sigma = the
entrywise conjugation for hermitian forms, identity for bilinear ones).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, gcd, prod

from . import gf
from .arith import prime_power_split
from .perm import Perm

KINDS = ("GL", "SL", "GU", "SU", "Sp", "PGL", "PSL", "PGU", "PSU", "PSp", "Alt", "Sym")


class MatrixError(ValueError):
    pass


class CertificationError(RuntimeError):
    pass


class Mat:
    """Square matrix over a FieldSpec; entries stored as field indices."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: gf.FieldSpec, n: int, entries):
        ent = []
        for v in entries:
            if isinstance(v, gf.FieldElem):
                if v.spec != field:
                    raise MatrixError("entry from wrong field")
                ent.append(v.idx)
            elif isinstance(v, int):
                ent.append(v % field.p)
            else:
                raise MatrixError(f"bad entry {v!r}")
        if len(ent) != n * n:
            raise MatrixError("entry count mismatch")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(ent))

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- constructors

    @staticmethod
    def from_indices(field, n, indices) -> "Mat":
        """Entries given directly as field indices (no scalar coercion)."""
        idx = tuple(indices)
        if len(idx) != n * n or any(not 0 <= v < field.q for v in idx):
            raise MatrixError("bad index entries")
        m = Mat.__new__(Mat)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "n", n)
        object.__setattr__(m, "entries", idx)
        return m

    @staticmethod
    def from_rows(field, rows) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows)
        return Mat(field, n, [v for r in rows for v in r])

    @staticmethod
    def identity(field, n) -> "Mat":
        return Mat(field, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def scalar(field, n, c) -> "Mat":
        c = field.element(c) if not isinstance(c, gf.FieldElem) else c
        return Mat(field, n, [c if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def diagonal(field, diag) -> "Mat":
        diag = list(diag)
        n = len(diag)
        vals: list = [0] * (n * n)
        for i, d in enumerate(diag):
            vals[i * n + i] = d
        return Mat(field, n, vals)

    # -- access

    def __getitem__(self, ij) -> gf.FieldElem:
        i, j = ij
        return gf.FieldElem(self.field, self.entries[i * self.n + j])

    def rows(self):
        n = self.n
        return [self.entries[i * n : (i + 1) * n] for i in range(n)]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.n, self.entries))

    def __repr__(self):
        n, F = self.n, self.field
        rows = []
        for i in range(n):
            rows.append("[" + " ".join(repr(gf.FieldElem(F, v)) for v in self.entries[i * n : (i + 1) * n]) + "]")
        return "[" + " ".join(rows) + "]"

    # -- arithmetic

    def __mul__(self, other: "Mat") -> "Mat":
        if self.field != other.field or self.n != other.n:
            raise MatrixError("dimension or field mismatch")
        F, n = self.field, self.n
        a, b = self.entries, other.entries
        out = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = F.fadd(acc, F.fmul(a[i * n + k], b[k * n + j]))
                out[i * n + j] = acc
        return Mat.from_indices(F, n, out)

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inv() ** (-e)
        out, base = Mat.identity(self.field, self.n), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def vec_mul(self, v) -> list[gf.FieldElem]:
        """Row vector v (length n) times this matrix."""
        F, n = self.field, self.n
        idx = [x.idx if isinstance(x, gf.FieldElem) else x % F.p for x in v]
        out = []
        for j in range(n):
            acc = 0
            for i in range(n):
                acc = F.fadd(acc, F.fmul(idx[i], self.entries[i * n + j]))
            out.append(gf.FieldElem(F, acc))
        return out

    def transpose(self) -> "Mat":
        n = self.n
        return Mat.from_indices(self.field, n, [self.entries[j * n + i] for i in range(n) for j in range(n)])

    def conj_entrywise(self) -> "Mat":
        F = self.field
        return Mat.from_indices(F, self.n, [F.fconj(v) for v in self.entries])

    def frob_entrywise(self, m: int) -> "Mat":
        F = self.field
        return Mat.from_indices(F, self.n, [F.ffrob(v, m) for v in self.entries])

    def conj_transpose(self) -> "Mat":
        return self.conj_entrywise().transpose()

    def det(self) -> gf.FieldElem:
        F, n = self.field, self.n
        a = list(self.entries)
        det = 1
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if a[r * n + col]:
                    piv = r
                    break
            if piv < 0:
                return gf.FieldElem(F, 0)
            if piv != col:
                for j in range(n):
                    a[piv * n + j], a[col * n + j] = a[col * n + j], a[piv * n + j]
                det = F.fneg(det)
            pv = a[col * n + col]
            det = F.fmul(det, pv)
            s = F.finv(pv)
            for r in range(col + 1, n):
                if a[r * n + col]:
                    f = F.fneg(F.fmul(a[r * n + col], s))
                    for j in range(col, n):
                        a[r * n + j] = F.fadd(a[r * n + j], F.fmul(f, a[col * n + j]))
        return gf.FieldElem(F, det)

    def inv(self) -> "Mat":
        F, n = self.field, self.n
        a = list(self.entries)
        b = [1 if i == j else 0 for i in range(n) for j in range(n)]
        b = [b[i * n + j] for i in range(n) for j in range(n)]
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if a[r * n + col]:
                    piv = r
                    break
            if piv < 0:
                raise MatrixError("singular matrix")
            if piv != col:
                for j in range(n):
                    a[piv * n + j], a[col * n + j] = a[col * n + j], a[piv * n + j]
                    b[piv * n + j], b[col * n + j] = b[col * n + j], b[piv * n + j]
            s = F.finv(a[col * n + col])
            if s != 1:
                for j in range(n):
                    a[col * n + j] = F.fmul(s, a[col * n + j])
                    b[col * n + j] = F.fmul(s, b[col * n + j])
            for r in range(n):
                if r != col and a[r * n + col]:
                    f = F.fneg(a[r * n + col])
                    for j in range(n):
                        a[r * n + j] = F.fadd(a[r * n + j], F.fmul(f, a[col * n + j]))
                        b[r * n + j] = F.fadd(b[r * n + j], F.fmul(f, b[col * n + j]))
        return Mat.from_indices(F, n, b)

    def charpoly(self) -> tuple[int, ...]:
        """Coefficients of det(xI - A), low degree first, monic (index form).

        Computed from principal-minor sums, which keeps it independent of the
        multiplication/inversion routines it is used to cross-check."""
        F, n = self.field, self.n
        coefs = [0] * (n + 1)
        coefs[n] = 1
        for j in range(1, n + 1):
            e = 0
            for subset in itertools.combinations(range(n), j):
                sub = [self.entries[r * n + c] for r in subset for c in subset]
                e = F.fadd(e, Mat.from_indices(F, j, sub).det().idx)
            if j % 2:
                e = F.fneg(e)
            coefs[n - j] = e
        return tuple(coefs)

    def is_identity(self) -> bool:
        n = self.n
        return all(self.entries[i * n + j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def mat_ops(a: Mat, b=None, op: str = "mul"):
    """Spec-level dispatcher over the basic matrix operations."""
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "det":
        return a.det()
    if op == "charpoly":
        return a.charpoly()
    if op == "transpose":
        return a.transpose()
    raise MatrixError(f"unknown op {op!r}")


def tau(a: Mat) -> Mat:
    """Inverse-transpose; an automorphism of GL_n(q)."""
    return a.inv().transpose()


def phi(a: Mat, m: int) -> Mat:
    """Entrywise Frobenius a_ij -> a_ij^(p^m)."""
    if m < 0:
        raise MatrixError("phi exponent must be nonnegative")
    return a.frob_entrywise(m)


def proj_canon(a: Mat) -> Mat:
    """Scale so the first nonzero entry in row-major order is 1."""
    F = a.field
    for v in a.entries:
        if v:
            if v == 1:
                return a
            s = F.finv(v)
            return Mat.from_indices(F, a.n, [F.fmul(s, w) for w in a.entries])
    raise MatrixError("zero matrix has no projective class")


@dataclass(frozen=True)
class ProjMat:
    """Projective class of an invertible matrix, canonicalized mod scalars."""

    rep: Mat

    def __post_init__(self):
        object.__setattr__(self, "rep", proj_canon(self.rep))

    def __mul__(self, other: "ProjMat") -> "ProjMat":
        return ProjMat(self.rep * other.rep)

    def inv(self) -> "ProjMat":
        return ProjMat(self.rep.inv())


@dataclass(frozen=True)
class HermitianGram:
    """Nondegenerate conjugate-symmetric Gram matrix over F_{q^2}."""

    mat: Mat

    def __post_init__(self):
        F = self.mat.field
        if F.k % 2:
            raise MatrixError("hermitian form needs a quadratic extension field")
        if self.mat != self.mat.conj_transpose():
            raise MatrixError("Gram is not conjugate-symmetric")
        if self.mat.det().is_zero():
            raise MatrixError("Gram is singular")

    @property
    def n(self):
        return self.mat.n

    hermitian = True


@dataclass(frozen=True)
class AlternatingGram:
    """Nondegenerate alternating bilinear Gram matrix (symplectic forms)."""

    mat: Mat

    def __post_init__(self):
        F, n = self.mat.field, self.mat.n
        if self.mat.transpose() != Mat(F, n, [F.fneg(v) for v in self.mat.entries]):
            raise MatrixError("Gram is not alternating")
        if any(self.mat.entries[i * n + i] for i in range(n)):
            raise MatrixError("Gram has nonzero diagonal")
        if self.mat.det().is_zero():
            raise MatrixError("Gram is singular")

    @property
    def n(self):
        return self.mat.n

    hermitian = False


def preserves_form(a: Mat, gram) -> bool:
    """True iff a * G * sigma(a)^T == G (row vectors, right action)."""
    if a.n != gram.n or a.field != gram.mat.field:
        raise MatrixError("dimension or field mismatch")
    rhs = a.conj_transpose() if gram.hermitian else a.transpose()
    return a * gram.mat * rhs == gram.mat


def form_value(gram, u, v) -> gf.FieldElem:
    """(u, v) for row vectors u, v under the Gram matrix."""
    F = gram.mat.field
    n = gram.n
    ui = [x.idx if isinstance(x, gf.FieldElem) else x % F.p for x in u]
    vi = [x.idx if isinstance(x, gf.FieldElem) else x % F.p for x in v]
    if gram.hermitian:
        vi = [F.fconj(x) for x in vi]
    acc = 0
    for i in range(n):
        if not ui[i]:
            continue
        for j in range(n):
            acc = F.fadd(acc, F.fmul(ui[i], F.fmul(gram.mat.entries[i * n + j], vi[j])))
    return gf.FieldElem(F, acc)


# -- group kinds


@dataclass(frozen=True)
class GroupKindSpec:
    """One of the supported classical/permutation group families."""

    kind: str
    n: int
    q: int | None = None
    gram: object | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MatrixError(f"unknown kind {self.kind!r}")
        if self.kind in ("Alt", "Sym"):
            if self.q is not None:
                raise MatrixError(f"{self.kind} takes no field size")
            if self.n < 1:
                raise MatrixError("degree must be positive")
        else:
            if self.q is None or self.q < 2:
                raise MatrixError("need a prime power q")
            prime_power_split(self.q)
            if self.kind in ("Sp", "PSp") and self.n % 2:
                raise MatrixError("symplectic groups need even dimension")

    @property
    def is_perm(self):
        return self.kind in ("Alt", "Sym")

    @property
    def is_unitary(self):
        return self.kind in ("GU", "SU", "PGU", "PSU")

    @property
    def is_symplectic(self):
        return self.kind in ("Sp", "PSp")

    @property
    def is_projective(self):
        return self.kind in ("PGL", "PSL", "PGU", "PSU", "PSp")

    def field(self) -> gf.FieldSpec | None:
        """The field the matrices live over (q^2 for unitary kinds)."""
        if self.is_perm:
            return None
        p, k = prime_power_split(self.q)
        return gf.make_field(p, 2 * k if self.is_unitary else k)

    def default_gram(self):
        if self.gram is not None:
            return self.gram
        if self.is_unitary:
            return HermitianGram(Mat.identity(self.field(), self.n))
        if self.is_symplectic:
            return symplectic_gram(self.field(), self.n)
        return None

    def spec_string(self) -> str:
        if self.is_perm:
            return f"{self.kind}({self.n})"
        return f"{self.kind}({self.n},{self.q})"

    def __str__(self):
        return self.spec_string()


def symplectic_gram(field, n) -> AlternatingGram:
    """Antidiagonal alternating Gram for the basis e_1..e_m, f_m..f_1."""
    m = n // 2
    ent = [0] * (n * n)
    for i in range(m):
        ent[i * n + (n - 1 - i)] = 1
        ent[(n - 1 - i) * n + i] = field.fneg(1)
    return AlternatingGram(Mat(field, n, ent))


def group_order(spec: GroupKindSpec) -> int:
    """Exact order via the classical closed-form formulas."""
    kind, n = spec.kind, spec.n
    if kind == "Sym":
        return factorial(n)
    if kind == "Alt":
        return factorial(n) // 2 if n >= 2 else 1
    q = spec.q
    if kind in ("GL", "SL", "PGL", "PSL"):
        glq = q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))
        if kind == "GL":
            return glq
        if kind in ("SL", "PGL"):
            return glq // (q - 1)
        return glq // (q - 1) // gcd(n, q - 1)
    if kind in ("GU", "SU", "PGU", "PSU"):
        guq = q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))
        if kind == "GU":
            return guq
        if kind in ("SU", "PGU"):
            return guq // (q + 1)
        return guq // (q + 1) // gcd(n, q + 1)
    if kind in ("Sp", "PSp"):
        m = n // 2
        spq = q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return spq if kind == "Sp" else spq // gcd(2, q - 1)
    raise MatrixError(f"unsupported kind {kind!r}")


# -- generator constructions


def _field_basis(field: gf.FieldSpec) -> list[int]:
    """Indices of 1, x, ..., x^(k-1): an F_p-basis of the field."""
    return [field.index_of([0] * d + [1]) for d in range(field.k)]


def _transvection(field, n, i, j, alpha_idx) -> Mat:
    ent = [1 if r == c else 0 for r in range(n) for c in range(n)]
    ent[i * n + j] = alpha_idx
    return Mat.from_indices(field, n, ent)


def _sl_generators(field, n) -> list[Mat]:
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for a in _field_basis(field):
                    gens.append(_transvection(field, n, i, j, a))
    return gens


def _primitive_index(field: gf.FieldSpec) -> int:
    for i in range(2, field.q):
        if gf.FieldElem(field, i).multiplicative_order() == field.q - 1:
            return i
    return 1  # GF(2)


def _su_elements_brute(spec: GroupKindSpec) -> list[Mat]:
    """All of SU_n(q) for the identity Gram by row-pruned scan (tiny n, q)."""
    F, n = spec.field(), spec.n
    if F.q**n > 1 << 14:
        raise MatrixError(f"SU_{n}({spec.q}) brute scan too large")
    unit_rows = []
    for row in itertools.product(range(F.q), repeat=n):
        acc = 0
        for v in row:
            acc = F.fadd(acc, F.fmul(v, F.fconj(v)))
        if acc == 1:
            unit_rows.append(row)

    def orthogonal(r1, r2):
        acc = 0
        for x, y in zip(r1, r2):
            acc = F.fadd(acc, F.fmul(x, F.fconj(y)))
        return acc == 0

    out = []

    def extend(rows):
        if len(rows) == n:
            m = Mat.from_indices(F, n, [v for r in rows for v in r])
            if m.det() == F.one:
                out.append(m)
            return
        for row in unit_rows:
            if all(orthogonal(row, r) for r in rows):
                extend(rows + [row])

    extend([])
    return out


def _first_generating_pair(spec: GroupKindSpec, els: list[Mat]) -> list[Mat]:
    """First pair (in entry order) generating the whole scanned group."""
    target = group_order(spec)
    if len(els) != target:
        raise CertificationError(f"{spec} scan found {len(els)} != {target}")
    els = sorted(els, key=lambda m: m.entries)

    from . import groupcore  # deferred: groupcore imports this module

    space = groupcore.mat_space(spec.field(), spec.n, False)
    keys = [space.elem(m).key for m in els]
    for i, a in enumerate(els):
        if a.is_identity():
            continue
        for j in range(i + 1, len(els)):
            if els[j].is_identity():
                continue
            if space.ops.closure_order([keys[i], keys[j]], target + 1) == target:
                groupcore._CERTIFIED.add((spec.spec_string(), target))
                return [a, els[j]]
    raise CertificationError(f"no generating pair found for {spec}")


def _su2_generating_pair(spec_q: int) -> list[Mat]:
    """Deterministic 2-element generating set of SU_2(q), identity Gram."""
    spec = GroupKindSpec("SU", 2, spec_q)
    return _first_generating_pair(spec, _su_elements_brute(spec))


def _mat_closure_order(gens: list[Mat], bound: int) -> int:
    frontier = [Mat.identity(gens[0].field, gens[0].n)]
    seen = {frontier[0].entries}
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                t = g * w
                if t.entries not in seen:
                    if len(seen) >= bound:
                        return bound
                    seen.add(t.entries)
                    new.append(t)
        frontier = new
    return len(seen)


def _subfield_basis(field: gf.FieldSpec) -> list[int]:
    """F_p-basis of the conjugation-fixed subfield, scanned in index order."""
    k0 = field.k // 2
    basis: list[int] = []
    span = {0}
    for i in range(1, field.q):
        if field.fconj(i) != i or i in span:
            continue
        basis.append(i)
        span = _span(field, basis)
        if len(basis) == k0:
            break
    if len(basis) != k0:
        raise MatrixError("subfield basis scan failed")
    return basis


def _scalar_mult(field, c, i):
    acc = 0
    for _ in range(c):
        acc = field.fadd(acc, i)
    return acc


def _span(field, basis):
    span = {0}
    for b in basis:
        span = {field.fadd(s, _scalar_mult(field, c, b)) for s in span for c in range(field.p)}
    return span


def _isotropic_dirs(field, n, gram, limit=None):
    """Canonical isotropic row vectors (first nonzero entry 1), index order."""
    out = []
    for vec in itertools.product(range(field.q), repeat=n):
        if not any(vec):
            continue
        if next(v for v in vec if v) != 1:
            continue
        acc = 0
        for i in range(n):
            for j in range(n):
                acc = field.fadd(acc, field.fmul(vec[i], field.fmul(
                    gram.mat.entries[i * n + j], field.fconj(vec[j]))))
        if acc == 0:
            out.append(vec)
            if limit is not None and len(out) >= limit:
                break
    return out


def _unitary_transvection(field, n, gram, v, lam) -> Mat:
    """x -> x + lam*(x,v)*v for isotropic v and trace-zero lam."""
    ent = []
    for i in range(n):
        bv = 0
        for j in range(n):
            bv = field.fadd(bv, field.fmul(gram.mat.entries[i * n + j], field.fconj(v[j])))
        coef = field.fmul(lam, bv)
        for j in range(n):
            ent.append(field.fadd(1 if j == i else 0, field.fmul(coef, v[j])))
    return Mat.from_indices(field, n, ent)


def _unitary_transvections(field, n, gram, dirs) -> list[Mat]:
    beta = gf.solve_special(field, "trace_zero").idx
    lams = [field.fmul(beta, b) for b in _subfield_basis(field)]
    gens = []
    for v in dirs:
        for lam in lams:
            t = _unitary_transvection(field, n, gram, v, lam)
            if not t.is_identity():
                gens.append(t)
    return gens


def _su_cycle(field, n) -> Mat:
    """Basis n-cycle (unitary for the identity Gram), det fixed to 1."""
    ent = [0] * (n * n)
    for i in range(n):
        ent[i * n + (i + 1) % n] = 1
    if n % 2 == 0:
        ent[(n - 1) * n] = field.fneg(1)
    return Mat.from_indices(field, n, ent)


def _su3q2_generators() -> list[Mat]:
    """SU_3(2) is not generated by its transvections; take the first
    generating pair from the full 216-element scan."""
    spec = GroupKindSpec("SU", 3, 2)
    return _first_generating_pair(spec, _su_elements_brute(spec))


def _su_generators(spec: GroupKindSpec) -> list[Mat]:
    """Unitary transvections for the first D isotropic directions plus the
    basis cycle; D is grown until the closure certifies (enumerable groups)
    or fixed at 2 for groups beyond the live-certification cap, whose
    generator sets are validated against the shipped certificates."""
    n, q = spec.n, spec.q
    if n == 2:
        return _su2_generating_pair(q)
    if (n, q) == (3, 2):
        return _su3q2_generators()
    F, gram = spec.field(), spec.default_gram()
    cyc = _su_cycle(F, n)
    sub = "PSU" if spec.kind in ("PSU", "PGU") else "SU"
    sub_spec = GroupKindSpec(sub, n, q)
    target = group_order(sub_spec)

    from . import groupcore  # deferred: groupcore imports this module

    if target > groupcore.LIVE_CERT_CAP:
        dirs = _isotropic_dirs(F, n, gram, limit=2)
        return _unitary_transvections(F, n, gram, dirs) + [cyc]

    space = groupcore.space_for(sub_spec)
    dirs = _isotropic_dirs(F, n, gram)
    D = 2
    while True:
        gens = _unitary_transvections(F, n, gram, dirs[:D]) + [cyc]
        keys, seen = [], set()
        for m in gens:
            k = space.elem(m).key
            if k not in seen and k != space.ops.identity:
                seen.add(k)
                keys.append(k)
        if space.ops.closure_order(keys, target + 1) == target:
            groupcore._CERTIFIED.add((sub_spec.spec_string(), target))
            return gens
        if D >= len(dirs):
            raise CertificationError(f"transvection set does not generate {sub_spec}")
        D = min(2 * D, len(dirs))


def _gu_norm_one_generator(field: gf.FieldSpec) -> int:
    """Index of an element of multiplicative order q+1 (norm-1 subgroup)."""
    w = _primitive_index(field)
    q0 = int(round(field.q**0.5))
    return field.fpow(w, q0 - 1)


def _sp_generators(spec: GroupKindSpec) -> list[Mat]:
    field, n = spec.field(), spec.n
    gram = spec.default_gram()
    basis_vs = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    extra = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i] = v[j] = 1
            extra.append(v)
    gens = []
    for v in basis_vs + extra:
        for lam in _field_basis(field):
            rows = []
            for i in range(n):
                e = [0] * n
                e[i] = 1
                bv = form_value(gram, e, v).idx
                coef = field.fmul(lam, bv)
                row = [field.fadd(e[j], field.fmul(coef, v[j])) for j in range(n)]
                rows.append(row)
            t = Mat.from_indices(field, n, [v for row in rows for v in row])
            if not t.is_identity():
                gens.append(t)
    # dedupe, preserving order
    seen, out = set(), []
    for g in gens:
        if g.entries not in seen:
            seen.add(g.entries)
            out.append(g)
    return out


def _perm_generators(spec: GroupKindSpec) -> list[Perm]:
    n = spec.n
    if spec.kind == "Sym":
        if n <= 1:
            return []
        if n == 2:
            return [Perm.from_cycles(2, (0, 1))]
        return [Perm.from_cycles(n, (0, 1)), Perm.from_cycles(n, tuple(range(n)))]
    if n <= 2:
        return []
    if n == 3:
        return [Perm.from_cycles(3, (0, 1, 2))]
    if n % 2:
        return [Perm.from_cycles(n, (0, 1, 2)), Perm.from_cycles(n, tuple(range(n)))]
    return [Perm.from_cycles(n, (0, 1, 2)), Perm.from_cycles(n, tuple(range(1, n)))]


def standard_generators(spec: GroupKindSpec, certify: bool = True):
    """Generators for the matrix group of the given kind (or permutations for
    Alt/Sym).  Each generator is checked against the defining constraints;
    with certify=True the generated order is certified, by BFS closure for
    groups within the enumeration budget or against the shipped certificate
    file beyond it."""
    if spec.is_perm:
        gens = _perm_generators(spec)
    elif spec.kind in ("GL", "SL", "PGL", "PSL"):
        gens = _sl_generators(spec.field(), spec.n)
        if spec.kind in ("GL", "PGL"):
            w = _primitive_index(spec.field())
            gens = gens + [Mat.diagonal(spec.field(), [gf.FieldElem(spec.field(), w)] + [1] * (spec.n - 1))]
    elif spec.kind in ("SU", "PSU", "GU", "PGU"):
        gens = _su_generators(spec)
        if spec.kind in ("GU", "PGU"):
            z = _gu_norm_one_generator(spec.field())
            gens = gens + [Mat.diagonal(spec.field(), [gf.FieldElem(spec.field(), z)] + [1] * (spec.n - 1))]
    elif spec.kind in ("Sp", "PSp"):
        gens = _sp_generators(spec)
    else:
        raise MatrixError(f"unsupported kind {spec.kind!r}")

    _check_constraints(spec, gens)
    if certify:
        from . import groupcore  # deferred: groupcore depends on this module

        groupcore.certify_generators(spec, gens)
    return gens


def _check_constraints(spec: GroupKindSpec, gens):
    """Defining algebraic constraints, generator by generator."""
    if spec.is_perm:
        if spec.kind == "Alt" and any(g.sign() != 1 for g in gens):
            raise CertificationError("odd permutation among Alt generators")
        return
    gram = spec.default_gram()
    for g in gens:
        if spec.kind in ("SL", "PSL", "SU", "PSU", "Sp", "PSp") and g.det() != g.field.one:
            raise CertificationError(f"generator with det != 1 for {spec}")
        if gram is not None and not preserves_form(g, gram):
            raise CertificationError(f"generator breaks the form for {spec}")
