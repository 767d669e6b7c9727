"""Generic finite-group engine over packed element keys.

Element types: (projective) matrices over a finite field carrying an
automorphism word (Frobenius exponent, inverse-transpose bit), and
permutations.  The heavy loops (closure, orbits, pair counting) run in the
selected kernel backend; this module owns the object layer: element spaces,
group handles, conjugacy classes, normal closures, product-replacement
sampling, class caches and generator certification.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from . import kernel, matgrp
from .arith import factorize, prime_divisors
from .gf import FieldSpec
from .matgrp import GroupKindSpec, Mat
from .perm import Perm

ELEMENT_CAP = 20_000_000  # full-enumeration default cap
ORBIT_CAP = 5_000_000  # class-orbit default cap
LIVE_CERT_CAP = 1_500_000  # certify generator sets by BFS up to this order

SCHEMA_VERSION = 1

_DATA_DIR = Path(__file__).parent / "data"


class CapExceeded(RuntimeError):
    """An enumeration hit its cap; no partial/wrong answer is returned."""


class GroupError(RuntimeError):
    pass


# -- element spaces


class ElementSpace:
    """A family of composable elements sharing one packed-key format."""

    def __init__(self, ops, signature, field=None, n=None, projective=False,
                 phi_order=1, tau_enabled=False, is_perm=False):
        self.ops = ops
        self.signature = signature
        self.field = field
        self.n = n
        self.projective = projective
        self.phi_order = phi_order
        self.tau_enabled = tau_enabled
        self.is_perm = is_perm
        self.identity = ExtElem(self, ops.identity)

    def __eq__(self, other):
        return isinstance(other, ElementSpace) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"ElementSpace{self.signature}"

    # -- element constructors

    def from_key(self, key: bytes) -> "ExtElem":
        return ExtElem(self, key)

    def elem(self, part, phi: int = 0, tau: int = 0) -> "ExtElem":
        if self.is_perm:
            if isinstance(part, Perm):
                part = part.images
            return ExtElem(self, self.ops.pack(part))
        if isinstance(part, Mat):
            if part.field != self.field or part.n != self.n:
                raise GroupError("matrix does not fit this space")
            part = part.entries
        return ExtElem(self, self.ops.pack(part, phi, tau))


_MAT_SPACES: dict[tuple, ElementSpace] = {}
_PERM_SPACES: dict[int, ElementSpace] = {}


def mat_space(field: FieldSpec, n: int, projective: bool,
              tau_enabled: bool = False) -> ElementSpace:
    """Element space of n x n matrices over `field`; the automorphism word
    always carries the full Frobenius group of the field."""
    phi_order = field.k
    sig = ("mat", field.p, field.k, field.modulus, n, projective, phi_order, tau_enabled)
    space = _MAT_SPACES.get(sig)
    if space is not None:
        return space
    tabs = field.tables()
    frob_pows = tuple(tabs.frob_power_table(m) for m in range(phi_order))
    ops = kernel.MatOps(n, field.q, tabs.mul, tabs.add, tabs.neg, tabs.inv,
                        frob_pows, projective, phi_order, tau_enabled)
    space = ElementSpace(ops, sig, field=field, n=n, projective=projective,
                         phi_order=phi_order, tau_enabled=tau_enabled)
    _MAT_SPACES[sig] = space
    return space


def perm_space(n: int) -> ElementSpace:
    space = _PERM_SPACES.get(n)
    if space is None:
        space = ElementSpace(kernel.PermOps(n), ("perm", n), n=n, is_perm=True)
        _PERM_SPACES[n] = space
    return space


class ExtElem:
    """Group element: matrix (or permutation) part plus automorphism word."""

    __slots__ = ("space", "key")

    def __init__(self, space: ElementSpace, key: bytes):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "key", key)

    def __setattr__(self, *a):
        raise AttributeError("ExtElem is immutable")

    @property
    def mat(self) -> Mat:
        if self.space.is_perm:
            raise GroupError("permutation element has no matrix part")
        entries, _, _ = self.space.ops.unpack(self.key)
        return Mat(self.space.field, self.space.n, entries)

    @property
    def perm(self) -> Perm:
        if not self.space.is_perm:
            raise GroupError("matrix element has no permutation part")
        return Perm(self.space.ops.unpack(self.key))

    @property
    def autword(self) -> tuple[int, int]:
        if self.space.is_perm:
            return (0, 0)
        _, p, t = self.space.ops.unpack(self.key)
        return (p, t)

    def is_identity(self) -> bool:
        return self.key == self.space.ops.identity

    def __mul__(self, other: "ExtElem") -> "ExtElem":
        if self.space is not other.space and self.space != other.space:
            raise GroupError("space mismatch")
        return ExtElem(self.space, self.space.ops.mul(self.key, other.key))

    def inverse(self) -> "ExtElem":
        return ExtElem(self.space, self.space.ops.inv(self.key))

    def __pow__(self, e: int) -> "ExtElem":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.space.identity, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj_by(self, g: "ExtElem") -> "ExtElem":
        """x^g = g^-1 x g."""
        return ExtElem(self.space, self.space.ops.conj(self.key, g.key, g.space.ops.inv(g.key)))

    def order(self) -> int:
        return self.space.ops.order(self.key)

    def __eq__(self, other):
        return isinstance(other, ExtElem) and self.space == other.space and self.key == other.key

    def __hash__(self):
        return hash((self.space.signature, self.key))

    def __repr__(self):
        if self.space.is_perm:
            return repr(self.perm)
        p, t = self.autword
        word = ""
        if p:
            word += f"*phi^{p}"
        if t:
            word += "*tau"
        return f"{self.mat!r}{word}"


def element_order(g: ExtElem) -> int:
    return g.order()


# -- group handles


class GroupHandle:
    """Generator list plus kind metadata and lazily built element cache."""

    def __init__(self, space: ElementSpace, gens, name: str = "", order: int | None = None,
                 kindspec: GroupKindSpec | None = None, cap: int = ELEMENT_CAP,
                 base_gen_count: int | None = None, base_order: int | None = None):
        self.space = space
        self.gens = tuple(g if isinstance(g, ExtElem) else space.elem(g) for g in gens)
        self.name = name or "group"
        self._order = order
        self.kindspec = kindspec
        self.cap = cap
        self.base_gen_count = len(self.gens) if base_gen_count is None else base_gen_count
        self.base_order = base_order if base_order is not None else order
        self._elements: list[bytes] | None = None
        self._element_set: set[bytes] | None = None
        self._classes: list[ConjClass] | None = None
        self._base_handle: GroupHandle | None = None

    def __repr__(self):
        return f"<GroupHandle {self.name} order={self._order}>"

    @property
    def gen_keys(self) -> list[bytes]:
        return [g.key for g in self.gens]

    @property
    def base_gens(self) -> tuple[ExtElem, ...]:
        """Generators of the base group when built as <base, automorphism>."""
        return self.gens[: self.base_gen_count]

    def enumerate(self, cap: int | None = None) -> list[bytes]:
        """Full element list (keys, BFS discovery order); cached write-once."""
        if self._elements is None:
            cap = self.cap if cap is None else cap
            elems = self.space.ops.closure(self.gen_keys, cap)
            if elems is None:
                raise CapExceeded(f"{self.name}: enumeration exceeds cap {cap}")
            self._elements = elems
            self._element_set = set(elems)
            if self._order is None:
                self._order = len(elems)
            elif self._order != len(elems):
                raise GroupError(
                    f"{self.name}: enumerated order {len(elems)} != declared {self._order}")
        return self._elements

    def element_set(self) -> set[bytes]:
        self.enumerate()
        return self._element_set

    @property
    def order(self) -> int:
        if self._order is None:
            self.enumerate()
        return self._order

    def is_enumerated(self) -> bool:
        return self._elements is not None

    def __contains__(self, x: ExtElem) -> bool:
        return x.key in self.element_set()

    def elements(self):
        return [ExtElem(self.space, k) for k in self.enumerate()]

    def in_base_coset(self, x: ExtElem) -> bool:
        """True when x has trivial automorphism word (the base-group coset,
        exact for handles whose only non-matrix generator is the word aut)."""
        p, t = (0, 0) if self.space.is_perm else x.autword
        return p == 0 and t == 0

    def conjugacy_classes(self) -> list["ConjClass"]:
        """All classes, by full enumeration; deterministic discovery order."""
        if self._classes is None:
            elems = self.enumerate()
            unassigned = dict.fromkeys(elems)
            out = []
            while unassigned:
                rep = next(iter(unassigned))
                cls = conj_class(self, ExtElem(self.space, rep))
                for k in cls.members:
                    unassigned.pop(k, None)
                out.append(cls)
            self._classes = out
        return self._classes


def generate(gens, cap: int = ELEMENT_CAP):
    """BFS closure of a generator list; returns (elements, order)."""
    gens = list(gens)
    if not gens:
        raise GroupError("need at least one generator (use the identity)")
    space = gens[0].space
    elems = space.ops.closure([g.key for g in gens], cap)
    if elems is None:
        raise CapExceeded(f"closure exceeds cap {cap}")
    return [ExtElem(space, k) for k in elems], len(elems)


# -- conjugacy classes


@dataclass
class ConjClass:
    """Conjugation orbit with its fingerprint (element order, class size)."""

    group: GroupHandle
    rep: ExtElem
    members: list[bytes]
    member_set: set[bytes]
    size: int
    element_order: int
    conjugators: dict[bytes, bytes] | None = None

    @property
    def fingerprint(self) -> tuple[int, int]:
        return (self.element_order, self.size)

    def centralizer_order(self) -> int:
        return self.group.order // self.size

    def contains(self, x: ExtElem) -> bool:
        return x.key in self.member_set

    def conjugator_for(self, member: ExtElem) -> ExtElem:
        if self.conjugators is None:
            raise GroupError("class was built without conjugator tracking")
        return ExtElem(self.group.space, self.conjugators[member.key])

    def member_elems(self):
        return [ExtElem(self.group.space, k) for k in self.members]

    def __repr__(self):
        return f"<ConjClass order={self.element_order} size={self.size}>"


def conj_class(G: GroupHandle, x: ExtElem, cap: int | None = None,
               track: bool = False, gens=None) -> ConjClass:
    """Orbit of x under conjugation by G's generators (never enumerates G).

    With gens given, conjugation is restricted to that sublist (e.g. the base
    group inside an automorphism extension)."""
    gen_keys = [g.key for g in gens] if gens is not None else G.gen_keys
    members, conj_map = G.space.ops.orbit(x.key, gen_keys, cap or ORBIT_CAP, track)
    if members is None:
        raise CapExceeded(f"class orbit of {x!r} exceeds cap")
    return ConjClass(G, x, members, set(members), len(members), x.order(),
                     conjugators=conj_map)


def normal_closure(G: GroupHandle, x: ExtElem, cap: int | None = None):
    """Order and prime profile of the normal closure of <x> in G.

    BFS closure under right-multiplication by x and conjugation by G's
    generators; exact order."""
    n = _normal_closure_size(G, x, cap or G.cap)
    if n is None:
        raise CapExceeded("normal closure exceeds cap")
    return n, prime_divisors(n)


def _normal_closure_size(G: GroupHandle, x: ExtElem, bound: int):
    """Size of the normal closure, or None once it exceeds `bound`."""
    ops = G.space.ops
    xk = x.key
    gen_pairs = [(k, ops.inv(k)) for k in G.gen_keys]
    ident = ops.identity
    seen = {ident, xk}
    frontier = [xk]
    while frontier:
        new = []
        for w in frontier:
            cands = [ops.mul(w, xk)]
            for g, gi in gen_pairs:
                cands.append(ops.mul(ops.mul(gi, w), g))
            for t in cands:
                if t not in seen:
                    if len(seen) > bound:
                        return None
                    seen.add(t)
                    new.append(t)
        frontier = new
    return len(seen)


# -- random elements (product replacement)


def _mix(seed: int, idx: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + idx * 0xBF58476D1CE4E5B9 + 0x94D049BB) % (1 << 63)


class PRWalker:
    """Product-replacement walk over a generator list; deterministic in seed."""

    def __init__(self, space: ElementSpace, gen_keys, seed: int,
                 slots: int = 10, burnin: int = 50):
        self.space = space
        self.ops = space.ops
        gen_keys = [k for k in gen_keys if k != space.ops.identity] or [space.ops.identity]
        self.pool = [gen_keys[i % len(gen_keys)] for i in range(max(slots, 2))]
        self.rng = random.Random(seed)
        self.trivial = all(k == space.ops.identity for k in gen_keys)
        for _ in range(burnin):
            self.step()

    def step(self) -> bytes:
        if self.trivial:
            return self.ops.identity
        rng, pool = self.rng, self.pool
        i = rng.randrange(len(pool))
        j = rng.randrange(len(pool) - 1)
        if j >= i:
            j += 1
        other = pool[j]
        if rng.getrandbits(1):
            other = self.ops.inv(other)
        pool[i] = self.ops.mul(pool[i], other)
        return pool[i]

    def sample(self) -> bytes:
        return self.step()


def random_element(G: GroupHandle, seed: int, slots: int = 10, burnin: int = 50) -> ExtElem:
    """Deterministic pseudo-random element for a fixed seed."""
    walker = PRWalker(G.space, G.gen_keys, seed, slots, burnin)
    return ExtElem(G.space, walker.sample())


def random_stream(G: GroupHandle, seed: int, chunk: int = 256, slots: int = 10,
                  burnin: int = 50):
    """Endless deterministic sample stream; chunk c is seeded by (seed, c) so
    chunks are independent of any scheduling."""
    c = 0
    while True:
        walker = PRWalker(G.space, G.gen_keys, _mix(seed, c), slots, burnin)
        for _ in range(chunk):
            yield walker.sample()
        c += 1


# -- element-of-order-t class census


@dataclass
class ClassCensus:
    classes: list[ConjClass]
    complete: bool | None  # None = unknown (budget ran out without a criterion)
    samples_used: int


def involution_classes(G: GroupHandle, budget: int = 20000, t: int = 2, seed: int = 0,
                       known_count: int | None = None, restrict=None,
                       orbit_cap: int | None = None) -> ClassCensus:
    """Conjugacy classes of elements of order t (t prime; default involutions).

    Uses full enumeration when available/cheap, otherwise powers random
    elements into order t and deduplicates via orbit membership.  Completeness
    is only declared when certified: by enumeration, or when the found class
    sizes sum to an independently known count of order-t elements."""
    if G.is_enumerated() or G.order <= 200000:
        classes = [c for c in G.conjugacy_classes() if c.element_order == t]
        return ClassCensus(classes, True, 0)

    ops = G.space.ops
    found: list[ConjClass] = []
    used = 0
    for key in random_stream(G, seed):
        used += 1
        if used > budget:
            break
        o = ops.order(key)
        if o % t:
            continue
        y = ExtElem(G.space, key) ** (o // t)
        if restrict is not None and not restrict(y):
            continue
        if any(y.key in c.member_set for c in found):
            continue
        found.append(conj_class(G, y, cap=orbit_cap))
        if known_count is not None and sum(c.size for c in found) == known_count:
            return ClassCensus(found, True, used)
    complete = None
    if known_count is not None and sum(c.size for c in found) == known_count:
        complete = True
    return ClassCensus(found, complete, used)


# -- class caches (versioned JSON + optional binary member blobs)


def save_class_cache(path, G: GroupHandle, classes, members: bool = False) -> None:
    path = Path(path)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "group_spec": G.name,
        "order": G.order,
        "classes": [
            {"rep_encoding": c.rep.key.hex(), "size": c.size, "element_order": c.element_order}
            for c in classes
        ],
    }
    path.write_text(json.dumps(doc, indent=1))
    if members:
        for i, c in enumerate(classes):
            blob = b"".join(sorted(c.members))
            path.with_suffix(f".class{i}.bin").write_bytes(blob)


def load_class_cache(path, G: GroupHandle):
    """Class fingerprints from a cache file (no member sets); validates the
    schema version and group spec."""
    doc = json.loads(Path(path).read_text())
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise GroupError(f"cache schema {doc.get('schema_version')} != {SCHEMA_VERSION}")
    if doc["group_spec"] != G.name or doc["order"] != G.order:
        raise GroupError("cache does not match this group")
    out = []
    for row in doc["classes"]:
        out.append(
            {
                "rep": ExtElem(G.space, bytes.fromhex(row["rep_encoding"])),
                "size": row["size"],
                "element_order": row["element_order"],
            }
        )
    return out


# -- generator certification


_CERTIFIED: set[tuple] = set()
_CERT_FILE = _DATA_DIR / "certificates.json"
_cert_cache = None


def _certificates() -> dict:
    global _cert_cache
    if _cert_cache is None:
        _cert_cache = json.loads(_CERT_FILE.read_text()) if _CERT_FILE.exists() else {}
    return _cert_cache


def space_for(spec: GroupKindSpec, tau_enabled: bool = False) -> ElementSpace:
    if spec.is_perm:
        return perm_space(spec.n)
    return mat_space(spec.field(), spec.n, spec.is_projective, tau_enabled)


def _gen_keys_for(spec: GroupKindSpec, gens, space=None) -> list[bytes]:
    space = space or space_for(spec)
    keys = []
    for g in gens:
        keys.append(space.elem(g).key)
    out, seen = [], set()
    for k in keys:  # projectivization can merge generators
        if k != space.ops.identity and k not in seen:
            seen.add(k)
            out.append(k)
    return out


def certify_generators(spec: GroupKindSpec, gens, cap: int = LIVE_CERT_CAP) -> int:
    """Certify that `gens` generate the group of kind `spec`: BFS closure must
    equal the closed-form order (within `cap`), otherwise a matching entry in
    the shipped certificate file is required.  Raises CertificationError."""
    target = matgrp.group_order(spec)
    sig = (spec.spec_string(), target)
    if sig in _CERTIFIED:
        return target
    space = space_for(spec)
    keys = _gen_keys_for(spec, gens, space)
    if target <= cap:
        got = space.ops.closure_order(keys, target + 1)
        if got != target:
            raise matgrp.CertificationError(
                f"{spec}: generators close to {got}, formula says {target}")
    else:
        ent = _certificates().get(spec.spec_string())
        if ent is None:
            raise matgrp.CertificationError(
                f"{spec}: order {target} exceeds live-certification cap and no "
                f"precomputed certificate is shipped")
        if ent["order"] != target or ent["gens"] != [k.hex() for k in keys]:
            raise matgrp.CertificationError(f"{spec}: certificate mismatch")
    _CERTIFIED.add(sig)
    return target


# -- building groups from kind specs (with optional automorphism extension)


def _aut_elem(space: ElementSpace, spec: GroupKindSpec, aut) -> ExtElem:
    """The extension generator for an AUT token ('phi', m) / ('tau',) /
    ('tauphi', m) / ('graph', delta)."""
    kind, *args = aut
    if kind == "graph":
        from . import constructions  # deferred; constructions sits above this module

        return constructions.graph_involution(spec.n, spec.q, args[0], space=space)
    ident = Mat.identity(space.field, space.n)
    if kind == "phi":
        return space.elem(ident, phi=args[0] % space.phi_order)
    if kind == "tau":
        return space.elem(ident, tau=1)
    if kind == "tauphi":
        return space.elem(ident, phi=args[0] % space.phi_order, tau=1)
    raise GroupError(f"unknown automorphism token {aut!r}")


def _coset_order(space: ElementSpace, base_order_known: bool, aut_elem: ExtElem) -> int:
    """Least c >= 1 with aut^c back in the base group.  Needs the power with
    trivial automorphism word to be literally the identity element."""
    x = aut_elem
    for c in range(1, 4 * space.phi_order + 1):
        p, t = x.autword
        if p == 0 and t == 0:
            if x.is_identity():
                return c
            raise GroupError(
                "automorphism power lands outside the identity; coset order unknown")
        x = x * aut_elem
    raise GroupError("automorphism word does not close")


def aut_spec_string(spec: GroupKindSpec, aut) -> str:
    if aut is None:
        return spec.spec_string()
    kind, *args = aut
    if kind == "graph":
        return f"{spec.spec_string()}:graph{args[0]}"
    if kind in ("phi", "tauphi"):
        return f"{spec.spec_string()}:{kind}{args[0]}"
    return f"{spec.spec_string()}:tau"


def build_group(spec: GroupKindSpec, aut=None, certify: bool = True,
                cap: int = ELEMENT_CAP) -> GroupHandle:
    """GroupHandle for a kind spec, optionally extended by an automorphism.

    Generators are the standard certified set; for an extension the group is
    <base, a> with a the canonical automorphism element, and the order is
    |base| * (coset order of a)."""
    if spec.is_perm and aut is not None:
        raise GroupError("automorphism extensions are for matrix kinds")
    tau_enabled = aut is not None and aut[0] in ("tau", "tauphi", "graph")
    space = space_for(spec, tau_enabled=tau_enabled)
    base = matgrp.standard_generators(spec, certify=False)
    matgrp._check_constraints(spec, base)
    base_keys = _gen_keys_for(spec, base, space)
    base_order = matgrp.group_order(spec)
    name = aut_spec_string(spec, aut)

    gens = [ExtElem(space, k) for k in base_keys]
    order = base_order
    if aut is not None:
        a = _aut_elem(space, spec, aut)
        order = base_order * _coset_order(space, True, a)
        gens = gens + [a]

    if certify:
        sig = (name, order)
        if sig not in _CERTIFIED:
            if order <= LIVE_CERT_CAP:
                got = space.ops.closure_order([g.key for g in gens], order + 1)
                if got != order:
                    raise matgrp.CertificationError(
                        f"{name}: generators close to {got}, expected {order}")
            else:
                ent = _certificates().get(name)
                if ent is None:
                    raise matgrp.CertificationError(
                        f"{name}: order {order} exceeds live-certification cap and "
                        f"no precomputed certificate is shipped")
                if ent["order"] != order or ent["gens"] != [g.key.hex() for g in gens]:
                    raise matgrp.CertificationError(f"{name}: certificate mismatch")
            _CERTIFIED.add(sig)

    return GroupHandle(space, gens, name=name, order=order, kindspec=spec, cap=cap,
                       base_gen_count=len(base_keys))


def handle_from_gens(gens, name: str = "group", order: int | None = None,
                     cap: int = ELEMENT_CAP) -> GroupHandle:
    gens = list(gens)
    if not gens:
        raise GroupError("need generators")
    return GroupHandle(gens[0].space, gens, name=name, order=order, cap=cap)
