"""The core group invariants: pi-radical, the m-tuple Baer-Suzuki-type
criterion, and the generation widths beta_r(x, L) (fewest L-conjugates of x
generating a subgroup of order divisible by r) and alpha(x, L) (fewest
generating the whole extension <L, x>)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .arith import factorize, is_prime, primes_from
from .groupcore import (CapExceeded, ConjClass, ExtElem, GroupHandle, conj_class,
                        random_stream, _normal_closure_size)


class InvariantError(RuntimeError):
    pass


# -- prime sets


@dataclass(frozen=True)
class PiSet:
    """A set of primes given by an explicit list, or the complement of one."""

    primes: frozenset[int]
    complement: bool = False

    def __post_init__(self):
        if any(not is_prime(p) for p in self.primes):
            raise InvariantError("PiSet needs primes")

    @staticmethod
    def of(*primes: int, complement: bool = False) -> "PiSet":
        return PiSet(frozenset(primes), complement)

    def member(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    @property
    def r(self) -> int:
        """Least prime outside the set."""
        for p in primes_from(2):
            if not self.member(p):
                return p
            if self.complement and p > max(self.primes, default=2):
                raise InvariantError("complement set contains all primes")

    @property
    def m(self) -> int:
        """Tuple size for the radical criterion: r for r in {2,3}, else r-1."""
        r = self.r
        return r if r in (2, 3) else r - 1

    def is_pi_number(self, n: int) -> bool:
        return all(self.member(p) for p in factorize(n))

    def pi_part(self, n: int) -> int:
        out = 1
        for p, e in factorize(n).items():
            if self.member(p):
                out *= p**e
        return out

    def select_witness_prime(self, order: int) -> int:
        """s = r when r divides `order`, otherwise the least prime divisor of
        `order` exceeding r; the width invariants are undefined otherwise."""
        r = self.r
        if order % r == 0:
            return r
        for p in sorted(factorize(order)):
            if p > r:
                return p
        raise InvariantError(f"no prime divisor of {order} at or beyond r={r}")

    def __str__(self):
        base = ",".join(map(str, sorted(self.primes)))
        return f"{{{base}}}'" if self.complement else f"{{{base}}}"


# -- pi-radical


@dataclass
class PiRadical:
    group: GroupHandle
    pi: PiSet
    member_set: set[bytes]
    order: int
    classes: list[ConjClass]

    def contains(self, x: ExtElem) -> bool:
        return x.key in self.member_set


def pi_radical(G: GroupHandle, pi: PiSet) -> PiRadical:
    """Largest normal pi-subgroup, computed elementwise: x belongs exactly
    when the normal closure of <x> is a pi-group.  Requires G enumerable."""
    G.enumerate()
    bound = pi.pi_part(G.order)
    inside: list[ConjClass] = []
    members: set[bytes] = set()
    for c in G.conjugacy_classes():
        n = _normal_closure_size(G, c.rep, bound)
        if n is None:  # closure exceeds the largest pi-divisor: not a pi-group
            continue
        if pi.is_pi_number(n):
            inside.append(c)
            members.update(c.member_set)
    # postcondition checks: subgroup, normal, pi-order
    order = len(members)
    if not pi.is_pi_number(order):
        raise InvariantError("radical candidate has non-pi order")
    got = G.space.ops.closure_order(sorted(members), order + 1)
    if got != order:
        raise InvariantError("radical candidate is not closed")
    for c in inside:
        for g in G.gens:
            if c.rep.conj_by(g).key not in members:
                raise InvariantError("radical candidate is not normal")
    return PiRadical(G, pi, members, order, inside)


# -- the m-tuple criterion


@dataclass
class BsOutcome:
    """Verdict of the tuple criterion for one class representative.

    holds=True: every m-tuple of class members generates a pi-group
    (exhaustively verified).  holds=False: `witness` is a violating tuple.
    holds=None: randomized search exhausted its budget without a violation."""

    holds: bool | None
    witness: list[ExtElem] | None
    checked: int
    mode: str


def _subgroup_is_pi(ops, keys, pi: PiSet, bound: int) -> bool:
    """Is <keys> a pi-group?  `bound` is the pi-part of the ambient order, so
    any subgroup exceeding it is certainly not a pi-group."""
    o = ops.closure_order(keys, bound)
    if o > bound:
        return False
    return pi.is_pi_number(o)


def bs_property(G: GroupHandle, x: ExtElem, m: int, pi: PiSet,
                mode: str = "exhaustive", budget: int = 10**7,
                seed: int = 0) -> BsOutcome:
    """Do every m elements of the class of x in G generate a pi-group?

    The first tuple slot is pinned to x (valid up to simultaneous conjugation)
    and tuples are searched through their support sets, since repeated entries
    do not change the generated subgroup.  Exhaustive mode proves `True`;
    randomized mode can only return False (with witness) or None."""
    if m < 1:
        raise InvariantError("m must be positive")
    ops = G.space.ops
    bound = pi.pi_part(G.order)
    if not _subgroup_is_pi(ops, [x.key], pi, bound):
        return BsOutcome(False, [x], 1, mode)
    if m == 1:
        return BsOutcome(True, None, 1, mode)

    D = conj_class(G, x)
    others = [k for k in D.members if k != x.key]

    if mode == "exhaustive":
        if D.size ** (m - 1) > budget:
            raise InvariantError(
                f"exhaustive tuple space {D.size}^{m-1} exceeds budget {budget}")
        checked = 1
        for k in range(2, m + 1):
            for combo in itertools.combinations(others, k - 1):
                checked += 1
                if not _subgroup_is_pi(ops, [x.key, *combo], pi, bound):
                    wit = [x] + [ExtElem(G.space, c) for c in combo]
                    return BsOutcome(False, wit, checked, mode)
        return BsOutcome(True, None, checked, mode)

    if mode != "randomized":
        raise InvariantError(f"unknown mode {mode!r}")
    checked = 1
    member_stream = random_stream(G, seed)
    for _ in range(budget):
        combo = []
        for g in member_stream:
            combo.append(ops.conj(x.key, g, ops.inv(g)))
            if len(combo) == m - 1:
                break
        checked += 1
        if not _subgroup_is_pi(ops, [x.key, *combo], pi, bound):
            wit = [x] + [ExtElem(G.space, c) for c in combo]
            return BsOutcome(False, wit, checked, mode)
    return BsOutcome(None, None, checked, mode)


# -- per-class radical criterion report


@dataclass
class CriterionRow:
    conj_class: ConjClass
    in_radical: bool
    outcome: BsOutcome

    @property
    def consistent(self) -> bool | None:
        if self.outcome.holds is None:
            return None
        return self.in_radical == self.outcome.holds


@dataclass
class CriterionReport:
    group: GroupHandle
    pi: PiSet
    m: int
    rows: list[CriterionRow]

    @property
    def mismatches(self) -> list[CriterionRow]:
        return [r for r in self.rows if r.consistent is False]

    @property
    def unresolved(self) -> list[CriterionRow]:
        return [r for r in self.rows if r.consistent is None]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.unresolved


def radical_criterion_report(G: GroupHandle, pi: PiSet, m: int | None = None,
                             exhaustive_limit: int = 10**7,
                             budget: int = 2000, seed: int = 0) -> CriterionReport:
    """For every conjugacy class D of G, compare membership D <= O_pi(G) with
    the m-tuple criterion on a representative; zero mismatches reproduces the
    radical characterization at this group."""
    if m is None:
        m = pi.m
    rad = pi_radical(G, pi)
    rows = []
    for c in G.conjugacy_classes():
        in_rad = c.rep.key in rad.member_set
        if c.size ** (m - 1) <= exhaustive_limit:
            out = bs_property(G, c.rep, m, pi, "exhaustive", exhaustive_limit, seed)
        else:
            out = bs_property(G, c.rep, m, pi, "randomized", budget, seed)
        rows.append(CriterionRow(c, in_rad, out))
    return CriterionReport(G, pi, m, rows)


# -- generation widths


@dataclass
class BetaCertificate:
    """Witness for a width value: k conjugators g_i (first = identity) with
    <x^g_1, ..., x^g_k> of order `witness_order`; `exact` marks an exhaustive
    minimum rather than a randomized upper bound."""

    x: ExtElem
    prime: int | None  # None for the full-generation width
    k: int
    conjugators: list[ExtElem]
    witness_order: int
    exact: bool
    target_order: int

    def conjugates(self) -> list[ExtElem]:
        return [self.x.conj_by(g) for g in self.conjugators]

    def recheck(self) -> bool:
        keys = [c.key for c in self.conjugates()]
        ops = self.x.space.ops
        o = ops.closure_order(keys, self.witness_order + 1)
        if o != self.witness_order:
            return False
        if self.prime is None:
            return o == self.target_order
        return o % self.prime == 0


def extension_order(L: GroupHandle, x: ExtElem, cap: int | None = None) -> int:
    """|<L, x>| by BFS closure over L's generators plus x."""
    keys = L.gen_keys + [x.key]
    o = L.space.ops.closure_order(keys, cap or L.cap)
    if o > (cap or L.cap):
        raise CapExceeded("extension closure exceeds cap")
    return o


def _divisible_subgroup_test(ops, keys, r: int, ext_order: int):
    """Is r a divisor of |<keys>|?  Subgroup orders divide ext_order, so any
    order beyond its r'-part is divisible by r."""
    v = 0
    n = ext_order
    while n % r == 0:
        n //= r
        v += 1
    rprime_part = ext_order // (r**v)
    o = ops.closure_order(keys, rprime_part)
    if o > rprime_part:
        return True
    return o % r == 0


def beta(L: GroupHandle, x: ExtElem, r: int, mode: str = "exhaustive",
         budget: int = 300, seed: int = 0, max_k: int = 12,
         ext_order: int | None = None) -> BetaCertificate:
    """beta_r(x, L): least k such that k L-conjugates of x generate a subgroup
    of <L, x> with order divisible by r.

    Exhaustive mode pins the first conjugator to the identity and scans
    support sets of class members in discovery order, k increasing, so the
    returned k is the exact minimum.  Randomized mode samples conjugators and
    returns an upper bound (exact=False)."""
    if not is_prime(r):
        raise InvariantError("r must be prime")
    ops = L.space.ops
    if ext_order is None:
        ext_order = extension_order(L, x)
    if ext_order % r:
        raise InvariantError(f"beta undefined: {r} does not divide |<L,x>| = {ext_order}")

    ident = L.space.identity
    if x.order() % r == 0:
        return BetaCertificate(x, r, 1, [ident], x.order(), True, ext_order)

    if mode == "exhaustive":
        D = conj_class(L, x, track=True, gens=L.base_gens)
        others = [k for k in D.members if k != x.key]
        for k in range(2, min(max_k, D.size) + 1):
            for combo in itertools.combinations(others, k - 1):
                if _divisible_subgroup_test(ops, [x.key, *combo], r, ext_order):
                    conjs = [ident] + [D.conjugator_for(ExtElem(L.space, c)) for c in combo]
                    o = ops.closure_order([x.key, *combo], ext_order + 1)
                    return BetaCertificate(x, r, k, conjs, o, True, ext_order)
        raise InvariantError(f"no witness up to k={max_k} (exhaustive)")

    if mode != "randomized":
        raise InvariantError(f"unknown mode {mode!r}")
    stream = random_stream(L, seed)
    for k in range(2, max_k + 1):
        for _ in range(budget):
            gs = [next(stream) for _ in range(k - 1)]
            keys = [x.key] + [ops.conj(x.key, g, ops.inv(g)) for g in gs]
            if _divisible_subgroup_test(ops, keys, r, ext_order):
                conjs = [ident] + [ExtElem(L.space, g) for g in gs]
                o = ops.closure_order(keys, ext_order + 1)
                return BetaCertificate(x, r, k, conjs, o, False, ext_order)
    raise InvariantError(
        f"randomized search found no witness up to k={max_k}; "
        f"k > current bound not established")


def alpha(L: GroupHandle, x: ExtElem, mode: str = "exhaustive",
          budget: int = 300, seed: int = 0, max_k: int = 12,
          ext_order: int | None = None) -> BetaCertificate:
    """alpha(x, L): least k such that k L-conjugates of x generate the whole
    of <L, x>; same search scheme as beta, generation tested by order."""
    ops = L.space.ops
    if ext_order is None:
        ext_order = extension_order(L, x)
    ident = L.space.identity

    def generates(keys):
        return ops.closure_order(keys, ext_order) == ext_order

    if generates([x.key]):
        return BetaCertificate(x, None, 1, [ident], ext_order, True, ext_order)

    if mode == "exhaustive":
        D = conj_class(L, x, track=True, gens=L.base_gens)
        others = [k for k in D.members if k != x.key]
        for k in range(2, min(max_k, D.size) + 1):
            for combo in itertools.combinations(others, k - 1):
                if generates([x.key, *combo]):
                    conjs = [ident] + [D.conjugator_for(ExtElem(L.space, c)) for c in combo]
                    return BetaCertificate(x, None, k, conjs, ext_order, True, ext_order)
        raise InvariantError(f"no generating set up to k={max_k} (exhaustive)")

    if mode != "randomized":
        raise InvariantError(f"unknown mode {mode!r}")
    stream = random_stream(L, seed)
    for k in range(2, max_k + 1):
        for _ in range(budget):
            gs = [next(stream) for _ in range(k - 1)]
            keys = [x.key] + [ops.conj(x.key, g, ops.inv(g)) for g in gs]
            if generates(keys):
                conjs = [ident] + [ExtElem(L.space, g) for g in gs]
                return BetaCertificate(x, None, k, conjs, ext_order, False, ext_order)
    raise InvariantError(f"randomized search found no generating tuple up to k={max_k}")


def beta_chain_bound_check(L: GroupHandle, x: ExtElem, y: ExtElem,
                           conjugators: list[ExtElem], r: int) -> bool:
    """If x lies in <y^g_1, ..., y^g_k> then beta_r(x, L) <= k * beta_r(y, L);
    verifies the membership precondition, computes both exact widths and
    confirms the inequality."""
    ops = L.space.ops
    conj_keys = [ops.conj(y.key, g.key, ops.inv(g.key)) for g in conjugators]
    elems = ops.closure(conj_keys, L.cap)
    if elems is None:
        raise CapExceeded("chain subgroup exceeds cap")
    if x.key not in set(elems):
        raise InvariantError("membership precondition fails: x not in <y^gs>")
    k = len(conjugators)
    bx = beta(L, x, r)
    by = beta(L, y, r)
    return bx.k <= k * by.k
