"""Explicit matrices and automorphism elements with built-in verification.

Every constructor checks the identities it promises (form preservation,
determinant, element order, isotropy / normalization facts) and raises
ConstructionError instead of returning an unverified object.
"""

from __future__ import annotations

from math import prod

from . import gf, groupcore, matgrp
from .arith import prime_power_split
from .gf import FieldSpec, solve_special
from .groupcore import ExtElem, generate
from .matgrp import GroupKindSpec, HermitianGram, Mat, form_value, preserves_form
from .perm import Perm


class ConstructionError(RuntimeError):
    pass


def _require(cond, msg):
    if not cond:
        raise ConstructionError(msg)


# -- SL_2 pair generating a subfield subgroup


def sl2_pair(q: int, beta: gf.FieldElem, verify: bool = True):
    """The lower/upper unipotent pair x = [[1,0],[b,1]], y = [[1,b],[0,1]]
    in SL_2(q), q odd.  <x, y> is SL_2(q0) for q0 the order of the subfield
    generated by b^2, except that for q0 = 9 it may instead have order 120
    (the preimage of an A_5 in PSL_2(9)); -identity always lies inside."""
    p, k = prime_power_split(q)
    _require(p != 2, "q must be odd")
    F = gf.make_field(p, k)
    if not isinstance(beta, gf.FieldElem):
        beta = F.element(beta)
    _require(beta.spec == F, "beta from the wrong field")
    _require(not beta.is_zero(), "beta must be nonzero")
    x = Mat.from_rows(F, [[1, 0], [beta, 1]])
    y = Mat.from_rows(F, [[1, beta], [0, 1]])
    if verify:
        verify_sl2_pair(q, beta, x, y)
    return x, y


def subfield_order_of_square(beta: gf.FieldElem) -> int:
    """|F_p(beta^2)|: p^d with d the degree of beta^2 over the prime field."""
    F = beta.spec
    b2 = (beta * beta).idx
    d = 1
    v = F.ffrob(b2, 1)
    while v != b2:
        v = F.ffrob(v, 1)
        d += 1
    return F.p**d


def verify_sl2_pair(q, beta, x, y):
    F = x.field
    space = groupcore.mat_space(F, 2, False)
    els, n = generate([space.elem(x), space.elem(y)])
    q0 = subfield_order_of_square(beta)
    expect = q0 * (q0 * q0 - 1)
    _require(
        n == expect or (q0 == 9 and n == 120),
        f"sl2_pair closure {n} matches neither |SL_2({q0})| = {expect} nor the q0=9 case",
    )
    minus_e = space.elem(Mat.scalar(F, 2, -1))
    _require(minus_e.key in {e.key for e in els}, "-identity not in the generated subgroup")


# -- canonical unipotent elements of SU_n(q)


def su_unipotent(q: int, partition, verify: bool = True):
    """Block unipotent element of SU_n(q) (n = sum of parts) in the standard
    e/f (even parts) and e/d/f (odd parts) bases, with the Gram fixed by the
    pairing relations; returns (x, gram, basis_labels)."""
    partition = list(partition)
    _require(partition and all(t >= 1 for t in partition), "bad partition")
    n = sum(partition)
    p, k = prime_power_split(q)
    F = gf.make_field(p, 2 * k)

    beta = solve_special(F, "trace_zero").idx
    gamma = solve_special(F, "trace_minus_one").idx

    labels: list[str] = []
    blocks: list[tuple[int, int]] = []  # (offset, part size)
    off = 0
    for t, part in enumerate(partition, start=1):
        blocks.append((off, part))
        kk = part // 2
        if part % 2 == 0:
            labels += [f"e{t}_{i}" for i in range(1, kk + 1)]
            labels += [f"f{t}_{i}" for i in range(kk, 0, -1)]
        else:
            labels += [f"e{t}_{i}" for i in range(1, kk + 1)]
            labels += [f"d{t}"]
            labels += [f"f{t}_{i}" for i in range(kk, 0, -1)]
        off += part

    gram_ent = [0] * (n * n)
    xent = [0] * (n * n)
    one = 1
    for off, part in blocks:
        kk = part // 2
        odd = part % 2 == 1
        # basis positions inside the block
        e_pos = [off + i for i in range(kk)]  # e_1 .. e_k
        d_pos = off + kk if odd else None
        f_pos = [off + part - 1 - i for i in range(kk)]  # f_1 .. f_k
        # Gram: (e_i, f_j) = delta_ij (and conjugate-symmetrically), (d,d) = 1
        for i in range(kk):
            gram_ent[e_pos[i] * n + f_pos[i]] = one
            gram_ent[f_pos[i] * n + e_pos[i]] = one
        if odd:
            gram_ent[d_pos * n + d_pos] = one
        # action rows
        if kk == 0:  # part 1: fixed anisotropic vector
            xent[d_pos * n + d_pos] = one
            continue
        for i in range(kk):
            row = e_pos[i] * n
            for j in range(i, kk):
                xent[row + e_pos[j]] = one
            if odd:
                xent[row + d_pos] = one
                xent[row + f_pos[kk - 1]] = gamma
            else:
                xent[row + f_pos[kk - 1]] = beta
        if odd:
            xent[d_pos * n + d_pos] = one
            xent[d_pos * n + f_pos[kk - 1]] = F.fneg(one)
        for i in range(1, kk):
            xent[f_pos[i] * n + f_pos[i]] = one
            xent[f_pos[i] * n + f_pos[i - 1]] = F.fneg(one)
        xent[f_pos[0] * n + f_pos[0]] = one

    x = Mat.from_indices(F, n, xent)
    gram = HermitianGram(Mat.from_indices(F, n, gram_ent))
    if verify:
        verify_su_unipotent(q, partition, x, gram, labels)
    return x, gram, labels


def unipotent_order_expected(p: int, partition) -> int:
    """Order of a unipotent with the given Jordan type: least p-power >= max part."""
    m = max(partition)
    o = 1
    while o < m:
        o *= p
    return o


def verify_su_unipotent(q, partition, x, gram, labels):
    F, n = x.field, x.n
    p, _ = prime_power_split(q)
    _require(preserves_form(x, gram), "unipotent block element breaks the form")
    _require(x.det() == F.one, "unipotent block element has det != 1")
    space = groupcore.mat_space(F, n, False)
    got = space.elem(x).order()
    _require(got == unipotent_order_expected(p, partition),
             f"element order {got} != p-power for max part")
    # the f-span is totally isotropic and x-invariant
    f_rows = [i for i, lab in enumerate(labels) if lab.startswith("f")]
    for i in f_rows:
        for j in f_rows:
            _require(gram.mat.entries[i * n + j] == 0, "f-span is not isotropic")
    for i in f_rows:
        img = x.entries[i * n : (i + 1) * n]
        _require(all(img[j] == 0 for j in range(n) if j not in f_rows),
                 "f-span is not invariant")


# -- graph involutions J^delta tau of extended linear groups


def graph_involution(n: int, q: int, delta: str, space=None) -> ExtElem:
    """The inverse-transpose involution twisted by J^0 / J^+ / J^- (block
    antidiagonal, swap blocks, swap blocks plus diag(mu, 1) with -mu/2 a
    non-square); an order-2 element of the projective extension."""
    _require(n % 2 == 0, "n must be even")
    p, k = prime_power_split(q)
    _require(p != 2, "q must be odd")
    delta = str(delta)
    _require(delta in ("0", "+", "-"), f"delta must be one of 0,+,- (got {delta!r})")
    F = gf.make_field(p, k)
    ent = [0] * (n * n)
    if delta == "0":
        for b in range(n // 2):
            ent[(2 * b) * n + (2 * b + 1)] = F.fneg(1)
            ent[(2 * b + 1) * n + (2 * b)] = 1
    elif delta == "+":
        for b in range(n // 2):
            ent[(2 * b) * n + (2 * b + 1)] = 1
            ent[(2 * b + 1) * n + (2 * b)] = 1
    else:
        for b in range(n // 2 - 1):
            ent[(2 * b) * n + (2 * b + 1)] = 1
            ent[(2 * b + 1) * n + (2 * b)] = 1
        mu = _first_nonsquare_half(F)
        ent[(n - 2) * n + (n - 2)] = mu
        ent[(n - 1) * n + (n - 1)] = 1
    J = Mat.from_indices(F, n, ent)
    if space is None:
        space = groupcore.mat_space(F, n, projective=True, tau_enabled=True)
    x = space.elem(J, tau=1)
    _require(x.order() == 2, "graph involution does not square to a scalar")
    _require(_normalizes_special_group(x, F, n), "graph involution does not normalize SL")
    return x


def _first_nonsquare_half(F: FieldSpec) -> int:
    """First mu (enumeration order) with -mu/2 a non-square in F."""
    squares = {F.fmul(a, a) for a in range(F.q)}
    half = F.finv(F.element(2).idx)
    for mu in range(1, F.q):
        if F.fneg(F.fmul(mu, half)) not in squares:
            return mu
    raise ConstructionError("no valid mu (field too small?)")


def _normalizes_special_group(x: ExtElem, F, n) -> bool:
    """Conjugates of det-1 matrices under tau/phi twists stay det-1; checked
    on the standard generators (exact membership criterion, no enumeration)."""
    for g in matgrp._sl_generators(F, n):
        h = x.space.elem(g).conj_by(x)
        hp, ht = h.autword
        if hp or ht:
            return False
        # projective rep of the conjugate must lie in PSL: some scalar multiple
        # has det 1
        d = h.mat.det()
        ok = any(gf.FieldElem(F, F.fpow(lam, n)) * d == F.one for lam in range(1, F.q))
        if not ok:
            return False
    return True


# -- canonical automorphism elements


def canonical_aut(kind: str, ambient: GroupKindSpec, space=None) -> ExtElem:
    """Identity-matrix element carrying the requested automorphism word:
    'phi<m>', 'tau' or 'tauphi<m>'."""
    if space is None:
        space = groupcore.space_for(ambient, tau_enabled=kind != "phi" or False)
    tau_bit = 0
    m = 0
    if kind.startswith("tauphi"):
        tau_bit, m = 1, int(kind[6:] or 1)
    elif kind == "tau":
        tau_bit = 1
    elif kind.startswith("phi"):
        m = int(kind[3:] or 1)
    else:
        raise ConstructionError(f"unknown automorphism kind {kind!r}")
    field = space.field
    if m % field.k and field.k == 1:
        raise ConstructionError("no nontrivial field automorphism over a prime field")
    if tau_bit and not space.tau_enabled:
        space = groupcore.mat_space(field, space.n, space.projective, tau_enabled=True)
    x = space.elem(Mat.identity(field, space.n), phi=m % space.phi_order, tau=tau_bit)
    return x


# -- permutation matrices


def perm_matrix(sigma: Perm, n: int, q: int) -> Mat:
    """0/1 matrix of sigma acting on basis indices (row convention);
    multiplicative: perm_matrix(s*t) = perm_matrix(s)*perm_matrix(t)."""
    if sigma.n > n:
        raise ConstructionError("permutation degree exceeds dimension")
    p, k = prime_power_split(q)
    F = gf.make_field(p, k)
    ent = [0] * (n * n)
    img = list(sigma.images) + list(range(sigma.n, n))
    for i in range(n):
        ent[i * n + img[i]] = 1
    return Mat.from_indices(F, n, ent)
