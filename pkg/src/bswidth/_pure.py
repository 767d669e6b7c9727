"""Pure-Python group-engine kernel.

Same element encoding and call surface as the compiled kernel (_ckernel):
matrix elements are bytes keys `entries || phi || tau` with entries stored as
field indices, permutations are bytes of images.  All loops here are plain
Python; the compiled backend replaces them with C loops over the same tables,
so results must be bit-identical between the two.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


class MatOps:
    """Kernel operations for (projective) matrix groups over one field,
    optionally extended by the entrywise-Frobenius / inverse-transpose
    automorphism word carried in the last two key bytes."""

    def __init__(self, n, q, mul_tab, add_tab, neg_tab, inv_tab, frob_pows,
                 proj, phi_order, tau_enabled):
        self.n = n
        self.q = q
        self.mul_tab = mul_tab
        self.add_tab = add_tab
        self.neg_tab = neg_tab
        self.inv_tab = inv_tab
        self.frob_pows = tuple(frob_pows)
        self.proj = bool(proj)
        self.phi_order = max(1, phi_order)
        self.tau_enabled = bool(tau_enabled)
        if len(self.frob_pows) != self.phi_order:
            raise ValueError("need one Frobenius table per phi exponent")
        ident = bytearray(n * n)
        for i in range(n):
            ident[i * n + i] = 1
        self.identity = bytes(ident) + bytes((0, 0))

    # -- packing

    def pack(self, entries, phi=0, tau=0):
        ent = list(entries)
        if len(ent) != self.n * self.n:
            raise ValueError("entry count mismatch")
        if any(not 0 <= v < self.q for v in ent):
            raise ValueError("entry out of field range")
        phi %= self.phi_order
        tau &= 1
        if tau and not self.tau_enabled:
            raise ValueError("tau word not enabled for this space")
        if self.proj:
            ent = self._canon(ent)
        return bytes(ent) + bytes((phi, tau))

    def unpack(self, key):
        nn = self.n * self.n
        return tuple(key[:nn]), key[nn], key[nn + 1]

    def _canon(self, ent):
        for v in ent:
            if v:
                if v == 1:
                    return ent
                s = self.inv_tab[v]
                mt, q = self.mul_tab, self.q
                return [mt[s * q + w] for w in ent]
        raise ZeroDivisionError("zero matrix cannot be canonicalized")

    # -- scalar-level helpers on flat entry lists

    def _mat_mul(self, a, b):
        n, q = self.n, self.q
        mt, at = self.mul_tab, self.add_tab
        out = [0] * (n * n)
        for i in range(n):
            ia = i * n
            for j in range(n):
                acc = 0
                for k in range(n):
                    v = mt[a[ia + k] * q + b[k * n + j]]
                    if v:
                        acc = at[acc * q + v]
                out[ia + j] = acc
        return out

    def _mat_inv(self, m):
        n, q = self.n, self.q
        mt, at, ng, iv = self.mul_tab, self.add_tab, self.neg_tab, self.inv_tab
        a = list(m)
        b = [0] * (n * n)
        for i in range(n):
            b[i * n + i] = 1
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if a[r * n + col]:
                    piv = r
                    break
            if piv < 0:
                raise ZeroDivisionError("singular matrix")
            if piv != col:
                for j in range(n):
                    a[piv * n + j], a[col * n + j] = a[col * n + j], a[piv * n + j]
                    b[piv * n + j], b[col * n + j] = b[col * n + j], b[piv * n + j]
            s = iv[a[col * n + col]]
            if s != 1:
                for j in range(n):
                    a[col * n + j] = mt[s * q + a[col * n + j]]
                    b[col * n + j] = mt[s * q + b[col * n + j]]
            for r in range(n):
                if r != col and a[r * n + col]:
                    f = ng[a[r * n + col]]
                    for j in range(n):
                        if a[col * n + j]:
                            a[r * n + j] = at[a[r * n + j] * q + mt[f * q + a[col * n + j]]]
                        if b[col * n + j]:
                            b[r * n + j] = at[b[r * n + j] * q + mt[f * q + b[col * n + j]]]
        return b

    def _transpose(self, m):
        n = self.n
        return [m[j * n + i] for i in range(n) for j in range(n)]

    def _apply_aut(self, m, phi, tau):
        if phi:
            tab = self.frob_pows[phi]
            m = [tab[v] for v in m]
        if tau:
            m = self._transpose(self._mat_inv(m))
        return m

    # -- group operations on keys

    def mul(self, a, b):
        nn = self.n * self.n
        am, ap, at_ = a[:nn], a[nn], a[nn + 1]
        bm, bp, bt = b[:nn], b[nn], b[nn + 1]
        sb = self._apply_aut(list(bm), ap, at_)
        cm = self._mat_mul(list(am), sb)
        if self.proj:
            cm = self._canon(cm)
        return bytes(cm) + bytes(((ap + bp) % self.phi_order, (at_ + bt) & 1))

    def inv(self, a):
        nn = self.n * self.n
        am, ap, at_ = list(a[:nn]), a[nn], a[nn + 1]
        if at_:
            m = self._transpose(am)
        else:
            m = self._mat_inv(am)
        m = self._apply_aut(m, (-ap) % self.phi_order, 0)
        if self.proj:
            m = self._canon(m)
        return bytes(m) + bytes(((-ap) % self.phi_order, at_))

    def conj(self, a, s, s_inv):
        return self.mul(self.mul(s_inv, a), s)

    def order(self, a):
        ident = self.identity
        x, k = a, 1
        while x != ident:
            x = self.mul(x, a)
            k += 1
        return k

    def closure(self, gens, cap):
        """BFS closure under left-multiplication, from the identity.
        Returns the element list in discovery order, or None past cap."""
        ident = self.identity
        seen = {ident}
        out = [ident]
        frontier = [ident]
        mul = self.mul
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    t = mul(g, w)
                    if t not in seen:
                        if len(seen) >= cap:
                            return None
                        seen.add(t)
                        out.append(t)
                        new.append(t)
            frontier = new
        return out

    def closure_order(self, gens, bound):
        """|<gens>| if it is <= bound, else bound+1 (early abort)."""
        ident = self.identity
        seen = {ident}
        frontier = [ident]
        mul = self.mul
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    t = mul(g, w)
                    if t not in seen:
                        if len(seen) > bound:
                            return bound + 1
                        seen.add(t)
                        new.append(t)
            frontier = new
        return len(seen)

    def orbit(self, seed, gens, cap, track=False):
        """Conjugation orbit {seed^g}; optionally a member->conjugator map."""
        pairs = [(g, self.inv(g)) for g in gens]
        seen = {seed}
        out = [seed]
        frontier = [seed]
        conj_map = {seed: self.identity} if track else None
        mul = self.mul
        while frontier:
            new = []
            for w in frontier:
                for g, gi in pairs:
                    t = mul(mul(gi, w), g)
                    if t not in seen:
                        if len(seen) >= cap:
                            return None, None
                        seen.add(t)
                        out.append(t)
                        new.append(t)
                        if track:
                            conj_map[t] = mul(conj_map[w], g)
            frontier = new
        return out, conj_map

    def count_pairs(self, a_list, b_set, c):
        """#{u in a_list : u^{-1} c in b_set}."""
        mul, inv = self.mul, self.inv
        count = 0
        for u in a_list:
            if mul(inv(u), c) in b_set:
                count += 1
        return count


class PermOps:
    """Kernel operations for permutation groups on n points."""

    def __init__(self, n):
        self.n = n
        self.identity = bytes(range(n))

    def pack(self, images):
        img = bytes(images)
        if len(img) != self.n or sorted(img) != list(range(self.n)):
            raise ValueError("not a permutation key")
        return img

    def unpack(self, key):
        return tuple(key)

    def mul(self, a, b):
        return bytes(b[v] for v in a)

    def inv(self, a):
        out = bytearray(self.n)
        for i, v in enumerate(a):
            out[v] = i
        return bytes(out)

    def conj(self, a, s, s_inv):
        return self.mul(self.mul(s_inv, a), s)

    def order(self, a):
        ident = self.identity
        x, k = a, 1
        while x != ident:
            x = self.mul(x, a)
            k += 1
        return k

    closure = MatOps.closure
    closure_order = MatOps.closure_order
    orbit = MatOps.orbit
    count_pairs = MatOps.count_pairs
