# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled group-engine kernel.

Bit-identical twin of _pure: same key encodings, same BFS discovery orders,
same results; the inner loops (field-table matrix products, Gauss inversion,
closure/orbit/count loops) run in C.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING, PyBytes_GET_SIZE

BACKEND_NAME = "compiled"

DEF MAXNN = 4096  # supports n up to 64


cdef class OpsBase:
    cdef readonly bytes identity

    cdef bytes c_mul(self, bytes a, bytes b):
        raise NotImplementedError

    cdef bytes c_inv(self, bytes a):
        raise NotImplementedError

    def mul(self, bytes a, bytes b):
        return self.c_mul(a, b)

    def inv(self, bytes a):
        return self.c_inv(a)

    def conj(self, bytes a, bytes s, bytes s_inv):
        return self.c_mul(self.c_mul(s_inv, a), s)

    def order(self, bytes a):
        cdef bytes ident = self.identity
        cdef bytes x = a
        cdef long k = 1
        while x != ident:
            x = self.c_mul(x, a)
            k += 1
        return k

    def closure(self, gens, cap):
        cdef set seen = {self.identity}
        cdef list out = [self.identity]
        cdef list frontier = [self.identity]
        cdef list new
        cdef bytes w, t
        cdef long lcap = cap
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    t = self.c_mul(<bytes> g, w)
                    if t not in seen:
                        if len(seen) >= lcap:
                            return None
                        seen.add(t)
                        out.append(t)
                        new.append(t)
            frontier = new
        return out

    def closure_order(self, gens, bound):
        cdef set seen = {self.identity}
        cdef list frontier = [self.identity]
        cdef list new
        cdef bytes w, t
        cdef long lbound = bound
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    t = self.c_mul(<bytes> g, w)
                    if t not in seen:
                        if len(seen) > lbound:
                            return bound + 1
                        seen.add(t)
                        new.append(t)
            frontier = new
        return len(seen)

    def orbit(self, bytes seed, gens, cap, track=False):
        cdef list pairs = [(g, self.c_inv(<bytes> g)) for g in gens]
        cdef set seen = {seed}
        cdef list out = [seed]
        cdef list frontier = [seed]
        cdef list new
        cdef bytes w, t, g, gi
        cdef dict conj_map = {seed: self.identity} if track else None
        cdef long lcap = cap
        while frontier:
            new = []
            for w in frontier:
                for g, gi in pairs:
                    t = self.c_mul(self.c_mul(gi, w), g)
                    if t not in seen:
                        if len(seen) >= lcap:
                            return None, None
                        seen.add(t)
                        out.append(t)
                        new.append(t)
                        if track:
                            conj_map[t] = self.c_mul(<bytes> conj_map[w], g)
            frontier = new
        return out, conj_map

    def count_pairs(self, a_list, set b_set, bytes c):
        cdef long count = 0
        cdef bytes u
        for u in a_list:
            if self.c_mul(self.c_inv(u), c) in b_set:
                count += 1
        return count


cdef class MatOps(OpsBase):
    cdef readonly int n, q, nn, phi_order
    cdef readonly bint proj, tau_enabled
    cdef readonly bytes mul_tab, add_tab, neg_tab, inv_tab
    cdef readonly tuple frob_pows
    cdef const unsigned char* MT
    cdef const unsigned char* AT
    cdef const unsigned char* NG
    cdef const unsigned char* IV
    cdef const unsigned char* FR[64]

    def __init__(self, n, q, mul_tab, add_tab, neg_tab, inv_tab, frob_pows,
                 proj, phi_order, tau_enabled):
        self.n = n
        self.q = q
        self.nn = n * n
        if self.nn + 2 > MAXNN:
            raise ValueError("matrix dimension too large for compiled kernel")
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
        if self.phi_order > 64:
            raise ValueError("phi order too large for compiled kernel")
        self.MT = <const unsigned char*> PyBytes_AS_STRING(self.mul_tab)
        self.AT = <const unsigned char*> PyBytes_AS_STRING(self.add_tab)
        self.NG = <const unsigned char*> PyBytes_AS_STRING(self.neg_tab)
        self.IV = <const unsigned char*> PyBytes_AS_STRING(self.inv_tab)
        cdef int m
        for m in range(self.phi_order):
            self.FR[m] = <const unsigned char*> PyBytes_AS_STRING(<bytes> self.frob_pows[m])
        cdef unsigned char ident[MAXNN]
        cdef int i
        for i in range(self.nn):
            ident[i] = 0
        for i in range(n):
            ident[i * n + i] = 1
        ident[self.nn] = 0
        ident[self.nn + 1] = 0
        self.identity = PyBytes_FromStringAndSize(<char*> ident, self.nn + 2)

    # -- C-level matrix helpers (flat index arrays)

    cdef void _canon_c(self, unsigned char* ent):
        cdef int i, j
        cdef unsigned char v, s
        cdef const unsigned char* MT = self.MT
        cdef int q = self.q
        for i in range(self.nn):
            v = ent[i]
            if v:
                if v == 1:
                    return
                s = self.IV[v]
                for j in range(self.nn):
                    ent[j] = MT[s * q + ent[j]]
                return
        raise ZeroDivisionError("zero matrix cannot be canonicalized")

    cdef void _matmul_c(self, const unsigned char* a, const unsigned char* b,
                        unsigned char* out):
        cdef int i, j, k, n = self.n, q = self.q
        cdef unsigned char acc, v
        cdef const unsigned char* MT = self.MT
        cdef const unsigned char* AT = self.AT
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    v = MT[a[i * n + k] * q + b[k * n + j]]
                    if v:
                        acc = AT[acc * q + v]
                out[i * n + j] = acc

    cdef int _matinv_c(self, const unsigned char* m, unsigned char* out) except -1:
        cdef int n = self.n, q = self.q
        cdef unsigned char a[MAXNN]
        cdef int i, j, col, r, piv
        cdef unsigned char s, f, tmp
        cdef const unsigned char* MT = self.MT
        cdef const unsigned char* AT = self.AT
        for i in range(self.nn):
            a[i] = m[i]
            out[i] = 0
        for i in range(n):
            out[i * n + i] = 1
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
                    tmp = a[piv * n + j]; a[piv * n + j] = a[col * n + j]; a[col * n + j] = tmp
                    tmp = out[piv * n + j]; out[piv * n + j] = out[col * n + j]; out[col * n + j] = tmp
            s = self.IV[a[col * n + col]]
            if s != 1:
                for j in range(n):
                    a[col * n + j] = MT[s * q + a[col * n + j]]
                    out[col * n + j] = MT[s * q + out[col * n + j]]
            for r in range(n):
                if r != col and a[r * n + col]:
                    f = self.NG[a[r * n + col]]
                    for j in range(n):
                        if a[col * n + j]:
                            a[r * n + j] = AT[a[r * n + j] * q + MT[f * q + a[col * n + j]]]
                        if out[col * n + j]:
                            out[r * n + j] = AT[out[r * n + j] * q + MT[f * q + out[col * n + j]]]
        return 0

    cdef void _transpose_c(self, const unsigned char* m, unsigned char* out):
        cdef int i, j, n = self.n
        for i in range(n):
            for j in range(n):
                out[i * n + j] = m[j * n + i]

    cdef void _apply_aut_c(self, const unsigned char* m, int phi, int tau,
                           unsigned char* out) except *:
        # phi first (entrywise Frobenius power), then tau (inverse-transpose)
        cdef unsigned char buf[MAXNN]
        cdef unsigned char buf2[MAXNN]
        cdef int i
        cdef const unsigned char* FR
        cdef const unsigned char* src = m
        if phi:
            FR = self.FR[phi]
            for i in range(self.nn):
                buf[i] = FR[src[i]]
            src = buf
        if tau:
            self._matinv_c(src, buf2)
            self._transpose_c(buf2, out)
        else:
            for i in range(self.nn):
                out[i] = src[i]

    cdef bytes c_mul(self, bytes a, bytes b):
        cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
        cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
        cdef int nn = self.nn
        cdef int ap = pa[nn], at_ = pa[nn + 1]
        cdef int bp = pb[nn], bt = pb[nn + 1]
        cdef unsigned char sb[MAXNN]
        cdef unsigned char out[MAXNN]
        self._apply_aut_c(pb, ap, at_, sb)
        self._matmul_c(pa, sb, out)
        if self.proj:
            self._canon_c(out)
        out[nn] = <unsigned char> ((ap + bp) % self.phi_order)
        out[nn + 1] = <unsigned char> ((at_ + bt) & 1)
        return PyBytes_FromStringAndSize(<char*> out, nn + 2)

    cdef bytes c_inv(self, bytes a):
        cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
        cdef int nn = self.nn
        cdef int ap = pa[nn], at_ = pa[nn + 1]
        cdef unsigned char m[MAXNN]
        cdef unsigned char out[MAXNN]
        if at_:
            self._transpose_c(pa, m)
        else:
            self._matinv_c(pa, m)
        self._apply_aut_c(m, (self.phi_order - ap) % self.phi_order, 0, out)
        if self.proj:
            self._canon_c(out)
        out[nn] = <unsigned char> ((self.phi_order - ap) % self.phi_order)
        out[nn + 1] = <unsigned char> at_
        return PyBytes_FromStringAndSize(<char*> out, nn + 2)

    # -- packing (mirrors _pure)

    def pack(self, entries, phi=0, tau=0):
        ent = list(entries)
        if len(ent) != self.nn:
            raise ValueError("entry count mismatch")
        if any(not 0 <= v < self.q for v in ent):
            raise ValueError("entry out of field range")
        phi %= self.phi_order
        tau &= 1
        if tau and not self.tau_enabled:
            raise ValueError("tau word not enabled for this space")
        cdef unsigned char buf[MAXNN]
        cdef int i
        for i in range(self.nn):
            buf[i] = <unsigned char> ent[i]
        if self.proj:
            self._canon_c(buf)
        buf[self.nn] = <unsigned char> phi
        buf[self.nn + 1] = <unsigned char> tau
        return PyBytes_FromStringAndSize(<char*> buf, self.nn + 2)

    def unpack(self, bytes key):
        cdef int nn = self.nn
        return tuple(key[:nn]), key[nn], key[nn + 1]


cdef class PermOps(OpsBase):
    cdef readonly int n

    def __init__(self, n):
        self.n = n
        if n > MAXNN:
            raise ValueError("degree too large for compiled kernel")
        self.identity = bytes(range(n))

    cdef bytes c_mul(self, bytes a, bytes b):
        cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
        cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
        cdef unsigned char out[MAXNN]
        cdef int i
        for i in range(self.n):
            out[i] = pb[pa[i]]
        return PyBytes_FromStringAndSize(<char*> out, self.n)

    cdef bytes c_inv(self, bytes a):
        cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
        cdef unsigned char out[MAXNN]
        cdef int i
        for i in range(self.n):
            out[pa[i]] = <unsigned char> i
        return PyBytes_FromStringAndSize(<char*> out, self.n)

    def pack(self, images):
        img = bytes(images)
        if len(img) != self.n or sorted(img) != list(range(self.n)):
            raise ValueError("not a permutation key")
        return img

    def unpack(self, bytes key):
        return tuple(key)
