# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic convolution mod p^m, Howell normal form over
Z/p^m, membership reduction, and the exhaustive annihilator scan.

Mirrors powerclass._kernels.pykernels exactly (same algorithms, same pivot
choices) so both backends produce bit-identical output.  All moduli handled
here fit comfortably in 64-bit arithmetic; the facade routes anything larger
to the pure-Python fallback.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef inline int _val(long long e, long long p, int m) nogil:
    cdef int v = 0
    if e == 0:
        return m
    while e % p == 0:
        e //= p
        v += 1
    return v


cdef long long _modinv(long long a, long long n):
    cdef long long r0 = a % n, r1 = n
    cdef long long s0 = 1, s1 = 0
    cdef long long q, tmp
    while r1:
        q = r0 // r1
        tmp = r0 - q * r1
        r0 = r1
        r1 = tmp
        tmp = s0 - q * s1
        s0 = s1
        s1 = tmp
    if r0 != 1:
        raise ValueError("not a unit")
    s0 %= n
    if s0 < 0:
        s0 += n
    return s0


def conv_mod(a, b, long long modulus):
    """Cyclic convolution of equal-length coefficient lists mod modulus."""
    cdef Py_ssize_t size = len(a)
    cdef Py_ssize_t i, j, k
    cdef long long ai
    cdef long long *ca = <long long *> malloc(size * sizeof(long long))
    cdef long long *cb = <long long *> malloc(size * sizeof(long long))
    cdef long long *co = <long long *> malloc(size * sizeof(long long))
    if ca == NULL or cb == NULL or co == NULL:
        free(ca); free(cb); free(co)
        raise MemoryError()
    try:
        for i in range(size):
            ca[i] = a[i]
            cb[i] = b[i]
            co[i] = 0
        for i in range(size):
            ai = ca[i]
            if ai == 0:
                continue
            for j in range(size):
                if cb[j] == 0:
                    continue
                k = i + j
                if k >= size:
                    k -= size
                co[k] = (co[k] + ai * cb[j]) % modulus
        return [co[i] for i in range(size)]
    finally:
        free(ca); free(cb); free(co)


def howell_form(rows, long long p, int m):
    """Howell normal form over Z/p^m; see pykernels.howell_form."""
    cdef long long modulus = 1
    cdef int t
    for t in range(m):
        modulus *= p
    work_py = []
    for r in rows:
        rr = [e % modulus for e in r]
        if any(rr):
            work_py.append(rr)
    if not work_py:
        return []
    cdef Py_ssize_t ncols = len(work_py[0])
    cdef Py_ssize_t cap = len(work_py) * 2 + m  # shadows can extend the pool
    if cap < len(work_py) + ncols:
        cap = len(work_py) + ncols
    cdef long long *buf = <long long *> malloc(cap * ncols * sizeof(long long))
    cdef long long *piv = <long long *> malloc(cap * ncols * sizeof(long long))
    cdef long long *pivval = <long long *> malloc(cap * sizeof(long long))
    cdef long long *pivcol = <long long *> malloc(cap * sizeof(long long))
    if buf == NULL or piv == NULL or pivval == NULL or pivcol == NULL:
        free(buf); free(piv); free(pivval); free(pivcol)
        raise MemoryError()
    cdef Py_ssize_t nwork = 0, npiv = 0
    cdef Py_ssize_t col, idx, best, j, last
    cdef int v, best_v
    cdef long long e, pv, u, q, shadow_mult
    cdef bint nonzero
    try:
        for r in work_py:
            for j in range(ncols):
                buf[nwork * ncols + j] = r[j]
            nwork += 1
        for col in range(ncols):
            best = -1
            best_v = m
            for idx in range(nwork):
                e = buf[idx * ncols + col]
                if e == 0:
                    continue
                v = _val(e, p, m)
                if v < best_v:
                    best_v = v
                    best = idx
                    if v == 0:
                        break
            if best < 0:
                continue
            v = best_v
            pv = 1
            for t in range(v):
                pv *= p
            e = buf[best * ncols + col]
            u = _modinv(e // pv, modulus)
            for j in range(ncols):
                piv[npiv * ncols + j] = (buf[best * ncols + j] * u) % modulus
            # drop row `best` by swapping in the last work row
            last = nwork - 1
            if best != last:
                for j in range(ncols):
                    buf[best * ncols + j] = buf[last * ncols + j]
            nwork = last
            for idx in range(nwork):
                e = buf[idx * ncols + col]
                if e:
                    q = e // pv
                    for j in range(col, ncols):
                        buf[idx * ncols + j] = (buf[idx * ncols + j] - q * piv[npiv * ncols + j]) % modulus
                        if buf[idx * ncols + j] < 0:
                            buf[idx * ncols + j] += modulus
            if v > 0:
                shadow_mult = 1
                for t in range(m - v):
                    shadow_mult *= p
                nonzero = False
                if nwork >= cap:
                    raise MemoryError("howell work pool overflow")
                for j in range(ncols):
                    e = (piv[npiv * ncols + j] * shadow_mult) % modulus
                    buf[nwork * ncols + j] = e
                    if e:
                        nonzero = True
                if nonzero:
                    nwork += 1
            pivcol[npiv] = col
            pivval[npiv] = pv
            npiv += 1
        # entries above each pivot reduced modulo the pivot value
        for idx in range(npiv):
            col = pivcol[idx]
            pv = pivval[idx]
            for j in range(idx):
                e = piv[j * ncols + col]
                q = e // pv
                if q:
                    for t in range(col, ncols):
                        piv[j * ncols + t] = (piv[j * ncols + t] - q * piv[idx * ncols + t]) % modulus
                        if piv[j * ncols + t] < 0:
                            piv[j * ncols + t] += modulus
        return [[piv[idx * ncols + j] for j in range(ncols)] for idx in range(npiv)]
    finally:
        free(buf); free(piv); free(pivval); free(pivcol)


def reduce_vector(vec, rows, long long p, int m):
    """Reduce vec against Howell rows; see pykernels.reduce_vector."""
    cdef long long modulus = 1
    cdef int t
    for t in range(m):
        modulus *= p
    cdef Py_ssize_t n = len(vec)
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *res = <long long *> malloc(n * sizeof(long long))
    cdef long long *crows = <long long *> malloc(nrows * n * sizeof(long long)) if nrows else NULL
    if res == NULL or (nrows and crows == NULL):
        free(res); free(crows)
        raise MemoryError()
    cdef Py_ssize_t i, j, col
    cdef long long e, pv, q
    try:
        for i in range(n):
            res[i] = vec[i] % modulus
        for i in range(nrows):
            row = rows[i]
            for j in range(n):
                crows[i * n + j] = row[j]
        for i in range(nrows):
            col = 0
            while col < n and crows[i * n + col] == 0:
                col += 1
            if col == n:
                continue
            e = res[col]
            if e == 0:
                continue
            pv = 1
            q = crows[i * n + col]
            while q % p == 0:
                q //= p
                pv *= p
            q = e // pv
            if q:
                for j in range(col, n):
                    res[j] = (res[j] - q * crows[i * n + j]) % modulus
                    if res[j] < 0:
                        res[j] += modulus
        return [res[i] for i in range(n)]
    finally:
        free(res); free(crows)


def count_annihilating(x, long long p, int m):
    """Count y in (Z/p^m)^len(x) with cyclic convolution y*x == 0."""
    cdef long long modulus = 1
    cdef int t
    for t in range(m):
        modulus *= p
    cdef Py_ssize_t size = len(x)
    cdef long long *cx = <long long *> malloc(2 * size * sizeof(long long))
    cdef long long *y = <long long *> malloc(size * sizeof(long long))
    if cx == NULL or y == NULL:
        free(cx); free(y)
        raise MemoryError()
    cdef Py_ssize_t i, a, pos
    cdef long long acc, count = 0
    cdef bint ok
    try:
        for i in range(size):
            cx[i] = x[i] % modulus
            cx[i + size] = cx[i]  # doubled copy: x[(t - a) mod size] = cx[t - a + size]
        memset(y, 0, size * sizeof(long long))
        with nogil:
            while True:
                ok = True
                for i in range(size):
                    acc = 0
                    for a in range(size):
                        if y[a]:
                            acc += y[a] * cx[i - a + size]
                    if acc % modulus:
                        ok = False
                        break
                if ok:
                    count += 1
                pos = 0
                while pos < size:
                    y[pos] += 1
                    if y[pos] < modulus:
                        break
                    y[pos] = 0
                    pos += 1
                if pos == size:
                    break
        return count
    finally:
        free(cx); free(y)
