"""Pure-Python fallback for the hot kernels.

``powerclass._kernels`` selects these implementations when the compiled
extension is unavailable (or when ``POWERCLASS_BACKEND=python`` forces them).
Both backends must return bit-identical results; ``tests/test_kernels.py``
and ``benchmarks/bench_kernels.py`` compare them directly.

All matrices are lists of equal-length lists of ints reduced into
``[0, p**m)``.  The canonical form used everywhere is the Howell normal form
over the chain ring Z/p^m: pivots are exact powers of p, every entry above a
pivot is reduced modulo that pivot, and "torsion shadows" p^(m-v) * row are
folded back in so that the row span restricted to any suffix of columns is
still generated by the rows whose pivots lie in that suffix.  That last
property is what makes the single-pass membership reduction below complete.
"""

from __future__ import annotations


def _val(e: int, p: int, m: int) -> int:
    """p-adic valuation of e as a residue in [0, p^m); m for e == 0."""
    if e == 0:
        return m
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


def _modinv(a: int, n: int) -> int:
    r0, r1 = a % n, n
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    return s0 % n


def conv_mod(a: list, b: list, modulus: int) -> list:
    """Cyclic convolution of equal-length coefficient lists mod modulus."""
    size = len(a)
    out = [0] * size
    for i in range(size):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(size):
            bj = b[j]
            if bj == 0:
                continue
            k = i + j
            if k >= size:
                k -= size
            out[k] = (out[k] + ai * bj) % modulus
    return out


def howell_form(rows: list, p: int, m: int) -> list:
    """Howell normal form over Z/p^m.  Returns the nonzero rows, pivot
    columns strictly increasing; unique for a given row span."""
    modulus = p**m
    work = []
    for r in rows:
        rr = [e % modulus for e in r]
        if any(rr):
            work.append(rr)
    if not work:
        return []
    ncols = len(work[0])
    result = []
    for col in range(ncols):
        best = -1
        best_v = m
        for idx, r in enumerate(work):
            e = r[col]
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
        piv = work.pop(best)
        v = best_v
        pv = p**v
        u = _modinv(piv[col] // pv, modulus)
        piv = [(e * u) % modulus for e in piv]
        for r in work:
            e = r[col]
            if e:
                q = e // pv
                for t in range(col, ncols):
                    r[t] = (r[t] - q * piv[t]) % modulus
        if v > 0:
            shadow = [(e * p ** (m - v)) % modulus for e in piv]
            if any(shadow):
                work.append(shadow)
        result.append((col, v, piv))
    # entries above each pivot reduced modulo the pivot value
    for idx in range(len(result)):
        col, v, piv = result[idx]
        pv = p**v
        for jdx in range(idx):
            row = result[jdx][2]
            e = row[col]
            q = e // pv
            if q:
                for t in range(col, ncols):
                    row[t] = (row[t] - q * piv[t]) % modulus
    return [piv for (_, _, piv) in result]


def reduce_vector(vec: list, rows: list, p: int, m: int) -> list:
    """Reduce vec against Howell rows; the residual is zero iff vec lies in
    the row span.  rows must come from howell_form (possibly a prefix-pivot
    subset of an augmented form)."""
    modulus = p**m
    res = [e % modulus for e in vec]
    n = len(res)
    for row in rows:
        col = 0
        while col < n and row[col] == 0:
            col += 1
        if col == n:
            continue
        e = res[col]
        if e == 0:
            continue
        pv = p ** _val(row[col], p, m)
        q = e // pv
        if q:
            for t in range(col, n):
                res[t] = (res[t] - q * row[t]) % modulus
    return res


def count_annihilating(x: list, p: int, m: int) -> int:
    """Count vectors y in (Z/p^m)^len(x) whose cyclic convolution with x is
    zero.  Exhaustive odometer scan with early exit per coefficient."""
    modulus = p**m
    size = len(x)
    y = [0] * size
    count = 0
    while True:
        ok = True
        for t in range(size):
            acc = 0
            for a in range(size):
                ya = y[a]
                if ya:
                    acc += ya * x[t - a]  # negative index wraps, same as mod
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
            return count
