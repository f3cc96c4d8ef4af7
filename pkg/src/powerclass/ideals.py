"""Linear algebra over the chain ring Z/p^m and ideals of R_m G_i.

Ordinary Gaussian elimination is unsound over Z/p^m (pivots need not be
units), so every decision procedure here runs through the Howell normal form
provided by the kernel backend: two row sets span the same module iff their
forms coincide, and span membership is a single reduction pass.  Ideals of
the group ring are handled through their action matrices: the R_m G_i-span of
generators g_1..g_k equals the Z/p^m-span of all shifts s^t g_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .errors import LevelMismatchError, NotPrimePowerError, ParamsMismatchError
from .groupring import GroupRingElement, GroupRingParams, is_prime


def prime_power_split(modulus: int) -> tuple:
    """Return (p, m) with modulus == p**m, or raise NotPrimePowerError."""
    if modulus < 2:
        raise NotPrimePowerError(f"{modulus} is not a prime power")
    p = modulus
    for f in range(2, modulus + 1):
        if f * f > modulus:
            break
        if modulus % f == 0:
            p = f
            break
    m = 0
    q = modulus
    while q % p == 0:
        q //= p
        m += 1
    if q != 1 or not is_prime(p):
        raise NotPrimePowerError(f"{modulus} is not a prime power")
    return p, m


@dataclass(frozen=True)
class ResidueMatrix:
    """Dense matrix over Z/modulus, entries in row-major order."""

    rows: int
    cols: int
    entries: tuple
    modulus: int

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows*cols")

    @classmethod
    def from_rows(cls, rows, modulus) -> "ResidueMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(int(e) % modulus for e in r)
        return cls(len(rows), ncols, tuple(flat), modulus)

    def row_lists(self) -> list:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]


def canonical_form(M: ResidueMatrix, modulus=None) -> ResidueMatrix:
    """Howell normal form of M; unique per row span and idempotent.

    Zero rows are dropped, so the canonical form of the zero matrix has no
    rows (column count is preserved).
    """
    if modulus is None:
        modulus = M.modulus
    elif modulus != M.modulus:
        raise ValueError("modulus disagrees with the matrix")
    p, m = prime_power_split(modulus)
    rows = _kernels.howell_form(M.row_lists(), p, m)
    return ResidueMatrix.from_rows(rows, modulus) if rows else ResidueMatrix(
        0, M.cols, (), modulus
    )


# -- raw-row helpers (shared with fpmod) -------------------------------------


def howell_rows(rows: list, p: int, m: int) -> list:
    return _kernels.howell_form(rows, p, m)


def residual(vec: list, hrows: list, p: int, m: int) -> list:
    return _kernels.reduce_vector(vec, hrows, p, m)


def in_span(vec: list, hrows: list, p: int, m: int) -> bool:
    return not any(_kernels.reduce_vector(vec, hrows, p, m))


def pivot_profile(hrows: list, p: int, m: int) -> list:
    """(column, valuation) of each pivot of a Howell form."""
    out = []
    for r in hrows:
        col = next(i for i, e in enumerate(r) if e)
        e, v = r[col], 0
        while e % p == 0:
            e //= p
            v += 1
        out.append((col, v))
    return out


def span_size(hrows: list, p: int, m: int) -> int:
    """Number of elements of the Z/p^m-span of a Howell form."""
    size = 1
    for _, v in pivot_profile(hrows, p, m):
        size *= p ** (m - v)
    return size


def kernel_rows(rows: list, ncols: int, p: int, m: int) -> list:
    """Howell basis of {c : sum_i c_i rows[i] == 0} over Z/p^m.

    Computed from the Howell form of [rows | I]: combinations whose left block
    vanishes are exactly the kernel, and the Howell property guarantees the
    rows with pivots in the right block generate all of them.
    """
    nrows = len(rows)
    aug = []
    for idx, r in enumerate(rows):
        tag = [0] * nrows
        tag[idx] = 1
        aug.append(list(r) + tag)
    if not aug:
        return []
    h = _kernels.howell_form(aug, p, m)
    out = []
    for r in h:
        if any(r[:ncols]):
            continue
        out.append(r[ncols:])
    return out


def solve_combination(vec: list, rows: list, p: int, m: int):
    """Find c with sum_i c_i rows[i] == vec, or None.

    Reduces [vec | 0] against the left-pivot rows of the Howell form of
    [rows | I]; the accumulated tag block recovers one solution.
    """
    nrows = len(rows)
    ncols = len(vec)
    if nrows == 0:
        return None if any(e % p**m for e in vec) else []
    aug = []
    for idx, r in enumerate(rows):
        tag = [0] * nrows
        tag[idx] = 1
        aug.append(list(r) + tag)
    h = _kernels.howell_form(aug, p, m)
    left_pivot = [r for r in h if any(r[:ncols])]
    res = _kernels.reduce_vector(list(vec) + [0] * nrows, left_pivot, p, m)
    if any(res[:ncols]):
        return None
    mod = p**m
    return [(-e) % mod for e in res[ncols:]]


# -- ideals of R_m G_i --------------------------------------------------------


@dataclass(frozen=True)
class IdealPresentation:
    """Ideal of R_m G_level given by a finite generating set."""

    params: GroupRingParams
    level: int
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.params != self.params:
                raise ParamsMismatchError("generator over wrong params")
            if g.level != self.level:
                raise LevelMismatchError("generator at wrong level")

    @classmethod
    def from_elements(cls, params, level, gens) -> "IdealPresentation":
        return cls(params, level, tuple(gens))

    @classmethod
    def unit(cls, params, level) -> "IdealPresentation":
        return cls(params, level, (GroupRingElement.one(params, level),))

    @classmethod
    def zero(cls, params, level) -> "IdealPresentation":
        return cls(params, level, ())


def shift_rows(x: GroupRingElement) -> list:
    """Coefficient rows of s^t * x for all t: the Z-module generators of the
    principal ideal (x)."""
    order = x.params.group_order(x.level)
    base = list(x.coeffs)
    return [base[-t:] + base[:-t] if t else list(base) for t in range(order)]


@lru_cache(maxsize=4096)
def _ideal_howell(ideal: IdealPresentation) -> tuple:
    rows = []
    for g in ideal.generators:
        rows.extend(shift_rows(g))
    params = ideal.params
    h = _kernels.howell_form(rows, params.p, params.m) if rows else []
    return tuple(tuple(r) for r in h)


def ideal_membership(x: GroupRingElement, ideal: IdealPresentation) -> bool:
    """Decide x in (g_1, ..., g_k) over R_m G_level."""
    if x.params != ideal.params:
        raise ParamsMismatchError("element over wrong params")
    if x.level != ideal.level:
        raise LevelMismatchError("element at wrong level")
    h = [list(r) for r in _ideal_howell(ideal)]
    return in_span(list(x.coeffs), h, x.params.p, x.params.m)


def ideal_equal(I: IdealPresentation, J: IdealPresentation) -> bool:
    if I.params != J.params:
        raise ParamsMismatchError("ideals over different params")
    if I.level != J.level:
        raise LevelMismatchError("ideals at different levels")
    return _ideal_howell(I) == _ideal_howell(J)


def ideal_size(ideal: IdealPresentation) -> int:
    """Number of ring elements the ideal contains."""
    h = [list(r) for r in _ideal_howell(ideal)]
    return span_size(h, ideal.params.p, ideal.params.m)


def annihilator(x: GroupRingElement) -> IdealPresentation:
    """Generators of {y : y x == 0} in R_m G_level.

    The annihilator is the kernel of the convolution action of x, computed
    over Z/p^m, then thinned to a small generating set: kernel basis rows are
    added greedily while they enlarge the ideal they generate, and a final
    backward pass drops generators made redundant by later ones.
    annihilator(0) is the unit ideal.
    """
    params = x.params
    if x.is_zero():
        return IdealPresentation.unit(params, x.level)
    rows = shift_rows(x)  # row t is s^t * x, i.e. the image of basis vector s^t
    basis = kernel_rows(rows, len(rows[0]), params.p, params.m)
    p, m = params.p, params.m
    gens = []
    span = []
    for row in basis:
        if span and in_span(row, span, p, m):
            continue
        g = GroupRingElement.from_coeffs(params, x.level, row)
        gens.append(g)
        span = howell_rows(span + shift_rows(g), p, m)
    idx = len(gens) - 2
    while idx >= 0 and len(gens) > 1:
        rest = gens[:idx] + gens[idx + 1 :]
        rest_span = []
        for g in rest:
            rest_span.extend(shift_rows(g))
        rest_span = howell_rows(rest_span, p, m)
        if in_span(list(gens[idx].coeffs), rest_span, p, m):
            gens = rest
        idx -= 1
    return IdealPresentation(params, x.level, tuple(gens))
