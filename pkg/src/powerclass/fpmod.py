"""Finitely presented modules over R_m G = (Z/p^m)[Z/p^n Z].

A presentation lists named generators and relation rows (one group-ring
coefficient per generator).  Every decision procedure unfolds to Z/p^m-linear
algebra on vectors of length #gens * p^n: the R_m G-span of the relations is
the Z/p^m-span of all sigma-shifts of the rows, and the Howell machinery from
``ideals`` answers membership, equality, and size questions exactly.

The distinguished family built here is the module X(a, d) on generators
alpha, delta_i with relations

    (sigma - d) alpha = sum_i p^i delta_i,      (sigma^(p^(a_i)) - 1) delta_i = 0,

where entries a_i = -inf contribute no generator at all.  The module-level
tests implemented on top: eigenvalue detection for subgroup actions, trivial
action, the torsion certificate ((tau^(p^s) - 1) y = p^(m-1) z with y, z
outside (tau^(p^s) - 1, p)M), freeness over quotient group rings, and the
scalar conductor of one generator into the span of others.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadVectorError,
    LevelMismatchError,
    MTooSmallError,
    PresentationMismatchError,
    SubgroupOrderError,
    UnknownGeneratorError,
)
from .extint import NEG_INF, is_neg_inf
from .groupring import GroupRingElement, GroupRingParams
from .ideals import (
    IdealPresentation,
    howell_rows,
    in_span,
    kernel_rows,
    pivot_profile,
    residual,
    solve_combination,
)
from .normpair import NormVector


@dataclass(frozen=True)
class SubgroupSpec:
    """H_t = <sigma^(p^t)>, the subgroup of order p^(n-t)."""

    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("subgroup exponent must be >= 0")


@dataclass(frozen=True)
class ModulePresentation:
    params: GroupRingParams
    gens: tuple
    relations: tuple  # rows; each row is a tuple of GroupRingElement per gen

    def __post_init__(self):
        for row in self.relations:
            if len(row) != len(self.gens):
                raise ValueError("relation row width must match generators")
            for e in row:
                if e.params != self.params or e.level != self.params.n:
                    raise ValueError("relation coefficients must live at level n")

    @classmethod
    def from_rows(cls, params, gens, rows) -> "ModulePresentation":
        """rows: iterable of dicts {generator name: GroupRingElement}."""
        gens = tuple(gens)
        packed = []
        for row in rows:
            for name in row:
                if name not in gens:
                    raise UnknownGeneratorError(f"relation names unknown generator {name}")
            packed.append(
                tuple(
                    row.get(name, GroupRingElement.zero(params, params.n))
                    for name in gens
                )
            )
        return cls(params, gens, tuple(packed))

    @property
    def ncols(self) -> int:
        return len(self.gens) * self.params.group_order(self.params.n)

    def gen_index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise UnknownGeneratorError(f"no generator named {name}") from None


@dataclass(frozen=True)
class ModuleElement:
    """Element given by one group-ring coordinate per generator (level n)."""

    presentation: ModulePresentation
    coords: tuple  # aligned with presentation.gens

    def vec(self) -> list:
        out = []
        for c in self.coords:
            out.extend(c.coeffs)
        return out

    def act(self, r) -> "ModuleElement":
        """Action of a ring element (or integer scalar)."""
        return ModuleElement(self.presentation, tuple(c * r for c in self.coords))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        _match(self, other)
        return ModuleElement(
            self.presentation,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        _match(self, other)
        return ModuleElement(
            self.presentation,
            tuple(a - b for a, b in zip(self.coords, other.coords)),
        )


def _match(x: ModuleElement, y: ModuleElement) -> None:
    if x.presentation != y.presentation:
        raise PresentationMismatchError("elements of different presentations")


def module_element(M: ModulePresentation, coords: dict) -> ModuleElement:
    """Build an element from {generator name: GroupRingElement | int}."""
    params = M.params
    packed = []
    for name in M.gens:
        c = coords.get(name, 0)
        if isinstance(c, int):
            c = GroupRingElement.scalar(params, params.n, c)
        packed.append(c)
    for name in coords:
        M.gen_index(name)
    return ModuleElement(M, tuple(packed))


def generator_element(M: ModulePresentation, name: str) -> ModuleElement:
    M.gen_index(name)
    return module_element(M, {name: 1})


def _vec_to_element(M: ModulePresentation, vec: list) -> ModuleElement:
    order = M.params.group_order(M.params.n)
    coords = []
    for g in range(len(M.gens)):
        coords.append(
            GroupRingElement.from_coeffs(
                M.params, M.params.n, vec[g * order : (g + 1) * order]
            )
        )
    return ModuleElement(M, tuple(coords))


# -- unfolding ----------------------------------------------------------------


def _rotated(coeffs: tuple, t: int) -> list:
    """Coefficients of s^t * x."""
    if t == 0:
        return list(coeffs)
    return list(coeffs[-t:]) + list(coeffs[:-t])


def _row_vec(M: ModulePresentation, row: tuple, t: int) -> list:
    out = []
    for e in row:
        out.extend(_rotated(e.coeffs, t))
    return out


def relation_rows(M: ModulePresentation) -> list:
    order = M.params.group_order(M.params.n)
    rows = []
    for row in M.relations:
        for t in range(order):
            rows.append(_row_vec(M, row, t))
    return rows


@lru_cache(maxsize=2048)
def _relspan(M: ModulePresentation) -> tuple:
    rows = relation_rows(M)
    h = howell_rows(rows, M.params.p, M.params.m) if rows else []
    return tuple(tuple(r) for r in h)


def _relspan_rows(M: ModulePresentation) -> list:
    return [list(r) for r in _relspan(M)]


def _op_rows(M: ModulePresentation, op: GroupRingElement) -> list:
    """Unfolded rows of op * s^t * e_g over all generators and shifts."""
    order = M.params.group_order(M.params.n)
    ngens = len(M.gens)
    rows = []
    for g in range(ngens):
        for t in range(order):
            shifted = _rotated(op.coeffs, t)
            row = [0] * M.ncols
            row[g * order : (g + 1) * order] = shifted
            rows.append(row)
    return rows


def _scalar_rows(M: ModulePresentation, c: int) -> list:
    rows = []
    mod = M.params.modulus
    for j in range(M.ncols):
        row = [0] * M.ncols
        row[j] = c % mod
        rows.append(row)
    return rows


def _tau(M: ModulePresentation, exponent: int) -> GroupRingElement:
    """sigma^(p^exponent) as a ring element at level n (exponent folded)."""
    params = M.params
    return GroupRingElement.monomial(params, params.n, params.p**exponent)


def element_in_rows(x: ModuleElement, hrows: list) -> bool:
    params = x.presentation.params
    return in_span(x.vec(), hrows, params.p, params.m)


# -- construction of X(a, d) ----------------------------------------------------


def delta_name(i: int) -> str:
    return f"delta{i}"


def exceptional_module(params: GroupRingParams, a, d: int) -> ModulePresentation:
    """The module X(a, d): generators alpha and delta_i for the supported
    entries of a; slots with a_i = -inf contribute no generator (the p^(-inf)
    = 0 convention makes their class trivial)."""
    if not isinstance(a, NormVector):
        a = NormVector(tuple(a))
    n = params.n
    try:
        a.check_range(n, strict_first=True)
    except ValueError as exc:
        raise BadVectorError(str(exc)) from None
    gens = ["alpha"] + [delta_name(i) for i in range(len(a)) if not is_neg_inf(a[i])]
    sigma = GroupRingElement.sigma(params, n)
    main = {"alpha": sigma - d}
    rows = []
    for i, ai in enumerate(a):
        if is_neg_inf(ai):
            continue
        main[delta_name(i)] = GroupRingElement.scalar(params, n, -(params.p**i))
        rows.append(
            {
                delta_name(i): GroupRingElement.monomial(params, n, params.p**ai)
                - 1
            }
        )
    return ModulePresentation.from_rows(params, gens, [main] + rows)


# -- basic invariants -----------------------------------------------------------


def fp_dimension(M: ModulePresentation) -> int:
    """dim over F_p of M/pM: column count minus the mod-p rank of the
    unfolded relations."""
    rows = relation_rows(M)
    h = howell_rows(rows, M.params.p, 1) if rows else []
    return M.ncols - len(h)


def module_size_log(M: ModulePresentation) -> int:
    """log_p of the number of elements of M."""
    params = M.params
    h = _relspan_rows(M)
    killed = sum(params.m - v for (_, v) in pivot_profile(h, params.p, params.m))
    return params.m * M.ncols - killed


def element_equal(x: ModuleElement, y: ModuleElement) -> bool:
    _match(x, y)
    M = x.presentation
    diff = (x - y).vec()
    return not any(residual(diff, _relspan_rows(M), M.params.p, M.params.m))


def submodule_rows(M: ModulePresentation, gens: tuple) -> list:
    """Howell rows of the submodule generated by the named generators."""
    params = M.params
    order = params.group_order(params.n)
    rows = _relspan_rows(M)
    for name in gens:
        g = M.gen_index(name)
        for t in range(order):
            row = [0] * M.ncols
            row[g * order + t] = 1
            rows.append(row)
    return howell_rows(rows, params.p, params.m)


# -- subgroup action tests -------------------------------------------------------


def _check_subgroup(M: ModulePresentation, H: SubgroupSpec) -> None:
    if H.exponent > M.params.n:
        raise SubgroupOrderError(
            f"subgroup exponent {H.exponent} exceeds n = {M.params.n}"
        )


def is_eigenmodule(M: ModulePresentation, H: SubgroupSpec):
    """Smallest c in [0, p^m) with (tau - c) M = 0 for tau = sigma^(p^t),
    or None.  Exhaustive scan over c with exact membership checks."""
    _check_subgroup(M, H)
    params = M.params
    rel = _relspan_rows(M)
    tau = _tau(M, H.exponent)
    tau_gens = [
        generator_element(M, name).act(tau).vec() for name in M.gens
    ]
    gen_vecs = [generator_element(M, name).vec() for name in M.gens]
    for c in range(params.modulus):
        ok = True
        for tg, gv in zip(tau_gens, gen_vecs):
            vec = [(x - c * y) % params.modulus for x, y in zip(tg, gv)]
            if any(residual(vec, rel, params.p, params.m)):
                ok = False
                break
        if ok:
            return c
    return None


def has_eigenvalue(M: ModulePresentation, H: SubgroupSpec, c: int) -> bool:
    """Does (tau - c) kill M for tau = sigma^(p^t)?"""
    _check_subgroup(M, H)
    params = M.params
    rel = _relspan_rows(M)
    tau = _tau(M, H.exponent)
    for name in M.gens:
        g = generator_element(M, name)
        vec = (g.act(tau) - g.act(c % params.modulus)).vec()
        if any(residual(vec, rel, params.p, params.m)):
            return False
    return True


def is_trivial_under(M: ModulePresentation, H: SubgroupSpec) -> bool:
    """(tau - 1) M == 0."""
    _check_subgroup(M, H)
    params = M.params
    rel = _relspan_rows(M)
    tau = _tau(M, H.exponent)
    for name in M.gens:
        g = generator_element(M, name)
        vec = (g.act(tau) - g).vec()
        if any(residual(vec, rel, params.p, params.m)):
            return False
    return True


# -- the torsion certificate -----------------------------------------------------


@dataclass(frozen=True)
class PropertyPCertificate:
    """Witnesses s, y, z for (tau^(p^s) - 1) y = p^(m-1) z with y and z both
    outside (tau^(p^s) - 1, p) M."""

    s: int
    y: ModuleElement
    z: ModuleElement


def _step_op(M: ModulePresentation, t: int, s: int) -> GroupRingElement:
    """tau^(p^s) - 1 for tau = sigma^(p^t); zero once p^(t+s) folds to 1."""
    params = M.params
    exp = params.p ** (t + s)
    return GroupRingElement.monomial(params, params.n, exp) - 1


def _excluded_rows(M: ModulePresentation, op: GroupRingElement) -> list:
    """Howell rows of (op, p) M, relations included."""
    params = M.params
    rows = _relspan_rows(M) + _op_rows(M, op) + _scalar_rows(M, params.p)
    return howell_rows(rows, params.p, params.m)


def verify_property_P_certificate(
    M: ModulePresentation, H: SubgroupSpec, cert: PropertyPCertificate
) -> bool:
    """Exact check of the certificate equation and both exclusions."""
    params = M.params
    if params.m < 2:
        raise MTooSmallError("torsion certificates need m >= 2")
    _check_subgroup(M, H)
    if cert.y.presentation != M or cert.z.presentation != M:
        raise PresentationMismatchError("certificate elements of a different module")
    if cert.s < 0:
        return False
    op = _step_op(M, H.exponent, cert.s)
    lhs = cert.y.act(op)
    rhs = cert.z.act(params.p ** (params.m - 1))
    if not element_equal(lhs, rhs):
        return False
    excluded = _excluded_rows(M, op)
    if element_in_rows(cert.y, excluded) or element_in_rows(cert.z, excluded):
        return False
    return True


def _monomial_candidates(M: ModulePresentation, support: int):
    """Deterministic candidate elements with at most `support` nonzero
    monomial coordinates; plain generators come first."""
    params = M.params
    order = params.group_order(params.n)
    positions = [
        (g, t) for g in range(len(M.gens)) for t in range(order)
    ]
    singles = []
    for g, t in positions:
        for c in range(1, params.modulus):
            singles.append(((g, t, c),))
    if support >= 2:
        pairs = []
        for (pos1, pos2) in itertools.combinations(positions, 2):
            for c1 in range(1, params.modulus):
                for c2 in range(1, params.modulus):
                    pairs.append(((pos1[0], pos1[1], c1), (pos2[0], pos2[1], c2)))
        singles.extend(pairs)
    for terms in singles:
        vec = [0] * M.ncols
        for g, t, c in terms:
            vec[g * order + t] = c
        yield _vec_to_element(M, vec)


def has_property_P(
    M: ModulePresentation, H: SubgroupSpec, search_bound: int = 1
):
    """Bounded search for a verified torsion certificate.

    Tries s in increasing order and candidate y with monomial support at most
    search_bound; for each y that stays outside (tau^(p^s) - 1, p)M and whose
    image is divisible by p^(m-1) modulo relations, a matching z is solved for
    by linear algebra and adjusted outside the excluded submodule when
    possible.  Returns the first verified certificate, else None.  Absence
    within the bound is not a disproof; pair with refute_property_P.
    """
    params = M.params
    if params.m < 2:
        raise MTooSmallError("torsion certificates need m >= 2")
    _check_subgroup(M, H)
    t = H.exponent
    rel = _relspan_rows(M)
    pm1 = params.p ** (params.m - 1)
    solver_rows = _scalar_rows(M, pm1) + rel
    quick = howell_rows(solver_rows, params.p, params.m)
    kz = [
        row[: M.ncols]
        for row in kernel_rows(solver_rows, M.ncols, params.p, params.m)
    ]
    for s in range(0, params.n - t + 1):
        op = _step_op(M, t, s)
        excluded = _excluded_rows(M, op)
        for y in _monomial_candidates(M, search_bound):
            if element_in_rows(y, excluded):
                continue
            w = y.act(op).vec()
            if any(residual(w, quick, params.p, params.m)):
                continue
            combo = solve_combination(w, solver_rows, params.p, params.m)
            if combo is None:
                continue
            z_vec = combo[: M.ncols]
            z = _vec_to_element(M, z_vec)
            if element_in_rows(z, excluded):
                z = None
                for kcol in kz:
                    cand = _vec_to_element(
                        M,
                        [(a + b) % params.modulus for a, b in zip(z_vec, kcol)],
                    )
                    if not element_in_rows(cand, excluded):
                        z = cand
                        break
                if z is None:
                    continue
            cert = PropertyPCertificate(s, y, z)
            if verify_property_P_certificate(M, H, cert):
                return cert
    return None


def refute_property_P(M: ModulePresentation, H: SubgroupSpec) -> bool:
    """Structural refutation: for every s, every z solving the certificate
    equation is forced into (tau^(p^s) - 1, p)M, so no certificate can exist.
    Returns True when the refutation succeeds for all s (a complete proof of
    absence); False means inconclusive."""
    params = M.params
    if params.m < 2:
        raise MTooSmallError("torsion certificates need m >= 2")
    _check_subgroup(M, H)
    t = H.exponent
    rel = _relspan_rows(M)
    pm1 = params.p ** (params.m - 1)
    for s in range(0, params.n - t + 1):
        op = _step_op(M, t, s)
        image_rows = howell_rows(
            rel + _op_rows(M, op), params.p, params.m
        )
        stacked = _scalar_rows(M, pm1) + [list(r) for r in image_rows]
        zs_gens = [
            row[: M.ncols]
            for row in kernel_rows(stacked, M.ncols, params.p, params.m)
        ]
        excluded = _excluded_rows(M, op)
        for zv in zs_gens:
            if any(residual(zv, excluded, params.p, params.m)):
                return False
    return True


# -- freeness over quotient group rings -------------------------------------------


def free_rank_over_quotient(
    M: ModulePresentation, H: SubgroupSpec, S: SubgroupSpec
):
    """Rank of M as a free R_m(H/S)-module, or None when not free.

    Needs S <= H (exponents ordered the other way).  When S fails to act
    trivially the quotient action is undefined and the answer is None.  The
    quotient ring R_m[H/S] is local, so M is free of rank r iff r equals the
    minimal number of generators (Nakayama) and the cardinalities match.
    """
    _check_subgroup(M, H)
    _check_subgroup(M, S)
    t, u = H.exponent, S.exponent
    if u < t:
        raise SubgroupOrderError("S <= H requires S.exponent >= H.exponent")
    params = M.params
    if not is_trivial_under(M, S):
        return None
    tau = _tau(M, t)
    rad_rows = relation_rows(M) + _op_rows(M, tau - 1) + _scalar_rows(M, params.p)
    rank_mod_rad = len(howell_rows(rad_rows, params.p, 1))
    r = M.ncols - rank_mod_rad
    if module_size_log(M) == r * params.m * params.p ** (u - t):
        return r
    return None


def is_free_over_quotient(
    M: ModulePresentation, H: SubgroupSpec, S: SubgroupSpec
) -> bool:
    return free_rank_over_quotient(M, H, S) is not None


def free_quotient_module(
    params: GroupRingParams, exponents: tuple
) -> ModulePresentation:
    """Direct sum of cyclic modules R_m G_{u} for u in exponents: generator
    w_j with the single relation (sigma^(p^(u_j)) - 1) w_j = 0."""
    gens = [f"w{j}" for j in range(len(exponents))]
    rows = []
    for j, u in enumerate(exponents):
        params.check_level(u)
        rows.append(
            {gens[j]: GroupRingElement.monomial(params, params.n, params.p**u) - 1}
        )
    return ModulePresentation.from_rows(params, gens, rows)


# -- scalar conductor --------------------------------------------------------------


def scalar_conductor(
    M: ModulePresentation, gen: str, others: tuple
) -> IdealPresentation:
    """The ideal {c in R_m : c * gen lies in the submodule generated by
    others}.  Ideals of R_m are p-power ideals, so the minimal valuation k
    with p^k * gen inside the span determines the answer; k = m means the
    zero ideal."""
    params = M.params
    g = M.gen_index(gen)
    rows = submodule_rows(M, tuple(others))
    order = params.group_order(params.n)
    base = [0] * M.ncols
    base[g * order] = 1
    for k in range(params.m + 1):
        vec = [(e * params.p**k) % params.modulus for e in base]
        if in_span(vec, rows, params.p, params.m):
            if k == params.m:
                return IdealPresentation.zero(params, 0)
            return IdealPresentation(
                params,
                0,
                (GroupRingElement.scalar(params, 0, params.p**k),),
            )
    return IdealPresentation.zero(params, 0)
