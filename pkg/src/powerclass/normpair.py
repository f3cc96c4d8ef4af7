"""Norm-pair combinatorics and the elementary number theory around it.

A norm pair is a vector a in ({-inf} u [0, n])^m together with a twist
d in 1 + pZ.  This module owns everything about such pairs that needs no
field arithmetic: the unit-filtration levels v_p(d - 1) and their behavior
under p-power maps, integer witnesses for the power expansion
d^(p^j) = 1 + p^(i+j) x (...), the partial order on pairs, the minimality
conditions, interpolated vectors and their inversion, the translation from
solvability data (b-vectors) back to norm vectors, and the rendering of the
embedding-problem statements a b-value encodes.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import (
    BadShapeError,
    BadTwistError,
    ExcludedCaseError,
    Hypothesis2ViolatedError,
    ImpossibleBPatternError,
    IndexRangeError,
    LengthMismatchError,
    NotInterpolatedError,
    NotInU1Error,
)
from .extint import INF, NEG_INF, fmt_ext, is_inf, is_neg_inf, parse_ext
from .groupring import GroupRingParams


# -- vectors and pairs --------------------------------------------------------


def _check_entry(e) -> None:
    if is_neg_inf(e):
        return
    if isinstance(e, int) and e >= 0:
        return
    raise ValueError(f"vector entry {e!r} must be -inf or a nonnegative integer")


@dataclass(frozen=True)
class NormVector:
    """Entry sequence over {-inf} u [0, n]; the bound n is checked where a
    ring context is available."""

    entries: tuple

    def __post_init__(self):
        if len(self.entries) == 0:
            raise ValueError("norm vectors have length >= 1")
        for e in self.entries:
            _check_entry(e)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return format_vector(self)

    def check_range(self, n: int, strict_first: bool = False) -> None:
        """Entries must not exceed n; with strict_first, a_0 < n as well."""
        for e in self.entries:
            if not is_neg_inf(e) and e > n:
                raise ValueError(f"entry {e} exceeds n = {n}")
        if strict_first and not is_neg_inf(self.entries[0]) and self.entries[0] >= n:
            raise ValueError(f"a_0 = {self.entries[0]} must be < n = {n}")


def vector(*entries) -> NormVector:
    return NormVector(tuple(entries))


def all_neg_inf(m: int) -> NormVector:
    return NormVector((NEG_INF,) * m)


@dataclass(frozen=True)
class NormPair:
    """A norm vector with its twist d in 1 + pZ (reduced mod p^m where used)."""

    a: NormVector
    d: int

    def check_twist(self, p: int) -> None:
        if (self.d - 1) % p:
            raise BadTwistError(f"d = {self.d} is not in 1 + {p}Z")


@dataclass(frozen=True)
class BVector:
    """Solvability profile b_0..b_{m-1} plus the root-of-unity level nu.

    Only the entries with index < nu are meaningful measurements; b_nu = n by
    convention when indexed, and later slots carry -inf placeholders.
    """

    entries: tuple
    nu: object  # int or INF

    def __post_init__(self):
        for e in self.entries:
            _check_entry(e)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class TowerConstants:
    """The root-of-unity levels (omega for the base, nu for the top) of a
    cyclic p-power tower of height n."""

    omega: object  # int >= 1 or INF
    nu: object  # int >= 1 or INF
    n: int
    p: int

    def __post_init__(self):
        for name, v in (("omega", self.omega), ("nu", self.nu)):
            if not is_inf(v) and (not isinstance(v, int) or v < 1):
                raise ValueError(f"{name} must be a positive integer or inf")
        if self.omega > self.nu:
            raise ValueError("omega <= nu is required")
        if self.p == 2 and self.omega == 1 and self.nu > 1:
            raise ExcludedCaseError("p = 2 with omega = 1 < nu is out of scope")


# -- unit filtration ----------------------------------------------------------


def u_level(d: int, p: int):
    """Largest i with d in U_i = 1 + p^i Z, i.e. v_p(d - 1); INF iff d == 1."""
    if d == 1:
        return INF
    e = abs(d - 1)
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


def power_u_level(d: int, p: int, j: int):
    """u_level(d^(p^j)) by direct big-integer computation.

    Requires d in U_1; for p = 2 that means any odd d (so d = -1 and the other
    -U_v twists are allowed).
    """
    if (d - 1) % p:
        raise NotInU1Error(f"d = {d} is not in 1 + {p}Z")
    if j < 0:
        raise IndexRangeError("j must be >= 0")
    return u_level(d ** (p**j), p)


@dataclass(frozen=True)
class PowerExpansion:
    """Integer witnesses for the expansion of d^(p^j) around 1.

    For p > 2 and d = 1 + p^i x the identity is
        d^(p^j) == 1 + p^(i+j) x (1 + f x p^i + g x p^(i+1)),
    for p = 2 and j >= 1 it is
        d^(2^j) == 1 + 2^(i+j) x (1 + 2^(i-1) x + 2^i x c),
    and for p = 2, j = 0 only the trivial d == 1 + 2^i x is recorded
    (no integer c satisfies the displayed form unless x == 0).
    """

    p: int
    d: int
    i: int
    j: int
    x: int
    f: int | None = None
    g: int | None = None
    c: int | None = None

    def identity_holds(self) -> bool:
        lhs = self.d ** (self.p**self.j)
        if self.p > 2:
            inner = 1 + self.f * self.x * self.p**self.i + self.g * self.x * self.p ** (self.i + 1)
            return lhs == 1 + self.p ** (self.i + self.j) * self.x * inner
        if self.j == 0:
            return self.d == 1 + 2**self.i * self.x
        inner = 1 + 2 ** (self.i - 1) * self.x + 2**self.i * self.x * self.c
        return lhs == 1 + 2 ** (self.i + self.j) * self.x * inner


def expand_power(d: int, p: int, i: int, j: int) -> PowerExpansion:
    """Solve for the witnesses of PowerExpansion exactly over the integers."""
    if i < 1:
        raise BadShapeError("the expansion needs i >= 1")
    if (d - 1) % p**i:
        raise BadShapeError(f"d = {d} is not 1 mod {p}^{i}")
    x = (d - 1) // p**i
    if x == 0:
        return PowerExpansion(p, d, i, j, 0, f=0, g=0, c=0)
    lhs = d ** (p**j)
    num = lhs - 1
    den = p ** (i + j) * x
    if num % den:
        raise BadShapeError(f"no integral witness for d={d}, p={p}, i={i}, j={j}")
    inner = num // den
    if p > 2:
        rest = inner - 1
        if rest % (x * p**i):
            raise BadShapeError(f"no integral witness for d={d}, p={p}, i={i}, j={j}")
        fg = rest // (x * p**i)
        return PowerExpansion(p, d, i, j, x, f=fg % p, g=fg // p)
    if j == 0:
        return PowerExpansion(p, d, i, j, x)  # trivial witness d = 1 + 2^i x
    rest = inner - 1 - 2 ** (i - 1) * x
    if rest % (2**i * x):
        raise BadShapeError(f"no integral witness for d={d}, p=2, i={i}, j={j}")
    return PowerExpansion(p, d, i, j, x, c=rest // (2**i * x))


# -- the partial order --------------------------------------------------------


class Ordering(enum.Enum):
    LT = "LT"
    GT = "GT"
    EQ = "EQ"
    EQUIV = "EQUIV"


def _lex_cmp(a: NormVector, b: NormVector) -> int:
    for x, y in zip(a, b):
        if x == y:
            continue
        return -1 if x < y else 1
    return 0


def compare_norm_pairs(p1: NormPair, p2: NormPair, m: int, p: int) -> Ordering:
    """Order norm pairs: lexicographic on the vector (with -inf smallest),
    then by truncated valuation of the twist in the REVERSED direction --
    a larger min{v_p(d-1), m} means a smaller pair.  EQUIV marks pairs below
    and above each other (same vector, same truncated valuation) that are not
    literally congruent mod p^m."""
    if len(p1.a) != m or len(p2.a) != m:
        raise LengthMismatchError("vectors must have length m")
    c = _lex_cmp(p1.a, p2.a)
    if c:
        return Ordering.LT if c < 0 else Ordering.GT
    w1 = min(u_level(p1.d, p), m)
    w2 = min(u_level(p2.d, p), m)
    if w1 == w2:
        if (p1.d - p2.d) % p**m == 0:
            return Ordering.EQ
        return Ordering.EQUIV
    return Ordering.LT if w1 > w2 else Ordering.GT


# -- interpolation ------------------------------------------------------------


def last_nonneg_index(a: NormVector, i: int):
    """max{0 <= j <= i : a_j != -inf}, or -inf when there is none."""
    if not 0 <= i < len(a):
        raise IndexRangeError(f"index {i} outside [0, {len(a) - 1}]")
    out = NEG_INF
    for j in range(i + 1):
        if not is_neg_inf(a[j]):
            out = j
    return out


def interpolate(a: NormVector) -> NormVector:
    """Fill the -inf gaps: entry i becomes a_{i*} + (i - i*) where i* is the
    last supported index at or before i."""
    out = []
    for i in range(len(a)):
        istar = last_nonneg_index(a, i)
        if is_neg_inf(istar):
            out.append(NEG_INF)
        else:
            out.append(a[istar] + (i - istar))
    return NormVector(tuple(out))


def recover_from_interpolated(atilde: NormVector) -> NormVector:
    """Invert interpolate: steps of exactly one collapse back to -inf.

    Valid inputs have a (possibly empty) -inf prefix followed by strictly
    increasing integers; anything else raises NotInterpolatedError.
    """
    prev = NEG_INF
    seen_support = False
    for e in atilde:
        if is_neg_inf(e):
            if seen_support:
                raise NotInterpolatedError("-inf after a supported entry")
        else:
            if seen_support and e <= prev:
                raise NotInterpolatedError("entries must strictly increase")
            seen_support = True
            prev = e
    out = [atilde[0]]
    for i in range(1, len(atilde)):
        cur, prev = atilde[i], atilde[i - 1]
        if is_neg_inf(cur):
            out.append(NEG_INF)
        elif is_neg_inf(prev):
            out.append(cur)
        elif cur == prev + 1:
            out.append(NEG_INF)
        else:
            out.append(cur)
    return NormVector(tuple(out))


# -- minimality conditions ----------------------------------------------------


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witnesses: tuple = ()


@dataclass(frozen=True)
class MinimalityReport:
    """Outcome of the checkable minimality conditions.

    delta_freeness needs field data (freeness of the delta classes mod p) and
    is reported as not checked rather than guessed.
    """

    power_levels: ConditionResult
    index_spacing: ConditionResult
    unit_filtration: ConditionResult
    delta_freeness: str = "not-checked-here"

    @property
    def passed(self) -> bool:
        return (
            self.power_levels.passed
            and self.index_spacing.passed
            and self.unit_filtration.passed
        )


def check_minimality_conditions(pair: NormPair, params: GroupRingParams) -> MinimalityReport:
    """Check the arithmetic minimality conditions of a candidate pair:

    1. d^(p^(a_i)) lies in U_{i+1} for every supported entry;
    2. the supported values a_i - i strictly increase (a_i + j < a_{i+j});
    3. if d in U_t \\ U_{t+1} with t < m then a_{t+k} > k for supported slots.

    For p = 2 the hypothesis d in U_2 is enforced up front.
    """
    p, m = params.p, params.m
    pair.check_twist(p)
    if p == 2 and (pair.d - 1) % 4:
        raise Hypothesis2ViolatedError(f"p = 2 requires d in U_2, got d = {pair.d}")
    a = pair.a
    if len(a) != m:
        raise LengthMismatchError(f"vector length {len(a)} != m = {m}")
    a.check_range(params.n, strict_first=True)
    d = pair.d

    bad1 = tuple(
        i
        for i in range(m)
        if not is_neg_inf(a[i]) and (d ** (p ** a[i]) - 1) % p ** (i + 1)
    )
    cond1 = ConditionResult(not bad1, bad1)

    bad2 = []
    for i in range(m):
        for k in range(i + 1, m):
            if is_neg_inf(a[k]):
                continue
            left = NEG_INF if is_neg_inf(a[i]) else a[i] + (k - i)
            if not left < a[k]:
                bad2.append((i, k))
    cond2 = ConditionResult(not bad2, tuple(bad2))

    t = u_level(d, p)
    bad3 = []
    if not is_inf(t) and t < m:
        for k in range(m - t):
            if not is_neg_inf(a[t + k]) and not a[t + k] > k:
                bad3.append(t + k)
    cond3 = ConditionResult(not bad3, tuple(bad3))

    return MinimalityReport(cond1, cond2, cond3)


# -- b-vector translation -------------------------------------------------------


def a_from_b(b: BVector, m: int) -> NormVector:
    """Translate a solvability profile into a norm vector: a_0 = b_0, then
    b_i > b_{i-1} + 1 (and i <= nu) keeps b_i while b_i = b_{i-1} + 1 or
    i > nu collapses to -inf."""
    if m > len(b):
        raise LengthMismatchError(f"need at least {m} b-entries, have {len(b)}")
    nu = b.nu
    out = [b[0]]
    for i in range(1, m):
        if i > nu:
            out.append(NEG_INF)
            continue
        prev, cur = b[i - 1], b[i]
        if is_neg_inf(prev):
            out.append(NEG_INF if is_neg_inf(cur) else cur)
            continue
        if is_neg_inf(cur):
            raise ImpossibleBPatternError(
                f"b_{i} = -inf after b_{i - 1} = {prev} cannot occur"
            )
        if cur <= prev:
            raise ImpossibleBPatternError(
                f"b_{i} = {cur} <= b_{i - 1} = {prev} cannot occur"
            )
        out.append(cur if cur > prev + 1 else NEG_INF)
    return NormVector(tuple(out))


# -- bounds reports -----------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class BoundsReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def named(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _le_bound(a_i, bound) -> bool:
    """a_i <= bound in extended arithmetic (bound may be -inf when nu = inf)."""
    if is_neg_inf(a_i):
        return True
    if is_neg_inf(bound):
        return False
    return a_i <= bound


def a_bounds_report(
    a: NormVector, tc: TowerConstants, d: int, cyclotomic=None
) -> BoundsReport:
    """Check the inequalities a norm vector must satisfy against the tower
    constants (omega, nu), including the equality-at-nu* clause when the
    cyclotomic/non-cyclotomic status is supplied, plus the twist filtration
    facts (d in U_min(omega,m), d not in U_{omega+1} when omega < nu <= m,
    and d = 1 mod p^m when omega = nu)."""
    m = len(a)
    n, p = tc.n, tc.p
    omega, nu = tc.omega, tc.nu
    checks = []

    nu_bound_ok = all(
        _le_bound(a[i], NEG_INF if is_inf(nu) else n + i - nu) for i in range(m)
    )
    checks.append(
        BoundCheck(
            "nu-upper-bound",
            nu_bound_ok,
            f"a_i <= n + i - nu for all i < {m}",
        )
    )

    if cyclotomic is False and not is_inf(nu) and m > nu:
        nustar = last_nonneg_index(a, nu)
        eq_ok = True
        for i in range(m):
            eq_here = (not is_neg_inf(a[i])) and a[i] == n + i - nu
            if eq_here != (i == nustar):
                eq_ok = False
        checks.append(
            BoundCheck(
                "nu-equality-at-last-support",
                eq_ok,
                f"equality a_i = n + i - nu exactly at i = {fmt_ext(nustar)}",
            )
        )

    t = u_level(d, p)
    want = min(omega, m)
    checks.append(
        BoundCheck(
            "twist-filtration",
            t >= want,
            f"v_p(d-1) = {fmt_ext(t)} >= min(omega, m) = {fmt_ext(want)}",
        )
    )

    if not is_inf(omega):
        omega_ok = all(
            _le_bound(a[i], n + i - omega) for i in range(min(omega, m))
        )
        checks.append(
            BoundCheck(
                "omega-upper-bound",
                omega_ok,
                "a_i <= n + i - omega for i < min(omega, m)",
            )
        )

    if omega == nu and not is_inf(nu) and nu < m:
        nustar = last_nonneg_index(a, nu)
        eq_ok = True
        for i in range(m):
            eq_here = (not is_neg_inf(a[i])) and a[i] == n + i - nu
            if eq_here != (i == nustar):
                eq_ok = False
        checks.append(
            BoundCheck(
                "omega-equality-at-last-support",
                eq_ok,
                f"omega = nu < m: equality exactly at i = {fmt_ext(nustar)}",
            )
        )

    if not is_inf(omega) and omega < nu and nu <= m:
        strict_ok = all(
            _le_bound(a[i], n + i - (omega + 1)) for i in range(min(omega + 1, m))
        )
        checks.append(
            BoundCheck(
                "omega-strict-upper-bound",
                strict_ok,
                "a_i <= n + i - (omega+1) for i < omega + 1",
            )
        )
        checks.append(
            BoundCheck(
                "twist-not-deeper",
                t == omega,
                f"omega < nu <= m forces v_p(d-1) = omega, got {fmt_ext(t)}",
            )
        )

    if omega == nu:
        ok = is_inf(t) or t >= m
        checks.append(
            BoundCheck(
                "trivial-twist-when-omega-equals-nu",
                ok,
                f"omega = nu forces d = 1 mod p^m, v_p(d-1) = {fmt_ext(t)}",
            )
        )

    return BoundsReport(tuple(checks))


# -- embedding-problem statements ----------------------------------------------


def embedding_statement(b_i, i: int, n: int, I: int) -> str:
    """Render the Galois embedding problem a b-value encodes, with
    p^I = [K : F(zeta_{p^(i+1)})]."""
    _check_entry(b_i)
    if is_neg_inf(b_i):
        return (
            f"b_{i} = -inf: the embedding problem Z/p^{I + i} ->> Z/p^{I} "
            f"over K/F(zeta_p^{i + 1}) is solvable"
        )
    text = (
        f"b_{i} = min{{s : Z/p^({n - 1 + i}-s) ->> Z/p^({n - 1}-s) "
        f"over K/K_(s+1) is solvable}} = {b_i}"
    )
    if b_i == n:
        text += " (degenerate: s = n names the trivial tower over K itself)"
    return text


# -- text syntax ---------------------------------------------------------------

_VEC_RE = re.compile(r"^\(\s*(.*?)\s*\)$")


def parse_vector(text: str) -> NormVector:
    """Parse ``(-inf,2,3)``."""
    m = _VEC_RE.match(text.strip())
    if not m:
        raise ValueError(f"vector syntax is (e1,e2,...), got {text!r}")
    parts = [s for s in m.group(1).split(",") if s.strip() != ""]
    if not parts:
        raise ValueError("empty vector")
    entries = []
    for s in parts:
        e = parse_ext(s)
        if is_inf(e):
            raise ValueError("vectors cannot contain +inf")
        entries.append(e)
    return NormVector(tuple(entries))


def format_vector(a) -> str:
    return "(" + ",".join(fmt_ext(e) for e in a) + ")"


def parse_pair(text: str) -> NormPair:
    """Parse ``((-inf,2),5)``."""
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"pair syntax is ((...),d), got {text!r}")
    inner = t[1:-1].strip()
    if not inner.startswith("("):
        raise ValueError(f"pair syntax is ((...),d), got {text!r}")
    close = inner.index(")")
    vec = parse_vector(inner[: close + 1])
    rest = inner[close + 1 :].strip()
    if not rest.startswith(","):
        raise ValueError(f"pair syntax is ((...),d), got {text!r}")
    return NormPair(vec, int(rest[1:].strip()))


def format_pair(pair: NormPair) -> str:
    return f"({format_vector(pair.a)},{pair.d})"
