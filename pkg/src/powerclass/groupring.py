"""Exact arithmetic in R_m G_i = (Z/p^m)[Z/p^i Z].

The ambient cyclic group has order p^n with generator ``s`` (sigma); every
quotient level 0 <= i <= n gets its own ring, with elements stored as dense
coefficient tuples of length p^i reduced into [0, p^m).  On top of the ring
arithmetic this module builds the three operator polynomials

    norm_poly(i, j)          sum_k s^(k p^j)                       (P)
    twisted_norm_poly(d,i,j) sum_k (d^(p^j))^(p^(i-j)-1-k) s^(k p^j)   (Q)
    telescope_poly(d, i)     sum_{s=1}^{p^i - 1} sum_{k<s} d^k s^(s-1-k)   (T)

the evaluation map s -> d, and the quotient projections G_i -> G_j.  Scalar
powers of d are always computed exactly over Z before reduction, so the
algebraic identities between these polynomials hold on the nose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import _kernels
from .errors import (
    IllDefinedError,
    IndexOrderError,
    LevelMismatchError,
    NotInU1Error,
    ParamsMismatchError,
)


def is_prime(q: int) -> bool:
    """Trial division; fine for the desk-scale primes this package handles."""
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupRingParams:
    """The triple (p, n, m): coefficients Z/p^m, group Z/p^n Z."""

    p: int
    n: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def group_order(self, level: int) -> int:
        return self.p**level

    def check_level(self, level: int) -> None:
        if not 0 <= level <= self.n:
            raise IndexOrderError(f"level {level} outside [0, {self.n}]")


@dataclass(frozen=True)
class GroupRingElement:
    """Element of R_m G_level, coefficient k belonging to s^k."""

    params: GroupRingParams
    level: int
    coeffs: tuple

    def __post_init__(self):
        self.params.check_level(self.level)
        if len(self.coeffs) != self.params.group_order(self.level):
            raise ValueError("coefficient count must equal p^level")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, params, level, coeffs) -> "GroupRingElement":
        mod = params.modulus
        return cls(params, level, tuple(int(c) % mod for c in coeffs))

    @classmethod
    def zero(cls, params, level) -> "GroupRingElement":
        return cls(params, level, (0,) * params.group_order(level))

    @classmethod
    def scalar(cls, params, level, c) -> "GroupRingElement":
        coeffs = [0] * params.group_order(level)
        coeffs[0] = int(c) % params.modulus
        return cls(params, level, tuple(coeffs))

    @classmethod
    def one(cls, params, level) -> "GroupRingElement":
        return cls.scalar(params, level, 1)

    @classmethod
    def monomial(cls, params, level, exponent, c=1) -> "GroupRingElement":
        order = params.group_order(level)
        coeffs = [0] * order
        coeffs[exponent % order] = int(c) % params.modulus
        return cls(params, level, tuple(coeffs))

    @classmethod
    def sigma(cls, params, level) -> "GroupRingElement":
        return cls.monomial(params, level, 1)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _match(self, other: "GroupRingElement") -> None:
        if self.params != other.params:
            raise ParamsMismatchError("elements over different (p, n, m)")
        if self.level != other.level:
            raise LevelMismatchError(
                f"levels differ: {self.level} vs {other.level}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(self.params, self.level, other)
        self._match(other)
        mod = self.params.modulus
        return GroupRingElement(
            self.params,
            self.level,
            tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __neg__(self):
        mod = self.params.modulus
        return GroupRingElement(
            self.params, self.level, tuple((-a) % mod for a in self.coeffs)
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(self.params, self.level, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            mod = self.params.modulus
            c = other % mod
            return GroupRingElement(
                self.params, self.level, tuple((a * c) % mod for a in self.coeffs)
            )
        self._match(other)
        out = _kernels.conv_mod(
            list(self.coeffs), list(other.coeffs), self.params.modulus
        )
        return GroupRingElement(self.params, self.level, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined here")
        result = GroupRingElement.one(self.params, self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self) -> str:
        return format_element(self)


def ring_add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x + y


def ring_mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


# -- operator polynomials ---------------------------------------------------


def _resolve_level(params: GroupRingParams, i: int, level) -> int:
    if level is None:
        level = i
    params.check_level(level)
    if level < i:
        raise IndexOrderError(f"level {level} cannot hold exponents up to p^{i}")
    return level


def poly_P(params: GroupRingParams, i: int, j: int, level=None) -> GroupRingElement:
    """Norm operator P(i, j) = sum_{k < p^(i-j)} s^(k p^j), an element of
    R_m G_level (default level i)."""
    if not (isinstance(i, int) and isinstance(j, int)):
        raise IndexOrderError("P(i, j) needs integer indices")
    if not 0 <= j <= i <= params.n:
        raise IndexOrderError(f"need 0 <= j <= i <= n, got j={j}, i={i}")
    level = _resolve_level(params, i, level)
    order = params.group_order(level)
    coeffs = [0] * order
    step = params.p**j
    for k in range(params.p ** (i - j)):
        coeffs[(k * step) % order] += 1
    mod = params.modulus
    return GroupRingElement(params, level, tuple(c % mod for c in coeffs))


def poly_Q(
    params: GroupRingParams,
    d: int,
    i: int,
    j: int,
    level=None,
    check_unit: bool = True,
) -> GroupRingElement:
    """Twisted norm operator Q_d(i, j) = sum_{k < p^(i-j)} (d^(p^j))^(p^(i-j)-1-k) s^(k p^j).

    Scalar powers of d are exact integers before reduction mod p^m.  The unit
    check (d = 1 mod p) can be disabled for probing non-unit twists; note that
    for p = 2 every odd d, including -1, already lies in 1 + 2Z.
    """
    if not (isinstance(i, int) and isinstance(j, int)):
        raise IndexOrderError("Q_d(i, j) needs integer indices")
    if not 0 <= j <= i <= params.n:
        raise IndexOrderError(f"need 0 <= j <= i <= n, got j={j}, i={i}")
    if check_unit and (d - 1) % params.p:
        raise NotInU1Error(f"d = {d} is not in 1 + {params.p}Z")
    level = _resolve_level(params, i, level)
    order = params.group_order(level)
    coeffs = [0] * order
    step = params.p**j
    dpj = d**step
    count = params.p ** (i - j)
    for k in range(count):
        coeffs[(k * step) % order] += dpj ** (count - 1 - k)
    mod = params.modulus
    return GroupRingElement(params, level, tuple(c % mod for c in coeffs))


def poly_T(params: GroupRingParams, d: int, i: int, level=None) -> GroupRingElement:
    """Telescoping operator T_d(i) = sum_{s=1}^{p^i - 1} sum_{k=0}^{s-1} d^k s^(s-1-k)."""
    if not isinstance(i, int):
        raise IndexOrderError("T_d(i) needs an integer index")
    if not 0 <= i <= params.n:
        raise IndexOrderError(f"need 0 <= i <= n, got i={i}")
    level = _resolve_level(params, i, level)
    order = params.group_order(level)
    coeffs = [0] * order
    dpow = [1]
    for _ in range(params.p**i):
        dpow.append(dpow[-1] * d)
    for s in range(1, params.p**i):
        for k in range(s):
            coeffs[(s - 1 - k) % order] += dpow[k]
    mod = params.modulus
    return GroupRingElement(params, level, tuple(c % mod for c in coeffs))


def eval_phi(x: GroupRingElement, d: int) -> int:
    """Evaluate s -> d, giving the residue sum coeffs[k] d^k mod p^m.

    Only well defined on R_m G_level when d^(p^level) = 1 mod p^m; raises
    IllDefinedError otherwise.
    """
    params = x.params
    mod = params.modulus
    if pow(d, params.group_order(x.level), mod) != 1 % mod:
        raise IllDefinedError(
            f"sigma -> {d} is ill-defined at level {x.level} mod {params.p}^{params.m}"
        )
    acc = 0
    dp = 1
    for c in x.coeffs:
        acc += c * dp
        dp = (dp * d) % mod
    return acc % mod


def project(x: GroupRingElement, j: int) -> GroupRingElement:
    """Quotient projection G_level -> G_j: exponents folded mod p^j."""
    if not isinstance(j, int) or not 0 <= j <= x.level:
        raise IndexOrderError(f"projection level {j} outside [0, {x.level}]")
    params = x.params
    order = params.group_order(j)
    coeffs = [0] * order
    for k, c in enumerate(x.coeffs):
        coeffs[k % order] += c
    mod = params.modulus
    return GroupRingElement(params, j, tuple(c % mod for c in coeffs))


def poly_T_projection(params: GroupRingParams, d: int, i: int, j: int) -> GroupRingElement:
    """Closed form of project(poly_T(d, i), j) for 0 <= j < i <= n.

    Four cases depending on the integer d: d = 1, d = -1 with j > 0, d = -1
    with j = 0, and the generic case with a twisted-norm correction term.  All
    interior divisions are exact over Z.
    """
    if not 0 <= j < i <= params.n:
        raise IndexOrderError(f"need 0 <= j < i <= n, got j={j}, i={i}")
    p = params.p
    if d == 1:
        head = poly_T(params, 1, j) * (p ** (i - j))
        tail = poly_P(params, j, 0) * ((p**i * (p ** (i - j) - 1)) // 2)
        return head + tail
    if d == -1:
        if p != 2:
            raise NotInU1Error("d = -1 needs p = 2")
        if j > 0:
            # T_{-1}(i) is the sum of the even powers of s below 2^i, and each
            # residue class mod 2^j collects 2^(i-j) of them.
            return poly_T(params, -1, j) * (2 ** (i - j))
        return GroupRingElement.scalar(params, 0, 2 ** (i - 1))
    head = poly_T(params, d, j) * (p ** (i - j))
    weight = sum((d ** (t * p**j) - 1) // (d - 1) for t in range(p ** (i - j)))
    return head + poly_Q(params, d, j, 0, check_unit=False) * weight


# -- text syntax -------------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coeff>\d+)\s*(?:\*\s*(?P<vc>s)(?:\^(?P<expc>-?\d+))?)?
          |
          (?P<v>s)(?:\^(?P<exp>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_element(text: str, params: GroupRingParams, level: int) -> GroupRingElement:
    """Parse ``c0 + c1*s + c2*s^2 + ...``; coefficients may be negative and
    exponents are normalized mod p^level."""
    params.check_level(level)
    order = params.group_order(level)
    coeffs = [0] * order
    pos = 0
    first = True
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty element")
    while pos < len(stripped):
        match = _TERM_RE.match(stripped, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse element near {stripped[pos:]!r}")
        sign = match.group("sign")
        if sign is None and not first:
            raise ValueError(f"missing +/- near {stripped[pos:]!r}")
        mult = -1 if sign == "-" else 1
        if match.group("coeff") is not None:
            c = int(match.group("coeff"))
            if match.group("vc"):
                e = int(match.group("expc") or 1)
            else:
                e = 0
        else:
            c = 1
            e = int(match.group("exp") or 1)
        coeffs[e % order] += mult * c
        pos = match.end()
        first = False
    mod = params.modulus
    return GroupRingElement(params, level, tuple(c % mod for c in coeffs))


def format_element(x: GroupRingElement) -> str:
    """Canonical ascending-exponent form with reduced coefficients."""
    terms = []
    for e, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append("s" if c == 1 else f"{c}*s")
        else:
            terms.append(f"s^{e}" if c == 1 else f"{c}*s^{e}")
    return " + ".join(terms) if terms else "0"
