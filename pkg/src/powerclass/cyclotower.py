"""Exact arithmetic in Q(zeta_M), Galois actions, and norms down a cyclic
p-power tower.

Elements are rational-coefficient vectors reduced modulo the M-th cyclotomic
polynomial, so equality is syntactic equality of canonical coefficient tuples
and every computation is exact.  A tower is K = Q(zeta_M) with a chosen
automorphism sigma: zeta -> zeta^a of p-power order p^n; K_i denotes the
fixed field of <sigma^(p^i)> and F = K_0.  Note the multiplicative/additive
translation: sources that write the multiplicative group additively render
"delta = 0" as delta = 1 here, "p^m alpha" as alpha**(p**m), and
"(sigma - d) alpha" as sigma(alpha) * alpha**(-d).

On top of the field arithmetic this module computes the root-of-unity levels
(omega, nu) and the restriction of the cyclotomic character, verifies witness
tuples against the two defining norm-pair equations, constructs the canonical
witness for cyclotomic towers, shifts representatives to adjust the twist by
multiples of p^(s-1), and produces the solvability profile (b-vector) with
explicit root-of-unity norm certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import (
    ExcludedCaseError,
    IndexRangeError,
    InvalidTowerError,
    LevelMismatchError,
    NotARepresentativeError,
    NotCoprimeError,
    NotCyclotomicError,
    NotInLevelError,
)
from .extint import NEG_INF, is_neg_inf
from .groupring import is_prime
from .normpair import BVector, NormPair, NormVector, all_neg_inf


# -- cyclotomic polynomials ----------------------------------------------------


def _int_poly_divmod(num: list, den: tuple) -> tuple:
    """Division with remainder by a monic integer polynomial."""
    num = list(num)
    dden = len(den) - 1
    quot = [0] * max(len(num) - dden, 0)
    for k in range(len(num) - dden - 1, -1, -1):
        c = num[k + dden]
        if c:
            quot[k] = c
            for i, d in enumerate(den):
                num[k + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple:
    """Coefficients (ascending) of the M-th cyclotomic polynomial, via
    x^M - 1 = prod over divisors; exact integer division throughout."""
    if M < 1:
        raise ValueError("conductor must be >= 1")
    if M == 1:
        return (-1, 1)
    num = [0] * (M + 1)
    num[0] = -1
    num[M] = 1
    poly = num
    for d in range(1, M):
        if M % d == 0:
            poly, rem = _int_poly_divmod(poly, cyclotomic_poly(d))
            if rem:
                raise AssertionError("cyclotomic division must be exact")
    return tuple(poly)


def _reduce_mod_phi(coeffs: list, M: int) -> tuple:
    """Reduce a polynomial in zeta_M (any degree) to the canonical basis."""
    phi = cyclotomic_poly(M)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    for k in range(len(work) - deg - 1, -1, -1):
        c = work[k + deg]
        if c:
            for i, d in enumerate(phi):
                work[k + i] -= c * d
    work = work[:deg]
    work.extend([Fraction(0)] * (deg - len(work)))
    return tuple(work)


class CycloNumber:
    """An element of Q(zeta_M) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs")
    __hash__ = None

    def __init__(self, conductor: int, coeffs):
        self.conductor = conductor
        self.coeffs = _reduce_mod_phi(list(coeffs), conductor)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, M: int = 1) -> "CycloNumber":
        return cls(M, [0])

    @classmethod
    def one(cls, M: int = 1) -> "CycloNumber":
        return cls(M, [1])

    @classmethod
    def rational(cls, q, M: int = 1) -> "CycloNumber":
        return cls(M, [Fraction(q)])

    @classmethod
    def zeta(cls, M: int, k: int = 1) -> "CycloNumber":
        coeffs = [0] * (k % M + 1)
        coeffs[k % M] = 1
        return cls(M, coeffs)

    # -- structure ------------------------------------------------------------

    def promote(self, M2: int) -> "CycloNumber":
        if M2 == self.conductor:
            return self
        if M2 % self.conductor:
            raise ValueError("can only promote to a multiple of the conductor")
        stride = M2 // self.conductor
        out = [Fraction(0)] * M2
        for k, c in enumerate(self.coeffs):
            if c:
                out[(k * stride) % M2] += c
        return CycloNumber(M2, out)

    def _common(self, other) -> tuple:
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other, 1)
        if not isinstance(other, CycloNumber):
            return NotImplemented, NotImplemented
        M = lcm(self.conductor, other.conductor)
        return self.promote(M), other.promote(M)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == 1

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __add__(self, other) -> "CycloNumber":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloNumber(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other) -> "CycloNumber":
        return self + (-other if isinstance(other, CycloNumber) else CycloNumber.rational(-Fraction(other)))

    def __rsub__(self, other) -> "CycloNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycloNumber":
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        out = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return CycloNumber(a.conductor, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Extended Euclid against the cyclotomic polynomial (irreducible
        over Q, so every nonzero element is a unit)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        phi = [Fraction(c) for c in cyclotomic_poly(self.conductor)]
        r0, r1 = list(self.coeffs), phi
        s0, s1 = [Fraction(1)], [Fraction(0)]

        def trim(v):
            while v and not v[-1]:
                v.pop()
            return v

        r0, r1 = trim(r0), trim(r1)
        while r1:
            quot, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, trim(rem)
            s0, s1 = s1, trim(_frac_poly_sub(s0, _frac_poly_mul(quot, s1)))
        if len(r0) != 1:
            raise ArithmeticError("gcd with an irreducible polynomial must be scalar")
        scale = r0[0]
        return CycloNumber(self.conductor, [c / scale for c in s0])

    def __pow__(self, e: int) -> "CycloNumber":
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = CycloNumber.one(self.conductor)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other, 1)
        a, b = self._common(other)
        return a * b.inverse()

    def galois(self, e: int) -> "CycloNumber":
        """zeta -> zeta^e, extended to the field; e must be coprime to M."""
        M = self.conductor
        if gcd(e, M) != 1:
            raise NotCoprimeError(f"exponent {e} shares a factor with {M}")
        out = [Fraction(0)] * M
        for k, c in enumerate(self.coeffs):
            if c:
                out[(k * e) % M] += c
        return CycloNumber(M, out)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                if k == 0:
                    terms.append(str(c))
                else:
                    head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                    terms.append(f"{head}z^{k}" if k > 1 else f"{head}z")
        body = " + ".join(terms) if terms else "0"
        return f"CycloNumber({self.conductor}, {body})"


def _frac_poly_divmod(num: list, den: list) -> tuple:
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dden, 0)
    for k in range(len(num) - dden - 1, -1, -1):
        c = num[k + dden] / lead
        if c:
            quot[k] = c
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return quot, num[:dden]


def _frac_poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frac_poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def galois_act(x: CycloNumber, e: int) -> CycloNumber:
    return x.galois(e)


def is_primitive_root(x: CycloNumber, order: int) -> bool:
    """x is a primitive order-th root of unity."""
    if x**order != 1:
        return False
    q = 2
    left = order
    while left > 1:
        if left % q == 0:
            if x ** (order // q) == 1:
                return False
            while left % q == 0:
                left //= q
        q += 1
    return True


# -- towers ---------------------------------------------------------------------


def _mult_order(a: int, M: int) -> int:
    e = a % M
    k = 1
    while e != 1:
        e = (e * a) % M
        k += 1
        if k > M:
            raise InvalidTowerError("order computation ran away")
    return k


@dataclass(frozen=True)
class TowerSpec:
    """K = Q(zeta_conductor) with sigma: zeta -> zeta^sigma of order p^n."""

    p: int
    conductor: int
    sigma: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidTowerError(f"p = {self.p} is not prime")
        if self.conductor < 1:
            raise InvalidTowerError("conductor must be >= 1")
        if gcd(self.sigma, self.conductor) != 1:
            raise InvalidTowerError("sigma must be coprime to the conductor")
        if self.p % 2 and self.conductor % self.p:
            raise InvalidTowerError(
                f"odd p = {self.p} needs p | conductor so that zeta_p lies in K"
            )
        order = _mult_order(self.sigma, self.conductor)
        n = 0
        while order % self.p == 0:
            order //= self.p
            n += 1
        if order != 1 or n < 1:
            raise InvalidTowerError(
                f"sigma must have order p^n with n >= 1, got order {_mult_order(self.sigma, self.conductor)}"
            )
        object.__setattr__(self, "_n", n)
        omega, nu = _integer_root_levels(self.p, self.conductor, self.sigma)
        if self.p == 2 and omega == 1 and nu > 1:
            raise ExcludedCaseError("p = 2 with omega = 1 < nu is out of scope")
        if omega < 1:
            raise InvalidTowerError("the fixed field must contain the p-th roots of unity")

    @property
    def n(self) -> int:
        return self._n

    def sigma_power(self, k: int) -> int:
        return pow(self.sigma, k, self.conductor)

    def zeta(self, k: int = 1) -> CycloNumber:
        return CycloNumber.zeta(self.conductor, k)

    def root_of_unity(self, order: int) -> CycloNumber:
        """A fixed primitive order-th root of unity in K (order | conductor
        up to the p = 2, odd-M convention)."""
        M = self.conductor
        if order == 1:
            return CycloNumber.one(M)
        if order == 2 and M % 2:
            return -CycloNumber.one(M)
        if M % order:
            raise InvalidTowerError(f"no primitive {order}-th root in Q(zeta_{M})")
        return CycloNumber.zeta(M, M // order)


def _integer_root_levels(p: int, M: int, sigma: int) -> tuple:
    """(omega, nu) by pure congruence arithmetic (cross-checked by the field
    computation in tower_data)."""
    vp = 0
    q = M
    while q % p == 0:
        q //= p
        vp += 1
    nu = vp if (p != 2 or vp >= 2) else 1
    if p != 2 and vp == 0:
        raise InvalidTowerError("p must divide the conductor")
    omega = 0
    for k in range(1, nu + 1):
        if p**k == 2 and M % 2:  # zeta_2 = -1 is always present and fixed
            omega = 1
            continue
        if (sigma - 1) % p**k == 0:
            omega = k
        else:
            break
    if p == 2:
        omega = max(omega, 1)
    return omega, nu


@dataclass(frozen=True)
class TowerData:
    """Root-of-unity levels of the tower and the cyclotomic character."""

    omega: int
    nu: int
    cyclo_character: int  # residue d mod p^nu with sigma(zeta_{p^nu}) = zeta^d
    is_cyclotomic: bool
    n: int
    p: int


def level_of(tower: TowerSpec, x: CycloNumber) -> int:
    """Least i with x fixed by sigma^(p^i), i.e. x in K_i."""
    x = x.promote(lcm(x.conductor, tower.conductor))
    if x.conductor != tower.conductor:
        raise NotInLevelError("element lives outside the tower field")
    for i in range(tower.n + 1):
        if x.galois(tower.sigma_power(tower.p**i)) == x:
            return i
    raise NotInLevelError("element not fixed even by the trivial subgroup")


def tower_data(tower: TowerSpec) -> TowerData:
    """Compute omega, nu, the cyclotomic character, and cyclotomicity by
    explicit fixed-point tests in the field."""
    p, M = tower.p, tower.conductor
    omega_int, nu = _integer_root_levels(p, M, tower.sigma)
    omega = 0
    for k in range(1, nu + 1):
        zk = tower.root_of_unity(p**k)
        if zk.galois(tower.sigma) == zk:
            omega = k
        else:
            break
    if omega != omega_int:
        raise AssertionError("field and congruence computations disagree on omega")
    if p == 2 and omega == 1 and nu > 1:
        raise ExcludedCaseError("p = 2 with omega = 1 < nu is out of scope")
    znu = tower.root_of_unity(p**nu)
    image = znu.galois(tower.sigma)
    d = None
    for cand in range(p**nu):
        if image == znu**cand:
            d = cand
            break
    if d is None:
        raise AssertionError("sigma must act on roots of unity by a power map")
    cyclotomic = level_of(tower, znu) == tower.n
    return TowerData(omega, nu, d, cyclotomic, tower.n, p)


def norm(tower: TowerSpec, x: CycloNumber, from_level: int, to_level: int) -> CycloNumber:
    """Norm from K_from down to K_to: the product of the sigma^(k p^to)
    conjugates, k < p^(from-to).  x must be fixed by Gal(K/K_from)."""
    if not 0 <= to_level <= from_level <= tower.n:
        raise IndexRangeError(
            f"need 0 <= to <= from <= {tower.n}, got {to_level}, {from_level}"
        )
    x = x.promote(lcm(x.conductor, tower.conductor))
    if x.conductor != tower.conductor:
        raise NotInLevelError("element lives outside the tower field")
    if x.galois(tower.sigma_power(tower.p**from_level)) != x:
        raise NotInLevelError(f"element is not fixed by Gal(K/K_{from_level})")
    result = CycloNumber.one(tower.conductor)
    step = tower.p**to_level
    for k in range(tower.p ** (from_level - to_level)):
        result = result * x.galois(tower.sigma_power(k * step))
    return result


# -- norm pairs in the tower ------------------------------------------------------


@dataclass(frozen=True)
class WitnessTuple:
    """alpha plus deltas delta_0..delta_m (one more delta than the vector is
    long); delta_i must lie in K_{a_i}, with a_i = -inf forcing delta_i = 1."""

    alpha: CycloNumber
    deltas: tuple


def verify_norm_pair(tower: TowerSpec, w: WitnessTuple, pair: NormPair) -> bool:
    """Exact check of the two defining equations:

        sigma(alpha) == alpha^d * delta_0 * delta_1^p * ... * delta_m^(p^m)
        xi_p == N_{K/F}(alpha)^((d-1)/p) * N_{K_{n-1}/F}(delta_0)
                 * prod_{i>=1} N_{K/F}(delta_i)^(p^(i-1))

    where xi_p may be any primitive p-th root of unity.  Level preconditions
    raise; equation failures return False.
    """
    p, n = tower.p, tower.n
    m = len(pair.a)
    if len(w.deltas) != m + 1:
        raise LevelMismatchError(f"witness needs {m + 1} deltas, has {len(w.deltas)}")
    pair.check_twist(p)
    d = pair.d
    for i in range(m):
        a_i = pair.a[i]
        if is_neg_inf(a_i):
            if not w.deltas[i] == 1:
                raise LevelMismatchError(f"a_{i} = -inf forces delta_{i} = 1")
        else:
            if level_of(tower, w.deltas[i]) > a_i:
                raise LevelMismatchError(
                    f"delta_{i} is not fixed by sigma^(p^{a_i})"
                )
    alpha = w.alpha.promote(lcm(w.alpha.conductor, tower.conductor))

    lhs = alpha.galois(tower.sigma)
    rhs = alpha**d
    for i, delta in enumerate(w.deltas):
        rhs = rhs * delta ** (p**i)
    if lhs != rhs:
        return False

    acc = norm(tower, alpha, n, 0) ** ((d - 1) // p)
    acc = acc * norm(tower, w.deltas[0], n - 1, 0)
    for i in range(1, m + 1):
        acc = acc * norm(tower, w.deltas[i], n, 0) ** (p ** (i - 1))
    return is_primitive_root(acc, p)


def cyclopair_witness(tower: TowerSpec, m: int) -> tuple:
    """For cyclotomic towers: alpha = zeta_{p^nu} and all deltas 1 represent
    the all-(-inf) vector with the cyclotomic character as twist."""
    td = tower_data(tower)
    if not td.is_cyclotomic:
        raise NotCyclotomicError("tower is not cyclotomic (K != F(zeta_{p^nu}))")
    if m < 1:
        raise IndexRangeError("m must be >= 1")
    alpha = tower.root_of_unity(tower.p**td.nu)
    ones = tuple(CycloNumber.one(tower.conductor) for _ in range(m + 1))
    witness = WitnessTuple(alpha, ones)
    pair = NormPair(all_neg_inf(m), td.cyclo_character)
    if not verify_norm_pair(tower, witness, pair):
        raise AssertionError("cyclotomic witness must verify by construction")
    return witness, pair


def _contract(tower: TowerSpec, w: WitnessTuple, pair: NormPair, length: int) -> tuple:
    """Truncate a verified pair to `length` >= 1 by absorbing the higher
    deltas into the last one (delta_L * delta_{L+1}^p * ...)."""
    p = tower.p
    m = len(pair.a)
    if length == m:
        return w, pair
    folded = w.deltas[length]
    for i in range(length + 1, m + 1):
        folded = folded * w.deltas[i] ** (p ** (i - length))
    new_w = WitnessTuple(w.alpha, w.deltas[:length] + (folded,))
    new_pair = NormPair(NormVector(pair.a.entries[:length]), pair.d)
    return new_w, new_pair


def shift_representative(
    tower: TowerSpec, w: WitnessTuple, pair: NormPair, s: int, x: int
) -> tuple:
    """Produce a representative of ((a_0,...,a_{s-2}, n), d + p^(s-1) x) from
    one of (a, d): replace delta_{s-1} by delta_{s-1} * alpha^(-x) and append
    delta_s = 1.  Inputs longer than s-1 are contracted first.  s = 1 is
    rejected: it would force a_0 = n, which no norm vector allows.
    """
    m = len(pair.a)
    if not 2 <= s <= m + 1:
        raise IndexRangeError(f"need 2 <= s <= {m + 1}, got s = {s}")
    if not verify_norm_pair(tower, w, pair):
        raise NotARepresentativeError("input witness fails the defining equations")
    base_w, base_pair = _contract(tower, w, pair, s - 1)
    p = tower.p
    new_deltas = (
        base_w.deltas[: s - 1]
        + (base_w.deltas[s - 1] * base_w.alpha ** (-x),)
        + (CycloNumber.one(tower.conductor),)
    )
    new_w = WitnessTuple(base_w.alpha, new_deltas)
    new_a = NormVector(base_pair.a.entries + (tower.n,))
    new_pair = NormPair(new_a, base_pair.d + p ** (s - 1) * x)
    if not verify_norm_pair(tower, new_w, new_pair):
        raise AssertionError("shifted witness must verify by construction")
    return new_w, new_pair


# -- b-vectors ---------------------------------------------------------------------


@dataclass(frozen=True)
class NormCertificate:
    """Exhibits zeta_{p^(index+1)} as a norm from K down to K_level."""

    index: int
    level: int
    gamma: CycloNumber
    norm_value: CycloNumber
    order: int


def verify_root_norm_certificate(
    tower: TowerSpec, gamma: CycloNumber, to_level: int, order: int
) -> bool:
    """Check that N_{K/K_to}(gamma) is a primitive order-th root of unity."""
    return is_primitive_root(norm(tower, gamma, tower.n, to_level), order)


@dataclass(frozen=True)
class CyclotomicBVector:
    vector: BVector
    certificates: tuple


def b_vector_cyclotomic(tower: TowerSpec, m: int) -> CyclotomicBVector:
    """For cyclotomic towers the whole profile collapses to -inf: each
    zeta_{p^(i+1)} with i < nu is the iterated norm of a higher root of unity
    (one level per step), and the slots from nu on are degenerate (the
    b_nu = n convention belongs to the non-cyclotomic towers, where the top
    of the norm vector genuinely reaches n; keeping it here would contradict
    the collapse of the norm vector itself)."""
    td = tower_data(tower)
    if not td.is_cyclotomic:
        raise NotCyclotomicError("tower is not cyclotomic (K != F(zeta_{p^nu}))")
    p, n, nu, omega = tower.p, tower.n, td.nu, td.omega
    entries = []
    certs = []
    for i in range(m):
        entries.append(NEG_INF)
        if i < nu:
            t = max(i + 1 - omega, 0)
            source_order = p ** (i + 1 + n - t)
            gamma = tower.root_of_unity(source_order)
            value = norm(tower, gamma, n, t)
            if not is_primitive_root(value, p ** (i + 1)):
                raise AssertionError("root-of-unity norm certificate failed")
            certs.append(
                NormCertificate(i, t, gamma, value, p ** (i + 1))
            )
    return CyclotomicBVector(BVector(tuple(entries), nu), tuple(certs))


# -- JSON helpers -------------------------------------------------------------------


def cyclo_to_obj(x: CycloNumber) -> dict:
    return {
        "conductor": x.conductor,
        "coeffs": [str(c) if c.denominator != 1 else int(c) for c in x.coeffs],
    }


def cyclo_from_obj(obj, default_conductor: int) -> CycloNumber:
    """Accept {'conductor': M, 'coeffs': [...]}, {'zeta_power': k}, or a
    plain rational (int or 'a/b' string)."""
    if isinstance(obj, dict):
        if "zeta_power" in obj:
            M = obj.get("conductor", default_conductor)
            return CycloNumber.zeta(M, obj["zeta_power"])
        return CycloNumber(
            obj.get("conductor", default_conductor),
            [Fraction(str(c)) for c in obj["coeffs"]],
        )
    return CycloNumber.rational(Fraction(str(obj)), default_conductor)


def tower_from_obj(obj: dict) -> TowerSpec:
    return TowerSpec(int(obj["p"]), int(obj["conductor"]), int(obj["sigma"]))


def witness_from_obj(obj: dict, conductor: int) -> WitnessTuple:
    return WitnessTuple(
        cyclo_from_obj(obj["alpha"], conductor),
        tuple(cyclo_from_obj(d, conductor) for d in obj["deltas"]),
    )


def witness_to_obj(w: WitnessTuple) -> dict:
    return {
        "alpha": cyclo_to_obj(w.alpha),
        "deltas": [cyclo_to_obj(d) for d in w.deltas],
    }
