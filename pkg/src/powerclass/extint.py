"""Formal -infinity and +infinity tokens.

Norm vectors take entries in {-inf} u [0, n], and root-of-unity levels
(omega, nu) can be unbounded.  Both ends are dedicated singletons rather than
floats or sentinel integers, with just enough arithmetic for the conventions
used throughout: ``NEG_INF + k == NEG_INF`` and total comparability with ints
(``NEG_INF < k < INF``).  ``p ** NEG_INF == 0`` is handled at call sites.
"""

from __future__ import annotations


class _NegInf:
    __slots__ = ()

    def __repr__(self) -> str:
        return "-inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _NegInf)

    def __hash__(self) -> int:
        return hash("powerclass.-inf")

    def __lt__(self, other) -> bool:
        return not isinstance(other, _NegInf)

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return isinstance(other, _NegInf)

    def __add__(self, other):
        if isinstance(other, _PosInf):
            raise ArithmeticError("-inf + inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _NegInf):
            raise ArithmeticError("-inf - -inf is undefined")
        return self

    def __neg__(self):
        return INF


class _PosInf:
    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _PosInf)

    def __hash__(self) -> int:
        return hash("powerclass.inf")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return isinstance(other, _PosInf)

    def __gt__(self, other) -> bool:
        return not isinstance(other, _PosInf)

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        if isinstance(other, _NegInf):
            raise ArithmeticError("inf + -inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _PosInf):
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __neg__(self):
        return NEG_INF


NEG_INF = _NegInf()
INF = _PosInf()

ExtInt = "int | _NegInf | _PosInf"  # informal alias used in docstrings


def is_neg_inf(value) -> bool:
    return isinstance(value, _NegInf)


def is_inf(value) -> bool:
    return isinstance(value, _PosInf)


def fmt_ext(value) -> str:
    """Render an extended integer the way vector syntax expects."""
    return repr(value) if isinstance(value, (_NegInf, _PosInf)) else str(value)


def parse_ext(text: str):
    """Parse ``-inf``, ``inf`` or a plain integer."""
    t = text.strip()
    if t in ("-inf", "-oo", "-infinity"):
        return NEG_INF
    if t in ("inf", "oo", "infinity", "+inf"):
        return INF
    return int(t)
