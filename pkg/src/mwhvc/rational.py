"""Exact rational type used on hot paths.

``gmpy2.mpq`` when available (an order of magnitude faster), otherwise
:class:`fractions.Fraction`.  Both compare equal to each other and expose
``numerator`` / ``denominator``.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

ZERO = Q(0)


def q(x) -> "Q":
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    return Q(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def qsum(xs) -> "Q":
    return sum(xs, ZERO)


def ratstr(x) -> str:
    """``"p/q"`` form, always with an explicit denominator."""
    return f"{int(x.numerator)}/{int(x.denominator)}"
