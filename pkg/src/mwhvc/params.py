"""Approximation parameters: the slack ``beta`` and the deal multiplier ``alpha``.

Every quantity here is an exact :class:`~fractions.Fraction`.  The transcendental
pieces (``log2``, rational powers) are evaluated in binary fixed point with
``FRAC_BITS`` fractional bits, truncated toward zero, and then frozen as exact
rationals.  All logarithms are base 2.

The multiplier is clamped to ``alpha >= 2`` in every mode and degrees below 3
are lifted to 3 before any logarithm is taken, so ``log log`` stays positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import ParameterError
from .hypergraph import Hypergraph

__all__ = [
    "FRAC_BITS",
    "SCALE",
    "Params",
    "as_fraction",
    "beta",
    "fixlog2",
    "fixlog2_rational",
    "fixexp2",
    "fixpow",
    "alpha_ratio",
    "alpha_global",
    "alpha_refined",
    "alpha_local",
    "make_params",
    "ceil_log",
]

FRAC_BITS = 20
SCALE = 1 << FRAC_BITS
# working precision of the fixed-point iterations; far above FRAC_BITS so the
# truncated result is the truncation of the exact value except in
# astronomically unlikely near-ties
_GUARD = 96
_MIN_ALPHA = Fraction(2)

Rational = Union[int, Fraction, str]


def as_fraction(x: Rational) -> Fraction:
    """Parse ``3``, ``"1/2"``, ``"0.1"`` or a Fraction; floats are refused."""
    if isinstance(x, float):
        raise ParameterError(f"pass rationals as 'p/q' strings, not floats: {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational: {x!r}") from exc


def beta(epsilon: Rational, f: int) -> Fraction:
    """``epsilon / (f + epsilon)``.

    >>> beta(1, 2)
    Fraction(1, 3)
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise ParameterError(f"epsilon must lie in (0, 1], got {eps}")
    if f < 1:
        raise ParameterError(f"rank must be >= 1, got {f}")
    return eps / (f + eps)


def _log2_scaled(num: int, den: int) -> int:
    # floor(log2(num/den)) followed by FRAC_BITS bits of square-and-compare
    k = num.bit_length() - den.bit_length()
    if k >= 0:
        if num < den << k:
            k -= 1
    elif num << -k < den:
        k -= 1
    p = _GUARD
    if k >= 0:
        y = (num << p) // (den << k)
    else:
        y = (num << (p - k)) // den
    two = 2 << p
    bits = 0
    for _ in range(FRAC_BITS):
        y = (y * y) >> p
        bits <<= 1
        if y >= two:
            bits |= 1
            y >>= 1
    return k * SCALE + bits


def fixlog2(x: int) -> Fraction:
    """log2 of an integer ``x >= 2``, truncated to ``FRAC_BITS`` fractional bits."""
    if isinstance(x, bool) or not isinstance(x, int) or x < 2:
        raise ParameterError(f"fixlog2 needs an integer >= 2, got {x!r}")
    return Fraction(_log2_scaled(x, 1), SCALE)


def fixlog2_rational(q: Fraction) -> Fraction:
    """log2 of a rational ``q >= 1``, truncated to ``FRAC_BITS`` fractional bits."""
    q = Fraction(q)
    if q < 1:
        raise ParameterError(f"fixlog2_rational needs q >= 1, got {q}")
    return Fraction(_log2_scaled(q.numerator, q.denominator), SCALE)


# exponent bits kept when evaluating 2**t; more than FRAC_BITS so the
# truncation of t does not dominate the error of the result
_EXP_BITS = 48


def _root_table():
    # _ROOTS[k] = 2**(2**-(k+1)) in fixed point with _GUARD bits
    roots = []
    r = math.isqrt(2 << (2 * _GUARD))
    for _ in range(_EXP_BITS):
        roots.append(r)
        r = math.isqrt(r << _GUARD)
    return tuple(roots)


_ROOTS = _root_table()


def fixexp2(t: Fraction) -> Fraction:
    """``2**t`` for rational ``t >= 0``, truncated to ``FRAC_BITS`` fractional bits."""
    t = Fraction(t)
    if t < 0:
        raise ParameterError(f"fixexp2 needs t >= 0, got {t}")
    whole = math.floor(t)
    frac_bits = math.floor((t - whole) * (1 << _EXP_BITS))
    acc = 1 << _GUARD
    for k in range(_EXP_BITS):
        if frac_bits >> (_EXP_BITS - 1 - k) & 1:
            acc = (acc * _ROOTS[k]) >> _GUARD
    scaled = (acc << whole) >> (_GUARD - FRAC_BITS)
    return Fraction(scaled, SCALE)


def fixpow(x: Fraction, e: Fraction) -> Fraction:
    """``x**e`` for ``x >= 1`` and ``e >= 0`` through ``2**(e * log2 x)``."""
    return fixexp2(Fraction(e) * fixlog2_rational(Fraction(x)))


def alpha_ratio(delta: int) -> Fraction:
    """Unclamped ``log Δ / log log Δ`` with Δ lifted to at least 3."""
    d = max(int(delta), 3)
    lg = fixlog2(d)
    return lg / fixlog2_rational(lg)


def alpha_global(delta: int) -> Fraction:
    return max(_MIN_ALPHA, alpha_ratio(delta))


def alpha_refined(delta: int, f: int, beta_: Fraction, gamma: Rational) -> Fraction:
    """Multiplier trading the ``f/beta`` term against ``log Δ / log log Δ``.

    With ``x = log Δ / log log Δ``: returns ``max(2, x**(1-gamma))`` when
    ``f/beta < x**gamma`` and exactly 2 otherwise.
    """
    g = as_fraction(gamma)
    if not 0 < g < 1:
        raise ParameterError(f"gamma must lie in (0, 1), got {g}")
    x = alpha_ratio(delta)
    if Fraction(f) / beta_ < fixpow(x, g):
        return max(_MIN_ALPHA, fixpow(x, 1 - g))
    return _MIN_ALPHA


def alpha_local(
    h: Hypergraph,
    mode: str = "global",
    f: int | None = None,
    beta_: Fraction | None = None,
    gamma: Rational | None = None,
) -> tuple[Fraction, ...]:
    """Per-edge multipliers computed from the local maximum degree of each edge."""
    cache: dict[int, Fraction] = {}
    out = []
    for d in h.stats.per_edge_local_delta:
        if d not in cache:
            if mode == "global":
                cache[d] = alpha_global(d)
            elif mode == "refined":
                cache[d] = alpha_refined(d, f, beta_, gamma)
            else:
                raise ParameterError(f"unknown local alpha mode {mode!r}")
        out.append(cache[d])
    return tuple(out)


def ceil_log(base: Fraction, x: int | Fraction) -> int:
    """Smallest integer ``k >= 0`` with ``base**k >= x``; exact for ``base > 1``.

    >>> ceil_log(2, 5), ceil_log(2, 4), ceil_log(3, 1)
    (3, 2, 0)
    """
    base = Fraction(base)
    if base <= 1:
        raise ParameterError("ceil_log needs base > 1")
    k = 0
    p = Fraction(1)
    while p < x:
        p *= base
        k += 1
    return k


def _ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


@dataclass(frozen=True)
class Params:
    """Frozen parameter set for one run on one hypergraph.

    ``alpha_table`` holds one multiplier per edge.  In the global, refined and
    fixed modes all entries equal ``alpha``; in local mode ``alpha`` is the
    largest entry.
    """

    epsilon: Fraction
    f: int
    delta: int
    beta: Fraction
    alpha_mode: str
    alpha: Fraction
    alpha_table: tuple[Fraction, ...]
    gamma: Fraction | None = None

    @property
    def alpha_min(self) -> Fraction:
        return min(self.alpha_table, default=self.alpha)

    @property
    def alpha_max(self) -> Fraction:
        return max(self.alpha_table, default=self.alpha)

    def alpha_for(self, edge: int) -> Fraction:
        return self.alpha_table[edge]

    def iteration_bound(self) -> int:
        """``1 + ceil(log_alpha Δ) + f * ceil(alpha / beta)``.

        In local mode the smallest multiplier enters the log term and the
        largest one the stuck term, which keeps the expression an upper bound.
        """
        return (
            1
            + ceil_log(self.alpha_min, self.delta)
            + self.f * _ceil(self.alpha_max / self.beta)
        )

    def default_cap(self) -> int:
        return 4 * (
            ceil_log(self.alpha_min, self.delta)
            + self.f * _ceil(self.alpha_max / self.beta)
            + 2
        )


def parse_alpha_mode(mode: str) -> tuple[str, Fraction | None]:
    """Split ``"fixed:5/2"`` into ``("fixed", 5/2)``; other modes carry no value."""
    if mode.startswith("fixed:"):
        return "fixed", as_fraction(mode.split(":", 1)[1])
    if mode in ("global", "refined", "local"):
        return mode, None
    raise ParameterError(f"unknown alpha mode {mode!r}")


def make_params(
    h: Hypergraph,
    epsilon: Rational = 1,
    alpha_mode: str = "global",
    gamma: Rational | None = None,
) -> Params:
    """Derive ``beta`` and the multiplier table for running on ``h``.

    ``alpha_mode`` is ``global``, ``refined`` (uses ``gamma``, default 1/2),
    ``local`` (per-edge global formula on the local degree) or ``fixed:<p/q>``.
    An edgeless hypergraph is treated as rank 1 so that ``beta`` is defined.
    """
    eps = as_fraction(epsilon)
    f = max(h.stats.f, 1)
    delta = h.stats.delta
    b = beta(eps, f)
    mode, fixed = parse_alpha_mode(alpha_mode)
    g = None
    if mode == "refined":
        g = as_fraction(gamma) if gamma is not None else Fraction(1, 2)
        a = alpha_refined(delta, f, b, g)
        table: Sequence[Fraction] = (a,) * h.m
    elif mode == "global":
        a = alpha_global(delta)
        table = (a,) * h.m
    elif mode == "local":
        table = alpha_local(h, "global")
        a = max(table, default=alpha_global(delta))
    else:
        if fixed < _MIN_ALPHA:
            raise ParameterError(f"fixed alpha must be >= 2, got {fixed}")
        a = fixed
        table = (a,) * h.m
    return Params(
        epsilon=eps,
        f=f,
        delta=delta,
        beta=b,
        alpha_mode=alpha_mode,
        alpha=a,
        alpha_table=tuple(table),
        gamma=g,
    )
