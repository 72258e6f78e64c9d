"""Affine tolerance functions ``x -> x/alpha - beta`` and their composition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import Distance, as_fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer; decimal points are refused to keep inputs exact."""
    token = text.strip()
    if not token or "." in token or "e" in token.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None


@dataclass(frozen=True)
class AffineTolerance:
    """The tolerance ``phi(x) = x/alpha - beta`` with ``alpha >= 1`` and ``beta >= 0``."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.alpha < 1:
            raise ValueError(f"alpha must be at least 1, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")

    def __call__(self, x: Distance) -> Distance:
        if x == math.inf:
            return math.inf
        return x / self.alpha - self.beta

    def admits(self, original: Distance, contracted: Distance) -> bool:
        """Whether ``contracted >= phi(original)``."""
        return contracted >= self(original)

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


def evaluate(t: AffineTolerance, x: object) -> Fraction:
    return t(as_fraction(x))


def compose(outer: AffineTolerance, inner: AffineTolerance) -> AffineTolerance:
    """The tolerance ``x -> outer(inner(x))``."""
    return AffineTolerance(inner.alpha * outer.alpha, inner.beta / outer.alpha + outer.beta)


class LogStretchTolerance:
    """``phi(x) = x/(2 log2(n) - 1) - 1``, the guarantee of clustering with ``k = log2 n``.

    The stretch is irrational unless ``n`` is a power of two, so :meth:`admits`
    decides the inequality by integer powering instead of evaluating ``phi``.
    Calling the object returns a float and is meant for reports only.
    """

    def __init__(self, n: int) -> None:
        if n < 3:
            raise ValueError("need n >= 3 so that the stretch exceeds 1")
        self.n = n

    def __call__(self, x: Distance) -> float:
        return float(x) / (2 * math.log2(self.n) - 1) - 1

    def admits(self, original: Distance, contracted: Distance) -> bool:
        if original == math.inf:
            return contracted == math.inf
        # contracted >= x/(2 log2 n - 1) - 1  <=>  2 (c+1) log2 n >= x + c + 1
        # <=>  log2 n >= q  with  q = (x + c + 1) / (2 (c + 1))  <=>  n^den >= 2^num.
        c = as_fraction(contracted)
        q = (as_fraction(original) + c + 1) / (2 * (c + 1))
        if q <= 0:
            return True
        return self.n ** q.denominator >= 2 ** q.numerator

    def __str__(self) -> str:
        return f"(2log2({self.n})-1,1)"
