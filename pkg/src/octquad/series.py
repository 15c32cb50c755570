"""Truncated power series over the rationals and the closed forms for T_3.

A :class:`PowerSeries` knows the first ``order`` coefficients of a series
in t exactly; everything from t^order on is unknown. Operations return as
many coefficients as their inputs determine and refuse to invent more.
"""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .seqcore import Sequence

logger = logging.getLogger(__name__)

Rational = Fraction | int


@dataclass(frozen=True)
class PowerSeries:
    """Exact coefficients ``c_0 .. c_{order-1}`` of a series in t."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @classmethod
    def from_integers(cls, values: Iterable[int]) -> "PowerSeries":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_sequence(cls, s: Sequence) -> "PowerSeries":
        return cls.from_integers(s.terms)

    @classmethod
    def from_polynomial(cls, coefficients: Iterable[Rational], order: int) -> "PowerSeries":
        """Polynomial ``sum c_i t^i`` truncated to ``order`` coefficients."""
        values = [Fraction(c) for c in coefficients][:order]
        return cls(tuple(values + [Fraction(0)] * (order - len(values))))

    @classmethod
    def constant(cls, value: Rational, order: int) -> "PowerSeries":
        return cls.from_polynomial([value], order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        """The series ``t``."""
        return cls.from_polynomial([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, index: int) -> Fraction:
        return self.coefficients[index]

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, ``order`` if none is known."""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return self.order

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"series truncated at {self.order}, need {order}")
        return PowerSeries(self.coefficients[:order])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def to_integers(self) -> list[int]:
        if not self.is_integral():
            raise ArithmeticError("series has non-integral coefficients")
        return [c.numerator for c in self.coefficients]

    def to_sequence(self, tag: str) -> Sequence:
        return Sequence.of(tag, self.to_integers())

    def __add__(self, other: "PowerSeries | Rational") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(other, self.order)
        order = min(self.order, other.order)
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coefficients[:order], other.coefficients))
        )

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "PowerSeries | Rational") -> "PowerSeries":
        return self + (-other)

    def __rsub__(self, other: Rational) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other: "PowerSeries | Rational") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            factor = Fraction(other)
            return PowerSeries(tuple(c * factor for c in self.coefficients))
        return _multiply(self, other)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        """``1/f``.

        Raises:
            ValueError: If the constant term is zero.
        """
        if not self.coefficients or self.coefficients[0] == 0:
            constant = self.coefficients[0] if self.coefficients else "unknown"
            raise ValueError(f"reciprocal needs a nonzero constant term, got {constant}")

        f = self.coefficients
        inverse = [1 / f[0]]
        for n in range(1, self.order):
            total = sum(f[i] * inverse[n - i] for i in range(1, n + 1))
            inverse.append(-total * inverse[0])
        return PowerSeries(tuple(inverse))

    def derivative(self) -> "PowerSeries":
        return PowerSeries(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def shift_down(self, k: int) -> "PowerSeries":
        """Exact division by ``t^k``.

        Raises:
            ArithmeticError: If one of the first ``k`` coefficients is nonzero.
        """
        head = self.coefficients[:k]
        if len(head) < k:
            raise ValueError(f"series truncated at {self.order}, need {k}")
        if any(head):
            raise ArithmeticError(f"series is not divisible by t^{k}: {list(head)}")
        return PowerSeries(self.coefficients[k:])


def _integer_form(f: PowerSeries) -> tuple[list[int], int]:
    denominator = math.lcm(*(c.denominator for c in f.coefficients)) if f.order else 1
    return [c.numerator * (denominator // c.denominator) for c in f.coefficients], denominator


def _multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    # Convolve over the integers after clearing denominators.
    order = min(a.order, b.order)
    xs, dx = _integer_form(a.truncate(order))
    ys, dy = _integer_form(b.truncate(order))
    denominator = dx * dy
    product = []
    for n in range(order):
        total = sum(xs[i] * ys[n - i] for i in range(n + 1) if xs[i])
        product.append(Fraction(total, denominator))
    return PowerSeries(tuple(product))


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """``outer(inner(t))`` by Horner's rule.

    The result is known up to ``min(inner.order, v * outer.order)`` where ``v``
    is the valuation of ``inner``.

    Raises:
        ValueError: If ``inner`` has a nonzero constant term.
    """
    if inner.order and inner.coefficients[0] != 0:
        raise ValueError(
            f"compose needs an inner constant term of 0, got {inner.coefficients[0]}"
        )

    valuation = max(inner.valuation(), 1)
    order = min(inner.order, valuation * outer.order)
    inner = inner.truncate(order)
    needed = min(outer.order, -(-order // valuation))

    result = PowerSeries.constant(0, order)
    for c in reversed(outer.coefficients[:needed]):
        result = result * inner + c
    return result


def pow_rational(f: PowerSeries, exponent: Rational) -> PowerSeries:
    """``f ** exponent`` for ``f(0) = 1``.

    Uses the coefficient recurrence of ``f g' = exponent f' g``.

    Raises:
        ValueError: If the constant term is not 1.
    """
    alpha = Fraction(exponent)
    if not f.coefficients or f.coefficients[0] != 1:
        constant = f.coefficients[0] if f.coefficients else "unknown"
        raise ValueError(f"pow_rational needs a constant term of 1, got {constant}")

    c = f.coefficients
    g = [Fraction(1)]
    for n in range(1, f.order):
        total = sum((alpha * k - (n - k)) * c[k] * g[n - k] for k in range(1, n + 1))
        g.append(total / n)
    return PowerSeries(tuple(g))


def geometric(ratio: Rational, order: int) -> PowerSeries:
    """``1/(1 - ratio*t)``."""
    return PowerSeries(tuple(Fraction(ratio) ** i for i in range(order)))


def bt_series(g: PowerSeries, k: int, n: int) -> PowerSeries:
    """k-th binomial transform at the generating-function level.

    Computes ``1/(1 - k t) * G(t/(1 - k t))`` truncated to ``n`` terms.

    Raises:
        ValueError: If ``g`` has fewer than ``n`` coefficients.
    """
    g = g.truncate(n)
    if k == 0:
        return g
    prefactor = geometric(k, n)
    inner = PowerSeries.variable(n) * prefactor
    return (prefactor * compose(g, inner)).truncate(n)


def hypergeom_2f1(a: Rational, b: Rational, c: Rational, n: int) -> PowerSeries:
    """Gauss series ``sum (a)_m (b)_m / ((c)_m m!) z^m`` for m < n.

    Raises:
        ValueError: If ``c`` is zero or a negative integer.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if c.denominator == 1 and c <= 0:
        raise ValueError(f"2F1 lower parameter must not be a nonpositive integer, got {c}")

    terms = [Fraction(1)] if n > 0 else []
    for m in range(n - 1):
        terms.append(terms[-1] * (a + m) * (b + m) / ((c + m) * (m + 1)))
    return PowerSeries(tuple(terms))


def _poly(coefficients: Iterable[int], order: int) -> PowerSeries:
    return PowerSeries.from_polynomial(coefficients, order)


def _closed_form(bracket: PowerSeries, denominator: int, n: int) -> PowerSeries:
    head = bracket.coefficients[:5]
    if any(head):
        logger.error(f"Bracket does not vanish to order 5: {list(head)}")
        raise ArithmeticError("closed-form transcription inconsistent")
    return (bracket.shift_down(5) * Fraction(1, denominator)).truncate(n)


def hypergeom_bracket(order: int) -> PowerSeries:
    """``R1 2F1(1/3, 2/3; 2; phi) + R2 2F1(2/3, 4/3; 3; phi) + 5P`` to ``order`` terms."""
    one_plus_t_squared = _poly([1, 2, 1], order)
    inverse_t_minus_1 = _poly([-1, 1], order).reciprocal()

    r1 = one_plus_t_squared * _poly([5, 60, 45, 214], order) * inverse_t_minus_1
    r2 = (
        6
        * _poly([0, 0, 1], order)
        * one_plus_t_squared
        * _poly([5, 74, 101], order)
        * inverse_t_minus_1
        * inverse_t_minus_1
    )
    phi = _poly([0, 0, 27, 27], order) * _poly([1, -3, 3, -1], order).reciprocal()
    p = _poly([1, 15, 46, 66, 28], order)

    # phi has valuation 2, so half the order of each 2F1 suffices.
    terms = order // 2 + 1
    f1 = compose(hypergeom_2f1(Fraction(1, 3), Fraction(2, 3), 2, terms), phi)
    f2 = compose(hypergeom_2f1(Fraction(2, 3), Fraction(4, 3), 3, terms), phi)
    return r1 * f1 + r2 * f2 + 5 * p


def t3_closed_form_hypergeom(n: int) -> PowerSeries:
    """First ``n`` coefficients of T(t) from the 2F1 closed formula.

    Raises:
        ArithmeticError: If the bracket is not divisible by t^5.
    """
    if n < 1:
        raise ValueError(f"need at least one coefficient, got {n}")
    series = _closed_form(hypergeom_bracket(n + 5), 30, n)
    logger.info(f"Evaluated hypergeometric closed form to {n} terms")
    return series


def weierstrass_g2(order: int) -> PowerSeries:
    """``g2 = (t - 1)(25 t^3 + 21 t^2 + 3 t - 1)``."""
    return _poly([-1, 1], order) * _poly([-1, 3, 21, 25], order)


def j_ratio(order: int) -> PowerSeries:
    """``1728/J``; J has t^6 in its denominator, so this starts at t^6."""
    g2 = weierstrass_g2(order)
    numerator = (
        1728
        * _poly([0, 0, 0, 0, 0, 0, 1], order)
        * _poly([1, -7], order)
        * _poly([1, 4, 4], order)
        * _poly([1, 3, 3, 1], order)
    )
    return numerator * (g2 * g2 * g2).reciprocal()


def weierstrass_h(order: int) -> PowerSeries:
    """``H(t) = g2^(-1/4) 2F1(1/12, 5/12; 1; 1728/J)``."""
    z = j_ratio(order)
    f = compose(hypergeom_2f1(Fraction(1, 12), Fraction(5, 12), 1, order // 6 + 1), z)
    return pow_rational(weierstrass_g2(order), Fraction(-1, 4)) * f


def weierstrass_bracket(order: int) -> PowerSeries:
    """``360 t^5 T(t)`` assembled from H and H' to ``order`` terms."""
    h = weierstrass_h(order + 1)
    h_prime = h.derivative()
    h = h.truncate(order)
    h_factor = _poly([59, 182, 155], order) * _poly([1, 11], order)
    h_prime_factor = _poly([1, 231, 507, 341], order) * _poly([1, 5], order)
    inner = h_factor * h + h_prime_factor * h_prime
    prefactor = _poly([-1, 7], order) * _poly([1, 2], order) * _poly([1, 1], order)
    return 60 * _poly([1, 15, 46, 66, 28], order) + prefactor * inner


def t3_closed_form_weierstrass(n: int) -> PowerSeries:
    """First ``n`` coefficients of T(t) from the Weierstrass-invariant formula.

    Raises:
        ArithmeticError: If the bracket is not divisible by t^5.
    """
    if n < 1:
        raise ValueError(f"need at least one coefficient, got {n}")
    series = _closed_form(weierstrass_bracket(n + 5), 360, n)
    logger.info(f"Evaluated Weierstrass closed form to {n} terms")
    return series
