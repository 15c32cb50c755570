"""P-recurrences and linear differential operators with polynomial coefficients.

Recurrence coefficients are integer polynomials in ``n`` and operator
coefficients integer polynomials in ``t``, both held as ``sympy.Poly``.
An operator ``sum p_i(t) D^i`` acts on power series with ``D = d/dt``.
"""

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import sympy
from sympy import Poly

from .seqcore import Sequence
from .series import PowerSeries

logger = logging.getLogger(__name__)

N = sympy.Symbol("n")
T = sympy.Symbol("t")

# Right-hand side of L_E(E) = 30.
E_EQUATION_RHS = 30

UNIFORM_PARAMETERS = (0, 1, 2, 3)


def _poly_n(expr: sympy.Expr | int) -> Poly:
    return Poly(expr, N, domain=sympy.ZZ)


def _poly_t(expr: sympy.Expr | int) -> Poly:
    return Poly(expr, T, domain=sympy.ZZ)


def _int_coefficients(p: Poly) -> tuple[int, ...]:
    """Coefficients lowest degree first, as Python integers."""
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def _horner(coefficients: tuple[int, ...], value: int) -> int:
    result = 0
    for c in reversed(coefficients):
        result = result * value + c
    return result


def _has_nonnegative_integer_root(p: Poly) -> bool:
    for factor, _ in p.factor_list()[1]:
        if factor.degree() == 1:
            c, d = (int(x) for x in factor.all_coeffs())
            if d % c == 0 and -d // c >= 0:
                return True
    return False


@dataclass(frozen=True)
class PRecurrence:
    """``sum_i c_i(n) a(n + i) + inhomogeneous(n) = 0`` for all n >= 0."""

    coefficients: tuple[Poly, ...]
    inhomogeneous: Poly = field(default_factory=lambda: _poly_n(0))
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a recurrence needs at least one coefficient")
        if self.coefficients[-1].is_zero:
            raise ValueError(f"recurrence {self.name!r} has a zero leading coefficient")

    @classmethod
    def from_exprs(
        cls, exprs: Iterable[sympy.Expr | int], name: str = ""
    ) -> "PRecurrence":
        return cls(tuple(_poly_n(e) for e in exprs), name=name)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @cached_property
    def _evaluators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_int_coefficients(c) for c in self.coefficients)

    @cached_property
    def _inhomogeneous_evaluator(self) -> tuple[int, ...]:
        return _int_coefficients(self.inhomogeneous)

    def coefficients_at(self, n: int) -> list[int]:
        return [_horner(c, n) for c in self._evaluators]

    def inhomogeneous_at(self, n: int) -> int:
        return _horner(self._inhomogeneous_evaluator, n)

    def residual(self, terms: tuple[int, ...] | list[int], n: int) -> int:
        """Left-hand side of the relation at ``n``."""
        total = self.inhomogeneous_at(n)
        for i, c in enumerate(self.coefficients_at(n)):
            total += c * terms[n + i]
        return total

    def normalized(self) -> "PRecurrence":
        """Divide out the integer content; leading coefficient positive."""
        contents = [int(c.content()) for c in (*self.coefficients, self.inhomogeneous)]
        content = math.gcd(*contents) or 1
        if self.coefficients[-1].LC() < 0:
            content = -content
        return PRecurrence(
            tuple(c.exquo_ground(content) for c in self.coefficients),
            self.inhomogeneous.exquo_ground(content),
            self.name,
        )

    def is_proportional(self, other: "PRecurrence") -> bool:
        """Equal up to a rational factor in n with no zero or pole at n >= 0.

        Such a factor leaves the solutions for n >= 0 unchanged. A factor
        like ``n - 1`` does not, and is rejected.
        """
        if self.order != other.order:
            return False
        lead, other_lead = self.coefficients[-1], other.coefficients[-1]
        mine = (*self.coefficients, self.inhomogeneous)
        theirs = (*other.coefficients, other.inhomogeneous)
        if not all(a * other_lead == b * lead for a, b in zip(mine, theirs)):
            return False
        numerator, denominator = lead.cancel(other_lead, include=True)
        return not (
            _has_nonnegative_integer_root(numerator)
            or _has_nonnegative_integer_root(denominator)
        )

    def render(self) -> str:
        parts = [
            f"({c.as_expr()})*a(n+{i})" if i else f"({c.as_expr()})*a(n)"
            for i, c in enumerate(self.coefficients)
            if not c.is_zero
        ]
        if not self.inhomogeneous.is_zero:
            parts.append(f"({self.inhomogeneous.as_expr()})")
        return " + ".join(parts) + " = 0"


def rec_generate(r: PRecurrence, initial: Iterable[int], n_max: int) -> Sequence:
    """Extend ``initial`` to the terms of index 0..n_max.

    Raises:
        ValueError: If the number of initial terms differs from the order.
        ArithmeticError: If the leading coefficient vanishes or a division is
            inexact; either means a wrong recurrence or wrong initial terms.
    """
    terms = [int(a) for a in initial]
    if len(terms) != r.order:
        raise ValueError(
            f"recurrence {r.name!r} of order {r.order} needs {r.order} initial terms, "
            f"got {len(terms)}"
        )

    for n in range(n_max + 1 - r.order):
        *lower, lead = r.coefficients_at(n)
        if lead == 0:
            raise ArithmeticError(f"leading coefficient of {r.name!r} vanishes at n={n}")
        total = r.inhomogeneous_at(n) + sum(
            c * a for c, a in zip(lower, terms[n:])
        )
        quotient, remainder = divmod(-total, lead)
        if remainder:
            raise ArithmeticError(
                f"inexact division generating term {n + r.order} of {r.name!r}: "
                f"{-total}/{lead}"
            )
        terms.append(quotient)

    logger.debug(f"Generated {n_max + 1} terms from {r.name!r}")
    return Sequence.of(r.name or "rec", terms[: n_max + 1])


def first_violation(r: PRecurrence, s: Sequence) -> int | None:
    """Smallest n at which ``s`` violates ``r``, None if it never does.

    Raises:
        ValueError: If ``s`` has no more than ``order`` terms.
    """
    if len(s) <= r.order:
        raise ValueError(
            f"sequence {s.tag!r} has {len(s)} terms, need at least {r.order + 1}"
        )
    for n in range(len(s) - r.order):
        if r.residual(s.terms, n) != 0:
            return n
    return None


def rec_verify(r: PRecurrence, s: Sequence) -> bool:
    """True iff ``s`` satisfies ``r`` wherever all terms involved are known."""
    violation = first_violation(r, s)
    if violation is not None:
        logger.debug(f"{s.tag!r} violates {r.name!r} at n={violation}")
    return violation is None


def t3_recurrence() -> PRecurrence:
    n = N
    return PRecurrence.from_exprs(
        [
            14 * (n + 1) * (n + 2),
            (n + 2) * (19 * n + 75),
            2 * (n + 2) * (2 * n + 11),
            -(n + 8) * (n + 9),
        ],
        name="t3",
    )


def e3_recurrence() -> PRecurrence:
    n = N
    return PRecurrence.from_exprs(
        [8 * (n + 3) * (n + 1), 7 * n**2 + 53 * n + 88, -(n + 8) * (n + 7)],
        name="e3",
    )


def c2_recurrence() -> PRecurrence:
    n = N
    return PRecurrence.from_exprs(
        [9 * (n + 1) * (n + 4), -2 * (5 * n**2 + 36 * n + 61), (n + 5) * (n + 6)],
        name="c2",
    )


def uniform_recurrence(k: int) -> PRecurrence:
    """Order-4 recurrence shared by the quadrant sequences, parameter ``k``.

    Raises:
        ValueError: If ``k`` is not one of 0, 1, 2, 3.
    """
    if k not in UNIFORM_PARAMETERS:
        raise ValueError(f"uniform recurrence parameter must be in 0..3, got {k}")
    n = N
    return PRecurrence.from_exprs(
        [
            (k - 9) * (k - 1) * k**2 * (n + 1) * (n + 2),
            2 * k * (n + 2) * (2 * k**2 * n - 15 * k * n + 8 * k**2 + 9 * n - 56 * k + 36),
            6 * k**2 * n**2
            + 54 * k**2 * n
            - 30 * k * n**2
            + 114 * k**2
            + 9 * n**2
            - 254 * k * n
            + 81 * n
            - 510 * k
            + 162,
            2 * (2 * k * n**2 + 24 * k * n - 5 * n**2 + 70 * k - 56 * n - 153),
            (n + 7) * (n + 8),
        ],
        name=f"uniform[k={k}]",
    )


def resolve_sigma(rows: Mapping[str, Sequence]) -> dict[int, str | None]:
    """Match each uniform-recurrence parameter to the one row it verifies.

    A parameter maps to None when no row, or more than one, satisfies it.
    """
    sigma: dict[int, str | None] = {}
    for k in UNIFORM_PARAMETERS:
        recurrence = uniform_recurrence(k)
        matches = [tag for tag, row in rows.items() if rec_verify(recurrence, row)]
        sigma[k] = matches[0] if len(matches) == 1 else None
        logger.info(f"uniform recurrence k={k} matches {matches or 'nothing'}")
    return sigma


@dataclass(frozen=True)
class DiffOperator:
    """``sum_i p_i(t) D^i`` with ``D t = t D + 1``."""

    coefficients: tuple[Poly, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        trimmed = list(self.coefficients)
        while len(trimmed) > 1 and trimmed[-1].is_zero:
            trimmed.pop()
        if not trimmed:
            trimmed = [_poly_t(0)]
        object.__setattr__(self, "coefficients", tuple(trimmed))

    @classmethod
    def from_exprs(
        cls, exprs: Iterable[sympy.Expr | int], name: str = ""
    ) -> "DiffOperator":
        return cls(tuple(_poly_t(e) for e in exprs), name=name)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        return weyl_mul(self, other)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(_add_lists(self.coefficients, other.coefficients))

    def render(self) -> str:
        parts = [
            f"({p.as_expr()})*D^{i}" if i else f"({p.as_expr()})"
            for i, p in enumerate(self.coefficients)
            if not p.is_zero
        ]
        return " + ".join(parts) or "0"


def _add_lists(a: Iterable[Poly], b: Iterable[Poly]) -> tuple[Poly, ...]:
    a, b = list(a), list(b)
    zero = _poly_t(0)
    size = max(len(a), len(b))
    a += [zero] * (size - len(a))
    b += [zero] * (size - len(b))
    return tuple(x + y for x, y in zip(a, b))


def weyl_mul(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Product ``a b`` using the commutation rule ``D p = p D + p'``."""
    product = tuple(a.coefficients[0] * q for q in b.coefficients)
    # d_power_times_b holds D^i b as a list of coefficients.
    d_power_times_b = list(b.coefficients)
    for p in a.coefficients[1:]:
        zero = _poly_t(0)
        shifted = [zero, *d_power_times_b]
        derived = [q.diff(T) for q in d_power_times_b] + [zero]
        d_power_times_b = list(_add_lists(shifted, derived))
        product = _add_lists(product, (p * q for q in d_power_times_b))
    return DiffOperator(product)


def _poly_to_series(p: Poly, order: int) -> PowerSeries:
    return PowerSeries.from_polynomial(_int_coefficients(p), order)


def apply_operator(a: DiffOperator, f: PowerSeries, n_keep: int) -> PowerSeries:
    """``sum p_i(t) f^(i)(t)`` truncated to ``n_keep`` terms.

    Raises:
        ValueError: If ``f`` has fewer than ``n_keep + order`` coefficients.
    """
    if f.order < n_keep + a.order:
        raise ValueError(f"series truncated at {f.order}, need {n_keep + a.order}")

    result = PowerSeries.constant(0, n_keep)
    derivative = f
    for i, p in enumerate(a.coefficients):
        if i:
            derivative = derivative.derivative()
        if not p.is_zero:
            result = result + _poly_to_series(p, n_keep) * derivative.truncate(n_keep)
    return result


def _falling(x: sympy.Expr, i: int) -> Poly:
    result = _poly_n(1)
    for l in range(i):
        result = result * _poly_n(x - l)
    return result


def diff_to_rec(a: DiffOperator) -> PRecurrence:
    """Recurrence for the coefficients of every power-series solution of ``a``.

    ``t^j D^i`` sends ``f_m t^m`` to ``m(m-1)..(m-i+1) f_m t^(m-i+j)``, so the
    coefficient of t^n is a combination of the f_(n+i-j). Shifts are taken
    relative to the smallest one when that is negative, so the relation holds
    for every n >= 0 with nonnegative shifts only.
    """
    entries = [
        (i, j, int(c))
        for i, p in enumerate(a.coefficients)
        for (j,), c in p.terms()
        if c
    ]
    if not entries:
        raise ValueError("the zero operator has no recurrence")

    offset = min(0, min(i - j for i, j, _ in entries))
    order = max(i - j for i, j, _ in entries) - offset
    coefficients = [_poly_n(0) for _ in range(order + 1)]
    for i, j, c in entries:
        shift = i - j - offset
        coefficients[shift] = coefficients[shift] + c * _falling(N + shift, i)

    while len(coefficients) > 1 and coefficients[-1].is_zero:
        coefficients.pop()
    return PRecurrence(tuple(coefficients), name=f"rec({a.name})").normalized()


def identity() -> DiffOperator:
    return DiffOperator.from_exprs([1], name="1")


def d_dt() -> DiffOperator:
    return DiffOperator.from_exprs([0, 1], name="D")


def mul_t() -> DiffOperator:
    return DiffOperator.from_exprs([T], name="t")


def l6_operator() -> DiffOperator:
    t = T
    return DiffOperator.from_exprs(
        [
            20160 * t**3 + 25200 * t**2 + 8064 * t,
            36 * (3360 * t**4 + 4540 * t**3 + 1646 * t**2 + 16 * t - 35),
            36 * t * (4200 * t**4 + 6100 * t**3 + 2442 * t**2 + 54 * t - 77),
            6 * t**2 * (11200 * t**4 + 17400 * t**3 + 7556 * t**2 + 268 * t - 273),
            6 * t**3 * (2100 * t**4 + 3475 * t**3 + 1616 * t**2 + 79 * t - 61),
            3 * t**4 * (2 * t + 1) * (168 * t**3 + 211 * t**2 + 40 * t - 11),
            t**5 * (t + 1) * (7 * t - 1) * (2 * t + 1) ** 2,
        ],
        name="L6",
    )


def q_operator() -> DiffOperator:
    t = T
    return DiffOperator.from_exprs(
        [
            48 * t + 30,
            6 * (12 * t + 7) * t,
            (24 * t + 13) * t**2,
            (2 * t + 1) * t**3,
        ],
        name="Q",
    )


def l3_operator() -> DiffOperator:
    t = T
    return DiffOperator.from_exprs(
        [
            28 * t * (3 * t + 4),
            252 * t**3 + 338 * t**2 + 36 * t - 42,
            2 * t * (t + 1) * (63 * t**2 + 22 * t - 7),
            t**2 * (2 * t + 1) * (7 * t - 1) * (t + 1),
        ],
        name="L3",
    )


def e_operator() -> DiffOperator:
    """Operator L_E; applied to E(t) it gives the constant 30."""
    t = T
    return DiffOperator.from_exprs(
        [
            6 * (5 - 7 * t - 4 * t**2),
            2 * t * (6 - 23 * t - 20 * t**2),
            t**2 * (1 + t) * (1 - 8 * t),
        ],
        name="L_E",
    )


def c_operator() -> DiffOperator:
    """Order-4 operator annihilating the generating function C(t)."""
    t = T
    return DiffOperator.from_exprs(
        [
            72,
            4 * (-61 + 117 * t),
            2 * (15 - 184 * t + 234 * t**2),
            2 * t * (-6 + 7 * t) * (-1 + 9 * t),
            (-1 + t) * t**2 * (-1 + 9 * t),
        ],
        name="L_C",
    )


def q_two_term_recurrence() -> PRecurrence:
    """``2(n+2) f_n + (n+6) f_{n+1} = 0``."""
    return PRecurrence.from_exprs([2 * (N + 2), N + 6], name="q-two-term")


def q_recurrence_check() -> bool:
    """Whether the recurrence of Q is the displayed two-term relation.

    ``diff_to_rec(Q)`` comes out as (n+3)(n+4) times the displayed relation;
    ``is_proportional`` checks that the factor has no root at n >= 0.
    """
    return diff_to_rec(q_operator()).is_proportional(q_two_term_recurrence())

