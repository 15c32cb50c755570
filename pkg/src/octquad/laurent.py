"""Bivariate Laurent polynomials over the integers and constant-term sequences."""

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping

from .seqcore import Sequence
from .tables import Window, accumulate

logger = logging.getLogger(__name__)

Exponent = tuple[int, int]


class LaurentPoly:
    """Sparse Laurent polynomial in x, y with integer coefficients.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int] | None = None) -> None:
        self._terms: dict[Exponent, int] = {
            (int(i), int(j)): int(c) for (i, j), c in (terms or {}).items() if c != 0
        }

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, int]]) -> "LaurentPoly":
        """Build from ``(i, j, coefficient)`` triples, summing repeated exponents."""
        collected: defaultdict[Exponent, int] = defaultdict(int)
        for i, j, c in terms:
            collected[(i, j)] += c
        return cls(collected)

    @classmethod
    def monomial(cls, i: int, j: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({(i, j): coefficient})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls({(0, 0): value})

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def support(self) -> set[Exponent]:
        return set(self._terms)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def bounding_window(self) -> Window:
        if not self._terms:
            return Window(0, -1, 0, -1)
        xs = [i for i, _ in self._terms]
        ys = [j for _, j in self._terms]
        return Window(min(xs), max(xs), min(ys), max(ys))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({key: c * other for key, c in self._terms.items()})
        return lp_mul(self, other)

    __rmul__ = __mul__

    def render(self) -> str:
        """Plain-text form, monomials sorted by exponent pair."""
        if not self._terms:
            return "0"
        return " + ".join(
            f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self._terms.items())
        )

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product; cancelled monomials are dropped."""
    product: defaultdict[Exponent, int] = defaultdict(int)
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            product[(i1 + i2, j1 + j2)] += c1 * c2
    return LaurentPoly(product)


def constant_term(a: LaurentPoly) -> int:
    return a.coefficient(0, 0)


def shifted_constant(k: LaurentPoly, c: int) -> LaurentPoly:
    """``k + c``: each unit of ``c`` adjoins one zero step to the kernel."""
    return k + c


def g2_kernel() -> tuple[LaurentPoly, LaurentPoly]:
    """Character K of the G2 representation and the alternating sum W."""
    k = LaurentPoly.from_terms(
        [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (-1, 0, 1), (0, -1, 1), (-1, -1, 1)]
    )
    bracket = LaurentPoly.from_terms(
        [
            (2, 3, 1),
            (1, 3, -1),
            (-1, 2, 1),
            (-2, 1, -1),
            (-3, -1, 1),
            (-3, -2, -1),
            (-2, -3, 1),
            (-1, -3, -1),
            (1, -2, 1),
            (2, -1, -1),
            (3, 1, 1),
            (3, 2, -1),
        ]
    )
    w = LaurentPoly.monomial(-2, -3) * bracket
    return k, w


def octant_kernel(j: int = 0) -> tuple[LaurentPoly, LaurentPoly]:
    """G2 kernel with ``j`` extra zero steps (K replaced by K + j)."""
    k, w = g2_kernel()
    return shifted_constant(k, j), w


def sl3_kernel(k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Kernel for V + V* + k C of SL(3): six unit monomials plus the constant k."""
    if k < 0:
        raise ValueError(f"Kernel parameter must be nonnegative, got {k}")
    kernel = LaurentPoly.from_terms(
        [(0, 0, k), (1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (1, -1, 1), (-1, 1, 1)]
    )
    w = LaurentPoly.from_terms(
        [(0, 0, 1), (2, -1, -1), (3, 0, 1), (2, 2, -1), (0, 3, 1), (-1, 2, -1)]
    )
    return kernel, w


def _returnable(k_window: Window, remaining: int) -> Window:
    """Exponents that ``remaining`` more factors of K can still bring to (0, 0)."""
    return Window(
        -remaining * k_window.x_hi,
        -remaining * k_window.x_lo,
        -remaining * k_window.y_hi,
        -remaining * k_window.y_lo,
    )


def ct_sequence(
    k: LaurentPoly, w: LaurentPoly, n_max: int, tag: str = "ct"
) -> Sequence:
    """Constant terms of ``W K^n`` for n = 0..n_max.

    Runs P_0 = W, P_{n+1} = P_n K on dense windows. Before each step the
    monomials that cannot reach the exponent (0, 0) within the remaining
    multiplications are dropped; they never contribute to a later constant
    term.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if k.is_zero() or w.is_zero():
        return Sequence.of(tag, [0] * (n_max + 1))

    k_window = k.bounding_window()
    window = w.bounding_window().intersect(_returnable(k_window, n_max))
    if window.is_empty:
        return Sequence.of(tag, [0] * (n_max + 1))
    table = window.zeros()
    for (i, j), c in w.items():
        if window.contains(i, j):
            table[i - window.x_lo, j - window.y_lo] = c

    terms = [window.at(table, 0, 0)]
    for n in range(n_max):
        reached = Window(
            window.x_lo + k_window.x_lo,
            window.x_hi + k_window.x_hi,
            window.y_lo + k_window.y_lo,
            window.y_hi + k_window.y_hi,
        )
        target_window = reached.intersect(_returnable(k_window, n_max - n - 1))
        if target_window.is_empty:
            terms.extend([0] * (n_max - n))
            break
        target = target_window.zeros()
        for (i, j), c in k.items():
            accumulate(target, target_window, table, window, i, j, c)
        window, table = target_window, target
        terms.append(window.at(table, 0, 0))
        logger.debug(f"{tag}: power {n + 1}, window {window.shape}")

    logger.info(f"Extracted {len(terms)} constant terms for {tag}")
    return Sequence.of(tag, terms)
