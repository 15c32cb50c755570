"""Excursion counting for lattice walk models confined to a domain.

Domain and restriction predicates take two coordinates and must work both
on plain integers and on numpy coordinate grids, so they are written with
comparison operators combined by ``&`` and ``|``.
"""

import logging
from collections import Counter
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .seqcore import Sequence
from .tables import Window, accumulate

logger = logging.getLogger(__name__)

Predicate = Callable[[Any, Any], Any]
Matrix = tuple[tuple[int, int], tuple[int, int]]


def first_quadrant(x: Any, y: Any) -> Any:
    return (x >= 0) & (y >= 0)


def y_axis(x: Any, y: Any) -> Any:
    return x == 0


def lower_wedge(x: Any, y: Any) -> Any:
    return (x >= y) & (y >= 0)


def diagonal(x: Any, y: Any) -> Any:
    return x == y


@dataclass(frozen=True)
class Step:
    """A step vector, optionally forbidden at points where ``restriction`` holds."""

    dx: int
    dy: int
    restriction: Predicate | None = None

    @property
    def vector(self) -> tuple[int, int]:
        return (self.dx, self.dy)

    @property
    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0


@dataclass(frozen=True)
class WalkModel:
    """Step multiset and domain of a walk model starting at the origin."""

    name: str
    steps: tuple[Step, ...]
    domain: Predicate = field(compare=False)

    def __post_init__(self) -> None:
        if not bool(self.domain(0, 0)):
            raise ValueError(f"Model {self.name!r}: origin is outside the domain")

    @property
    def reach(self) -> tuple[int, int]:
        """Largest |dx| and |dy| over the step set."""
        return (
            max((abs(s.dx) for s in self.steps), default=0),
            max((abs(s.dy) for s in self.steps), default=0),
        )


@dataclass(frozen=True)
class _Pullback:
    """Predicate evaluated at the preimage of a point under a unimodular map."""

    predicate: Predicate
    inverse: Matrix

    def __call__(self, x: Any, y: Any) -> Any:
        (a, b), (c, d) = self.inverse
        return self.predicate(a * x + b * y, c * x + d * y)


def octant_g2_model() -> WalkModel:
    """Weights of the seven-dimensional G2 representation, dominant chamber.

    Coordinates are fundamental-weight coordinates. The zero step is not
    permitted on the boundary line x = 0.
    """
    steps = (
        Step(1, 0),
        Step(-1, 1),
        Step(-2, 1),
        Step(-1, 0),
        Step(1, -1),
        Step(2, -1),
        Step(0, 0, restriction=y_axis),
    )
    return WalkModel("octant_g2", steps, first_quadrant)


def hesitating_model() -> WalkModel:
    """Height-2 hesitating tableaux as excursions in {x >= y >= 0}.

    Adding then removing a cell on the first row is a free zero step;
    doing so on the second row is forbidden on the line x = y.
    """
    steps = (
        Step(1, 0),
        Step(0, 1),
        Step(-1, 0),
        Step(0, -1),
        Step(1, -1),
        Step(-1, 1),
        Step(0, 0),
        Step(0, 0, restriction=diagonal),
    )
    return WalkModel("hesitating", steps, lower_wedge)


def with_extra_zero_steps(m: WalkModel, j: int) -> WalkModel:
    """Adjoin ``j`` unrestricted zero steps; counts become the j-th binomial transform."""
    if j < 0:
        raise ValueError(f"Number of extra zero steps must be nonnegative, got {j}")
    if j == 0:
        return m
    return replace(m, name=f"{m.name}+{j}z", steps=m.steps + (Step(0, 0),) * j)


def _determinant(matrix: Matrix) -> int:
    (a, b), (c, d) = matrix
    return a * d - b * c


def apply_unimodular(m: WalkModel, matrix: Matrix) -> WalkModel:
    """Transport steps, domain and restrictions along ``p -> matrix @ p``.

    Raises:
        ValueError: If the determinant of ``matrix`` is not +1 or -1.
    """
    det = _determinant(matrix)
    if det not in (1, -1):
        raise ValueError(f"matrix {[list(r) for r in matrix]} is not unimodular (det {det})")

    (a, b), (c, d) = matrix
    inverse: Matrix = ((d * det, -b * det), (-c * det, a * det))

    def transported(step: Step) -> Step:
        restriction = step.restriction
        return Step(
            a * step.dx + b * step.dy,
            c * step.dx + d * step.dy,
            None if restriction is None else _Pullback(restriction, inverse),
        )

    return WalkModel(
        f"{m.name}@{[list(r) for r in matrix]}",
        tuple(transported(s) for s in m.steps),
        _Pullback(m.domain, inverse),
    )


def swap_coordinates(m: WalkModel) -> WalkModel:
    return apply_unimodular(m, ((0, 1), (1, 0)))


def nonzero_steps(m: WalkModel) -> Counter[tuple[int, int]]:
    """Multiset of the nonzero step vectors of ``m``."""
    return Counter(s.vector for s in m.steps if not s.is_zero)


@dataclass(frozen=True)
class Level:
    """Walk counts after ``index`` steps on ``window``."""

    index: int
    window: Window
    table: np.ndarray

    def count_at(self, x: int, y: int) -> int:
        return self.window.at(self.table, x, y)

    def points(self) -> list[tuple[int, int]]:
        """Lattice points carrying a nonzero count."""
        return [
            (int(i) + self.window.x_lo, int(j) + self.window.y_lo)
            for i, j in zip(*np.nonzero(self.table))
        ]


def _as_mask(value: Any, shape: tuple[int, int]) -> np.ndarray:
    return np.broadcast_to(np.asarray(value, dtype=bool), shape)


def _step_weights(
    m: WalkModel, window: Window
) -> dict[tuple[int, int], int | np.ndarray]:
    """Multiplicity of each step vector at every point of ``window``."""
    xs, ys = window.grid()
    weights: dict[tuple[int, int], int | np.ndarray] = {}
    for step in m.steps:
        if step.restriction is None:
            allowed: int | np.ndarray = 1
        else:
            blocked = _as_mask(step.restriction(xs, ys), window.shape)
            allowed = np.where(blocked, 0, 1).astype(object)
        weights[step.vector] = weights.get(step.vector, 0) + allowed
    return weights


def excursion_levels(m: WalkModel, n_max: int) -> Iterator[Level]:
    """Yield the DP levels 0..n_max of walks that can still return by ``n_max``.

    Level k lives on the box of half-widths ``r * reach`` with
    ``r = min(k, n_max - k)``: points farther out either cannot be reached in
    k steps or cannot get back to the origin in the remaining ones. Only the
    current and the next level are kept in memory.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")

    reach_x, reach_y = m.reach
    window = Window.around_origin(0, 0)
    table = window.zeros()
    table[0, 0] = 1
    yield Level(0, window, table)

    for k in range(n_max):
        radius = min(k + 1, n_max - k - 1)
        target_window = Window.around_origin(radius * reach_x, radius * reach_y)
        target = target_window.zeros()
        for (dx, dy), weight in _step_weights(m, window).items():
            accumulate(target, target_window, table, window, dx, dy, weight)

        xs, ys = target_window.grid()
        target[~_as_mask(m.domain(xs, ys), target_window.shape)] = 0
        window, table = target_window, target
        logger.debug(f"{m.name}: level {k + 1}, window {window.shape}")
        yield Level(k + 1, window, table)


def count_excursions(m: WalkModel, n_max: int) -> Sequence:
    """Number of excursions of length 0..n_max.

    A walk counts when every point it visits lies in the domain and no step
    is taken at a point where that step's restriction holds. Repeated steps
    in the multiset count separately.
    """
    counts = [level.count_at(0, 0) for level in excursion_levels(m, n_max)]
    logger.info(f"Counted {len(counts)} excursion terms for {m.name}")
    return Sequence.of(m.name, counts)
