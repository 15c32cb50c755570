"""Dense big-integer tables over rectangular windows of Z^2.

Walk counting and constant-term extraction both advance one level at a
time: every cell of the next level is a weighted sum of shifted cells of
the current one. Levels are numpy object arrays holding Python integers,
so the shifted additions run in C while the values stay exact.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Window:
    """Closed box ``[x_lo, x_hi] x [y_lo, y_hi]`` of lattice points."""

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    @classmethod
    def around_origin(cls, half_x: int, half_y: int) -> "Window":
        return cls(-half_x, half_x, -half_y, half_y)

    @property
    def is_empty(self) -> bool:
        return self.x_lo > self.x_hi or self.y_lo > self.y_hi

    @property
    def shape(self) -> tuple[int, int]:
        if self.is_empty:
            return (0, 0)
        return (self.x_hi - self.x_lo + 1, self.y_hi - self.y_lo + 1)

    def contains(self, x: int, y: int) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def intersect(self, other: "Window") -> "Window":
        return Window(
            max(self.x_lo, other.x_lo),
            min(self.x_hi, other.x_hi),
            max(self.y_lo, other.y_lo),
            min(self.y_hi, other.y_hi),
        )

    def shifted(self, dx: int, dy: int) -> "Window":
        return Window(self.x_lo + dx, self.x_hi + dx, self.y_lo + dy, self.y_hi + dy)

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays (column of x, row of y) that broadcast to ``shape``."""
        xs = np.arange(self.x_lo, self.x_hi + 1, dtype=np.int64).reshape(-1, 1)
        ys = np.arange(self.y_lo, self.y_hi + 1, dtype=np.int64).reshape(1, -1)
        return xs, ys

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape, dtype=object)

    def slices(self, inner: "Window") -> tuple[slice, slice]:
        """Index slices selecting ``inner`` (a sub-box) inside a table on self."""
        return (
            slice(inner.x_lo - self.x_lo, inner.x_hi - self.x_lo + 1),
            slice(inner.y_lo - self.y_lo, inner.y_hi - self.y_lo + 1),
        )

    def at(self, table: np.ndarray, x: int, y: int) -> int:
        """Cell value at ``(x, y)``, zero outside the window."""
        if not self.contains(x, y):
            return 0
        return int(table[x - self.x_lo, y - self.y_lo])


def accumulate(
    target: np.ndarray,
    target_window: Window,
    source: np.ndarray,
    source_window: Window,
    dx: int,
    dy: int,
    weight: int | np.ndarray = 1,
) -> None:
    """Add ``weight * source[p]`` into ``target[p + (dx, dy)]`` in place.

    ``weight`` is a scalar or an object array laid out on ``source_window``.
    Cells shifted outside ``target_window`` are dropped.
    """
    overlap = source_window.shifted(dx, dy).intersect(target_window)
    if overlap.is_empty:
        return

    source_slices = source_window.slices(overlap.shifted(-dx, -dy))
    values = source[source_slices]
    if isinstance(weight, np.ndarray):
        values = values * weight[source_slices]
    elif weight != 1:
        values = values * weight
    target[target_window.slices(overlap)] += values
