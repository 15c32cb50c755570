"""Exact integer sequences, binomial transforms and reference rows."""

import logging
import operator
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sequence:
    """Finite prefix of an integer sequence, index 0 first.

    Terms are exact Python integers; anything that is not an integer
    (a float, a non-integral fraction) is rejected on construction.
    """

    tag: str
    terms: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        try:
            terms = tuple(operator.index(term) for term in self.terms)
        except TypeError as e:
            raise ValueError(f"Sequence {self.tag!r} has a non-integer term: {e}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, tag: str, terms: Iterable[int]) -> Self:
        """Build a sequence from any iterable of integers."""
        return cls(tag, tuple(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)

    def __getitem__(self, index: int) -> int:
        return self.terms[index]

    def with_tag(self, tag: str) -> "Sequence":
        return Sequence(tag, self.terms)


# Published reference rows, kept exactly as printed.
REFERENCE_TABLE: dict[str, tuple[int, ...]] = {
    "A059710": (1, 0, 1, 1, 4, 10, 35, 120, 455, 1792),
    "A108307": (1, 1, 2, 5, 15, 51, 191, 772, 3320, 15032),
    "A108304": (1, 2, 5, 15, 52, 202, 859, 3930, 19095, 97566),
    "A151366": (1, 0, 2, 2, 12, 30),
    "A236408": (1, 1, 3, 9, 33, 131),
    "A001181": (1, 2, 6, 22, 92, 422),
    "A216947": (1, 3, 11, 49, 221, 1113),
}

# Misprinted terms, index -> correct value. The printed A216947 row disagrees
# with its own recurrence (9(n+1)(n+4), -2(5n^2+36n+61), (n+5)(n+6)) from
# n = 1 on and with the constant term of W K^n at k = 3.
REFERENCE_ERRATA: dict[str, dict[int, int]] = {
    "A216947": {3: 47, 4: 225, 5: 1173},
}


def known_tags() -> list[str]:
    return sorted(REFERENCE_TABLE)


def reference(tag: str, corrected: bool = False) -> Sequence:
    """Return the printed prefix for an OEIS tag.

    Args:
        tag: One of the tags in ``REFERENCE_TABLE``.
        corrected: Apply ``REFERENCE_ERRATA`` to the printed row.

    Returns:
        The reference prefix as a sequence tagged with ``tag``.

    Raises:
        ValueError: If the tag is unknown.
    """
    if tag not in REFERENCE_TABLE:
        raise ValueError(f"unknown tag {tag!r}; known tags: {', '.join(known_tags())}")

    terms = list(REFERENCE_TABLE[tag])
    if corrected:
        for index, value in REFERENCE_ERRATA.get(tag, {}).items():
            if index < len(terms) and terms[index] != value:
                logger.warning(f"{tag}: correcting term {index}: {terms[index]} -> {value}")
                terms[index] = value
    return Sequence.of(tag, terms)


def _pascal_rows(size: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, size):
        previous = rows[-1]
        rows.append([1, *(previous[i - 1] + previous[i] for i in range(1, n)), 1])
    return rows


def _forward(terms: list[int], rows: list[list[int]]) -> list[int]:
    return [
        sum(c * a for c, a in zip(rows[n], terms[: n + 1])) for n in range(len(terms))
    ]


def _inverse(terms: list[int], rows: list[list[int]]) -> list[int]:
    return [
        sum((-1) ** (n - i) * rows[n][i] * terms[i] for i in range(n + 1))
        for n in range(len(terms))
    ]


def binomial_transform(s: Sequence, k: int = 1) -> Sequence:
    """Apply the k-th binomial transform term by term.

    Positive ``k`` composes ``a(n) -> sum C(n, i) a(i)`` k times, negative
    ``k`` composes the inverse ``a(n) -> sum (-1)^(n-i) C(n, i) a(i)``.

    Raises:
        ValueError: If ``s`` has no terms.
    """
    if not s.terms:
        raise ValueError("empty sequence")
    if k == 0:
        return s

    rows = _pascal_rows(len(s))
    step = _forward if k > 0 else _inverse
    terms = list(s.terms)
    for _ in range(abs(k)):
        terms = step(terms, rows)
    return Sequence.of(f"bt^{k}({s.tag})", terms)


def compare_prefix(a: Sequence, b: Sequence) -> int:
    """Length of the longest common prefix of two sequences."""
    length = 0
    for x, y in zip(a.terms, b.terms):
        if x != y:
            break
        length += 1
    return length


def to_bfile(s: Sequence) -> str:
    """Render ``s`` as OEIS b-file text, one ``"n a(n)"`` line per term."""
    return "".join(f"{n} {a}\n" for n, a in enumerate(s.terms))


def read_bfile(text: str, tag: str = "bfile") -> Sequence:
    """Parse b-file text written by :func:`to_bfile`.

    Raises:
        ValueError: On a malformed line or an index out of order; the
            message carries the 1-based line number.
    """
    terms: list[int] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {line_number}: expected 'n a(n)', got {line!r}")
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"line {line_number}: not an integer pair: {line!r}")
        if index != len(terms):
            raise ValueError(
                f"line {line_number}: expected index {len(terms)}, got {index}"
            )
        terms.append(value)
    return Sequence.of(tag, terms)
