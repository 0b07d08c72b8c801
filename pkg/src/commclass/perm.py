"""Permutations of [1, n+1] in one-line notation.

Positions, values and generator indices are 1-based.  A word ``(i1, ..., il)``
stands for the product ``s_i1 s_i2 ... s_il`` with functions applied from the
right, so ``apply_word((2, 1, 2, 3, 2), 4)`` is ``(3, 4, 2, 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence

__all__ = [
    "Permutation", "NonFixedBounds", "PermutationParseError",
    "parse_permutation", "format_one_line", "format_cycles",
    "compose", "inverse", "length", "inversions_of", "non_fixed_bounds",
    "letter_in_support", "apply_word", "identity", "longest", "simple_reflection",
    "all_permutations",
]


class PermutationParseError(ValueError):
    """Malformed permutation text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return format_one_line(self)

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, 1))


@dataclass(frozen=True)
class NonFixedBounds:
    """Minimum ``m`` and maximum ``M + 1`` non-fixed points; absent for the identity."""
    present: bool
    m: int | None = None
    M_plus_1: int | None = None

    @property
    def M(self) -> int | None:
        return None if self.M_plus_1 is None else self.M_plus_1 - 1


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(1, degree + 1)))


def longest(degree: int) -> Permutation:
    """The order-reversing permutation w0."""
    return Permutation(tuple(range(degree, 0, -1)))


def simple_reflection(i: int, degree: int) -> Permutation:
    if not 1 <= i < degree:
        raise ValueError(f"generator s_{i} out of range for degree {degree}")
    images = list(range(1, degree + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def all_permutations(degree: int) -> Iterator[Permutation]:
    """All permutations of the given degree in lexicographic one-line order."""
    for images in _itertools_permutations(range(1, degree + 1)):
        yield Permutation(images)


# ---------------------------------------------------------------- parsing

_ONE_LINE = re.compile(r"\s*\d+\s*(,\s*\d+\s*)*")


def parse_permutation(text: str, degree_hint: int | None = None) -> Permutation:
    """Parse one-line (``"3,4,2,1"``) or cycle (``"(1 3)(2 4 5)"``) notation.

    Symbols missing from cycle notation are fixed points; the degree is the
    larger of ``degree_hint`` and the largest symbol mentioned.
    """
    stripped = text.strip()
    if not stripped:
        raise PermutationParseError("empty permutation text", 0)
    if "(" in stripped or ")" in stripped:
        return _parse_cycles(text, degree_hint)
    return _parse_one_line(text, degree_hint)


def _parse_one_line(text: str, degree_hint: int | None) -> Permutation:
    if not _ONE_LINE.fullmatch(text):
        bad = next((k for k, c in enumerate(text) if not (c.isdigit() or c in ", \t\n")), None)
        if bad is None:
            bad = max(text.rfind(","), 0)
        raise PermutationParseError("malformed one-line permutation", bad)
    values: list[int] = []
    seen: dict[int, int] = {}
    for match in re.finditer(r"\d+", text):
        v = int(match.group())
        if v in seen:
            raise PermutationParseError(f"repeated symbol {v}", match.start())
        seen[v] = match.start()
        values.append(v)
    degree = len(values)
    for v, pos in seen.items():
        if not 1 <= v <= degree:
            raise PermutationParseError(f"symbol {v} out of range 1..{degree}", pos)
    if degree_hint is not None and degree_hint != degree:
        if degree_hint < degree:
            raise PermutationParseError(
                f"degree hint {degree_hint} smaller than {degree} listed images", 0)
        values.extend(range(degree + 1, degree_hint + 1))
    return Permutation(tuple(values))


def _parse_cycles(text: str, degree_hint: int | None) -> Permutation:
    cycles: list[list[int]] = []
    seen: set[int] = set()
    k = 0
    while k < len(text):
        c = text[k]
        if c.isspace():
            k += 1
            continue
        if c != "(":
            raise PermutationParseError(f"expected '(' but found {c!r}", k)
        close = text.find(")", k)
        if close < 0:
            raise PermutationParseError("unclosed cycle", k)
        inner = text[k + 1:close]
        cycle: list[int] = []
        for match in re.finditer(r"\S+", inner):
            token, pos = match.group(), k + 1 + match.start()
            if not token.isdigit():
                raise PermutationParseError(f"bad cycle symbol {token!r}", pos)
            v = int(token)
            if v < 1:
                raise PermutationParseError(f"symbol {v} out of range", pos)
            if v in seen:
                raise PermutationParseError(f"repeated symbol {v}", pos)
            seen.add(v)
            cycle.append(v)
        # "()" is the identity
        cycles.append(cycle)
        k = close + 1
    degree = max([*seen, degree_hint or 1])
    images = list(range(1, degree + 1))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b
    return Permutation(tuple(images))


def format_one_line(p: Permutation) -> str:
    return ",".join(map(str, p.images))


def format_cycles(p: Permutation) -> str:
    """Cycle notation without fixed points; the identity formats as ``"()"``."""
    seen: set[int] = set()
    parts = []
    for start in range(1, p.degree + 1):
        if start in seen or p(start) == start:
            continue
        cycle = [start]
        seen.add(start)
        x = p(start)
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p(x)
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


# ------------------------------------------------------------ arithmetic

def compose(p: Permutation, q: Permutation) -> Permutation:
    """``x -> p(q(x))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[x - 1] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for k, v in enumerate(p.images, 1):
        inv[v - 1] = k
    return Permutation(tuple(inv))


def inversions_of(images: Sequence[int]) -> int:
    n = len(images)
    return sum(1 for a in range(n) for b in range(a + 1, n) if images[a] > images[b])


def length(p: Permutation) -> int:
    """Number of inversion pairs."""
    return inversions_of(p.images)


def non_fixed_bounds(p: Permutation) -> NonFixedBounds:
    moved = [k for k, v in enumerate(p.images, 1) if k != v]
    if not moved:
        return NonFixedBounds(present=False)
    return NonFixedBounds(present=True, m=moved[0], M_plus_1=moved[-1])


def letter_in_support(p: Permutation, i: int) -> bool:
    """Whether the reduced words of ``p`` use the letter ``i``."""
    if not 1 <= i < p.degree:
        raise ValueError(f"generator index {i} out of range 1..{p.degree - 1}")
    return set(p.images[:i]) != set(range(1, i + 1))


def apply_word(word: Sequence[int], degree: int) -> Permutation:
    """Evaluate ``s_i1 s_i2 ... s_il``."""
    images = list(range(1, degree + 1))
    # right multiplication by s_i swaps positions i and i+1 of the one-line form
    for i in word:
        if not 1 <= i < degree:
            raise ValueError(f"letter {i} out of range 1..{degree - 1}")
        images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))
