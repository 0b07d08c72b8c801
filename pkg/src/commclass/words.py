"""Reduced words, commutation/braid moves and commutation classes.

Words are plain tuples of generator indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, apply_word, length

__all__ = [
    "Word", "ClassPartition", "ResourceLimitError", "DEFAULT_CEILING",
    "parse_word", "format_word", "is_reduced", "reduced_words", "iter_reduced_words",
    "count_reduced_words", "commutation_moves", "braid_moves", "commutation_class",
    "class_representative", "commutation_classes", "shift", "shift_permutation",
    "reverse", "commutes",
]

Word = tuple[int, ...]

DEFAULT_CEILING = 10**7


class ResourceLimitError(RuntimeError):
    """Refusal to materialize more than ``ceiling`` objects."""

    def __init__(self, what: str, count: int, ceiling: int):
        super().__init__(f"{what}: {count} exceeds the ceiling {ceiling}")
        self.count = count
        self.ceiling = ceiling


def parse_word(text: str) -> Word:
    """Digit string (``"21232"``) or comma separated (``"10,9,10"``); ``""`` is empty."""
    text = text.strip()
    if not text or text in ("-", "e", "()"):
        return ()
    if "," in text:
        parts = [t.strip() for t in text.split(",")]
    else:
        parts = list(text)
    if not all(t.isdigit() for t in parts):
        raise ValueError(f"malformed word {text!r}")
    return tuple(int(t) for t in parts)


def format_word(word: Sequence[int]) -> str:
    if any(x > 9 for x in word):
        return ",".join(map(str, word))
    return "".join(map(str, word))


def commutes(x: int, y: int) -> bool:
    return abs(x - y) >= 2


def is_reduced(word: Sequence[int], degree: int) -> bool:
    return length(apply_word(word, degree)) == len(word)


@lru_cache(maxsize=None)
def _count(images: tuple[int, ...]) -> int:
    total = 0
    for k in range(len(images) - 1):
        if images[k] > images[k + 1]:
            swapped = images[:k] + (images[k + 1], images[k]) + images[k + 2:]
            total += _count(swapped)
    return total or 1


def count_reduced_words(p: Permutation) -> int:
    """``|R(p)|`` by the memoized descent recursion; 1 for the identity."""
    return _count(p.images)


def reduced_words(p: Permutation, ceiling: int = DEFAULT_CEILING) -> list[Word]:
    """All reduced words of ``p``, sorted lexicographically.

    Built right to left: a reduced word ends in ``i`` exactly when ``p(i) > p(i+1)``,
    and the rest is a reduced word of ``p s_i``.
    """
    total = count_reduced_words(p)
    if total > ceiling:
        raise ResourceLimitError(f"reduced words of {p}", total, ceiling)
    memo: dict[tuple[int, ...], list[Word]] = {}

    def build(images: tuple[int, ...]) -> list[Word]:
        if images in memo:
            return memo[images]
        out: list[Word] = []
        for k in range(len(images) - 1):
            if images[k] > images[k + 1]:
                swapped = images[:k] + (images[k + 1], images[k]) + images[k + 2:]
                letter = (k + 1,)
                out.extend(u + letter for u in build(swapped))
        if not out:
            out.append(())
        memo[images] = out
        return out

    return sorted(build(p.images))


def iter_reduced_words(p: Permutation) -> Iterator[Word]:
    """Lazily yield the reduced words of ``p`` in lexicographic order."""
    inv = [0] * p.degree
    for k, v in enumerate(p.images):
        inv[v - 1] = k

    # left descents of p: s_i p is shorter iff i+1 stands left of i in p
    def walk(prefix: list[int], positions: list[int], remaining: int):
        if remaining == 0:
            yield tuple(prefix)
            return
        for i in range(len(positions) - 1):
            if positions[i] > positions[i + 1]:
                positions[i], positions[i + 1] = positions[i + 1], positions[i]
                prefix.append(i + 1)
                yield from walk(prefix, positions, remaining - 1)
                prefix.pop()
                positions[i], positions[i + 1] = positions[i + 1], positions[i]

    yield from walk([], inv, length(p))


def commutation_moves(word: Sequence[int]) -> set[Word]:
    w = tuple(word)
    out = set()
    for k in range(len(w) - 1):
        if commutes(w[k], w[k + 1]):
            out.add(w[:k] + (w[k + 1], w[k]) + w[k + 2:])
    return out


def braid_moves(word: Sequence[int]) -> set[Word]:
    w = tuple(word)
    out = set()
    for k in range(len(w) - 2):
        a, b, c = w[k:k + 3]
        if a == c and abs(a - b) == 1:
            out.add(w[:k] + (b, a, b) + w[k + 3:])
    return out


def commutation_class(word: Sequence[int], cap: int | None = None) -> set[Word]:
    """Connected component of ``word`` under commutation moves (BFS).

    With ``cap`` the search stops once that many words are known.
    """
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in commutation_moves(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                if cap is not None and len(seen) >= cap:
                    return seen
                queue.append(nxt)
    return seen


def class_representative(word: Sequence[int]) -> Word:
    """Lexicographically least word commutation-equivalent to ``word``.

    Greedy: repeatedly pull to the front the smallest letter that commutes
    with everything before it.
    """
    rest = list(word)
    out = []
    while rest:
        blocked: set[int] = set()
        best = -1
        for k, x in enumerate(rest):
            if x not in blocked and (best < 0 or x < rest[best]):
                best = k
            blocked.update((x - 1, x, x + 1))
        out.append(rest.pop(best))
    return tuple(out)


@dataclass(frozen=True)
class ClassPartition:
    """``C(p)``: commutation classes, each sorted, ordered by representative."""
    source: Permutation
    classes: tuple[tuple[Word, ...], ...]

    @property
    def representatives(self) -> list[Word]:
        return [c[0] for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def singletons(self) -> list[Word]:
        return [c[0] for c in self.classes if len(c) == 1]


def group_into_classes(words: Iterable[Word]) -> tuple[tuple[Word, ...], ...]:
    groups: dict[Word, list[Word]] = {}
    for w in words:
        groups.setdefault(class_representative(w), []).append(w)
    return tuple(tuple(sorted(groups[key])) for key in sorted(groups))


def commutation_classes(p: Permutation, ceiling: int = DEFAULT_CEILING) -> ClassPartition:
    return ClassPartition(p, group_into_classes(reduced_words(p, ceiling)))


def shift(word: Sequence[int], k: int) -> Word:
    return tuple(x + k for x in word)


def shift_permutation(p: Permutation, k: int) -> Permutation:
    """``(1, ..., k, p(1)+k, ..., p(n+1)+k)``; ``shift(a, k)`` is a reduced word of it."""
    return Permutation(tuple(range(1, k + 1)) + tuple(v + k for v in p.images))


def reverse(word: Sequence[int]) -> Word:
    return tuple(reversed(word))
