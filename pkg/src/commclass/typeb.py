"""Type B: signed permutations, their reduced words and atoms.

Generators are ``s_0`` (negate the entry at position 1) and ``s_1 .. s_{n-1}``
(adjacent swaps), acting on the right of the window ``(w(1), ..., w(n))``.
``s_0 s_1`` has order 4, ``s_i s_{i+1}`` order 3 for ``i >= 1``, and letters at
distance at least 2 commute, so the commutation rule is the same as type A.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .report import VerificationReport, stopwatch
from .words import DEFAULT_CEILING, ResourceLimitError, Word, commutation_moves

__all__ = [
    "SignedPermutation", "parse_signed", "b_identity", "b_longest", "b_apply_word",
    "b_length", "b_reduced_words", "b_count_reduced_words", "b_atoms", "b_braid_moves",
    "all_signed_permutations", "b_scan", "bfs_lengths", "DEFAULT_B_MAX_N",
]

DEFAULT_B_MAX_N = 4


@dataclass(frozen=True, order=True)
class SignedPermutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(abs(x) for x in images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a signed permutation: {images}")

    @property
    def rank(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return ",".join(map(str, self.images))


def parse_signed(text: str) -> SignedPermutation:
    try:
        return SignedPermutation(tuple(int(t) for t in text.split(",")))
    except ValueError as exc:
        raise ValueError(f"malformed signed permutation {text!r}: {exc}") from None


def b_identity(n: int) -> SignedPermutation:
    return SignedPermutation(tuple(range(1, n + 1)))


def b_longest(n: int) -> SignedPermutation:
    return SignedPermutation(tuple(range(-1, -n - 1, -1)))


def _act(images: list[int], letter: int) -> None:
    if letter == 0:
        images[0] = -images[0]
    else:
        images[letter - 1], images[letter] = images[letter], images[letter - 1]


def b_apply_word(word: Sequence[int], n: int) -> SignedPermutation:
    images = list(range(1, n + 1))
    for letter in word:
        if not 0 <= letter < n:
            raise ValueError(f"letter {letter} out of range 0..{n - 1}")
        _act(images, letter)
    return SignedPermutation(tuple(images))


def _length(images: Sequence[int]) -> int:
    n = len(images)
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if images[a] > images[b])
    return inv - sum(x for x in images if x < 0)


def b_length(p: SignedPermutation) -> int:
    """Inversions of the window plus the sum of the absolute values of negative entries."""
    return _length(p.images)


def _descents(images: tuple[int, ...]) -> Iterator[tuple[int, tuple[int, ...]]]:
    ell = _length(images)
    for letter in range(len(images)):
        nxt = list(images)
        _act(nxt, letter)
        nxt = tuple(nxt)
        if _length(nxt) < ell:
            yield letter, nxt


@lru_cache(maxsize=None)
def _count(images: tuple[int, ...]) -> int:
    return sum(_count(nxt) for _, nxt in _descents(images)) or 1


def b_count_reduced_words(p: SignedPermutation) -> int:
    return _count(p.images)


def b_reduced_words(p: SignedPermutation, ceiling: int = DEFAULT_CEILING) -> list[Word]:
    total = b_count_reduced_words(p)
    if total > ceiling:
        raise ResourceLimitError(f"reduced words of {p}", total, ceiling)
    memo: dict[tuple[int, ...], list[Word]] = {}

    def build(images):
        if images not in memo:
            out = [u + (letter,) for letter, nxt in _descents(images) for u in build(nxt)]
            memo[images] = out or [()]
        return memo[images]

    return sorted(build(p.images))


def _consecutive_reduced_words(p: SignedPermutation) -> list[Word]:
    """Reduced words whose adjacent letters differ by exactly one (no commutation)."""
    out: list[Word] = []

    def walk(images, suffix):
        if _length(images) == 0:
            out.append(suffix)
            return
        for letter, nxt in _descents(images):
            if not suffix or abs(letter - suffix[0]) == 1:
                walk(nxt, (letter,) + suffix)

    if b_length(p):
        walk(p.images, ())
    return sorted(out)


def b_atoms(p: SignedPermutation, ceiling: int = DEFAULT_CEILING) -> list[Word]:
    """Reduced words of ``p`` with no commutation available; empty for the identity."""
    if b_length(p) == 0:
        return []
    return [w for w in b_reduced_words(p, ceiling) if not commutation_moves(w)]


def b_braid_moves(word: Sequence[int]) -> set[Word]:
    w = tuple(word)
    out = set()
    for k in range(len(w) - 2):
        a, b, c = w[k:k + 3]
        if a == c and abs(a - b) == 1 and min(a, b) >= 1:
            out.add(w[:k] + (b, a, b) + w[k + 3:])
    for k in range(len(w) - 3):
        if w[k:k + 4] in ((0, 1, 0, 1), (1, 0, 1, 0)):
            a, b = w[k], w[k + 1]
            out.add(w[:k] + (b, a, b, a) + w[k + 4:])
    return out


def all_signed_permutations(n: int) -> Iterator[SignedPermutation]:
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * x for s, x in zip(signs, perm)))


def bfs_lengths(n: int) -> dict[SignedPermutation, int]:
    """Word-length of every element by breadth-first search from the identity."""
    start = b_identity(n).images
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for letter in range(n):
            nxt = list(cur)
            _act(nxt, letter)
            nxt = tuple(nxt)
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return {SignedPermutation(k): v for k, v in dist.items()}


def b_scan(n: int, max_n: int = DEFAULT_B_MAX_N) -> VerificationReport:
    """Largest number of atoms over all of ``B_n``; holds iff at most four."""
    with stopwatch() as elapsed:
        if n > max_n:
            return VerificationReport("b_scan", f"n={n}", "resource-limited",
                                      totals={"budget": max_n}, elapsed_ms=elapsed())
        hist: dict[int, int] = {}
        best = None
        for p in all_signed_permutations(n):
            k = len(_consecutive_reduced_words(p)) if b_length(p) else 0
            hist[k] = hist.get(k, 0) + 1
            if best is None or k > best[0]:
                best = (k, p)
        top = best[0]
        totals = {"elements": sum(hist.values()), "max_atoms": top,
                  "histogram": [hist.get(k, 0) for k in range(top + 1)],
                  "longest_atoms": len(_consecutive_reduced_words(b_longest(n)))}
        verdict = "holds" if top <= 4 else "counterexample"
        witness = None if verdict == "holds" else {"element": str(best[1]), "atoms": top}
        return VerificationReport("b_scan", f"n={n}", verdict, witness, totals, elapsed())
