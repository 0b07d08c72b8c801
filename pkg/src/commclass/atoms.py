"""One-element commutation classes ("atoms") of permutations.

Three routes to ``A(p)``:

* ``atoms_bruteforce`` filters the full set of reduced words;
* ``atoms_characterized`` walks consecutive-integer words free of
  repeated/symmetric segment factors and keeps those evaluating to ``p``;
* ``enumerate_atoms_all`` runs the same walk over every letter in ``[1, n]``
  once and buckets the words by permutation, giving every ``A(p)`` in
  ``S_{n+1}`` at once.

The walk relies on prefix monotonicity: a word whose prefix has a forbidden
factor has one too, so a bad prefix is never extended.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Literal, Sequence

from .diagrams import is_oscillation, spikes, witness_ending_at
from .perm import (Permutation, apply_word, compose, inverse, length,
                   non_fixed_bounds, parse_permutation)
from .words import (DEFAULT_CEILING, Word, commutation_moves, format_word,
                    parse_word, reduced_words)

__all__ = [
    "AtomStructure", "TheoremViolation", "PreconditionError", "DEFAULT_MAX_N",
    "atoms_bruteforce", "atoms_characterized", "witness_free_words",
    "enumerate_atoms_all", "atom_histogram", "is_atom_of", "structure_of",
    "phi_reduction", "gamma_permutation", "oscillation_dichotomy",
    "write_scan", "load_scan", "run_scan", "SCAN_FORMAT_VERSION",
]

DEFAULT_MAX_N = 9


class TheoremViolation(AssertionError):
    """A computed object contradicts a proven statement; always a bug."""


class PreconditionError(ValueError):
    pass


def is_atom_of(p: Permutation, word: Sequence[int]) -> bool:
    """Definition check: nonempty reduced word of ``p`` with no commutation available."""
    return (len(word) > 0 and len(word) == length(p)
            and apply_word(word, p.degree) == p and not commutation_moves(word))


def atoms_bruteforce(p: Permutation, ceiling: int = DEFAULT_CEILING) -> list[Word]:
    """Reduced words of ``p`` admitting no commutation (identity gives ``[]``)."""
    if p.is_identity():
        return []
    return [w for w in reduced_words(p, ceiling) if not commutation_moves(w)]


def witness_free_words(lo: int, hi: int, degree: int, roots: Sequence[int] | None = None,
                       max_len: int | None = None) -> Iterator[tuple[Word, tuple[int, ...]]]:
    """Yield ``(word, images)`` for every nonempty consecutive word over
    ``[lo, hi]`` with no repeated/symmetric segment factor.

    Depth first; from each root letter, the smaller neighbour is tried first.
    ``images`` is the one-line form of the word's permutation of ``degree``.
    """
    if max_len is None:
        span = hi - lo + 1
        max_len = span * (span + 1) // 2
    word: list[int] = []
    flags: list[bool] = []
    images = list(range(1, degree + 1))

    def extend() -> Iterator[tuple[Word, tuple[int, ...]]]:
        q = len(word)
        if q >= max_len:
            return
        last = word[-1]
        for y in (last - 1, last + 1):
            if not lo <= y <= hi:
                continue
            old = flags[-1]
            if q >= 2:
                flags[-1] = word[-2] == y
            word.append(y)
            flags.append(True)
            if not witness_ending_at(word, flags, q):
                images[y - 1], images[y] = images[y], images[y - 1]
                yield tuple(word), tuple(images)
                yield from extend()
                images[y - 1], images[y] = images[y], images[y - 1]
            word.pop()
            flags.pop()
            flags[-1] = old

    for root in (range(lo, hi + 1) if roots is None else roots):
        word.append(root)
        flags.append(True)
        images[root - 1], images[root] = images[root], images[root - 1]
        yield (root,), tuple(images)
        yield from extend()
        images[root - 1], images[root] = images[root], images[root - 1]
        word.pop()
        flags.pop()


def atoms_characterized(p: Permutation) -> list[Word]:
    """``A(p)`` without enumerating reduced words.

    Only letters between the extreme non-fixed points can occur, and only
    words of length ``length(p)`` can be reduced words of ``p``.
    """
    bounds = non_fixed_bounds(p)
    if not bounds.present:
        return []
    target, ell = p.images, length(p)
    found = [w for w, images in witness_free_words(bounds.m, bounds.M, p.degree, max_len=ell)
             if len(w) == ell and images == target]
    return sorted(found)


def _scan_root(args: tuple[int, int]) -> dict[tuple[int, ...], list[Word]]:
    n, root = args
    buckets: dict[tuple[int, ...], list[Word]] = {}
    for w, images in witness_free_words(1, n, n + 1, roots=[root]):
        buckets.setdefault(images, []).append(w)
    return buckets


def _merge(parts) -> dict[Permutation, tuple[Word, ...]]:
    merged: dict[tuple[int, ...], list[Word]] = {}
    for part in parts:
        for images, ws in part.items():
            merged.setdefault(images, []).extend(ws)
    return {Permutation(k): tuple(sorted(merged[k])) for k in sorted(merged)}


def default_workers() -> int:
    env = os.environ.get("COMMCLASS_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_atoms_all(n: int, workers: int = 1, max_n: int = DEFAULT_MAX_N
                        ) -> dict[Permutation, tuple[Word, ...]]:
    """Atom sets of every permutation of ``S_{n+1}`` that has any.

    Permutations without atoms are absent.  Output does not depend on
    ``workers``: shards are the root letters and are merged in sorted order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise PreconditionError(f"n={n} exceeds the configured maximum {max_n}")
    tasks = [(n, root) for root in range(1, n + 1)]
    if workers <= 1:
        parts = [_scan_root(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_root, tasks))
    return _merge(parts)


def atom_histogram(atom_map: dict[Permutation, tuple[Word, ...]], n: int) -> list[int]:
    """Counts of permutations of ``S_{n+1}`` with 0, 1, 2, 3, 4, ... atoms (at least 5 columns)."""
    sizes = [len(ws) for ws in atom_map.values()]
    hist = [0] * max(5, max(sizes, default=0) + 1)
    for s in sizes:
        hist[s] += 1
    hist[0] = math.factorial(n + 1) - len(sizes)
    return hist


# ------------------------------------------------------------ structure

@dataclass(frozen=True)
class AtomStructure:
    """Where the segment between ``m`` and ``M`` sits in an atom.

    ``seg_up``: the atom contains the segment m..M ascending (then p(M+1) = m);
    ``seg_down``: it contains M..m descending (then p(m) = M+1).  For a
    non-oscillating atom, ``j`` and ``i`` are the spikes just before and just
    after that segment.
    """
    case: Literal["seg_up", "seg_down"]
    m: int
    M: int
    oscillating: bool
    i: int | None = None
    j: int | None = None
    segment_index: int = 0  # index into the spike sequence where the segment starts


def structure_of(p: Permutation, word: Sequence[int]) -> AtomStructure:
    if not is_atom_of(p, word):
        raise PreconditionError(f"{format_word(word)} is not an atom of {p}")
    bounds = non_fixed_bounds(p)
    m, M = bounds.m, bounds.M
    pv = spikes(word).pv
    oscillating = is_oscillation(word)
    if len(pv) == 1:
        return AtomStructure("seg_up", m, M, oscillating, segment_index=0)
    k = next((k for k in range(len(pv) - 1) if {pv[k], pv[k + 1]} == {m, M}), None)
    if k is None:
        raise TheoremViolation(f"atom {format_word(word)} of {p} lacks a segment between {m} and {M}")
    case = "seg_up" if pv[k] == m else "seg_down"
    i = j = None
    if not oscillating and 0 < k and k + 2 < len(pv):
        if case == "seg_up":
            j, i = pv[k - 1], pv[k + 2]
        else:
            i, j = pv[k - 1], pv[k + 2]
    return AtomStructure(case, m, M, oscillating, i=i, j=j, segment_index=k)


def _transposition(a: int, b: int, degree: int) -> Permutation:
    images = list(range(1, degree + 1))
    images[a - 1], images[b - 1] = b, a
    return Permutation(tuple(images))


def gamma_permutation(i: int, m: int, M: int, degree: int) -> Permutation:
    """``(i m)(i M+1)``, the permutation of the factor removed by ``phi_reduction``."""
    return compose(_transposition(i, m, degree), _transposition(i, M + 1, degree))


def phi_reduction(p: Permutation, word: Sequence[int]) -> tuple[Word, Permutation]:
    """Cut the factor ``(i-1) ... m ... M ... i`` out of a non-oscillating atom.

    The atom must contain the ascending segment ``m..M`` with ``j >= i``.
    Returns the shortened atom and its permutation ``p * gamma^-1``.
    """
    st = structure_of(p, word)
    if st.oscillating:
        raise PreconditionError("phi is defined on non-oscillating atoms only")
    if st.case != "seg_up":
        raise PreconditionError("phi needs the ascending m..M segment; reverse the word first")
    if st.j < st.i:
        raise PreconditionError(f"phi needs j >= i, got j={st.j}, i={st.i}")
    diagram = spikes(word).spikes
    start = diagram[st.segment_index - 1].position - 1  # the pinnacle j
    stop = diagram[st.segment_index + 2].position        # one past the vale i
    reduced = tuple(word[:start]) + tuple(range(st.j, st.i - 1, -1)) + tuple(word[stop:])
    gamma = gamma_permutation(st.i, st.m, st.M, p.degree)
    return reduced, compose(p, inverse(gamma))


def oscillation_dichotomy(p: Permutation, atoms: Sequence[Word] | None = None
                          ) -> Literal["all", "none", "empty"]:
    if atoms is None:
        atoms = atoms_characterized(p)
    if not atoms:
        return "empty"
    flags = {is_oscillation(a) for a in atoms}
    if flags == {True}:
        return "all"
    if flags == {False}:
        return "none"
    raise TheoremViolation(f"{p} mixes oscillating and non-oscillating atoms: {list(atoms)}")


# ------------------------------------------------------------ scan files

SCAN_FORMAT_VERSION = 1
_HEADER = "# commclass atom-scan v{version} n={n}"


def write_scan(path: str | Path, n: int) -> None:
    Path(path).write_text(_HEADER.format(version=SCAN_FORMAT_VERSION, n=n) + "\n")


def _append_shard(path: Path, root: int, buckets: dict[tuple[int, ...], list[Word]]) -> None:
    lines = [f"# shard {root}"]
    for images in sorted(buckets):
        words = " ".join(format_word(w) for w in sorted(buckets[images]))
        lines.append(f"{','.join(map(str, images))}\t{words}")
    lines.append(f"# end shard {root}")
    with path.open("a") as fh:
        fh.write("\n".join(lines) + "\n")


def load_scan(path: str | Path) -> tuple[int, dict[int, dict[tuple[int, ...], list[Word]]]]:
    """Read a scan file; returns ``n`` and the completed shards (partial ones dropped)."""
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("# commclass atom-scan v"):
        raise ValueError(f"{path}: not an atom-scan file")
    head = text[0].split()
    version = int(head[3][1:])
    if version != SCAN_FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported scan format version {version}")
    n = int(head[4].split("=")[1])
    done: dict[int, dict[tuple[int, ...], list[Word]]] = {}
    current: dict[tuple[int, ...], list[Word]] | None = None
    root = None
    for line in text[1:]:
        if line.startswith("# shard "):
            root, current = int(line.split()[2]), {}
        elif line.startswith("# end shard "):
            if current is not None and int(line.split()[3]) == root:
                done[root] = current
            current = None
        elif line and current is not None:
            perm_text, words_text = line.split("\t")
            key = parse_permutation(perm_text).images
            current[key] = [parse_word(w) for w in words_text.split()]
    return n, done


def run_scan(n: int, path: str | Path, workers: int = 1,
             max_n: int = DEFAULT_MAX_N) -> dict[Permutation, tuple[Word, ...]]:
    """Resumable ``enumerate_atoms_all`` persisted shard by shard to ``path``."""
    if n > max_n:
        raise PreconditionError(f"n={n} exceeds the configured maximum {max_n}")
    path = Path(path)
    if path.exists():
        file_n, done = load_scan(path)
        if file_n != n:
            raise ValueError(f"{path} holds a scan for n={file_n}, not n={n}")
    else:
        write_scan(path, n)
        done = {}
    missing = [(n, root) for root in range(1, n + 1) if root not in done]
    if workers <= 1:
        results = map(_scan_root, missing)
        for (_, root), buckets in zip(missing, results):
            _append_shard(path, root, buckets)
            done[root] = buckets
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (_, root), buckets in zip(missing, pool.map(_scan_root, missing)):
                _append_shard(path, root, buckets)
                done[root] = buckets
    return _merge(done[r] for r in sorted(done))
