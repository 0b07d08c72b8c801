"""Exhaustive checks of the atom bound, the class inequality and the structural statements.

Every check returns a ``VerificationReport``; a counterexample always carries
a witness that the primitive operations can re-check.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .atoms import (DEFAULT_MAX_N, PreconditionError, atom_histogram, atoms_characterized,
                    enumerate_atoms_all, is_atom_of, phi_reduction, structure_of)
from .diagrams import is_atom_word, is_oscillation, spikes, tenner_conditions
from .perm import (Permutation, all_permutations, format_one_line, inverse, length,
                   longest, non_fixed_bounds)
from .report import VerificationReport, stopwatch
from .words import (DEFAULT_CEILING, ResourceLimitError, Word, class_representative,
                    commutation_class, commutation_moves, format_word,
                    group_into_classes, is_reduced, iter_reduced_words, reduced_words, reverse)

__all__ = [
    "DEFAULT_CLASS_MAX_N", "REFERENCE_TABLE", "table_atoms", "check_bound", "check_spectrum",
    "check_class_inequality", "check_big_class", "check_big_class_all", "check_equivalence",
    "check_tenner_insufficiency", "check_tenner_necessity", "check_structure",
    "consecutive_words", "format_table",
]

DEFAULT_CLASS_MAX_N = 5

# Known counts, n -> permutations with |A| = 0..4.  The row keyed 8 sums to
# 10!, so it really describes S_10 (n=9); computed S_9 does not match it.
REFERENCE_TABLE = {
    1: (1, 1, 0, 0, 0),
    2: (1, 4, 1, 0, 0),
    3: (5, 15, 3, 0, 1),
    4: (53, 52, 12, 0, 3),
    5: (496, 181, 34, 0, 9),
    6: (4326, 594, 97, 0, 23),
    7: (38124, 1875, 261, 0, 60),
    8: (3609559, 16937, 1890, 0, 414),
}


def _atom_maps(n_max: int, workers: int, max_n: int, cache=None):
    cache = {} if cache is None else cache
    for n in range(1, n_max + 1):
        if n not in cache:
            cache[n] = enumerate_atoms_all(n, workers=workers, max_n=max_n)
    return cache


def table_atoms(n_max: int, workers: int = 1, max_n: int = DEFAULT_MAX_N,
                cache: dict | None = None) -> list[tuple[int, list[int]]]:
    """Rows ``(n, [#|A|=0, #|A|=1, ..., #|A|=4])`` for ``n = 1..n_max``."""
    if n_max > max_n:
        raise PreconditionError(f"n_max={n_max} exceeds the configured maximum {max_n}")
    maps = _atom_maps(n_max, workers, max_n, cache)
    rows = []
    for n in range(1, n_max + 1):
        hist = atom_histogram(maps[n], n)
        if sum(hist) != math.factorial(n + 1):
            raise AssertionError(f"row {n} sums to {sum(hist)}, not {(n + 1)}!")
        rows.append((n, hist))
    return rows


def format_table(rows: Sequence[tuple[int, list[int]]], fmt: str = "md") -> str:
    width = max(5, max(len(h) for _, h in rows))
    cols = [f"a{k}" for k in range(width)]
    if fmt == "csv":
        lines = ["n," + ",".join(cols)]
        lines += [f"{n}," + ",".join(map(str, h + [0] * (width - len(h)))) for n, h in rows]
    elif fmt == "md":
        lines = ["| n | " + " | ".join(str(k) for k in range(width)) + " |",
                 "|---" * (width + 1) + "|"]
        lines += [f"| {n} | " + " | ".join(map(str, h + [0] * (width - len(h)))) + " |"
                  for n, h in rows]
    else:
        lines = [f"n={n} " + " ".join(f"{c}={v}" for c, v in zip(cols, h)) for n, h in rows]
    return "\n".join(lines) + "\n"


def check_bound(n: int, workers: int = 1, max_n: int = DEFAULT_MAX_N,
                atom_map=None) -> VerificationReport:
    """At most four atoms for every permutation of ``S_{n+1}``."""
    with stopwatch() as elapsed:
        if n > max_n:
            return VerificationReport("bound", f"n={n}", "resource-limited",
                                      totals={"budget": max_n}, elapsed_ms=elapsed())
        if atom_map is None:
            atom_map = enumerate_atoms_all(n, workers=workers, max_n=max_n)
        hist = atom_histogram(atom_map, n)
        top = max(k for k, c in enumerate(hist) if c)
        totals = {"max": top, "histogram": hist,
                  "longest_atoms": len(atom_map.get(longest(n + 1), ()))}
        if top <= 4:
            return VerificationReport("bound", f"n={n}", "holds", None, totals, elapsed())
        p = next(p for p, ws in atom_map.items() if len(ws) == top)
        witness = {"permutation": format_one_line(p), "atoms": [format_word(w) for w in atom_map[p]]}
        return VerificationReport("bound", f"n={n}", "counterexample", witness, totals, elapsed())


def check_spectrum(n: int, workers: int = 1, max_n: int = DEFAULT_MAX_N,
                   atom_map=None) -> VerificationReport:
    """No permutation of ``S_{n+1}`` has exactly three atoms."""
    with stopwatch() as elapsed:
        if n > max_n:
            return VerificationReport("spectrum", f"n={n}", "resource-limited",
                                      totals={"budget": max_n}, elapsed_ms=elapsed())
        if atom_map is None:
            atom_map = enumerate_atoms_all(n, workers=workers, max_n=max_n)
        hist = atom_histogram(atom_map, n)
        sizes = sorted(k for k, c in enumerate(hist) if c)
        totals = {"histogram": hist, "sizes": sizes}
        three = [p for p, ws in atom_map.items() if len(ws) == 3]
        if not three:
            return VerificationReport("spectrum", f"n={n}", "holds", None, totals, elapsed())
        p = three[0]
        witness = {"permutation": format_one_line(p), "atoms": [format_word(w) for w in atom_map[p]],
                   "note": "conjecture counterexample"}
        return VerificationReport("spectrum", f"n={n}", "counterexample", witness, totals, elapsed())


def check_class_inequality(n: int, ceiling: int = DEFAULT_CEILING,
                           max_n: int = DEFAULT_CLASS_MAX_N) -> VerificationReport:
    """``|C| <= |R|/2 + 1`` over ``S_{n+1}``, plus ``|C| <= (|R| + |A|)/2`` and,
    when there are no atoms, ``|C| <= |R|/2``."""
    with stopwatch() as elapsed:
        name, rng = "class_inequality", f"n={n}"
        if n > max_n:
            return VerificationReport(name, rng, "resource-limited",
                                      totals={"budget": max_n}, elapsed_ms=elapsed())
        checked = equalities = total_words = 0
        for p in all_permutations(n + 1):
            try:
                words = reduced_words(p, ceiling)
            except ResourceLimitError as exc:
                return VerificationReport(name, rng, "resource-limited",
                                          totals={"checked": checked, "refused": format_one_line(p),
                                                  "count": exc.count}, elapsed_ms=elapsed())
            classes = group_into_classes(words)
            r, c = len(words), len(classes)
            a = sum(1 for cl in classes if len(cl) == 1) if not p.is_identity() else 0
            problems = []
            if not 2 * c <= r + 2:
                problems.append("C <= R/2 + 1")
            if not 2 * c <= r + a and not p.is_identity():
                problems.append("C <= (R + A)/2")
            if a == 0 and not p.is_identity() and not 2 * c <= r:
                problems.append("C <= R/2 without atoms")
            if problems:
                witness = {"permutation": format_one_line(p), "R": r, "C": c, "A": a,
                           "failed": problems}
                return VerificationReport(name, rng, "counterexample", witness,
                                          {"checked": checked}, elapsed())
            checked += 1
            total_words += r
            equalities += 2 * c == r + 2
        totals = {"permutations": checked, "reduced_words": total_words, "equality_cases": equalities}
        return VerificationReport(name, rng, "holds", None, totals, elapsed())


def _qualifies_for_big_class(p: Permutation, atoms: Sequence[Word]) -> bool:
    b = non_fixed_bounds(p)
    if not b.present or not atoms or b.M - b.m < 4:
        return False
    up, down = tuple(range(b.m, b.M + 1)), tuple(range(b.M, b.m - 1, -1))
    return up not in atoms and down not in atoms


def check_big_class(p: Permutation, atoms: Sequence[Word] | None = None) -> VerificationReport:
    """Some commutation class of ``p`` has at least four words.

    Requires atoms, neither monotone run ``m..M`` / ``M..m`` among them, and ``M - m >= 4``.
    """
    with stopwatch() as elapsed:
        if atoms is None:
            atoms = atoms_characterized(p)
        if not _qualifies_for_big_class(p, atoms):
            raise PreconditionError(f"{p} does not satisfy the big-class hypotheses")
        seen: set[Word] = set()
        for w in iter_reduced_words(p):
            rep = class_representative(w)
            if rep in seen:
                continue
            seen.add(rep)
            size = len(commutation_class(w, cap=4))
            if size >= 4:
                return VerificationReport("big_class", format_one_line(p), "holds",
                                          {"representative": format_word(rep)},
                                          {"classes_examined": len(seen)}, elapsed())
        return VerificationReport("big_class", format_one_line(p), "counterexample",
                                  {"permutation": format_one_line(p)},
                                  {"classes_examined": len(seen)}, elapsed())


def check_big_class_all(n_max: int, workers: int = 1, cache: dict | None = None) -> VerificationReport:
    with stopwatch() as elapsed:
        maps = _atom_maps(n_max, workers, max(n_max, DEFAULT_MAX_N), cache)
        qualifying = 0
        for n in range(1, n_max + 1):
            for p, atoms in maps[n].items():
                if not _qualifies_for_big_class(p, atoms):
                    continue
                qualifying += 1
                rep = check_big_class(p, atoms)
                if not rep.holds:
                    return VerificationReport("big_class", f"n<={n_max}", "counterexample",
                                              rep.witness, {"qualifying": qualifying}, elapsed())
        return VerificationReport("big_class", f"n<={n_max}", "holds", None,
                                  {"qualifying": qualifying}, elapsed())


def consecutive_words(max_letter: int, max_len: int) -> Iterator[Word]:
    """Every nonempty consecutive word over ``[1, max_letter]`` of length at most
    ``max_len``, shortest first, lexicographic within a length."""
    layer = [(x,) for x in range(1, max_letter + 1)]
    while layer and len(layer[0]) <= max_len:
        yield from layer
        layer = [w + (y,) for w in layer for y in (w[-1] - 1, w[-1] + 1) if 1 <= y <= max_letter]


def check_equivalence(max_letter: int, max_len: int) -> VerificationReport:
    """Forbidden-factor freeness agrees with (reduced and commutation-free)."""
    with stopwatch() as elapsed:
        rng = f"letters<={max_letter},len<={max_len}"
        words = atoms = 0
        small = []
        for w in consecutive_words(max_letter, max_len):
            words += 1
            lhs = is_atom_word(w)
            rhs = is_reduced(w, max_letter + 1) and not commutation_moves(w)
            if lhs != rhs:
                witness = {"word": format_word(w), "atom_word": lhs, "reduced_and_free": rhs}
                return VerificationReport("equivalence", rng, "counterexample", witness,
                                          {"words": words}, elapsed())
            if lhs:
                atoms += 1
                if len(small) < 10:
                    small.append(format_word(w))
        return VerificationReport("equivalence", rng, "holds", None,
                                  {"words": words, "atoms": atoms, "first_atoms": small}, elapsed())


def check_tenner_insufficiency(max_letter: int, max_len: int) -> VerificationReport:
    """Find a non-reduced consecutive word meeting all five necessary conditions."""
    with stopwatch() as elapsed:
        rng = f"letters<={max_letter},len<={max_len}"
        searched = 0
        for w in consecutive_words(max_letter, max_len):
            searched += 1
            if all(tenner_conditions(w)) and not is_reduced(w, max_letter + 1):
                return VerificationReport("tenner_insufficiency", rng, "holds",
                                          {"word": format_word(w)}, {"searched": searched}, elapsed())
        return VerificationReport("tenner_insufficiency", rng, "resource-limited", None,
                                  {"searched": searched, "found": 0}, elapsed())


def check_tenner_necessity(n_max: int, workers: int = 1, cache: dict | None = None) -> VerificationReport:
    """Every atom of every permutation in ``S_{n+1}``, ``n <= n_max``, meets the five conditions."""
    with stopwatch() as elapsed:
        maps = _atom_maps(n_max, workers, max(n_max, DEFAULT_MAX_N), cache)
        count = 0
        for n in range(1, n_max + 1):
            for p, atoms in maps[n].items():
                for a in atoms:
                    count += 1
                    conds = tenner_conditions(a)
                    if not all(conds):
                        witness = {"permutation": format_one_line(p), "word": format_word(a),
                                   "conditions": list(conds)}
                        return VerificationReport("tenner_necessity", f"n<={n_max}",
                                                  "counterexample", witness, {"atoms": count}, elapsed())
        return VerificationReport("tenner_necessity", f"n<={n_max}", "holds", None,
                                  {"atoms": count}, elapsed())


# ------------------------------------------------------------ structural checks

def _has_endpoint_form(word: Sequence[int], m: int, M: int, up: bool) -> bool:
    """``word = u (m..M) v`` with ``u`` over ``[m+1, M]`` and ``v`` over ``[m, M-1]``
    (``up``), or ``word = u (M..m) v`` with ``u`` over ``[m, M-1]`` and ``v`` over
    ``[m+1, M]``."""
    run = tuple(range(m, M + 1)) if up else tuple(range(M, m - 1, -1))
    left = range(m + 1, M + 1) if up else range(m, M)
    right = range(m, M) if up else range(m + 1, M + 1)
    L = len(run)
    for k in range(len(word) - L + 1):
        if tuple(word[k:k + L]) == run and all(x in left for x in word[:k]) \
                and all(x in right for x in word[k + L:]):
            return True
    return False


def _seg_up_view(p: Permutation, atoms: Sequence[Word]):
    """``(p, atoms)`` if the atoms carry the ascending segment, else the reversed view."""
    st = structure_of(p, atoms[0])
    if st.case == "seg_up":
        return p, list(atoms)
    return inverse(p), sorted(reverse(a) for a in atoms)


class _Collector:
    def __init__(self, names):
        self.first = {k: None for k in names}
        self.counts = {k: 0 for k in names}

    def check(self, name, ok, witness):
        self.counts[name] += 1
        if not ok and self.first[name] is None:
            self.first[name] = witness


def check_structure(n_max: int, workers: int = 1, cache: dict | None = None) -> list[VerificationReport]:
    """Structural statements about atoms, checked on every permutation of
    ``S_{k+1}`` for ``k <= n_max`` that has atoms."""
    names = ["endpoint_segments", "oscillation_endpoints", "dichotomy", "oscillation_uniqueness",
             "non_oscillation_shape", "single_atom_when_j_lt_i", "phi_reduction", "reverse_bijection"]
    out = _Collector(names)
    with stopwatch() as elapsed:
        maps = _atom_maps(n_max, workers, max(n_max, DEFAULT_MAX_N), cache)
        for n in range(1, n_max + 1):
            amap = maps[n]
            for p, atoms in amap.items():
                _check_one(p, atoms, amap, out)
        ms = elapsed()
    reports = []
    for name in names:
        w = out.first[name]
        verdict = "holds" if w is None else "counterexample"
        reports.append(VerificationReport(name, f"n<={n_max}", verdict, w,
                                          {"cases": out.counts[name]}, ms))
    return reports


def _check_one(p: Permutation, atoms: Sequence[Word], amap, out: _Collector) -> None:
    b = non_fixed_bounds(p)
    m, M = b.m, b.M
    tag = {"permutation": format_one_line(p)}
    up_holds, down_holds = p(M + 1) == m, p(m) == M + 1

    out.check("endpoint_segments", up_holds or down_holds, tag)
    for a in atoms:
        up = _has_endpoint_form(a, m, M, True)
        down = _has_endpoint_form(a, m, M, False)
        out.check("endpoint_segments", up == up_holds and down == down_holds,
                  {**tag, "word": format_word(a)})
        ends = {a[0], a[-1]} & {m, M}
        out.check("oscillation_endpoints", is_oscillation(a) == bool(ends),
                  {**tag, "word": format_word(a)})

    osc = [is_oscillation(a) for a in atoms]
    out.check("dichotomy", all(osc) or not any(osc), tag)

    if all(osc):
        for side in (0, -1):
            for letter in (m, M):
                hits = [a for a in atoms if a[side] == letter]
                out.check("oscillation_uniqueness", len(hits) <= 1,
                          {**tag, "side": "left" if side == 0 else "right", "letter": letter})

    inv = inverse(p)
    mirrored = sorted(reverse(a) for a in atoms)
    out.check("reverse_bijection", tuple(mirrored) == tuple(amap.get(inv, ())), tag)

    if any(osc) or m == M:
        return
    # non-oscillating: normalise to the ascending-segment case
    q, q_atoms = _seg_up_view(p, atoms)
    structures = [structure_of(q, a) for a in q_atoms]
    ij = {(s.i, s.j) for s in structures}
    i, j = structures[0].i, structures[0].j
    shape_ok = (len(ij) == 1 and i is not None and i != m and j != M
                and q(m) == j + 1 and q(i) == M + 1
                and all(s.case == "seg_up" for s in structures))
    for s, a in zip(structures, q_atoms):
        shape_ok = shape_ok and _matches_shape(a, s)
    out.check("non_oscillation_shape", shape_ok, tag)
    if not shape_ok:
        return
    if j < i:
        out.check("single_atom_when_j_lt_i", len(atoms) == 1, tag)
        return
    images = [phi_reduction(q, a) for a in q_atoms]
    targets = {pi for _, pi in images}
    reduced = [w for w, _ in images]
    pi = next(iter(targets))
    pi_atoms = _atoms_of(pi, amap)
    ok = (len(targets) == 1 and length(pi) < length(q)
          and len(set(reduced)) == len(reduced)
          and all(is_atom_of(pi, w) for w in reduced)
          and all(len(w) < len(a) for w, a in zip(reduced, q_atoms))
          and len(q_atoms) <= len(pi_atoms))
    out.check("phi_reduction", ok, {**tag, "target": format_one_line(pi)})


def _atoms_of(p: Permutation, amap) -> Sequence[Word]:
    return amap.get(p, ())


def _matches_shape(a: Sequence[int], s) -> bool:
    """``a = u (j..m) (m+1..M) (M-1..i) v`` with ``u`` over ``[m+1, j-1]`` and ``v`` over ``[i+1, M-1]``."""
    pv = spikes(a).spikes
    k = s.segment_index
    start = pv[k - 1].position - 1
    stop = pv[k + 2].position
    u, v = a[:start], a[stop:]
    return (all(s.m + 1 <= x <= s.j - 1 for x in u) and all(s.i + 1 <= x <= s.M - 1 for x in v)
            and pv[k - 1].value == s.j and pv[k + 2].value == s.i)
