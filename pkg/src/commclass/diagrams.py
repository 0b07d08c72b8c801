"""Words formed by consecutive integers: spikes, line diagrams, forbidden factors.

A *spike* is a pinnacle (larger than its neighbours) or a vale (smaller than
its neighbours); both endpoints of a word are always spikes.  The *segments*
are the monotone unit-step runs between consecutive spikes.

Forbidden factors are detected on segments of the factor itself: a factor
``w[p..q]`` has as spikes its two endpoints together with the interior
spikes of ``w``, so its first segment runs from ``p`` to the first spike of
``w`` after ``p`` and its last segment from the last spike of ``w`` before
``q`` to ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence
from xml.sax.saxutils import escape

__all__ = [
    "Spike", "LineDiagram", "FactorWitness", "WedgeVee", "NotConsecutiveError",
    "is_consecutive", "spikes", "wedge_vee_classify", "tenner_conditions",
    "find_repeated_segment_factor", "find_symmetric_segment_factor",
    "has_forbidden_factor", "is_atom_word", "is_oscillation", "render",
    "spike_flags", "witness_ending_at",
]

Kind = Literal["pinnacle", "vale", "both"]


class NotConsecutiveError(ValueError):
    pass


def is_consecutive(word: Sequence[int]) -> bool:
    return all(abs(a - b) == 1 for a, b in zip(word, word[1:]))


def _require_consecutive(word: Sequence[int]) -> None:
    if not is_consecutive(word):
        raise NotConsecutiveError(f"not formed by consecutive integers: {tuple(word)}")


@dataclass(frozen=True)
class Spike:
    position: int  # 1-based position in the word
    value: int
    kind: Kind


@dataclass(frozen=True)
class LineDiagram:
    spikes: tuple[Spike, ...]

    @property
    def pv(self) -> tuple[int, ...]:
        return tuple(s.value for s in self.spikes)

    @property
    def pinnacles(self) -> tuple[int, ...]:
        return tuple(s.value for s in self.spikes if s.kind != "vale")

    @property
    def vales(self) -> tuple[int, ...]:
        return tuple(s.value for s in self.spikes if s.kind != "pinnacle")

    @property
    def gaps(self) -> tuple[int, ...]:
        pv = self.pv
        return tuple(abs(a - b) for a, b in zip(pv, pv[1:]))

    def segments(self) -> list[tuple[int, int]]:
        """Segments as ``(start value, end value)`` pairs."""
        pv = self.pv
        return list(zip(pv, pv[1:]))

    def word(self) -> tuple[int, ...]:
        """Rebuild the word from its spikes."""
        if not self.spikes:
            return ()
        out = [self.spikes[0].value]
        for a, b in zip(self.spikes, self.spikes[1:]):
            step = 1 if b.value > a.value else -1
            out.extend(range(a.value + step, b.value + step, step))
        return tuple(out)


def spike_flags(word: Sequence[int]) -> list[bool]:
    n = len(word)
    return [k == 0 or k == n - 1 or word[k - 1] == word[k + 1] for k in range(n)]


def spikes(word: Sequence[int]) -> LineDiagram:
    _require_consecutive(word)
    n = len(word)
    if n == 1:
        return LineDiagram((Spike(1, word[0], "both"),))
    out = []
    for k, flag in enumerate(spike_flags(word)):
        if flag:
            neighbour = word[k + 1] if k == 0 else word[k - 1]
            kind: Kind = "pinnacle" if word[k] > neighbour else "vale"
            out.append(Spike(k + 1, word[k], kind))
    return LineDiagram(tuple(out))


@dataclass(frozen=True)
class WedgeVee:
    wedge: bool
    vee: bool
    wedge_strict: bool
    vee_strict: bool

    @property
    def label(self) -> str:
        if self.wedge and self.vee:
            return "wedge+vee"
        return "wedge" if self.wedge else "vee" if self.vee else "neither"

    @property
    def strict(self) -> bool:
        return (self.wedge and self.wedge_strict) or (self.vee and self.vee_strict)


def _peak_shape(seq: Sequence[int]) -> tuple[bool, bool]:
    """(is wedge, is strict wedge): strictly up, a plateau of maxima, strictly down."""
    top = max(seq)
    first = seq.index(top)
    last = len(seq) - 1 - seq[::-1].index(top)
    up = all(a < b for a, b in zip(seq[:first], seq[1:first + 1]))
    flat = all(x == top for x in seq[first:last + 1])
    down = all(a > b for a, b in zip(seq[last:], seq[last + 1:]))
    ok = up and flat and down
    return ok, ok and first == last


def wedge_vee_classify(seq: Sequence[int]) -> WedgeVee:
    if len(seq) == 0:
        raise ValueError("wedge/vee classification of an empty sequence")
    seq = list(seq)
    wedge, wedge_strict = _peak_shape(seq)
    vee, vee_strict = _peak_shape([-x for x in seq])
    return WedgeVee(wedge, vee, wedge_strict, vee_strict)


def tenner_conditions(word: Sequence[int]) -> tuple[bool, bool, bool, bool, bool]:
    """The five necessary conditions for a one-element commutation class."""
    diagram = spikes(word)
    if not diagram.spikes:
        return (True,) * 5
    p = wedge_vee_classify(diagram.pinnacles)
    v = wedge_vee_classify(diagram.vales)
    c1 = p.wedge
    c2 = v.vee
    c3 = (p.wedge and p.wedge_strict) or (v.vee and v.vee_strict)
    pv = diagram.pv
    lo, hi = min(pv), max(pv)
    c4 = len(pv) == 1 or any({a, b} == {lo, hi} for a, b in zip(pv, pv[1:]))
    last = len(word)
    c5 = True
    for kinds in (("pinnacle", "both"), ("vale", "both")):
        by_value: dict[int, list[int]] = {}
        for s in diagram.spikes:
            if s.kind in kinds:
                by_value.setdefault(s.value, []).append(s.position)
        for positions in by_value.values():
            if len(positions) > 1 and not any(q in (1, last) for q in positions):
                c5 = False
    return c1, c2, c3, c4, c5


@dataclass(frozen=True)
class FactorWitness:
    kind: Literal["repeated", "symmetric"]
    first_run: tuple[int, int]  # 1-based inclusive positions
    last_run: tuple[int, int]
    interval: tuple[int, int]


def _factor_segments(word: Sequence[int], flags: Sequence[bool], p: int, q: int):
    """First and last segment of the factor ``word[p..q]`` (0-based, inclusive)."""
    first_end = next(k for k in range(p + 1, q + 1) if k == q or flags[k])
    last_start = next(k for k in range(q - 1, p - 1, -1) if k == p or flags[k])
    return (p, first_end), (last_start, q)


def _witness(word, kind, first, last) -> FactorWitness:
    lo, hi = sorted((word[first[0]], word[first[1]]))
    return FactorWitness(kind, (first[0] + 1, first[1] + 1), (last[0] + 1, last[1] + 1), (lo, hi))


def find_repeated_segment_factor(word: Sequence[int]) -> FactorWitness | None:
    """Shortest factor whose first and last segments are the same segment.

    Reference scan over all factors; factors are tried by right end, then by
    increasing length.
    """
    _require_consecutive(word)
    flags = spike_flags(word)
    for q in range(len(word)):
        for p in range(q - 1, -1, -1):
            first, last = _factor_segments(word, flags, p, q)
            if first[1] >= last[0]:
                continue
            if word[first[0]] == word[last[0]] and word[first[1]] == word[last[1]]:
                return _witness(word, "repeated", first, last)
    return None


def find_symmetric_segment_factor(word: Sequence[int]) -> FactorWitness | None:
    """Shortest factor whose first and last segments mirror each other with a
    spike of the whole word strictly between them."""
    _require_consecutive(word)
    flags = spike_flags(word)
    for q in range(len(word)):
        for p in range(q - 1, -1, -1):
            first, last = _factor_segments(word, flags, p, q)
            if first[1] >= last[0]:
                continue
            if word[first[0]] == word[last[1]] and word[first[1]] == word[last[0]]:
                if any(flags[k] for k in range(first[1] + 1, last[0])):
                    return _witness(word, "symmetric", first, last)
    return None


def witness_ending_at(word: Sequence[int], flags: Sequence[bool], q: int) -> bool:
    """Whether some forbidden factor ends at position ``q`` (0-based).

    ``flags`` are the spike flags of ``word[:q+1]``.  Linear in ``q``.
    """
    if q < 1:
        return False
    s = q - 1
    while not flags[s]:
        s -= 1
    # s2: the spike before s, or -1
    s2 = s - 1
    while s2 >= 0 and not flags[s2]:
        s2 -= 1
    wq, ws = word[q], word[s]
    nxt = q
    for p in range(q - 1, -1, -1):
        if flags[p + 1]:
            nxt = p + 1
        if nxt >= s or p >= s:
            continue
        a, b = word[p], word[nxt]
        if a == ws and b == wq:
            return True
        if a == wq and b == ws and nxt < s2:
            return True
    return False


def has_forbidden_factor(word: Sequence[int]) -> bool:
    """Fast equivalent of ``repeated or symmetric`` factor detection."""
    _require_consecutive(word)
    for q in range(1, len(word)):
        flags = spike_flags(word[:q + 1])
        if witness_ending_at(word, flags, q):
            return True
    return False


def is_atom_word(word: Sequence[int]) -> bool:
    """Consecutive and free of repeated/symmetric segment factors.

    The empty word is not an atom.
    """
    if not word or not is_consecutive(word):
        return False
    return find_repeated_segment_factor(word) is None and find_symmetric_segment_factor(word) is None


def is_oscillation(word: Sequence[int]) -> bool:
    if not word:
        return True
    gaps = spikes(word).gaps
    pairs = list(zip(gaps, gaps[1:]))
    return all(a <= b for a, b in pairs) or all(a >= b for a, b in pairs)


def render(word: Sequence[int], fmt: str = "ascii") -> str:
    """ASCII grid (one column per position, one row per value) or SVG polyline."""
    if fmt not in ("ascii", "svg"):
        raise ValueError(f"unknown render format {fmt!r}")
    if not word:
        if fmt == "ascii":
            return "(empty diagram)\n"
        return ('<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">'
                "<desc>empty diagram</desc></svg>\n")
    diagram = spikes(word)
    lo, hi = min(word), max(word)
    if fmt == "ascii":
        width = len(str(hi))
        rows = []
        for v in range(hi, lo - 1, -1):
            cells = "".join("*" if x == v else "." for x in word)
            rows.append(f"{v:>{width}} {cells}")
        return "\n".join(rows) + "\n"
    points = " ".join(f"{s.position},{s.value}" for s in diagram.spikes)
    title = escape("".join(map(str, word)) if hi <= 9 else ",".join(map(str, word)))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 {lo - 1} {len(word) + 1} {hi - lo + 2}">',
        f"  <title>{title}</title>",
        f'  <g transform="translate(0,{lo + hi}) scale(1,-1)">',
        f'    <polyline points="{points}" fill="none" stroke="black" stroke-width="0.05"/>',
    ]
    for s in diagram.spikes:
        lines.append(f'    <circle cx="{s.position}" cy="{s.value}" r="0.12" class="{s.kind}"/>')
    lines += ["  </g>", "</svg>"]
    return "\n".join(lines) + "\n"
