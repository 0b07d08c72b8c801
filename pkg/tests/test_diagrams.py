from pathlib import Path
from xml.etree import ElementTree

import pytest
from hypothesis import given, strategies as st

from commclass.diagrams import (FactorWitness, NotConsecutiveError, find_repeated_segment_factor,
                                find_symmetric_segment_factor, has_forbidden_factor, is_atom_word,
                                is_consecutive, is_oscillation, render, spikes, tenner_conditions,
                                wedge_vee_classify)
from commclass.verify import consecutive_words
from commclass.words import commutation_moves, is_reduced, parse_word as W

GOLDEN = Path(__file__).parent / "golden"
RUNNING = W("2345432123456765434")


@st.composite
def consecutive(draw, max_letter=6, max_len=16):
    x = draw(st.integers(1, max_letter))
    word = [x]
    for up in draw(st.lists(st.booleans(), max_size=max_len - 1)):
        y = word[-1] + (1 if up else -1)
        if not 1 <= y <= max_letter:
            y = word[-1] - (1 if up else -1)
        word.append(y)
    return tuple(word)


def test_is_consecutive():
    assert is_consecutive(RUNNING)
    assert not is_consecutive(W("12132"))
    assert is_consecutive(W("4"))


def test_spikes_running_example():
    d = spikes(RUNNING)
    assert d.vales == W("213")
    assert d.pinnacles == W("574")
    assert d.pv == W("251734")
    assert d.segments() == [(2, 5), (5, 1), (1, 7), (7, 3), (3, 4)]
    assert [s.kind for s in d.spikes] == ["vale", "pinnacle"] * 3


def test_spikes_small():
    assert spikes(W("121")).pv == W("121")
    (only,) = spikes(W("1")).spikes
    assert (only.position, only.value, only.kind) == (1, 1, "both")
    with pytest.raises(NotConsecutiveError):
        spikes(W("13"))


@given(consecutive())
def test_spikes_round_trip(w):
    d = spikes(w)
    assert d.word() == w
    kinds = [s.kind for s in d.spikes]
    assert d.spikes[0].position == 1 and d.spikes[-1].position == len(w)
    if len(w) > 1:
        assert all(a != b for a, b in zip(kinds, kinds[1:]))


def test_wedge_vee():
    c = wedge_vee_classify(W("574"))
    assert c.wedge and c.wedge_strict and not c.vee
    c = wedge_vee_classify(W("213"))
    assert c.vee and c.vee_strict and not c.wedge
    c = wedge_vee_classify(W("11"))
    assert c.wedge and c.vee and not c.strict
    c = wedge_vee_classify(W("3"))
    assert c.wedge and c.vee and c.wedge_strict and c.vee_strict
    assert wedge_vee_classify(W("2131")).label == "neither"
    with pytest.raises(ValueError):
        wedge_vee_classify(())


def test_tenner_conditions():
    assert tenner_conditions(W("21232")) == (True,) * 5
    assert tenner_conditions(W("3212343212"))[4] is False
    assert tenner_conditions(W("1")) == (True,) * 5
    # P = 4,3,4 is not a wedge
    assert tenner_conditions(W("4323234"))[0] is False


def test_repeated_segments():
    w = find_repeated_segment_factor(W("234543212345676543456"))
    assert w is not None and w.kind == "repeated" and w.interval == (3, 5)
    assert find_repeated_segment_factor(RUNNING) is None
    assert find_repeated_segment_factor(W("1232123")) == FactorWitness("repeated", (1, 3), (5, 7), (1, 3))
    assert not is_reduced(W("1232123"), 4)


def test_repeated_segments_adjacent_runs():
    # an empty middle part is allowed, and the word is indeed not reduced
    assert find_repeated_segment_factor(W("1212")) == FactorWitness("repeated", (1, 2), (3, 4), (1, 2))
    assert not is_reduced(W("1212"), 3)


def test_symmetric_segments():
    w = find_symmetric_segment_factor(W("3212343212"))
    assert w is not None and w.kind == "symmetric" and w.interval == (1, 2)
    assert find_symmetric_segment_factor(W("12321")) is None
    assert is_reduced(W("12321"), 4)
    assert find_symmetric_segment_factor(RUNNING) is None


def test_is_atom_word():
    assert is_atom_word(W("21232"))
    assert not is_atom_word(W("12132"))
    assert not is_atom_word(W("1232123"))
    assert not is_atom_word(())
    assert is_atom_word(RUNNING)


def test_is_oscillation():
    assert is_oscillation(W("121"))
    assert spikes(RUNNING).gaps == (3, 4, 6, 4, 1)
    assert not is_oscillation(RUNNING)
    assert is_oscillation(())
    assert is_oscillation(W("1234321"))
    assert not is_oscillation(W("21232"))


@pytest.mark.parametrize("max_letter, max_len", [(3, 12), (4, 12)])
def test_characterization_small(max_letter, max_len):
    for w in consecutive_words(max_letter, max_len):
        assert is_atom_word(w) == (is_reduced(w, max_letter + 1) and not commutation_moves(w))


def test_fast_detector_matches_reference_exhaustively():
    for w in consecutive_words(4, 11):
        ref = find_repeated_segment_factor(w) is not None or find_symmetric_segment_factor(w) is not None
        assert has_forbidden_factor(w) == ref


@given(consecutive())
def test_fast_detector_matches_reference(w):
    ref = find_repeated_segment_factor(w) is not None or find_symmetric_segment_factor(w) is not None
    assert has_forbidden_factor(w) == ref


@given(consecutive(), st.integers(1, 15))
def test_forbidden_factor_survives_extension(w, cut):
    prefix = w[:cut]
    if not is_atom_word(prefix):
        assert not is_atom_word(w)


def test_render_ascii_golden():
    assert render(W("121"), "ascii") == (GOLDEN / "render_121.txt").read_text()
    assert render(RUNNING, "ascii") == (GOLDEN / "render_running.txt").read_text()
    assert render((), "ascii") == "(empty diagram)\n"


def test_render_svg_golden():
    svg = render(W("21232"), "svg")
    assert svg == (GOLDEN / "render_21232.svg").read_text()
    root = ElementTree.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    poly = root.find(f"{ns}g/{ns}polyline")
    assert poly.get("points") == "1,2 2,1 4,3 5,2"
    assert root.get("viewBox") == "0 0 6 4"
    ElementTree.fromstring(render((), "svg"))


def test_render_rejects_non_consecutive():
    with pytest.raises(NotConsecutiveError):
        render(W("13"))
