import math
import random

import pytest

from commclass.atoms import (PreconditionError, TheoremViolation, atom_histogram, atoms_bruteforce,
                             atoms_characterized, enumerate_atoms_all, gamma_permutation,
                             is_atom_of, load_scan, oscillation_dichotomy, phi_reduction, run_scan,
                             structure_of)
from commclass.diagrams import is_atom_word, spikes
from commclass.perm import (Permutation, all_permutations, apply_word, compose, identity, inverse,
                            length, longest, parse_permutation, simple_reflection)
from commclass.words import count_reduced_words, format_word, parse_word as W, reverse

SIGMA = Permutation((3, 4, 2, 1))
DEGREE_TEN = parse_permutation("(9 2 10 1 8 3)(4 7)(5 6)", 10)


def test_worked_example():
    assert atoms_bruteforce(SIGMA) == [W("21232")]
    assert atoms_characterized(SIGMA) == [W("21232")]
    assert is_atom_of(SIGMA, W("21232"))
    assert not is_atom_of(SIGMA, W("12132"))


def test_small_cases():
    assert atoms_bruteforce(identity(4)) == atoms_characterized(identity(4)) == []
    assert atoms_characterized(simple_reflection(2, 4)) == [(2,)]
    assert atoms_characterized(longest(3)) == [W("121"), W("212")]


def test_degree_ten_example():
    atoms = atoms_characterized(DEGREE_TEN)
    assert len(atoms) == 4
    for a in atoms:
        assert apply_word(a, 10) == DEGREE_TEN
        assert is_atom_word(a)
        assert "7654321234567898765432" in format_word(a)
        st = structure_of(DEGREE_TEN, a)
        assert (st.case, st.m, st.M, st.oscillating, st.i, st.j) == ("seg_up", 1, 9, False, 2, 7)


@pytest.mark.parametrize("degree", range(1, 7))
def test_characterization_matches_brute_force(degree):
    for p in all_permutations(degree):
        assert atoms_characterized(p) == atoms_bruteforce(p), p


def test_characterization_matches_brute_force_random_samples():
    rng = random.Random(20261018)
    checked = 0
    while checked < 300:
        images = list(range(1, rng.choice((7, 8)) + 1))
        rng.shuffle(images)
        p = Permutation(tuple(images))
        if count_reduced_words(p) > 20000:
            continue
        assert atoms_characterized(p) == atoms_bruteforce(p), p
        checked += 1


def test_global_scan_matches_per_permutation(atom_maps):
    for n in range(1, 6):
        amap = atom_maps[n]
        for p in all_permutations(n + 1):
            assert list(amap.get(p, ())) == atoms_characterized(p)


def test_histograms(atom_maps):
    # by hand: S_2 = {e, s1}; in S_3 only w0 has two atoms
    assert atom_histogram(atom_maps[1], 1) == [1, 1, 0, 0, 0]
    assert atom_histogram(atom_maps[2], 2) == [1, 4, 1, 0, 0]
    hist3 = [0] * 5
    for p in all_permutations(4):
        hist3[len(atoms_bruteforce(p))] += 1
    assert atom_histogram(atom_maps[3], 3) == hist3
    for n in range(1, 9):
        assert sum(atom_histogram(atom_maps[n], n)) == math.factorial(n + 1)


def test_worker_count_does_not_change_output(atom_maps):
    assert enumerate_atoms_all(5, workers=2) == atom_maps[5]


def test_max_n_guard():
    with pytest.raises(PreconditionError):
        enumerate_atoms_all(10)
    with pytest.raises(ValueError):
        enumerate_atoms_all(0)


def test_structure_examples():
    st = structure_of(SIGMA, W("21232"))
    assert (st.case, st.m, st.M, st.oscillating, st.i, st.j) == ("seg_up", 1, 3, False, 2, 2)
    st = structure_of(simple_reflection(2, 4), (2,))
    assert (st.case, st.m, st.M, st.oscillating) == ("seg_up", 2, 2, True)
    st = structure_of(longest(3), W("212"))
    assert st.oscillating
    with pytest.raises(PreconditionError):
        structure_of(SIGMA, W("12132"))


def test_phi_worked_example():
    reduced, q = phi_reduction(SIGMA, W("21232"))
    assert reduced == (2,)
    assert q == simple_reflection(2, 4)
    assert q == compose(SIGMA, inverse(gamma_permutation(2, 1, 3, 4)))


def test_phi_degree_ten_example():
    atoms = atoms_characterized(DEGREE_TEN)
    word = next(a for a in atoms if structure_of(DEGREE_TEN, a).case == "seg_up")
    reduced, q = phi_reduction(DEGREE_TEN, word)
    assert apply_word(reduced, 10) == q
    assert is_atom_of(q, reduced)
    assert len(reduced) < len(word)


def test_phi_is_atom_preserving_on_small_degrees(atom_maps):
    for n in range(1, 7):
        for p, atoms in atom_maps[n].items():
            for a in atoms:
                st = structure_of(p, a)
                if st.oscillating or st.case != "seg_up" or st.j < st.i:
                    continue
                reduced, q = phi_reduction(p, a)
                assert is_atom_of(q, reduced), (p, a)
                assert length(q) == len(reduced) < length(p)


def test_phi_preconditions():
    with pytest.raises(PreconditionError):
        phi_reduction(longest(3), W("121"))


def test_dichotomy():
    assert oscillation_dichotomy(SIGMA) == "none"
    assert oscillation_dichotomy(longest(3)) == "all"
    assert oscillation_dichotomy(identity(3)) == "empty"
    assert oscillation_dichotomy(Permutation((2, 1, 4, 3))) == "empty"
    with pytest.raises(TheoremViolation):
        oscillation_dichotomy(SIGMA, [W("21232"), W("121")])


def test_reverse_is_a_bijection_onto_inverse_atoms(atom_maps):
    for n in range(1, 7):
        amap = atom_maps[n]
        for p, atoms in amap.items():
            assert sorted(reverse(a) for a in atoms) == list(amap[inverse(p)])


def test_every_atom_is_consecutive_with_correct_length(atom_maps):
    for p, atoms in atom_maps[6].items():
        for a in atoms:
            assert len(a) == length(p)
            assert spikes(a).word() == a


def test_scan_file_round_trip_and_resume(tmp_path, atom_maps):
    path = tmp_path / "scan4.txt"
    assert run_scan(4, path) == atom_maps[4]
    n, done = load_scan(path)
    assert n == 4 and sorted(done) == [1, 2, 3, 4]

    # keep shards 1 and 2 and leave shard 3 half written
    lines = path.read_text().splitlines()
    cut = lines.index("# end shard 2") + 1
    partial = lines[:cut] + [ln for ln in lines[cut:cut + 3] if not ln.startswith("# end")]
    path.write_text("\n".join(partial) + "\n")
    assert sorted(load_scan(path)[1]) == [1, 2]
    assert run_scan(4, path) == atom_maps[4]
    assert sorted(load_scan(path)[1]) == [1, 2, 3, 4]

    with pytest.raises(ValueError):
        run_scan(5, path)
