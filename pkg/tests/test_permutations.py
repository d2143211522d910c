"""置换、双陪集分解、Brenner 分解与一般序列"""

import random
from itertools import permutations

import pytest

from src.core.exceptions import DegreeMismatch, NotEven, ParseError, TailRegime, WitnessInvalid
from src.permutations.brenner import (
    brenner_factor,
    brenner_predicates,
    class_size,
    fixed_point_free_involutions,
)
from src.permutations.generic import (
    GenericSequence,
    canonical_conjugator,
    diagonal_centralizer_element,
    enumerate_generic_sequences,
    extend_generic,
    find_conjugator_exhaustive,
    generic_sequence,
    is_generic,
)
from src.permutations.permutation import Permutation, format_cycles, parse_cycles
from src.permutations.uni1 import TAG_ALT, TAG_THETA, uni1_factor, uni1_predicates, weyl_double_coset
from src.permutations.uni2 import uni2_factor, uni2_predicates
from src.permutations.witness import FactorizationWitness


def alternating(n):
    for images in permutations(range(n)):
        p = Permutation(images)
        if p.is_even():
            yield p


def random_even(n, rng):
    images = list(range(n))
    rng.shuffle(images)
    p = Permutation(images)
    return p if p.is_even() else Permutation.transposition(0, 1, n) * p


class TestPermutation:
    def test_composition_applies_right_factor_first(self):
        a = parse_cycles("(1 2)", 3)
        b = parse_cycles("(2 3)", 3)
        assert (a * b)(1) == a(b(1))
        assert format_cycles(a * b) == "(1 2 3)"

    def test_conjugate_preserves_cycle_type(self, rng):
        pi = parse_cycles("(1 2 3)(4 5)", 6)
        for _ in range(20):
            images = list(range(6))
            rng.shuffle(images)
            rho = Permutation(images)
            assert pi.conjugate(rho).cycle_type() == pi.cycle_type()
            assert pi.conjugate(rho) == rho * pi * rho.inverse()

    def test_parity_and_order(self):
        assert parse_cycles("(1 2)", 4).parity() == "odd"
        assert parse_cycles("(1 2)(3 4)", 4).is_even()
        assert parse_cycles("(1 2 3)(4 5)", 5).order() == 6

    def test_text_round_trip(self):
        for text in ["()", "(1 2)(3 4)", "(1 3 5)(2 6)"]:
            assert format_cycles(parse_cycles(text, 6)) == text

    @pytest.mark.parametrize("text", ["(1 2 3", "(1 1)", "(0 1)", "1 2", ""])
    def test_malformed_cycles(self, text):
        with pytest.raises(ParseError):
            parse_cycles(text, 4)

    def test_point_beyond_degree(self):
        with pytest.raises(ParseError):
            parse_cycles("(1 7)", 6)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            Permutation.identity(3) * Permutation.identity(4)


class TestUni1:
    def test_documented_example(self):
        phi = parse_cycles("(1 2)(5 6)", 6)
        witness = uni1_factor(phi, 5).validate(uni1_predicates(5))
        assert len(witness) == 5
        assert witness.tags == [TAG_ALT, TAG_THETA, TAG_ALT, TAG_THETA, TAG_ALT]

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_exhaustive_small(self, m):
        predicates = uni1_predicates(m)
        for phi in alternating(m + 1):
            assert uni1_factor(phi, m).is_valid(predicates), format_cycles(phi)

    @pytest.mark.full
    @pytest.mark.parametrize("m", [6, 7])
    def test_exhaustive_large(self, m):
        predicates = uni1_predicates(m)
        for phi in alternating(m + 1):
            assert uni1_factor(phi, m).is_valid(predicates), format_cycles(phi)

    def test_rejects_odd(self):
        with pytest.raises(NotEven):
            uni1_factor(parse_cycles("(1 2)", 6), 5)

    def test_rejects_wrong_degree(self):
        with pytest.raises(DegreeMismatch):
            uni1_factor(Permutation.identity(5), 5)

    def test_weyl_double_coset(self):
        n = 5
        for images in permutations(range(n)):
            w = Permutation(images)
            letters = weyl_double_coset(w)
            product = Permutation.identity(n)
            for element, _ in letters:
                product = product * element
            assert product == w
            assert all(e.fixes(n - 1) for e, tag in letters if tag != TAG_THETA)


class TestBrenner:
    def test_class_enumeration(self):
        involutions = fixed_point_free_involutions(8)
        assert len(involutions) == class_size(8) == 105
        assert all(p.is_fixed_point_free_involution() for p in involutions)

    def test_documented_example(self):
        phi = parse_cycles("(1 2 3)", 8)
        witness = brenner_factor(phi, 2).validate(brenner_predicates(2))
        assert len(witness) == 4

    def test_identity(self):
        witness = brenner_factor(Permutation.identity(8), 2)
        assert witness.is_valid(brenner_predicates(2))

    def test_sampled(self, rng):
        predicates = brenner_predicates(2)
        for _ in range(200):
            phi = random_even(8, rng)
            assert brenner_factor(phi, 2).is_valid(predicates), format_cycles(phi)

    @pytest.mark.full
    def test_exhaustive_alt8(self):
        predicates = brenner_predicates(2)
        for phi in alternating(8):
            assert brenner_factor(phi, 2).is_valid(predicates), format_cycles(phi)

    @pytest.mark.big
    def test_sampled_alt12(self):
        rng = random.Random(7)
        predicates = brenner_predicates(3)
        for _ in range(50):
            assert brenner_factor(random_even(12, rng), 3).is_valid(predicates)


class TestUni2:
    def test_identity_shape(self):
        witness = uni2_factor(Permutation.identity(8), 1)
        assert len(witness) == 17
        assert witness.is_valid(uni2_predicates(1))

    def test_sampled(self, rng):
        predicates = uni2_predicates(1)
        for _ in range(30):
            phi = random_even(8, rng)
            witness = uni2_factor(phi, 1)
            assert len(witness) == 17
            assert witness.is_valid(predicates), format_cycles(phi)


class TestWitness:
    def test_json_round_trip_revalidates(self):
        phi = parse_cycles("(1 2 3)", 8)
        data = brenner_factor(phi, 2).to_json(format_cycles)
        loaded = FactorizationWitness.from_json(data, lambda text: parse_cycles(text, 8))
        assert loaded.target == phi
        loaded.validate(brenner_predicates(2))

    def test_tampered_witness_is_rejected(self):
        phi = parse_cycles("(1 2)(5 6)", 6)
        witness = uni1_factor(phi, 5)
        witness.target = parse_cycles("(1 2 3)", 6)
        with pytest.raises(WitnessInvalid) as info:
            witness.validate(uni1_predicates(5))
        assert "product differs from target" in info.value.details["problems"]


class TestGenericSequences:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_standard_sequence_is_generic(self, m):
        for t in range(m + 2):
            assert is_generic(generic_sequence(m, t).elements, m)

    def test_tail_repeats(self):
        seq = generic_sequence(3, 5)
        assert seq.elements[3] == seq.elements[2] == seq.elements[5]

    @pytest.mark.parametrize("m, t", [(3, 0), (4, 0), (4, 1), (5, 2)])
    def test_diagonal_element_commutes(self, m, t):
        seq = generic_sequence(m, t)
        tau = diagonal_centralizer_element(seq)
        assert tau.is_fixed_point_free_involution()
        assert all(tau * p == p * tau for p in seq.elements)
        assert is_generic(extend_generic(seq).elements, m)

    @pytest.mark.parametrize("m, t", [(3, 0), (4, 1), (5, 2)])
    def test_diagonal_element_is_even_on_each_delta(self, m, t):
        tau = diagonal_centralizer_element(generic_sequence(m, t))
        per_delta = len(tau.cycles()) // 2 ** (t + 1)
        assert per_delta == 2 ** (m - t - 2)
        assert per_delta % 2 == 0

    @pytest.mark.parametrize("m, t", [(3, 1), (3, 2), (4, 2)])
    def test_tail_regime(self, m, t):
        with pytest.raises(TailRegime):
            diagonal_centralizer_element(generic_sequence(m, t))

    @pytest.mark.parametrize("m", [3, 4])
    def test_extend_across_last_semiregular_step(self, m):
        seq = generic_sequence(m, m - 2)
        extended = extend_generic(seq)
        assert len(extended.elements) == m
        assert extended.elements[-1].is_fixed_point_free_involution()
        assert is_generic(extended.elements, m)

    def test_canonical_conjugator(self, rng):
        standard = generic_sequence(3, 2)
        images = list(range(8))
        rng.shuffle(images)
        sigma = Permutation(images)
        moved = GenericSequence(m=3, elements=tuple(p.conjugate(sigma) for p in standard.elements))
        rho = canonical_conjugator(moved)
        assert [p.conjugate(rho) for p in moved.generators()] == list(standard.generators())

    @pytest.mark.parametrize("t", [0, 1])
    def test_all_sequences_conjugate_to_standard(self, t):
        canonical = generic_sequence(3, t).elements
        sequences = list(enumerate_generic_sequences(3, t))
        assert sequences
        for seq in sequences:
            assert find_conjugator_exhaustive(seq, canonical) is not None
