"""矩阵、Bruhat 分解、SL 有限生成、环面分解与覆盖半径"""

from itertools import product

import pytest

from src.core.exceptions import (
    BoundExceeded,
    DimensionTooSmall,
    FieldMismatch,
    GroupTooLarge,
    NoSplit,
    ParseError,
    Singular,
    ValidationError,
)
from src.fields.galois import field_of_order
from src.fields.number_theory import zsigmondy_prime
from src.matrices.bruhat import bruhat_decompose
from src.matrices.covering import (
    SpecialLinearGroup,
    class_c_representative,
    class_covering_radius,
    sampled_class_distances,
)
from src.matrices.generic import sl_generic_sequence
from src.matrices.matrix import (
    FieldMatrix,
    format_matrix,
    parse_matrix,
    permutation_matrix,
    random_invertible,
    random_matrix,
    random_sl,
    sl_order,
)
from src.matrices.sl_double import sl_double_factor, sl_double_predicates
from src.matrices.sl_step import expand_connectives, sl_step_factor, sl_step_predicates
from src.matrices.splitting import split_nonsingular
from src.matrices.torus import regular_torus_factor
from src.permutations.permutation import parse_cycles


def all_matrices(d, field):
    for flat in product(range(field.q), repeat=d * d):
        yield FieldMatrix(field, [list(flat[i * d:(i + 1) * d]) for i in range(d)])


class TestFieldMatrix:
    def test_text_round_trip(self, gf4, rng):
        for _ in range(10):
            a = random_matrix(3, gf4, rng)
            assert parse_matrix(format_matrix(a)) == a

    def test_text_format(self):
        a = FieldMatrix(field_of_order(3), [[1, 2], [0, 1]])
        assert format_matrix(a) == "2,3;3^1:1 3^1:2|3^1:0 3^1:1"

    @pytest.mark.parametrize("text", ["2,3;3^1:1 3^1:2", "2;3^1:1", "2,3;3^1:1 3^1:2|3^1:0"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_matrix(text)

    def test_field_mismatch(self, gf4):
        with pytest.raises(FieldMismatch):
            parse_matrix("1,3;3^1:1", gf4)

    def test_inverse_and_det(self, small_field, rng):
        for _ in range(10):
            a = random_invertible(3, small_field, rng)
            assert (a * a.inverse()).is_identity()
            b = random_invertible(3, small_field, rng)
            assert (a * b).det() == small_field.mul(a.det(), b.det())

    def test_singular_inverse(self, gf9):
        with pytest.raises(Singular):
            FieldMatrix(gf9, [[1, 1], [1, 1]]).inverse()

    def test_random_sl(self, small_field, rng):
        assert random_sl(3, small_field, rng).det() == 1

    def test_permutation_matrices_compose(self):
        field = field_of_order(5)
        a, b = parse_cycles("(1 2 3)", 4), parse_cycles("(3 4)", 4)
        assert permutation_matrix(a, field) * permutation_matrix(b, field) == permutation_matrix(a * b, field)

    def test_sl_order(self):
        assert sl_order(2, 3) == 24
        assert sl_order(3, 2) == 168
        assert sl_order(4, 2) == 20160


class TestBruhat:
    def test_exhaustive_gl2(self):
        field = field_of_order(3)
        for a in all_matrices(2, field):
            if a.det() == 0:
                continue
            form = bruhat_decompose(a)
            assert form.product() == a
            assert form.b1.is_upper_triangular() and form.b2.is_upper_triangular()
            assert form.w.is_permutation_matrix()

    def test_random(self, small_field, rng):
        for _ in range(10):
            a = random_invertible(4, small_field, rng)
            form = bruhat_decompose(a)
            assert form.product() == a
            assert form.w.is_permutation_matrix()

    def test_singular(self, gf4):
        with pytest.raises(Singular):
            bruhat_decompose(FieldMatrix(gf4, [[1, 2], [1, 2]]))


class TestSlStep:
    def test_exhaustive_sl3_2(self):
        field = field_of_order(2)
        predicates = sl_step_predicates(field, 3)
        for a in all_matrices(3, field):
            if a.det() == 1:
                assert sl_step_factor(a).is_valid(predicates), format_matrix(a)

    @pytest.mark.parametrize("d, q", [(3, 3), (3, 4), (4, 3), (5, 2)])
    def test_sampled(self, d, q, rng):
        field = field_of_order(q)
        predicates = sl_step_predicates(field, d)
        for _ in range(20):
            a = random_sl(d, field, rng)
            witness = sl_step_factor(a)
            assert witness.is_valid(predicates), format_matrix(a)
            assert expand_connectives(witness).is_valid(predicates)

    def test_dimension_too_small(self):
        field = field_of_order(3)
        with pytest.raises(DimensionTooSmall):
            sl_step_factor(FieldMatrix(field, [[1, 1], [0, 1]]))

    def test_rejects_non_sl(self):
        field = field_of_order(3)
        with pytest.raises(ValidationError):
            sl_step_factor(FieldMatrix.diagonal(field, [2, 1, 1]))


class TestSlDouble:
    def test_sampled_sl8_2(self, rng):
        field = field_of_order(2)
        predicates = sl_double_predicates(field, 8)
        a = random_sl(8, field, rng)
        assert sl_double_factor(a).is_valid(predicates)

    @pytest.mark.full
    @pytest.mark.parametrize("q", [2, 3])
    def test_sampled_more(self, q, rng):
        field = field_of_order(q)
        predicates = sl_double_predicates(field, 8)
        for _ in range(5):
            a = random_sl(8, field, rng)
            assert sl_double_factor(a).is_valid(predicates), format_matrix(a)

    def test_dimension(self):
        with pytest.raises(DimensionTooSmall):
            sl_double_factor(FieldMatrix.identity(field_of_order(2), 6))


class TestSplit:
    @pytest.mark.parametrize("d, q", [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2)])
    def test_exhaustive(self, d, q):
        field = field_of_order(q)
        for s in all_matrices(d, field):
            if d == 1 and q == 2 and s.entries[0, 0] == 1:
                continue
            s1, s2 = split_nonsingular(s)
            assert s1 + s2 == s
            assert s1.det() != 0 and s2.det() != 0

    def test_no_split(self):
        with pytest.raises(NoSplit):
            split_nonsingular(FieldMatrix.identity(field_of_order(2), 1))


class TestTorus:
    @pytest.mark.parametrize("q, n", [(2, 1), (3, 1), (4, 1)])
    def test_involution_factorization(self, q, n):
        t = regular_torus_factor(q, n)
        assert t.prime == zsigmondy_prime(q, 4 * n)
        assert t.psi.order() == t.prime
        assert (t.pi1 * t.pi1).is_identity() and (t.pi2 * t.pi2).is_identity()
        assert t.pi1 * t.pi2 == t.psi
        assert t.pi1 * t.psi * t.pi1.inverse() == t.psi.inverse()
        assert t.psi.det() == 1 and t.pi1.det() == 1


class TestGenericMatrices:
    def test_permutation_matrix_sequence(self):
        seq = sl_generic_sequence(2, 3, 2)
        assert all(a.det() == 1 and (a * a).is_identity() for a in seq)
        assert all(a * b == b * a for a in seq for b in seq)


class TestCoveringRadius:
    def test_sl4_2_within_bound(self):
        field = field_of_order(2)
        group = SpecialLinearGroup(4, field)
        report = class_covering_radius(group, class_c_representative(field, 1), bound=5)
        assert sum(report.profile) == group.order
        assert report.noncentral_radius <= 5
        assert report.distance(FieldMatrix.identity(field, 4)) == 0

    def test_bound_exceeded(self):
        field = field_of_order(2)
        group = SpecialLinearGroup(3, field)
        with pytest.raises(BoundExceeded):
            class_covering_radius(group, FieldMatrix.elementary(field, 3, 0, 1, 1), bound=1)

    def test_sampled_distances_respect_bound(self, rng):
        field = field_of_order(2)
        group = SpecialLinearGroup(3, field)
        transvection = FieldMatrix.elementary(field, 3, 0, 1, 1)
        distances = sampled_class_distances(group, transvection, 40, rng, bound=5)
        assert max(distances) == 3
        with pytest.raises(BoundExceeded) as info:
            sampled_class_distances(group, transvection, 40, rng, bound=2)
        assert info.value.details["bound"] == 2

    def test_group_too_large(self):
        field = field_of_order(3)
        with pytest.raises(GroupTooLarge):
            class_covering_radius(SpecialLinearGroup(8, field), class_c_representative(field, 2))

    def test_central_representative(self):
        field = field_of_order(3)
        with pytest.raises(ValidationError):
            class_covering_radius(SpecialLinearGroup(2, field), FieldMatrix.identity(field, 2))
