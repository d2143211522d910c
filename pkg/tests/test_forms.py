"""形式空间、平方和、对称矩阵模分解、Sp / SU(3) 短字与偶重向量"""

from dataclasses import replace
from itertools import product

import pytest

from src.core.exceptions import (
    ConfigurationError,
    DependentPair,
    DimensionMismatch,
    DimensionTooSmall,
    OddWeight,
    ParseError,
    ValidationError,
    ZeroLambda,
)
from src.fields.galois import field_of_order
from src.forms.even_weight import even_weight_decompose, permute_vector, standard_half_vector
from src.forms.orthogonal import pair_span_decompose, sl_transporter
from src.forms.spaces import (
    KINDS,
    form_value,
    is_isometry,
    make_space,
    parse_space,
    quadratic_value,
    su3_space,
    weyl_generators,
)
from src.forms.squares import four_squares, square_root, two_squares
from src.forms.symmetric import (
    CASE_BOUNDS,
    case_of,
    diagonalize_symmetric,
    is_alternating,
    is_symmetric,
    symmetric_module_factor,
)
from src.forms.symplectic import (
    sl2_triangular_word,
    sp_borel_torus_word,
    sp_predicates,
    sp_unipotent_word,
    unipotent_predicates,
)
from src.forms.tables import (
    load_tables,
    minimal_terms,
    search_sum_table,
    sl2_gf3_table,
    sl3_gf2_table,
    validate_table,
)
from src.forms.unitary import (
    in_l,
    lambda_split,
    su3_diagonal,
    su3_diagonal_word,
    su3_predicates,
    su3_torus_factor,
    twisted_antidiagonal,
)
from src.matrices.matrix import FieldMatrix, format_matrix, random_sl


def symmetric_matrices(d, field):
    """全部 d×d 对称矩阵，按上三角坐标枚举"""
    coords = [(i, j) for i in range(d) for j in range(i, d)]
    for values in product(range(field.q), repeat=len(coords)):
        rows = [[0] * d for _ in range(d)]
        for (i, j), v in zip(coords, values):
            rows[i][j] = rows[j][i] = v
        yield FieldMatrix(field, rows)


class TestSpaces:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_weyl_generators_are_isometries(self, kind, q):
        space = make_space(kind, 2, q)
        gens = weyl_generators(kind, 2, q)
        assert gens
        for w in gens:
            assert is_isometry(space, w), format_matrix(w)

    def test_symplectic_form_is_alternating(self):
        space = make_space("symplectic", 2, 5)
        e1, f1 = [1, 0, 0, 0], [0, 0, 1, 0]
        assert form_value(space, e1, f1).value == 1
        assert form_value(space, f1, e1).value == space.field.neg(1)
        assert form_value(space, e1, e1).value == 0

    def test_quadratic_values(self):
        space = make_space("quadratic-plus", 1, 3)
        assert quadratic_value(space, [1, 1]).value == 1
        assert quadratic_value(space, [1, 0]).value == 0

    def test_minus_type_anisotropic_part(self):
        space = make_space("quadratic-minus", 1, 3)
        f = space.field
        for w, z in product(f.elements(), repeat=2):
            if (w, z) != (0, 0):
                assert quadratic_value(space, [0, 0, w, z]).value != 0

    def test_quadratic_value_needs_quadratic_space(self):
        with pytest.raises(ValidationError):
            quadratic_value(make_space("symplectic", 1, 3), [1, 0])

    def test_hermitian_lives_over_quadratic_extension(self):
        space = make_space("hermitian", 2, 3)
        assert space.field.q == 9
        assert space.describe() == "hermitian,2,3"
        assert su3_space(3).dim == 3

    def test_descriptor_round_trip(self):
        space = parse_space("symplectic,2,5")
        assert parse_space(space.describe()).gram == space.gram

    @pytest.mark.parametrize("text", ["symplectic,2", "symplectic,x,5", ""])
    def test_bad_descriptor(self, text):
        with pytest.raises(ParseError):
            parse_space(text)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            make_space("spin", 2, 3)

    def test_isometry_dimension_mismatch(self):
        space = make_space("symplectic", 2, 3)
        with pytest.raises(DimensionMismatch):
            is_isometry(space, FieldMatrix.identity(space.field, 2))


class TestSquares:
    @pytest.mark.parametrize("q", [5, 7, 11])
    def test_four_nonzero_squares(self, q):
        f = field_of_order(q)
        for lam in f.elements():
            betas = four_squares(f, lam)
            assert all(b != 0 for b in betas)
            total = 0
            for b in betas:
                total = f.add(total, f.mul(b, b))
            assert total == lam

    @pytest.mark.parametrize("q", [2, 3, 9])
    def test_four_squares_needs_large_characteristic(self, q):
        with pytest.raises(ValidationError):
            four_squares(field_of_order(q), 1)

    def test_two_squares(self, small_field):
        f = small_field
        for lam in f.elements():
            a, b = two_squares(f, lam)
            assert f.add(f.mul(a, a), f.mul(b, b)) == lam

    def test_square_root(self):
        f = field_of_order(7)
        assert f.mul(square_root(f, 2), square_root(f, 2)) == 2
        assert square_root(f, 3) is None


class TestSymmetricFactor:
    def _exhaust(self, d, q):
        field = field_of_order(q)
        bound = CASE_BOUNDS[case_of(field)]
        for s in symmetric_matrices(d, field):
            combo = symmetric_module_factor(s)
            assert combo.is_valid(), format_matrix(s)
            assert len(combo) <= bound

    @pytest.mark.parametrize("d, q", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (2, 9), (3, 2)])
    def test_exhaustive_small(self, d, q):
        self._exhaust(d, q)

    @pytest.mark.full
    @pytest.mark.parametrize("d, q", [(3, 3), (3, 4), (3, 5), (4, 2)])
    def test_exhaustive_larger(self, d, q):
        self._exhaust(d, q)

    @pytest.mark.big
    @pytest.mark.parametrize("d, q", [(3, 7), (3, 9)])
    def test_exhaustive_big(self, d, q):
        self._exhaust(d, q)

    @pytest.mark.parametrize("d, q", [(5, 5), (6, 3), (6, 2), (7, 4)])
    def test_sampled(self, d, q, rng):
        field = field_of_order(q)
        matrices = []
        for _ in range(5):
            a = FieldMatrix(field, [[rng.randrange(q) for _ in range(d)] for _ in range(d)])
            matrices.append(a + a.transpose() + FieldMatrix.diagonal(field, [rng.randrange(q) for _ in range(d)]))
        for s in matrices:
            combo = symmetric_module_factor(s)
            assert combo.is_valid(), format_matrix(s)
            assert len(combo) <= CASE_BOUNDS[case_of(field)]

    def test_json_lists_terms(self):
        s = FieldMatrix(field_of_order(5), [[1, 2], [2, 3]])
        data = symmetric_module_factor(s).to_json()
        assert data["target"] == format_matrix(s)
        assert {term["generator"] for term in data["terms"]} <= {"D1", "D2"}

    def test_diagonalize_uses_special_linear_congruence(self, rng):
        field = field_of_order(7)
        for _ in range(10):
            a = FieldMatrix(field, [[rng.randrange(7) for _ in range(4)] for _ in range(4)])
            s = a + a.transpose()
            p, lam = diagonalize_symmetric(s)
            assert p.det() == 1
            assert p * s * p.transpose() == FieldMatrix.diagonal(field, lam)

    def test_dimension_too_small(self):
        with pytest.raises(DimensionTooSmall):
            symmetric_module_factor(FieldMatrix.identity(field_of_order(5), 1))

    def test_plane_characteristic_two(self):
        f2, f4 = field_of_order(2), field_of_order(4)
        assert len(symmetric_module_factor(FieldMatrix.zeros(f2, 2))) == 0
        combo = symmetric_module_factor(FieldMatrix.diagonal(f4, [1, 0]))
        assert combo.is_valid()
        assert len(combo) == 1
        for s in (FieldMatrix.identity(f2, 2), FieldMatrix(f4, [[2, 1], [1, 3]]), FieldMatrix.diagonal(f4, [0, 3])):
            combo = symmetric_module_factor(s)
            assert combo.is_valid(), format_matrix(s)
            assert {tag for _, tag in combo.terms} == {"D1"}

    @pytest.mark.parametrize("q", [2, 4])
    def test_plane_alternating(self, q):
        f = field_of_order(q)
        for b in f.nonzero():
            s = FieldMatrix(f, [[0, b], [b, 0]])
            assert is_alternating(s)
            combo = symmetric_module_factor(s)
            assert combo.is_valid(), format_matrix(s)
            assert 0 < len(combo) <= 4

    def test_rejects_non_symmetric(self):
        s = FieldMatrix(field_of_order(5), [[1, 2], [0, 1]])
        assert not is_symmetric(s)
        with pytest.raises(ValidationError):
            symmetric_module_factor(s)


class TestSymplecticWords:
    def test_documented_example(self):
        witness = sp_borel_torus_word(2, 2, 5)
        assert witness.target == FieldMatrix.diagonal(field_of_order(5), [2, 1, 3, 1])
        assert witness.tags == ["X", "Y", "X", "X", "Y", "X"]

    @pytest.mark.parametrize("d, q", [(1, 3), (2, 5), (2, 4), (3, 7)])
    def test_borel_torus_word(self, d, q):
        space = make_space("symplectic", d, q)
        predicates = sp_predicates(space)
        for lam in space.field.nonzero():
            witness = sp_borel_torus_word(lam, d, q)
            assert len(witness) == 6
            assert witness.is_valid(predicates), lam

    def test_zero_lambda(self):
        with pytest.raises(ZeroLambda):
            sp_borel_torus_word(0, 2, 5)

    @pytest.mark.parametrize("q", [3, 5])
    def test_unipotent_word(self, q):
        field = field_of_order(q)
        predicates = unipotent_predicates(field, 2)
        for s in symmetric_matrices(2, field):
            if not s.entries.any():
                continue
            assert sp_unipotent_word(s).is_valid(predicates), format_matrix(s)

    @pytest.mark.parametrize("q", [3, 4])
    def test_sl2_triangular_word(self, q):
        field = field_of_order(q)
        for flat in product(range(q), repeat=4):
            a = FieldMatrix(field, [list(flat[:2]), list(flat[2:])])
            if a.det() != 1:
                continue
            letters = sl2_triangular_word(a)
            acc = FieldMatrix.identity(field, 2)
            for m, tag in letters:
                assert m.is_upper_triangular() == (tag == "X")
                acc = acc * m
            assert acc == a

    def test_triangular_word_needs_sl2(self):
        with pytest.raises(ValidationError):
            sl2_triangular_word(FieldMatrix.diagonal(field_of_order(5), [2, 2]))


class TestSu3:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_torus_factor(self, q):
        space = su3_space(q)
        f = space.field
        predicates = su3_predicates(space)
        for lam in f.nonzero():
            if not in_l(f, lam):
                continue
            torus = su3_torus_factor(space, lam)
            assert torus.product() == twisted_antidiagonal(f, lam)
            assert predicates["U"](torus.a1) and predicates["U"](torus.a2)
            assert predicates["V"](torus.b)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_lambda_split(self, q):
        f = su3_space(q).field
        for lam in f.nonzero():
            lam1, lam2 = lambda_split(f, lam)
            assert in_l(f, lam1) and in_l(f, lam2)
            assert f.mul(lam1, f.inv(f.conjugate(lam2))) == lam

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_diagonal_word(self, q):
        space = su3_space(q)
        predicates = su3_predicates(space)
        for lam in space.field.nonzero():
            witness = su3_diagonal_word(q, lam)
            assert witness.tags == ["U", "V", "U", "U", "V", "U"]
            assert witness.target == su3_diagonal(space.field, lam)
            assert witness.is_valid(predicates), lam

    def test_zero_lambda(self):
        space = su3_space(3)
        with pytest.raises(ZeroLambda):
            su3_torus_factor(space, 0)
        with pytest.raises(ZeroLambda):
            lambda_split(space.field, 0)


class TestEvenWeight:
    @pytest.mark.parametrize("d", range(2, 9))
    def test_exhaustive(self, d):
        v = standard_half_vector(d)
        for bits in product((0, 1), repeat=d):
            if sum(bits) % 2:
                continue
            pi, phi = even_weight_decompose(list(bits), d)
            total = [(a + b) % 2 for a, b in zip(permute_vector(pi, v), permute_vector(phi, v))]
            assert total == list(bits)

    def test_half_vector_weight(self):
        assert sum(standard_half_vector(6)) == 3
        assert sum(standard_half_vector(7)) == 3

    def test_odd_weight(self):
        with pytest.raises(OddWeight):
            even_weight_decompose([1, 0, 0], 3)

    @pytest.mark.parametrize("u, d", [([0], 1), ([0, 2], 2), ([0, 0], 3)])
    def test_bad_input(self, u, d):
        with pytest.raises(ValidationError):
            even_weight_decompose(u, d)


class TestPairSpan:
    @pytest.mark.parametrize("d, q", [(3, 2), (3, 3), (4, 5)])
    def test_sampled(self, d, q, rng):
        f = field_of_order(q)
        for _ in range(20):
            m = random_sl(d, f, rng)
            a = [int(x) for x in m.entries[:, 0]]
            b = [int(x) for x in m.entries[:, 1]]
            x = [rng.randrange(q) for _ in range(d)]
            y = [rng.randrange(q) for _ in range(d)]
            big_a, big_b = pair_span_decompose(f, x, y, a, b)
            assert big_a.det() == 1 and big_b.det() == 1
            assert [f.add(s, t) for s, t in zip(big_a.apply(a), big_b.apply(a))] == x
            assert [f.add(s, t) for s, t in zip(big_a.apply(b), big_b.apply(b))] == y

    def test_dimension_too_small(self):
        f = field_of_order(3)
        with pytest.raises(DimensionTooSmall):
            pair_span_decompose(f, [1, 0], [0, 1], [1, 0], [0, 1])

    def test_dependent_pair(self):
        f = field_of_order(3)
        with pytest.raises(DependentPair):
            pair_span_decompose(f, [1, 0, 0], [0, 1, 0], [1, 1, 0], [2, 2, 0])

    def test_length_mismatch(self):
        f = field_of_order(3)
        with pytest.raises(DimensionMismatch):
            pair_span_decompose(f, [1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 1])

    def test_transporter(self):
        f = field_of_order(5)
        sources = [[1, 0, 0], [0, 1, 0]]
        images = [[1, 2, 3], [0, 1, 4]]
        g = sl_transporter(f, sources, images)
        assert g.det() == 1
        assert [g.apply(s) for s in sources] == images


class TestTables:
    def test_shipped_tables_validate(self):
        tables = load_tables()
        assert set(tables) >= {"sl2_gf3", "sl3_gf2"}
        assert sl2_gf3_table().terms == 6
        assert sl3_gf2_table().terms == 4

    def test_lookup_sums_to_pattern(self):
        table = sl3_gf2_table()
        mats = table.lookup((1, 0, 1))
        assert len(mats) == table.terms

    def test_corrupted_table_is_rejected(self):
        table = sl2_gf3_table()
        patterns = dict(table.patterns)
        patterns["10"] = table.patterns["01"]
        with pytest.raises(ConfigurationError):
            validate_table(replace(table, patterns=patterns))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_tables(tmp_path / "missing.yaml")

    @pytest.mark.parametrize("p, n, terms", [(3, 2, 6), (2, 3, 4)])
    def test_search_reproduces_valid_table(self, p, n, terms):
        validate_table(search_sum_table(p, n, terms))

    def test_minimal_terms_within_table_length(self):
        table = sl2_gf3_table()
        found = minimal_terms(3, 2)
        assert set(found) == set(table.patterns)
        assert all(k <= table.terms for k in found.values())
