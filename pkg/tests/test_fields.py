"""有限域、本原素因子与正规基"""

import numpy as np
import pytest

from src.core.exceptions import DegreeTooLarge, FieldMismatch, NonPrime, NoZsigmondy, ParseError, Singular
from src.fields import (
    conjugate,
    determinant,
    field_of_order,
    frobenius_orbit_rank,
    is_irreducible,
    make_field,
    normal_basis_coordinates,
    normal_basis_generator,
    parse_element,
    parse_field,
    rank,
    solve,
    split_prime_power,
    subfield_embedding,
    zsigmondy_prime,
)


class TestFieldArithmetic:
    def test_field_axioms(self, small_field):
        f = small_field
        for a in f.elements():
            assert f.add(a, 0) == a
            assert f.mul(a, 1) == a
            assert f.add(a, f.neg(a)) == 0
            for b in f.elements():
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)

    def test_distributive(self, small_field):
        f = small_field
        for a in f.elements():
            for b in f.elements():
                for c in (0, 1, f.q - 1):
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))

    def test_inverse(self, small_field):
        f = small_field
        for a in f.nonzero():
            assert f.mul(a, f.inv(a)) == 1
            assert f.div(a, a) == 1

    def test_power_matches_repeated_product(self, gf9):
        for a in gf9.elements():
            acc = 1
            for e in range(10):
                assert gf9.power(a, e) == acc
                acc = gf9.mul(acc, a)

    def test_multiplicative_group_is_cyclic(self, small_field):
        f = small_field
        orders = [f.multiplicative_order(a) for a in f.nonzero()]
        assert max(orders) == f.q - 1
        assert all((f.q - 1) % o == 0 for o in orders)

    def test_vectorized_matches_scalar(self):
        f = field_of_order(8)
        a = np.array([x for x in f.elements() for _ in f.elements()])
        b = np.array([y for _ in f.elements() for y in f.elements()])
        assert f.vmul(a, b).tolist() == [f.mul(int(x), int(y)) for x, y in zip(a, b)]
        assert f.vadd(a, b).tolist() == [f.add(int(x), int(y)) for x, y in zip(a, b)]

    def test_element_operators(self, gf9):
        x = gf9.element(4)
        y = gf9.element(7)
        assert (x + y).value == gf9.add(4, 7)
        assert (x * y).value == gf9.mul(4, 7)
        assert (x / y) * y == x
        assert x * x.inverse() == 1
        assert (x + 1).value == gf9.add(4, 1)

    def test_integer_comparison_reduces_mod_p(self, gf9):
        f7 = field_of_order(7)
        minus_one = f7.element(6)
        assert minus_one == -1
        assert minus_one == 13
        assert f7.element(0) == 7
        assert minus_one + 1 == 0
        assert gf9.element(2) == -1
        assert gf9.element(5) != 5
        assert (gf9.element(2) == np.int64(-1)) is True


class TestFrobenius:
    def test_is_field_automorphism(self, small_field):
        f = small_field
        for a in f.elements():
            for b in f.elements():
                assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
                assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))

    def test_full_power_is_identity(self, small_field):
        f = small_field
        for a in f.elements():
            assert f.frobenius(a, f.k) == a

    def test_conjugate_is_involution(self, gf9):
        for code in gf9.elements():
            x = gf9.element(code)
            assert conjugate(conjugate(x)) == x
            norm = x * conjugate(x)
            # 范数落在 GF(3)
            assert norm.frobenius(1) == norm

    def test_conjugate_needs_even_degree(self):
        with pytest.raises(FieldMismatch):
            conjugate(field_of_order(5).element(2))


class TestConstruction:
    def test_prime_power_split(self):
        assert split_prime_power(8) == (2, 3)
        assert split_prime_power(9) == (3, 2)
        assert split_prime_power(7) == (7, 1)

    @pytest.mark.parametrize("q", [1, 6, 12, 100])
    def test_rejects_non_prime_powers(self, q):
        with pytest.raises(NonPrime):
            field_of_order(q)

    def test_rejects_composite_characteristic(self):
        with pytest.raises(NonPrime):
            make_field(6, 1)

    def test_degree_cap(self):
        with pytest.raises(DegreeTooLarge):
            make_field(2, 40)

    def test_modulus_is_deterministic(self, gf4):
        assert gf4.modulus == (1, 1, 1)
        assert make_field(2, 2) is gf4
        assert is_irreducible(gf4.modulus, 2)
        assert not is_irreducible((1, 0, 1), 2)

    def test_field_descriptor_round_trip(self, gf9):
        assert parse_field(gf9.describe()) == gf9

    def test_field_descriptor_rejects_other_modulus(self, gf9):
        assert gf9.modulus == (1, 0, 1)
        with pytest.raises(ParseError):
            parse_field("3,2,1,1,1")


class TestElementText:
    def test_format_and_parse(self, gf9):
        for code in gf9.elements():
            x = gf9.element(code)
            assert parse_element(str(x), gf9) == x

    def test_text_lists_digits(self, gf9):
        assert str(gf9.element(gf9.from_digits([1, 2]))) == "3^2:1,2"

    @pytest.mark.parametrize("text", ["3^2:1", "3^2:1,5", "3:1,2", "x^2:1,1", ""])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_element(text)

    def test_field_mismatch(self, gf9):
        with pytest.raises(FieldMismatch):
            parse_element("2^2:1,0", gf9)


class TestZsigmondy:
    @pytest.mark.parametrize("q, m, r", [(2, 3, 7), (2, 4, 5), (2, 5, 31), (3, 3, 13), (3, 4, 5), (5, 2, 3)])
    def test_known_primes(self, q, m, r):
        assert zsigmondy_prime(q, m) == r

    @pytest.mark.parametrize("q, m", [(2, 6), (3, 2)])
    def test_exceptions(self, q, m):
        with pytest.raises(NoZsigmondy):
            zsigmondy_prime(q, m)


class TestNormalBasis:
    @pytest.mark.parametrize("q, d", [(2, 3), (2, 4), (3, 2), (4, 2), (5, 3)])
    def test_generator_spans(self, q, d):
        tau = normal_basis_generator(q, d)
        assert frobenius_orbit_rank(tau, q, d) == d

    @pytest.mark.parametrize("q, d", [(2, 3), (4, 2), (3, 2)])
    def test_coordinates_reconstruct(self, q, d):
        tau = normal_basis_generator(q, d)
        big = tau.field
        small = field_of_order(q)
        p, a = split_prime_power(q)
        basis = [tau.frobenius(a * j) for j in range(d)]
        embed = subfield_embedding(big, small)
        for code in big.elements():
            v = big.element(code)
            coords = normal_basis_coordinates(basis, small, v)
            acc = 0
            for c, b in zip(coords, basis):
                acc = big.add(acc, big.mul(embed[c], b.value))
            assert acc == code

    def test_embedding_is_homomorphism(self):
        big, small = field_of_order(16), field_of_order(4)
        embed = subfield_embedding(big, small)
        for a in small.elements():
            for b in small.elements():
                assert embed[small.add(a, b)] == big.add(embed[a], embed[b])
                assert embed[small.mul(a, b)] == big.mul(embed[a], embed[b])

    def test_embedding_needs_divisible_degree(self):
        with pytest.raises(FieldMismatch):
            subfield_embedding(field_of_order(8), field_of_order(4))


class TestLinearAlgebra:
    def test_solve_and_determinant(self):
        f = field_of_order(7)
        m = [[1, 2], [3, 4]]
        assert determinant(f, m) == f.sub(4, 6)
        x = solve(f, m, [5, 6])
        assert [f.add(f.mul(1, x[0]), f.mul(2, x[1])), f.add(f.mul(3, x[0]), f.mul(4, x[1]))] == [5, 6]

    def test_singular(self):
        f = field_of_order(5)
        assert rank(f, [[1, 2], [2, 4]]) == 1
        assert determinant(f, [[1, 2], [2, 4]]) == 0
        with pytest.raises(Singular):
            solve(f, [[1, 2], [2, 4]], [1, 1])
