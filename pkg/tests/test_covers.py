"""群窗口、覆盖、星积、有界闭包与逃逸元素"""

import json
import random

import pytest

from src.core.exceptions import (
    DepthExplosion,
    HypothesisViolated,
    InvalidCover,
    ParseError,
    ShapeMismatch,
    ValidationError,
)
from src.covers import (
    BoundedClosure,
    BoundFunction,
    Cover,
    GroupFamily,
    check_group,
    check_hypothesis,
    closure_enumerate,
    covered_subgroup_contains,
    default_window,
    escape_element,
    find_nonassociative_triple,
    load_covers,
    parse_group,
    random_cover,
    save_covers,
    star,
    star_size_bound,
)
from src.permutations.permutation import parse_cycles


@pytest.fixture
def alt4():
    return GroupFamily.parse(["Alt(4)"])


def pick_covered(c, rng):
    """在覆盖 c 的每个下标集合里随机取一个元素"""
    return tuple(rng.choice(sorted(s, key=group.format)) for group, s in zip(c.family, c.sets))


def single(family, *texts):
    """单下标窗口上由若干元素生成的覆盖"""
    group = family[0]
    return Cover.from_generators(family, [[group.parse(t) for t in texts]])


class TestGroups:
    @pytest.mark.parametrize("text, order", [
        ("Sym(4)", 24),
        ("Alt(5)", 60),
        ("Z(7)", 7),
        ("SL(2,3)", 24),
        (" SL( 2 , 2 ) ", 6),
    ])
    def test_parse_and_order(self, text, order, rng):
        group = parse_group(text)
        assert group.order == order
        check_group(group, rng, samples=16)

    @pytest.mark.parametrize("text", ["Foo(3)", "SL(2)", "Sym(2,3)", "Z(0)", "Sym"])
    def test_bad_descriptor(self, text):
        with pytest.raises(ParseError):
            parse_group(text)

    def test_elements_are_enumerated_lazily_in_order(self):
        group = parse_group("Sym(3)")
        elements = list(group.elements())
        assert len(elements) == 6
        assert elements[0] == group.identity()

    def test_alternating_rejects_odd(self):
        group = parse_group("Alt(4)")
        assert not group.contains(parse_cycles("(1 2)", 4))
        assert group.contains(parse_cycles("(1 2)(3 4)", 4))

    def test_window_tuple_round_trip(self, rng):
        family = GroupFamily.parse(["Sym(4)", "Z(5)", "SL(2,3)"])
        g = family.random_tuple(rng)
        assert family.parse_tuple(family.format_tuple(g)) == g
        assert family.mul(g, family.inv(g)) == family.identity()

    def test_empty_window(self):
        with pytest.raises(ParseError):
            GroupFamily.parse([])

    def test_default_window(self):
        assert default_window(6).describe() == ["Sym(4)", "Sym(6)", "Sym(8)", "Sym(11)", "Sym(14)", "Sym(17)"]


class TestCoverInvariants:
    def test_from_generators_adds_identity_and_inverses(self, alt4):
        c = single(alt4, "(1 2 3)")
        assert c.sizes() == [3]
        assert c.covers((parse_cycles("(1 3 2)", 4),))

    def test_missing_identity(self, alt4):
        with pytest.raises(InvalidCover):
            Cover(alt4, (frozenset([parse_cycles("(1 2)(3 4)", 4)]),))

    def test_not_closed_under_inverse(self, alt4):
        one = alt4[0].identity()
        with pytest.raises(InvalidCover):
            Cover(alt4, (frozenset([one, parse_cycles("(1 2 3)", 4)]),))

    def test_element_outside_group(self, alt4):
        one = alt4[0].identity()
        with pytest.raises(InvalidCover):
            Cover(alt4, (frozenset([one, parse_cycles("(1 2)", 4)]),))

    def test_shape_mismatch(self, alt4):
        with pytest.raises(ShapeMismatch):
            Cover.from_generators(alt4, [[], []])
        with pytest.raises(ShapeMismatch):
            single(alt4).covers(())

    def test_bound_function(self):
        f = BoundFunction()
        assert [f(n) for n in range(3)] == [4, 8, 16]
        assert f.hypothesis(1) == 2 * 8 ** 2
        with pytest.raises(InvalidCover):
            BoundFunction(base=0)


class TestStar:
    def test_star_is_a_cover(self, rng):
        family = default_window(4)
        for _ in range(10):
            c1, c2 = random_cover(family, rng), random_cover(family, rng)
            product = star(c1, c2)
            for group, s in zip(family, product.sets):
                assert group.identity() in s
                assert all(group.inv(a) in s for a in s)
            assert all(n <= b for n, b in zip(product.sizes(), star_size_bound(c1, c2)))

    def test_size_bound_on_many_pairs(self, rng):
        family = default_window(2)
        pool = [random_cover(family, rng, generators=rng.randrange(1, 4)) for _ in range(100)]
        for c1 in pool:
            for c2 in pool:
                product = star(c1, c2)
                assert all(n <= b for n, b in zip(product.sizes(), star_size_bound(c1, c2)))

    def test_trusted_result_equals_validated_cover(self, rng):
        family = default_window(3)
        c1, c2 = random_cover(family, rng), random_cover(family, rng)
        product = star(c1, c2)
        assert Cover(family, product.sets) == product
        assert hash(Cover(family, product.sets)) == hash(product)

    def test_star_contains_products(self, alt4):
        c, d = single(alt4, "(1 2 3)"), single(alt4, "(1 2)(3 4)")
        a, b = parse_cycles("(1 2 3)", 4), parse_cycles("(1 2)(3 4)", 4)
        assert (c * d).covers((a * b,))
        assert (c * d).covers(((a * b).inverse(),))

    def test_star_is_not_associative(self, alt4):
        c = single(alt4, "(1 2 3)")
        d = e = single(alt4, "(1 2)(3 4)")
        assert star(star(c, d), e).sizes() == [10]
        assert star(c, star(d, e)).sizes() == [8]

    def test_find_nonassociative_triple(self, alt4):
        c, d, e = find_nonassociative_triple(alt4)
        assert star(star(c, d), e) != star(c, star(d, e))

    def test_different_windows(self, alt4):
        other = GroupFamily.parse(["Sym(4)"])
        with pytest.raises(ShapeMismatch):
            star(single(alt4), Cover.identity_cover(other))


class TestClosure:
    def test_depth_zero_and_one(self, alt4):
        c = single(alt4, "(1 2 3)", "(1 2)(3 4)")
        assert c * c != c
        assert closure_enumerate([c], 0) == [c]
        assert closure_enumerate([c], 1) == [c, c * c]

    def test_subgroup_cover_is_idempotent(self, alt4):
        c = single(alt4, "(1 2 3)")
        assert closure_enumerate([c], 3) == [c]

    def test_monotone_in_depth(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng) for _ in range(2)]
        previous = set()
        for depth in range(4):
            current = set(closure_enumerate(base, depth))
            assert previous <= current
            previous = current

    def test_schedule_has_no_duplicates(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng) for _ in range(3)]
        schedule = BoundedClosure(base, 2).materialize()
        assert len(schedule) == len(set(schedule))
        assert schedule[:3] == base

    def test_contains_identity(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng)]
        assert covered_subgroup_contains(base, 2, family.identity())

    def test_contains_matches_schedule(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng) for _ in range(2)]
        closure = BoundedClosure(base, 2)
        schedule = closure.materialize()
        for _ in range(20):
            g = family.random_tuple(rng)
            assert closure.contains(g) == any(c.covers(g) for c in schedule)

    def test_products_of_covered_elements(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng) for _ in range(2)]
        for _ in range(10):
            c, d = rng.choice(base), rng.choice(base)
            g, h = pick_covered(c, rng), pick_covered(d, rng)
            gh = family.mul(g, h)
            assert covered_subgroup_contains(base, 1, gh)
            assert covered_subgroup_contains(base, 1, family.inv(gh))

    def test_products_across_levels(self, rng):
        family = default_window(3)
        base = [random_cover(family, rng) for _ in range(2)]
        levels = BoundedClosure(base, 2).stored_levels()
        closure = BoundedClosure(base, 3)
        for _ in range(10):
            i, j = rng.randrange(2), rng.randrange(2)
            c, d = rng.choice(levels[i]), rng.choice(levels[j])
            gh = family.mul(pick_covered(c, rng), pick_covered(d, rng))
            assert (c * d).covers(gh)
            assert covered_subgroup_contains(base, i + j + 1, gh)
            assert closure.contains(gh)

    def test_depth_explosion(self, alt4):
        base = [single(alt4, "(1 2 3)"), single(alt4, "(1 2)(3 4)")]
        with pytest.raises(DepthExplosion):
            BoundedClosure(base, 2, max_covers=1)

    def test_empty_base(self):
        with pytest.raises(ValidationError):
            BoundedClosure([], 1)


class TestEscape:
    def _escape(self, rng, count, depth, window=6):
        family = default_window(window)
        base = [random_cover(family, rng) for _ in range(count)]
        report = escape_element(base, depth)
        assert report.escaped
        assert not covered_subgroup_contains(base, depth, report.g)
        return report

    def test_three_covers_depth_two(self, rng):
        report = self._escape(rng, 3, 2)
        data = report.to_dict()
        assert data["escaped"] is True
        assert len(data["g"]) == 6

    @pytest.mark.full
    def test_ten_covers_depth_two(self, rng):
        self._escape(rng, 10, 2)

    @pytest.mark.full
    def test_ten_covers_depth_three(self, rng):
        report = self._escape(rng, 10, 3)
        assert report.checked_covers > 10

    def test_deeper_schedule_still_escapes(self, rng):
        family = default_window(6)
        base = [random_cover(family, rng) for _ in range(3)]
        shallow = escape_element(base, 2)
        deeper = escape_element(base, 3)
        assert shallow.escaped and deeper.escaped
        assert deeper.checked_covers >= shallow.checked_covers
        assert not covered_subgroup_contains(base, 3, deeper.g)

    @pytest.mark.big
    def test_four_covers_depth_three(self, rng):
        self._escape(rng, 4, 3)

    def test_deterministic(self):
        first = self._escape(random.Random(5), 2, 1)
        second = self._escape(random.Random(5), 2, 1)
        assert first.g == second.g

    def test_hypothesis_violated(self):
        family = GroupFamily.parse(["Z(2)", "Z(2)"])
        with pytest.raises(HypothesisViolated) as info:
            escape_element([Cover.identity_cover(family)], 1)
        assert info.value.details["index"] == 0
        assert info.value.details["needed"] == 4

    def test_check_hypothesis_on_default_window(self):
        check_hypothesis(default_window(6), BoundFunction(), range(6))

    def test_rejects_oversized_cover(self, alt4):
        c = Cover(alt4, (frozenset(alt4[0].elements()),))
        with pytest.raises(InvalidCover):
            escape_element([c], 1)


class TestCoverFiles:
    def test_save_and_load(self, tmp_path, rng):
        family = default_window(3)
        items = [random_cover(family, rng) for _ in range(3)]
        path = tmp_path / "covers.json"
        save_covers(path, family, items, BoundFunction(base=3, offset=1))
        loaded_family, loaded, bound = load_covers(path)
        assert loaded_family == family
        assert loaded == items
        assert bound == BoundFunction(base=3, offset=1)

    def test_single_cover_file(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"window": ["Alt(4)"], "sets": [["()", "(1 2 3)", "(1 3 2)"]]}), encoding="utf-8")
        family, items, bound = load_covers(path)
        assert family.describe() == ["Alt(4)"]
        assert items[0].sizes() == [3]
        assert bound is None

    @pytest.mark.parametrize("body", [
        "not json",
        json.dumps({"sets": [["()"]]}),
        json.dumps({"window": ["Alt(4)"]}),
    ])
    def test_malformed_files(self, tmp_path, body):
        path = tmp_path / "bad.json"
        path.write_text(body, encoding="utf-8")
        with pytest.raises(ParseError):
            load_covers(path)

    def test_file_with_invalid_cover(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"window": ["Alt(4)"], "sets": [["(1 2 3)"]]}), encoding="utf-8")
        with pytest.raises(InvalidCover):
            load_covers(path)
