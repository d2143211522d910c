"""
verify 子命令的逐引理扫描

统一签名：fn(params, limits) -> Iterator[CaseResult]，每组参数产生一条结果。
limits 来自引理注册表中当前配置档的上限：
- samples: 抽样数，0 或缺省表示穷举
- exhaustive_order / exhaustive_keys: 不超过该规模时穷举，否则按 samples 抽样
"""

import random
import time
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional

from src.cli.factorizers import torus_predicates, torus_witness
from src.cli.models import CaseResult, RunParams
from src.core.exceptions import AppError, BoundExceeded, GroupTooLarge, NonPrime
from src.core.logging_setup import get_logger
from src.core.metrics import metrics
from src.core.settings import get_settings
from src.covers.groups import AlternatingGroup, LinearGroup
from src.fields.galois import field_of_order, split_prime_power
from src.forms.even_weight import even_weight_decompose, permute_vector, standard_half_vector
from src.forms.orthogonal import pair_span_decompose
from src.forms.spaces import make_space, su3_space
from src.forms.symmetric import CASE_BOUNDS, case_of, symmetric_module_factor
from src.forms.symplectic import sp_borel_torus_word, sp_predicates
from src.forms.unitary import in_l, lambda_split, su3_diagonal_word, su3_predicates, su3_torus_factor, twisted_antidiagonal
from src.matrices.covering import SpecialLinearGroup, class_c_representative, class_covering_radius, sampled_class_distances
from src.matrices.matrix import FieldMatrix, format_matrix, random_matrix, random_sl
from src.matrices.sl_double import sl_double_factor, sl_double_predicates
from src.matrices.sl_step import sl_step_factor, sl_step_predicates
from src.matrices.splitting import split_nonsingular
from src.permutations.brenner import brenner_factor, brenner_predicates
from src.permutations.generic import (
    alt_class_count,
    canonical_conjugator,
    diagonal_centralizer_element,
    enumerate_generic_sequences,
    find_conjugator_exhaustive,
    generic_sequence,
    is_generic,
)
from src.permutations.permutation import Permutation, format_cycles
from src.permutations.uni1 import uni1_factor, uni1_predicates
from src.permutations.uni2 import uni2_factor, uni2_predicates
from src.permutations.witness import FactorizationWitness

logger = get_logger(__name__)

Check = Callable[[Any], Optional[str]]


def sweep(label: str, items: Iterable[Any], check: Check, value: Optional[Dict[str, Any]] = None) -> CaseResult:
    """
    逐项检查，统计数量并记录第一个反例

    check 返回 None 表示通过，否则返回失败描述；领域异常同样计为失败。
    """
    started = time.perf_counter()
    checked, failed, first = 0, 0, None
    for item in items:
        checked += 1
        try:
            problem = check(item)
        except AppError as e:
            problem = str(e)
        if problem is not None:
            failed += 1
            if first is None:
                first = problem
                logger.warning(f"⚠️ {label} 出现反例: {problem}")
    result = dict(value or {})
    result.update(checked=checked, failed=failed)
    case = CaseResult(target=label, valid=failed == 0, value=result, detail=first)
    if get_settings().run.include_timing:
        case.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    return case


def witness_problem(witness: FactorizationWitness, predicates, fmt: Callable) -> Optional[str]:
    problems = witness.failures(predicates)
    metrics.record_witness(not problems)
    return f"{fmt(witness.target)}: {problems[0]}" if problems else None


def _rng(params: RunParams, *salt: int) -> random.Random:
    return random.Random(hash((params.seed,) + salt) & 0xFFFFFFFF)


def _orders(params: RunParams) -> List[int]:
    """区间中的素数幂"""
    out = []
    for q in params.values("q"):
        try:
            split_prime_power(q)
        except NonPrime:
            continue
        out.append(q)
    return out


def _pool(exhaustive: Callable[[], Iterable[Any]], size: int, limits: Dict[str, int], key: str, sampler: Callable[[], Any]):
    """规模不超过 limits[key]（或未设 samples）时穷举，否则抽样 samples 个"""
    samples = limits.get("samples", 0)
    cap = limits.get(key)
    if not samples or (cap is not None and size <= cap):
        return exhaustive(), "exhaustive"
    return (sampler() for _ in range(samples)), f"sampled:{samples}"


# === 置换 ===

def _alt_pool(params: RunParams, limits: Dict[str, int], degree: int):
    group = AlternatingGroup(degree)
    rng = _rng(params, degree)
    return _pool(group.elements, group.order, limits, "exhaustive_order", lambda: group.random_element(rng))


def verify_uni1(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for m in params.values("m"):
        items, mode = _alt_pool(params, limits, m + 1)
        predicates = uni1_predicates(m)
        yield sweep(
            f"uni1 m={m}",
            items,
            lambda phi: witness_problem(uni1_factor(phi, m), predicates, format_cycles),
            {"group": f"Alt({m + 1})", "mode": mode},
        )


def verify_brenner(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for n in params.values("n"):
        items, mode = _alt_pool(params, limits, 4 * n)
        predicates = brenner_predicates(n)

        def check(phi: Permutation) -> Optional[str]:
            witness = brenner_factor(phi, n)
            if len(witness) != 4:
                return f"{format_cycles(phi)}: {len(witness)} letters"
            return witness_problem(witness, predicates, format_cycles)

        yield sweep(f"brenner n={n}", items, check, {"group": f"Alt({4 * n})", "mode": mode})


def verify_uni2(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for n in params.values("n"):
        items, mode = _alt_pool(params, limits, 8 * n)
        predicates = uni2_predicates(n)
        yield sweep(
            f"uni2 n={n}",
            items,
            lambda phi: witness_problem(uni2_factor(phi, n), predicates, format_cycles),
            {"group": f"Alt({8 * n})", "mode": mode},
        )


def verify_generic(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    """标准序列的定义检查、τ 的交换性与型、m = 3 时的 Sym-共轭唯一性"""
    t_max = limits.get("t_max", 8)
    for m in params.values("m"):
        def check_standard(t: int) -> Optional[str]:
            seq = generic_sequence(m, t)
            if not is_generic(seq.elements, m):
                return f"m={m}, t={t}: standard sequence is not generic"
            if t <= m - 3 and m <= 5:
                tau = diagonal_centralizer_element(seq)
                if any(tau * p != p * tau for p in seq.elements):
                    return f"m={m}, t={t}: tau does not commute"
                if not tau.is_fixed_point_free_involution():
                    return f"m={m}, t={t}: tau has type {tau.cycle_type()}"
                if (len(tau.cycles()) >> (t + 1)) % 2:
                    return f"m={m}, t={t}: tau is odd on each delta"
            rho = canonical_conjugator(seq)
            images = [p.conjugate(rho) for p in seq.generators()]
            if images != list(generic_sequence(m, t).generators()):
                return f"m={m}, t={t}: canonical conjugator fails"
            return None

        yield sweep(f"generic m={m}", range(t_max + 1), check_standard, {"t_max": t_max})

        if m == 3:
            conj_t = limits.get("conjugacy_t", 1)
            for t in range(conj_t + 1):
                canonical = generic_sequence(3, t).elements

                def check_conjugate(seq) -> Optional[str]:
                    if find_conjugator_exhaustive(seq, canonical) is None:
                        return f"t={t}: {[format_cycles(p) for p in seq]} is not conjugate to the standard sequence"
                    return None

                yield sweep(
                    f"generic m=3 conjugacy t={t}",
                    enumerate_generic_sequences(3, t),
                    check_conjugate,
                    {"alt_classes": alt_class_count(canonical)},
                )


# === 矩阵 ===

def _sl_pool(params: RunParams, limits: Dict[str, int], d: int, q: int):
    group = LinearGroup(d, q)
    rng = _rng(params, d, q)
    field = group.field
    return _pool(group.elements, group.order, limits, "exhaustive_order", lambda: random_sl(d, field, rng))


def verify_sl_step(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d, q in product(params.values("d"), _orders(params)):
        items, mode = _sl_pool(params, limits, d, q)
        predicates = sl_step_predicates(field_of_order(q), d)
        yield sweep(
            f"sl-step SL({d},{q})",
            items,
            lambda a: witness_problem(sl_step_factor(a), predicates, format_matrix),
            {"mode": mode},
        )


def verify_sl_double(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d, q in product(params.values("d"), _orders(params)):
        field = field_of_order(q)
        rng = _rng(params, d, q)
        samples = limits.get("samples") or 1
        predicates = sl_double_predicates(field, d)
        yield sweep(
            f"sl-double SL({d},{q})",
            (random_sl(d, field, rng) for _ in range(samples)),
            lambda a: witness_problem(sl_double_factor(a), predicates, format_matrix),
            {"mode": f"sampled:{samples}"},
        )


def verify_torus(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    from src.fields.number_theory import zsigmondy_prime

    for q, n in product(_orders(params), params.values("n")):
        def check(_) -> Optional[str]:
            witness = torus_witness(q, n)
            psi, pi1 = witness.target, witness.elements[0]
            problem = witness_problem(witness, torus_predicates(pi1), format_matrix)
            if problem:
                return problem
            r = zsigmondy_prime(q, 4 * n)
            if psi.order() != r:
                return f"order(psi) = {psi.order()}, expected {r}"
            if pi1 * psi * pi1.inverse() != psi.inverse():
                return "pi1 does not invert psi"
            return None

        yield sweep(f"torus q={q},n={n}", [None], check)


def verify_saxl(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for q, n in product(_orders(params), params.values("n")):
        field = field_of_order(q)
        group = SpecialLinearGroup(4 * n, field)
        rep = class_c_representative(field, n)
        label = f"saxl {group.describe()}"
        started = time.perf_counter()
        try:
            report = class_covering_radius(group, rep, params.bound, class_name=f"C({4 * n},{q})")
            case = CaseResult(target=label, valid=True, value=report.to_dict())
        except BoundExceeded as e:
            case = CaseResult(target=label, valid=False, value=e.details, detail=e.message)
        except GroupTooLarge:
            if not limits.get("sampled"):
                raise
            samples = get_settings().matrix.bfs_sample_size
            try:
                distances = sampled_class_distances(group, rep, samples, _rng(params, q, n), params.bound)
                case = CaseResult(target=label, valid=True, value={
                    "group": group.describe(),
                    "mode": f"sampled:{samples}",
                    "distances": distances,
                    "max_distance": max(distances),
                })
            except BoundExceeded as e:
                case = CaseResult(target=label, valid=False, value=e.details, detail=e.message)
        if get_settings().run.include_timing:
            case.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
        yield case


def _all_matrices(d: int, q: int) -> Iterator[FieldMatrix]:
    field = field_of_order(q)
    for flat in product(range(q), repeat=d * d):
        yield FieldMatrix(field, [list(flat[i * d:(i + 1) * d]) for i in range(d)])


def verify_split(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d, q in product(params.values("d"), _orders(params)):
        field = field_of_order(q)
        rng = _rng(params, d, q)
        items, mode = _pool(
            lambda: _all_matrices(d, q), q ** (d * d), limits, "exhaustive_keys",
            lambda: random_matrix(d, field, rng),
        )

        def check(s: FieldMatrix) -> Optional[str]:
            s1, s2 = split_nonsingular(s)
            if s1 + s2 != s or s1.det() == 0 or s2.det() == 0:
                return f"{format_matrix(s)}: bad split"
            return None

        yield sweep(f"split {d}x{d} GF({q})", items, check, {"mode": mode})


def _symmetric_from(d: int, q: int, values) -> FieldMatrix:
    rows = [[0] * d for _ in range(d)]
    slots = [(i, j) for i in range(d) for j in range(i, d)]
    for (i, j), x in zip(slots, values):
        rows[i][j] = rows[j][i] = x
    return FieldMatrix(field_of_order(q), rows)


def _symmetric_matrices(d: int, q: int) -> Iterator[FieldMatrix]:
    for values in product(range(q), repeat=d * (d + 1) // 2):
        yield _symmetric_from(d, q, values)


def verify_symmetric(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d, q in product(params.values("d"), _orders(params)):
        size = q ** (d * (d + 1) // 2)
        rng = _rng(params, d, q)

        def sample() -> FieldMatrix:
            return _symmetric_from(d, q, [rng.randrange(q) for _ in range(d * (d + 1) // 2)])

        items, mode = _pool(lambda: _symmetric_matrices(d, q), size, limits, "exhaustive_keys", sample)
        bound = CASE_BOUNDS[case_of(field_of_order(q))]

        def check(s: FieldMatrix) -> Optional[str]:
            combo = symmetric_module_factor(s)
            if not combo.is_valid():
                return f"{format_matrix(s)}: reconstruction fails"
            if len(combo) > bound:
                return f"{format_matrix(s)}: {len(combo)} terms exceed {bound}"
            return None

        yield sweep(f"symmetric {d}x{d} GF({q})", items, check, {"mode": mode, "term_bound": bound})


# === 形式空间 ===

def verify_sp_word(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d, q in product(params.values("d"), _orders(params)):
        space = make_space("symplectic", d, q)
        predicates = sp_predicates(space)

        def check(lam: int) -> Optional[str]:
            witness = sp_borel_torus_word(lam, d, q)
            if len(witness) != 6:
                return f"lambda={lam}: {len(witness)} letters"
            return witness_problem(witness, predicates, format_matrix)

        yield sweep(f"sp-word d={d},q={q}", space.field.nonzero(), check)


def verify_su3(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for q in _orders(params):
        space = su3_space(q)
        f = space.field
        predicates = su3_predicates(space)
        in_l_count = sum(1 for lam in f.nonzero() if in_l(f, lam))

        def check(lam: int) -> Optional[str]:
            if in_l(f, lam):
                torus = su3_torus_factor(space, lam)
                if torus.product() != twisted_antidiagonal(f, lam):
                    return f"lambda={f.format_element(lam)}: A1 B A2 differs"
                for a, tag in ((torus.a1, "U"), (torus.b, "V"), (torus.a2, "U")):
                    if not predicates[tag](a):
                        return f"lambda={f.format_element(lam)}: factor {tag} fails"
            lam1, lam2 = lambda_split(f, lam)
            if f.mul(lam1, f.inv(f.conjugate(lam2))) != lam:
                return f"lambda={f.format_element(lam)}: split fails"
            return witness_problem(su3_diagonal_word(q, lam), predicates, format_matrix)

        yield sweep(f"su3 q={q}", f.nonzero(), check, {"in_L": in_l_count, "nonzero": f.q - 1})


def _even_vectors(d: int) -> Iterator[List[int]]:
    for bits in product((0, 1), repeat=d):
        if sum(bits) % 2 == 0:
            yield list(bits)


def verify_even_weight(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    for d in params.values("d"):
        v = standard_half_vector(d)

        def check(u: List[int]) -> Optional[str]:
            pi, phi = even_weight_decompose(u, d)
            total = [(a + b) % 2 for a, b in zip(permute_vector(pi, v), permute_vector(phi, v))]
            return None if total == u else f"u={''.join(map(str, u))}: sum is {''.join(map(str, total))}"

        yield sweep(f"even-weight d={d}", _even_vectors(d), check)


def verify_pair_span(params: RunParams, limits: Dict[str, int]) -> Iterator[CaseResult]:
    samples = limits.get("samples") or 20
    for d, q in product(params.values("d"), _orders(params)):
        f = field_of_order(q)
        rng = _rng(params, d, q)

        def instance():
            m = random_sl(d, f, rng)
            a = [int(x) for x in m.entries[:, 0]]
            b = [int(x) for x in m.entries[:, 1]]
            x = [rng.randrange(q) for _ in range(d)]
            y = [rng.randrange(q) for _ in range(d)]
            return x, y, a, b

        def check(inst) -> Optional[str]:
            x, y, a, b = inst
            big_a, big_b = pair_span_decompose(f, x, y, a, b)
            if big_a.det() != 1 or big_b.det() != 1:
                return f"x={x}, y={y}: factor outside SL"
            if [f.add(s, t) for s, t in zip(big_a.apply(a), big_b.apply(a))] != x:
                return f"x={x}, y={y}: A a + B a differs from x"
            if [f.add(s, t) for s, t in zip(big_a.apply(b), big_b.apply(b))] != y:
                return f"x={x}, y={y}: A b + B b differs from y"
            return None

        yield sweep(f"pair-span d={d},q={q}", (instance() for _ in range(samples)), check, {"mode": f"sampled:{samples}"})


__all__ = [
    "sweep",
    "witness_problem",
    "verify_uni1",
    "verify_brenner",
    "verify_uni2",
    "verify_generic",
    "verify_sl_step",
    "verify_sl_double",
    "verify_torus",
    "verify_saxl",
    "verify_split",
    "verify_symmetric",
    "verify_sp_word",
    "verify_su3",
    "verify_even_weight",
    "verify_pair_span",
]
