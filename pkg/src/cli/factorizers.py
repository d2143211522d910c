"""
factorize 子命令的逐引理实现

统一签名：fn(target, params) -> CaseResult。见证写入报告前重新相乘并检查每个字母的标签。
"""

from typing import Callable, Dict, List, Mapping, Optional

from src.cli.models import CaseResult, RunParams
from src.core.exceptions import ParseError, WitnessInvalid
from src.fields.galois import GaloisField, field_of_order, parse_element
from src.forms.even_weight import even_weight_decompose, permute_vector, standard_half_vector
from src.forms.orthogonal import pair_span_decompose
from src.forms.spaces import make_space, su3_space
from src.forms.symmetric import symmetric_module_factor
from src.forms.symplectic import sp_borel_torus_word, sp_predicates
from src.forms.unitary import su3_diagonal_word, su3_predicates
from src.matrices.matrix import FieldMatrix, format_matrix, parse_matrix
from src.matrices.sl_double import sl_double_factor, sl_double_predicates
from src.matrices.sl_step import sl_step_factor, sl_step_predicates
from src.matrices.splitting import split_nonsingular
from src.matrices.torus import regular_torus_factor
from src.permutations.brenner import brenner_factor, brenner_predicates
from src.permutations.permutation import format_cycles, parse_cycles
from src.permutations.uni1 import uni1_factor, uni1_predicates
from src.permutations.uni2 import uni2_factor, uni2_predicates
from src.permutations.witness import FactorizationWitness, Predicate

TAG_PI1 = "Pi1"
TAG_PI2 = "Pi2"


def _require(target: Optional[str]) -> str:
    if target is None or not target.strip():
        raise ParseError("a target is required for this lemma")
    return target


def witness_case(
    target: str,
    witness: FactorizationWitness,
    predicates: Mapping[str, Predicate],
    fmt: Callable,
) -> CaseResult:
    try:
        witness.validate(predicates)
        valid, detail = True, None
    except WitnessInvalid as e:
        valid, detail = False, "; ".join(e.details.get("problems", [])) or e.message
    return CaseResult(
        target=target,
        valid=valid,
        witness=witness.to_json(fmt),
        value={"length": len(witness)},
        detail=detail,
    )


def parse_vector(text: str, field: GaloisField) -> List[int]:
    """空格分隔；带 ':' 的按元素格式解析，否则视为元素编码"""
    out = []
    for token in text.split():
        if ":" in token:
            out.append(parse_element(token, field).value)
        else:
            try:
                out.append(field.element(int(token)).value)
            except ValueError as e:
                raise ParseError(f"bad vector entry: {token!r}", cause=e)
    if not out:
        raise ParseError(f"empty vector: {text!r}")
    return out


# === 置换 ===

def factorize_uni1(target: Optional[str], params: RunParams) -> CaseResult:
    m = params.single("m")
    phi = parse_cycles(_require(target), m + 1)
    return witness_case(target, uni1_factor(phi, m), uni1_predicates(m), format_cycles)


def factorize_brenner(target: Optional[str], params: RunParams) -> CaseResult:
    n = params.single("n")
    phi = parse_cycles(_require(target), 4 * n)
    return witness_case(target, brenner_factor(phi, n), brenner_predicates(n), format_cycles)


def factorize_uni2(target: Optional[str], params: RunParams) -> CaseResult:
    n = params.single("n")
    phi = parse_cycles(_require(target), 8 * n)
    return witness_case(target, uni2_factor(phi, n), uni2_predicates(n), format_cycles)


# === 矩阵 ===

def factorize_sl_step(target: Optional[str], params: RunParams) -> CaseResult:
    a = parse_matrix(_require(target))
    return witness_case(target, sl_step_factor(a), sl_step_predicates(a.field, a.d), format_matrix)


def factorize_sl_double(target: Optional[str], params: RunParams) -> CaseResult:
    a = parse_matrix(_require(target))
    return witness_case(target, sl_double_factor(a), sl_double_predicates(a.field, a.d), format_matrix)


def torus_witness(q: int, n: int) -> FactorizationWitness:
    t = regular_torus_factor(q, n)
    return FactorizationWitness.from_pairs(t.psi, [(t.pi1, TAG_PI1), (t.pi2, TAG_PI2)])


def torus_predicates(pi1: FieldMatrix) -> Dict[str, Predicate]:
    def involution(a: FieldMatrix) -> bool:
        return (a * a).is_identity() and not a.is_identity()

    return {
        TAG_PI1: lambda a: a == pi1 and involution(a),
        TAG_PI2: involution,
    }


def factorize_torus(target: Optional[str], params: RunParams) -> CaseResult:
    q, n = params.single("q"), params.single("n")
    witness = torus_witness(q, n)
    case = witness_case(f"q={q},n={n}", witness, torus_predicates(witness.elements[0]), format_matrix)
    case.value["order"] = witness.target.order()
    return case


def factorize_split(target: Optional[str], params: RunParams) -> CaseResult:
    s = parse_matrix(_require(target))
    s1, s2 = split_nonsingular(s)
    valid = s1 + s2 == s and s1.det() != 0 and s2.det() != 0
    return CaseResult(target=target, valid=valid, value={"s1": format_matrix(s1), "s2": format_matrix(s2)})


def factorize_symmetric(target: Optional[str], params: RunParams) -> CaseResult:
    s = parse_matrix(_require(target))
    combo = symmetric_module_factor(s)
    value = combo.to_json()
    value["length"] = len(combo)
    return CaseResult(target=target, valid=combo.is_valid(), value=value)


# === 形式空间 ===

def factorize_sp_word(target: Optional[str], params: RunParams) -> CaseResult:
    d, q = params.single("d"), params.single("q")
    lam = parse_element(_require(target), field_of_order(q)).value
    space = make_space("symplectic", d, q)
    return witness_case(target, sp_borel_torus_word(lam, d, q), sp_predicates(space), format_matrix)


def factorize_su3(target: Optional[str], params: RunParams) -> CaseResult:
    q = params.single("q")
    space = su3_space(q)
    lam = parse_element(_require(target), space.field).value
    return witness_case(target, su3_diagonal_word(q, lam), su3_predicates(space), format_matrix)


def factorize_even_weight(target: Optional[str], params: RunParams) -> CaseResult:
    text = _require(target).strip()
    if any(c not in "01" for c in text):
        raise ParseError(f"expected a binary string, got {text!r}")
    u = [int(c) for c in text]
    d = len(u)
    pi, phi = even_weight_decompose(u, d)
    v = standard_half_vector(d)
    total = [(a + b) % 2 for a, b in zip(permute_vector(pi, v), permute_vector(phi, v))]
    return CaseResult(target=text, valid=total == u, value={"pi": format_cycles(pi), "phi": format_cycles(phi)})


def factorize_pair_span(target: Optional[str], params: RunParams) -> CaseResult:
    """目标格式 `x;y;a;b`"""
    q = params.single("q")
    f = field_of_order(q)
    parts = _require(target).split(";")
    if len(parts) != 4:
        raise ParseError(f"expected x;y;a;b, got {target!r}")
    x, y, a, b = (parse_vector(p, f) for p in parts)
    big_a, big_b = pair_span_decompose(f, x, y, a, b)
    valid = (
        big_a.det() == 1
        and big_b.det() == 1
        and [f.add(s, t) for s, t in zip(big_a.apply(a), big_b.apply(a))] == x
        and [f.add(s, t) for s, t in zip(big_a.apply(b), big_b.apply(b))] == y
    )
    return CaseResult(target=target, valid=valid, value={"A": format_matrix(big_a), "B": format_matrix(big_b)})


__all__ = [
    "witness_case",
    "parse_vector",
    "torus_witness",
    "torus_predicates",
    "factorize_uni1",
    "factorize_brenner",
    "factorize_uni2",
    "factorize_sl_step",
    "factorize_sl_double",
    "factorize_torus",
    "factorize_split",
    "factorize_symmetric",
    "factorize_sp_word",
    "factorize_su3",
    "factorize_even_weight",
    "factorize_pair_span",
]
