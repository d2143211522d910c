"""
覆盖代数模块

有限群窗口上的覆盖、星积、有界闭包与逃逸元素构造。
"""

from src.covers.groups import (
    FiniteGroup,
    SymmetricGroup,
    AlternatingGroup,
    CyclicGroup,
    LinearGroup,
    GroupFamily,
    parse_group,
    check_group,
)
from src.covers.cover import (
    BoundFunction,
    Cover,
    covers,
    star,
    star_size_bound,
    random_cover,
    default_window,
    find_nonassociative_triple,
    load_covers,
    save_covers,
    covers_to_dict,
)
from src.covers.closure import BoundedClosure, closure_enumerate, covered_subgroup_contains
from src.covers.escape import EscapeReport, escape_element, check_hypothesis

__all__ = [
    "FiniteGroup",
    "SymmetricGroup",
    "AlternatingGroup",
    "CyclicGroup",
    "LinearGroup",
    "GroupFamily",
    "parse_group",
    "check_group",
    "BoundFunction",
    "Cover",
    "covers",
    "star",
    "star_size_bound",
    "random_cover",
    "default_window",
    "find_nonassociative_triple",
    "load_covers",
    "save_covers",
    "covers_to_dict",
    "BoundedClosure",
    "closure_enumerate",
    "covered_subgroup_contains",
    "EscapeReport",
    "escape_element",
    "check_hypothesis",
]
