"""Fusion rings of the two nonnegative-integer-graded families.

Labels are nonnegative integers.  The generator rules are

* ``su2``:  ``k (x) 1 = (k-1) (+) (k+1)``  (free orthogonal side), and
* ``so3``:  ``k (x) 1 = (k-1) (+) (k) (+) (k+1)``  (quantum automorphism side),

with ``0 (x) 1 = 1`` in both.  General products are *derived* from the
generator rule alone, by resolving ``l = (l-1)(x)1 - (l-2) [- (l-1)]``
recursively; the textbook closed forms (Clebsch-Gordan ladders) are used only
as independent oracles in the tests.  Multiplicities are exact integers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "RULES",
    "tensor_with_generator",
    "tensor_decompose",
    "trivial_multiplicity",
]

RULES = ("su2", "so3")


def _check_rule(rule: str) -> str:
    if rule not in RULES:
        raise ValueError(f"unknown fusion rule {rule!r}, expected one of {RULES}")
    return rule


def _check_label(k: int) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"fusion labels are nonnegative integers, got {k}")
    return int(k)


def tensor_with_generator(rule: str, k: int) -> dict[int, int]:
    """Decomposition of ``k (x) 1`` as a multiset ``{label: multiplicity}``."""
    _check_rule(rule)
    k = _check_label(k)
    if k == 0:
        return {1: 1}
    if rule == "su2":
        return {k - 1: 1, k + 1: 1}
    return {k - 1: 1, k: 1, k + 1: 1}


def _mul_into(acc: dict[int, int], parts: Mapping[int, int], factor: int) -> None:
    for label, mult in parts.items():
        acc[label] = acc.get(label, 0) + factor * mult


@lru_cache(maxsize=None)
def _decompose(rule: str, k: int, l: int) -> tuple[tuple[int, int], ...]:
    if l > k:
        k, l = l, k
    if l == 0:
        return ((k, 1),)
    if l == 1:
        return tuple(sorted(tensor_with_generator(rule, k).items()))
    acc: dict[int, int] = {}
    for label, mult in _decompose(rule, k, l - 1):
        _mul_into(acc, tensor_with_generator(rule, label), mult)
    _mul_into(acc, dict(_decompose(rule, k, l - 2)), -1)
    if rule == "so3":
        _mul_into(acc, dict(_decompose(rule, k, l - 1)), -1)
    cleaned = {label: mult for label, mult in acc.items() if mult != 0}
    assert all(m > 0 for m in cleaned.values()), "fusion multiplicities went negative"
    return tuple(sorted(cleaned.items()))


def tensor_decompose(rule: str, k: int, l: int) -> dict[int, int]:
    """Full decomposition of ``k (x) l`` derived from the generator rule."""
    _check_rule(rule)
    return dict(_decompose(rule, _check_label(k), _check_label(l)))


def trivial_multiplicity(rule: str, labels: Iterable[int]) -> int:
    """Multiplicity of the trivial label 0 in an iterated tensor product."""
    _check_rule(rule)
    current: dict[int, int] = {0: 1}
    for raw in labels:
        nxt: dict[int, int] = {}
        k = _check_label(raw)
        for label, mult in current.items():
            _mul_into(nxt, tensor_decompose(rule, label, k), mult)
        current = nxt
    return current.get(0, 0)
