"""Demazure operators, Euler characteristics and Borel-Weil-Bott cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .dynkin import CartanData
from .errors import CapacityExceeded, IndexOutOfRange, NonIntegralResult, NotFound
from .lattice import DivisorClass, Regular, canonical_class, degrees_of, dominant_representative
from .weyl import RootSystem, check_word, coroot_pairing, generate_roots

__all__ = [
    "GroupAlgebraElement",
    "CohomologyProfile",
    "demazure_op",
    "demazure_word",
    "euler_char_bs",
    "euler_char_x",
    "bwb_cohomology",
    "index_of_contraction",
    "serre_check",
    "MAX_TERMS",
]

MAX_TERMS = 10_000_000


class GroupAlgebraElement:
    """Finite formal sum of exponentials ``e^L`` with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for L, n in items:
            key = degrees_of(L)
            acc[key] = acc.get(key, 0) + int(n)
        self._terms = {k: v for k, v in sorted(acc.items()) if v}

    @classmethod
    def exp(cls, L) -> "GroupAlgebraElement":
        return cls({degrees_of(L): 1})

    @classmethod
    def _raw(cls, terms: dict) -> "GroupAlgebraElement":
        out = cls.__new__(cls)
        out._terms = {k: v for k, v in sorted(terms.items()) if v}
        return out

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return GroupAlgebraElement._raw(acc)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement._raw({key: k * v for key, v in self._terms.items()})

    def degree(self) -> int:
        return sum(self._terms.values())

    def to_json(self) -> list:
        return [[list(k), v] for k, v in self._terms.items()]

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*e^{list(k)}" for k, v in self._terms.items())
        return f"GroupAlgebraElement({body or '0'})"


def _demazure_into(acc: dict, A_row, i: int, L: tuple[int, ...], n: int) -> None:
    s = L[i]
    if s == -1:
        return
    # K_i has degrees -A_row, so L + tK_i = L - t*A_row
    if s >= 0:
        for t in range(s + 1):
            key = tuple(x - t * a for x, a in zip(L, A_row))
            acc[key] = acc.get(key, 0) + n
    else:
        for t in range(1, -s):
            key = tuple(x + t * a for x, a in zip(L, A_row))
            acc[key] = acc.get(key, 0) - n


def _check_index(c: CartanData, i: int) -> None:
    if not 0 <= i < c.rank:
        raise IndexOutOfRange(f"index {i + 1} outside 1..{c.rank}")


def demazure_op(c: CartanData, i: int, xi: GroupAlgebraElement) -> GroupAlgebraElement:
    _check_index(c, i)
    acc: dict = {}
    row = c.matrix[i]
    for L, n in xi.items():
        _demazure_into(acc, row, i, L, n)
    if len(acc) > MAX_TERMS:
        raise CapacityExceeded(f"more than {MAX_TERMS} terms")
    return GroupAlgebraElement._raw(acc)


def demazure_word(c: CartanData, word: Iterable[int], xi: GroupAlgebraElement) -> GroupAlgebraElement:
    """``D_{l_1}(D_{l_2}(... D_{l_r}(xi)))``."""
    w = check_word(c, word)
    cur = dict(xi.items())
    for i in reversed(w):
        acc: dict = {}
        row = c.matrix[i]
        for L, n in cur.items():
            _demazure_into(acc, row, i, L, n)
        cur = {k: v for k, v in acc.items() if v}
        if len(cur) > MAX_TERMS:
            raise CapacityExceeded(f"more than {MAX_TERMS} terms")
    return GroupAlgebraElement._raw(cur)


def euler_char_bs(c: CartanData, word: Iterable[int], L) -> int:
    """Euler characteristic of the pulled-back line bundle on the tower of ``word``."""
    return demazure_word(c, word, GroupAlgebraElement.exp(L)).degree()


def euler_char_x(c: CartanData, rs: RootSystem | None, L) -> int:
    """Product formula over positive roots for the shifted class ``L + rho``."""
    rs = rs or generate_roots(c)
    mu = tuple(x + 1 for x in degrees_of(L))
    num = 1
    den = 1
    for cor in rs.positive_coroots:
        num *= sum(a * b for a, b in zip(cor, mu))
        den *= sum(cor)
    val = Fraction(num, den)
    if val.denominator != 1:
        raise NonIntegralResult(f"Euler characteristic {val} is not an integer")
    return int(val)


@dataclass(frozen=True)
class CohomologyProfile:
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", {int(k): int(v) for k, v in sorted(self.values.items()) if v})

    def __getitem__(self, j: int) -> int:
        return self.values.get(j, 0)

    def euler(self) -> int:
        return sum((-1) ** j * h for j, h in self.values.items())

    def is_zero(self) -> bool:
        return not self.values

    def to_json(self) -> dict:
        return {str(j): h for j, h in self.values.items()}


def bwb_cohomology(c: CartanData, rs: RootSystem | None, L) -> CohomologyProfile:
    rs = rs or generate_roots(c)
    res = dominant_representative(c, L)
    if not isinstance(res, Regular):
        return CohomologyProfile({})
    chi = euler_char_x(c, rs, L)
    lam = res.length
    h = (-1) ** lam * chi
    if h <= 0:
        raise NonIntegralResult(f"sign of Euler characteristic {chi} disagrees with degree {lam}")
    return CohomologyProfile({lam: h})


def index_of_contraction(c: CartanData, rs: RootSystem | None, i: int, q: int) -> int:
    """Smallest ``k >= 1`` with ``h^q(X, -k Lambda_i) != 0``; ``i`` is 0-based."""
    _check_index(c, i)
    rs = rs or generate_roots(c)
    npos = len(rs.positives)
    if not 0 <= q <= npos:
        raise IndexOutOfRange(f"degree {q} outside 0..{npos}")
    for k in range(1, 2 * npos + 1):
        L = tuple(-k if j == i else 0 for j in range(c.rank))
        if bwb_cohomology(c, rs, L)[q]:
            return k
    raise NotFound(f"h^{q}(X, -k Lambda_{i + 1}) vanishes for k = 1..{2 * npos}")


def serre_check(c: CartanData, rs: RootSystem | None, L) -> bool:
    rs = rs or generate_roots(c)
    npos = len(rs.positives)
    p = bwb_cohomology(c, rs, L)
    dual = DivisorClass(canonical_class(c)) - DivisorClass(degrees_of(L))
    q = bwb_cohomology(c, rs, dual)
    return {npos - j: h for j, h in p.values.items()} == q.values
