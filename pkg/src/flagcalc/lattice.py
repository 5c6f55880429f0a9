"""Divisor classes in degree coordinates and the shifted Weyl action.

A class is stored as the vector of its degrees on the simple coroot curves,
``d_i = D . Gamma_i``.  In these coordinates nefness is ``all d_i >= 0``, the
canonical class is ``(-2, ..., -2)`` and ``-K_X/2`` is the all-ones vector.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dynkin import CartanData
from .errors import IndexOutOfRange

__all__ = [
    "DivisorClass",
    "Singular",
    "Regular",
    "DominantResult",
    "reflect",
    "affine_reflect",
    "dominant_representative",
    "named_class",
    "canonical_class",
    "orbit_length_invariance_check",
    "degrees_of",
]


@dataclass(frozen=True)
class DivisorClass:
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self, degrees_of(other))))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self, degrees_of(other))))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self))

    def __rmul__(self, k: int):
        return DivisorClass(tuple(k * a for a in self))

    def is_nef(self) -> bool:
        return all(x >= 0 for x in self.degrees)


def degrees_of(D) -> tuple[int, ...]:
    if isinstance(D, DivisorClass):
        return D.degrees
    return tuple(int(x) for x in D)


def _check_index(c: CartanData, i: int) -> None:
    if not 0 <= i < c.rank:
        raise IndexOutOfRange(f"index {i + 1} outside 1..{c.rank}")


def _check_len(c: CartanData, d: Sequence[int]) -> None:
    if len(d) != c.rank:
        raise IndexOutOfRange(f"expected {c.rank} degrees, got {len(d)}")


def reflect(c: CartanData, i: int, D) -> DivisorClass:
    """``r_i(D) = D + (D.Gamma_i) K_i``; ``i`` is 0-based."""
    _check_index(c, i)
    d = degrees_of(D)
    _check_len(c, d)
    a = c.matrix[i]
    s = d[i]
    return DivisorClass(tuple(x - s * y for x, y in zip(d, a)))


def affine_reflect(c: CartanData, i: int, D) -> DivisorClass:
    """``r'_i(D) = D + (D.Gamma_i + 1) K_i``, the reflection fixing ``D.Gamma_i = -1``."""
    _check_index(c, i)
    d = degrees_of(D)
    _check_len(c, d)
    a = c.matrix[i]
    s = d[i] + 1
    return DivisorClass(tuple(x - s * y for x, y in zip(d, a)))


@dataclass(frozen=True)
class Singular:
    @property
    def is_singular(self) -> bool:
        return True


@dataclass(frozen=True)
class Regular:
    dominant: DivisorClass
    length: int
    word: tuple[int, ...]

    @property
    def is_singular(self) -> bool:
        return False


DominantResult = Singular | Regular


def _positive_root_count(c: CartanData) -> int:
    from .weyl import generate_roots

    return len(generate_roots(c).positives)


def dominant_representative(c: CartanData, D, pivot=None) -> DominantResult:
    """Move ``D + rho`` into the dominant chamber by simple reflections.

    ``pivot`` picks the reflection among negative coordinates (default: the
    smallest index).  The returned word, applied right to left to ``D + rho``,
    gives the dominant vector.
    """
    mu = list(degrees_of(D))
    _check_len(c, mu)
    mu = [x + 1 for x in mu]
    A = c.matrix
    guard = 10 * max(1, _positive_root_count(c))
    steps = []
    while True:
        if any(x == 0 for x in mu):
            return Singular()
        neg = [i for i, x in enumerate(mu) if x < 0]
        if not neg:
            return Regular(DivisorClass(tuple(mu)), len(steps), tuple(reversed(steps)))
        i = neg[0] if pivot is None else pivot(neg)
        s = mu[i]
        mu = [x - s * y for x, y in zip(mu, A[i])]
        steps.append(i)
        if len(steps) > guard:
            raise RuntimeError("dominant_representative did not terminate")


def canonical_class(c: CartanData) -> DivisorClass:
    return DivisorClass((-2,) * c.rank)


def named_class(c: CartanData, name: str, i: int | None = None) -> DivisorClass:
    """Named classes: ``K``, ``-K`` (the i-th simple-root classes), ``K_X``,
    ``-K_X/2`` and ``Lambda`` (fundamental weight).  ``i`` is 0-based.

    Names with an attached 1-based index such as ``"K_2"`` or ``"Lambda_1"``
    are also accepted.
    """
    key = name.replace(" ", "").replace("−", "-")
    if i is None and "_" in key and key[key.rindex("_") + 1:].isdigit():
        base, idx = key[: key.rindex("_")], key[key.rindex("_") + 1:]
        if base in ("K", "-K", "Lambda", "Λ"):
            key, i = base, int(idx) - 1
    n = c.rank
    if key in ("K_X", "KX"):
        return canonical_class(c)
    if key in ("-K_X/2", "-KX/2", "rho"):
        return DivisorClass((1,) * n)
    if key in ("K", "-K", "Lambda", "Λ"):
        if i is None:
            raise IndexOutOfRange(f"{name} needs an index")
        _check_index(c, i)
        if key == "K":
            return DivisorClass(tuple(-x for x in c.matrix[i]))
        if key == "-K":
            return DivisorClass(c.matrix[i])
        return DivisorClass(tuple(int(k == i) for k in range(n)))
    raise ValueError(f"unknown class name {name!r}")


def orbit_length_invariance_check(c: CartanData, D, k: int = 10, seed: int | None = None) -> bool:
    """Dominant vector and length agree under ``k`` random pivot orders."""
    base = dominant_representative(c, D)
    rng = random.Random(seed)
    for _ in range(k):
        other = dominant_representative(c, D, pivot=rng.choice)
        if isinstance(base, Singular) or isinstance(other, Singular):
            if type(base) is not type(other):
                return False
            continue
        if other.dominant != base.dominant or other.length != base.length:
            return False
    return True


def apply_word(c: CartanData, word: Iterable[int], D, affine: bool = False) -> DivisorClass:
    """Apply ``r_{l_1} o ... o r_{l_r}`` (rightmost first)."""
    f = affine_reflect if affine else reflect
    out = DivisorClass(degrees_of(D))
    for i in reversed(tuple(word)):
        out = f(c, i, out)
    return out
