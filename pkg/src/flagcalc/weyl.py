"""Root systems and Weyl groups generated from Cartan data.

Roots are stored by their coefficients in the simple-root basis.  Weyl group
elements act on *degree vectors* (fundamental-weight coordinates, the pairings
of a class with the simple coroots); the simple reflection ``r_i`` is

    d'_j = d_j - d_i * A[i][j]

and a word ``(l_1, ..., l_r)`` denotes the composite ``r_{l_1} o ... o r_{l_r}``
(rightmost letter acts first).  Letters are 0-based internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import math
from typing import Callable, Iterable, Iterator

from .dynkin import CartanData
from .errors import IndexOutOfRange, NonIntegral, NonTerminating

__all__ = [
    "Root",
    "RootSystem",
    "WeylElement",
    "WeylGroup",
    "generate_roots",
    "root_to_degrees",
    "coroot_pairing",
    "weyl_order",
    "longest_element",
    "descents",
    "left_descents",
    "count_reduced_words",
    "enumerate_reduced_words",
    "is_reduced",
    "element_from_word",
    "weyl_group",
    "check_word",
]

MAX_ROOTS = 10_000
MAX_ELEMENTS = 10_000_000

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]
    degrees: tuple[int, ...]

    @property
    def is_positive(self) -> bool:
        return any(c > 0 for c in self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs), tuple(-d for d in self.degrees))


def root_to_degrees(cartan: CartanData, coeffs: Iterable[int]) -> tuple[int, ...]:
    """Degree vector ``c^T A`` of the root with simple-root coefficients ``c``."""
    c = tuple(coeffs)
    A = cartan.matrix
    n = cartan.rank
    return tuple(sum(c[j] * A[j][k] for j in range(n)) for k in range(n))


def check_word(cartan: CartanData, word: Iterable[int]) -> tuple[int, ...]:
    w = tuple(word)
    for x in w:
        if not 0 <= x < cartan.rank:
            raise IndexOutOfRange(f"letter {x + 1} outside 1..{cartan.rank}")
    return w


class RootSystem:
    """Finite root system closed under the simple reflections."""

    def __init__(self, cartan: CartanData, roots: list[Root]):
        self.cartan = cartan
        self.symmetrizer = cartan.symmetrizer
        self.roots = tuple(sorted(roots, key=lambda r: (-r.height, r.coeffs)))
        self.positives = tuple(r for r in self.roots if r.is_positive)
        self.by_degrees = {r.degrees: r for r in self.roots}
        self.by_coeffs = {r.coeffs: r for r in self.roots}
        n = cartan.rank
        self.simple = tuple(
            self.by_coeffs[tuple(int(k == i) for k in range(n))] for i in range(n)
        )

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, root) -> bool:
        coeffs = root.coeffs if isinstance(root, Root) else tuple(root)
        return coeffs in self.by_coeffs

    @cached_property
    def root_lengths(self) -> tuple[int, ...]:
        """Squared lengths of the simple roots, integral, proportional to 1/d_i."""
        d = self.symmetrizer
        m = math.lcm(*d)
        return tuple(m // x for x in d)

    def norm2(self, coeffs) -> Fraction:
        A = self.cartan.matrix
        e = self.root_lengths
        n = self.cartan.rank
        s = sum(coeffs[j] * coeffs[k] * A[j][k] * e[k] for j in range(n) for k in range(n))
        return Fraction(s, 2)

    def coroot(self, root: Root) -> tuple[int, ...]:
        """Coefficients of the coroot in the simple-coroot basis."""
        return self._coroots[root.coeffs]

    @cached_property
    def _coroots(self) -> dict:
        e = self.root_lengths
        out = {}
        for r in self.roots:
            nr = self.norm2(r.coeffs)
            vec = []
            for j, c in enumerate(r.coeffs):
                q = Fraction(c * e[j]) / nr
                if q.denominator != 1:
                    raise NonIntegral(f"coroot of {r.coeffs} is not integral")
                vec.append(int(q))
            out[r.coeffs] = tuple(vec)
        return out

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.coroot(r) for r in self.positives)

    def is_reduced_system(self) -> bool:
        coeffs = set(self.by_coeffs)
        for c in coeffs:
            for k in (2, 3):
                if tuple(k * x for x in c) in coeffs:
                    return False
        return True


@lru_cache(maxsize=64)
def generate_roots(cartan: CartanData) -> RootSystem:
    n = cartan.rank
    A = cartan.matrix
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(n):
                ci = c[i] - sum(A[j][i] * c[j] for j in range(n))
                if ci == c[i]:
                    continue
                r = c[:i] + (ci,) + c[i + 1:]
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        if len(seen) > MAX_ROOTS:
            raise NonTerminating(f"more than {MAX_ROOTS} roots; Cartan data is not of finite type")
        frontier = nxt
    roots = [Root(c, root_to_degrees(cartan, c)) for c in seen]
    for r in roots:
        if any(x > 0 for x in r.coeffs) and any(x < 0 for x in r.coeffs):
            raise NonTerminating(f"mixed-sign root {r.coeffs}; Cartan data is not of finite type")
    return RootSystem(cartan, roots)


def coroot_pairing(rs: RootSystem, root, degrees) -> int:
    """Pairing of the class with the coroot of ``root`` (exact, asserted integral)."""
    coeffs = root.coeffs if isinstance(root, Root) else tuple(root)
    e = rs.root_lengths
    num = sum(coeffs[j] * e[j] * degrees[j] for j in range(len(coeffs)))
    val = Fraction(num) / rs.norm2(coeffs)
    if val.denominator != 1:
        raise NonIntegral(f"pairing of {tuple(degrees)} with coroot of {coeffs} is {val}")
    return int(val)


# --- matrices ----------------------------------------------------------------

def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def generator_matrix(cartan: CartanData, i: int) -> Matrix:
    n = cartan.rank
    a = cartan.matrix[i]
    return tuple(
        tuple(int(j == k) - (a[j] if k == i else 0) for k in range(n)) for j in range(n)
    )


def matmul(X: Matrix, Y: Matrix) -> Matrix:
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def apply(M: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def right_mul_gen(cartan: CartanData, M: Matrix, i: int) -> Matrix:
    a = cartan.matrix[i]
    out = []
    for row in M:
        s = sum(x * y for x, y in zip(row, a))
        out.append(row[:i] + (row[i] - s,) + row[i + 1:])
    return tuple(out)


def left_mul_gen(cartan: CartanData, M: Matrix, i: int) -> Matrix:
    a = cartan.matrix[i]
    ri = M[i]
    return tuple(
        row if a[j] == 0 else tuple(x - a[j] * y for x, y in zip(row, ri))
        for j, row in enumerate(M)
    )


def determinant(M: Matrix) -> int:
    n = len(M)
    rows = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return int(det)


# --- elements ----------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    cartan: CartanData
    action: Matrix
    length: int
    witness_word: tuple[int, ...]

    def __hash__(self):
        return hash(self.action)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.action == other.action

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return element_from_matrix(self.cartan, matmul(self.action, other.action))

    def apply(self, degrees) -> tuple[int, ...]:
        return apply(self.action, degrees)

    def inverse(self) -> "WeylElement":
        return element_from_word(self.cartan, tuple(reversed(self.witness_word)))

    @property
    def is_identity(self) -> bool:
        return self.length == 0


def _is_negative_image(rs: RootSystem, M: Matrix, root: Root) -> bool:
    img = rs.by_degrees.get(apply(M, root.degrees))
    if img is None:
        raise ValueError("matrix does not permute the root system")
    return not img.is_positive


def _length_of(rs: RootSystem, M: Matrix) -> int:
    return sum(_is_negative_image(rs, M, r) for r in rs.positives)


def _right_descents(rs: RootSystem, M: Matrix) -> list[int]:
    return [i for i, a in enumerate(rs.simple) if _is_negative_image(rs, M, a)]


def element_from_matrix(cartan: CartanData, M: Matrix) -> WeylElement:
    rs = generate_roots(cartan)
    length = _length_of(rs, M)
    word = []
    cur = M
    while True:
        d = _right_descents(rs, cur)
        if not d:
            break
        word.append(d[0])
        cur = right_mul_gen(cartan, cur, d[0])
    if len(word) != length or cur != identity_matrix(cartan.rank):
        raise ValueError("matrix is not an element of the Weyl group")
    return WeylElement(cartan, M, length, tuple(reversed(word)))


def element_from_word(cartan: CartanData, word: Iterable[int]) -> WeylElement:
    w = check_word(cartan, word)
    M = identity_matrix(cartan.rank)
    for x in w:
        M = right_mul_gen(cartan, M, x)
    return element_from_matrix(cartan, M)


def descents(w: WeylElement) -> frozenset[int]:
    """Right descents: ``i`` with length(w r_i) < length(w)."""
    return frozenset(_right_descents(generate_roots(w.cartan), w.action))


def left_descents(w: WeylElement) -> frozenset[int]:
    return descents(w.inverse())


def longest_element(cartan: CartanData) -> WeylElement:
    """Climb by ascents until no ascent is left."""
    rs = generate_roots(cartan)
    M = identity_matrix(cartan.rank)
    word = []
    while True:
        asc = [i for i, a in enumerate(rs.simple) if not _is_negative_image(rs, M, a)]
        if not asc:
            break
        M = right_mul_gen(cartan, M, asc[0])
        word.append(asc[0])
    return WeylElement(cartan, M, len(word), tuple(word))


def is_reduced(cartan: CartanData, word: Iterable[int]) -> bool:
    w = check_word(cartan, word)
    rs = generate_roots(cartan)
    M = identity_matrix(cartan.rank)
    for x in w:
        # w * r_x is longer than w  iff  w(alpha_x) > 0
        if _is_negative_image(rs, M, rs.simple[x]):
            return False
        M = right_mul_gen(cartan, M, x)
    return True


def count_reduced_words(w: WeylElement) -> int:
    """R(w) = sum over right descents i of R(w r_i), R(e) = 1."""
    cartan = w.cartan
    rs = generate_roots(cartan)
    memo: dict[Matrix, int] = {identity_matrix(cartan.rank): 1}

    def rec(M):
        got = memo.get(M)
        if got is not None:
            return got
        total = sum(rec(right_mul_gen(cartan, M, i)) for i in _right_descents(rs, M))
        memo[M] = total
        return total

    return rec(w.action)


# --- materialized group ------------------------------------------------------

class WeylGroup:
    """Whole group as a Cayley table, built by breadth-first closure.

    Elements are indexed in BFS order, so ``length`` is the BFS depth.
    """

    def __init__(self, cartan: CartanData, max_elements: int = MAX_ELEMENTS):
        self.cartan = cartan
        n = cartan.rank
        e = identity_matrix(n)
        self.elements: list[Matrix] = [e]
        self.index: dict[Matrix, int] = {e: 0}
        self.length: list[int] = [0]
        self.rmul: list[list[int]] = []
        k = 0
        while k < len(self.elements):
            M = self.elements[k]
            row = []
            for i in range(n):
                N = right_mul_gen(cartan, M, i)
                j = self.index.get(N)
                if j is None:
                    j = len(self.elements)
                    if j >= max_elements:
                        raise NonTerminating(f"Weyl group has more than {max_elements} elements")
                    self.index[N] = j
                    self.elements.append(N)
                    self.length.append(self.length[k] + 1)
                row.append(j)
            self.rmul.append(row)
            k += 1

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def lmul(self) -> list[list[int]]:
        c = self.cartan
        return [
            [self.index[left_mul_gen(c, M, i)] for i in range(c.rank)] for M in self.elements
        ]

    @cached_property
    def left_descent_table(self) -> list[tuple[int, ...]]:
        L = self.length
        return [
            tuple(i for i, v in enumerate(row) if L[v] < L[u]) for u, row in enumerate(self.lmul)
        ]

    @cached_property
    def reduced_word_counts(self) -> list[int]:
        L = self.length
        R = [0] * len(self)
        R[0] = 1
        for u in range(1, len(self)):
            R[u] = sum(R[v] for v in self.rmul[u] if L[v] < L[u])
        return R

    @cached_property
    def longest(self) -> int:
        return max(range(len(self)), key=self.length.__getitem__)

    def element(self, u: int) -> WeylElement:
        return element_from_matrix(self.cartan, self.elements[u])

    def locate(self, w: WeylElement | Matrix) -> int:
        return self.index[w.action if isinstance(w, WeylElement) else w]

    # lexicographic reduced words -------------------------------------------

    def iter_words(self, u: int, start: int = 0, stop: int | None = None,
                   prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
        """Reduced words of element ``u`` in lexicographic order, ranks [start, stop).

        ``prefix`` restricts to words beginning with those letters; ranks are
        then counted inside that sub-stream.
        """
        R = self.reduced_word_counts
        lmul = self.lmul
        ldesc = self.left_descent_table
        for x in prefix:
            if x not in ldesc[u]:
                return
            u = lmul[u][x]
        total = R[u]
        if stop is None or stop > total:
            stop = total
        if start >= stop:
            return
        remaining = stop - start
        # descend to the word of rank `start`, keeping a stack of sibling iterators
        word = list(prefix)
        base = len(prefix)
        stack = []
        k = start
        v = u
        while ldesc[v]:
            choices = ldesc[v]
            for pos, i in enumerate(choices):
                c = R[lmul[v][i]]
                if k < c:
                    break
                k -= c
            stack.append((v, pos))
            word.append(i)
            v = lmul[v][i]
        while True:
            yield tuple(word)
            remaining -= 1
            if remaining == 0:
                return
            # advance to the lexicographic successor
            while stack:
                v, pos = stack.pop()
                word.pop()
                if pos + 1 < len(ldesc[v]):
                    pos += 1
                    i = ldesc[v][pos]
                    stack.append((v, pos))
                    word.append(i)
                    v = lmul[v][i]
                    while ldesc[v]:
                        i = ldesc[v][0]
                        stack.append((v, 0))
                        word.append(i)
                        v = lmul[v][i]
                    break
            else:
                return
            assert len(word) >= base

    def unrank(self, u: int, k: int) -> tuple[int, ...]:
        return next(self.iter_words(u, k, k + 1))

    def rank_of(self, u: int, word: Iterable[int]) -> int:
        R = self.reduced_word_counts
        lmul = self.lmul
        ldesc = self.left_descent_table
        k = 0
        for x in word:
            if x not in ldesc[u]:
                raise ValueError("word is not a reduced word of the element")
            for i in ldesc[u]:
                if i == x:
                    break
                k += R[lmul[u][i]]
            u = lmul[u][x]
        if u != 0:
            raise ValueError("word is too short for the element")
        return k


@lru_cache(maxsize=16)
def weyl_group(cartan: CartanData) -> WeylGroup:
    return WeylGroup(cartan)


def weyl_order(cartan: CartanData) -> int:
    return len(weyl_group(cartan))


def enumerate_reduced_words(w: WeylElement, visitor: Callable[[tuple[int, ...]], object] | None = None,
                            start: int = 0, stop: int | None = None,
                            prefix: tuple[int, ...] = ()) -> int:
    """Stream reduced words of ``w`` in lexicographic order to ``visitor``.

    The visitor may return ``False`` to stop early.  Returns the number of
    words emitted.  ``prefix``/``start``/``stop`` select disjoint sub-streams
    for partitioned consumers.
    """
    G = weyl_group(w.cartan)
    u = G.locate(w)
    count = 0
    for word in G.iter_words(u, start, stop, prefix):
        count += 1
        if visitor is not None and visitor(word) is False:
            break
    return count
