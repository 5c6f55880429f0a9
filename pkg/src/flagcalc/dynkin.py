"""Cartan matrices, Dynkin classification and symmetrizers.

Conventions follow Humphreys (Lie algebras, section 11.4): the entry
``matrix[i][j]`` is the pairing of the i-th simple root with the j-th simple
coroot, so ``B_n`` has ``matrix[n-2][n-1] == -2`` (short root last), ``C_n``
has ``matrix[n-1][n-2] == -2`` (long root last) and ``F_4`` carries its double
edge between nodes 2 and 3.  All indices are 0-based in Python and 1-based in
anything serialized.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    AsymmetricZero,
    BadDiagonal,
    BadPair,
    InvalidCartan,
    NotSymmetrizable,
    UnclassifiableComponent,
    UnsupportedType,
)

__all__ = [
    "CartanData",
    "DynkinComponent",
    "DynkinDiagram",
    "validate_cartan",
    "classify",
    "builtin",
    "symmetrize",
    "block_diagonal",
    "parse_type",
]

ALLOWED_PAIRS = {(-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1)}
TYPE_LABELS = "ABCDEFG"


@dataclass(frozen=True)
class CartanData:
    """A validated Cartan matrix.  Build through :func:`validate_cartan`."""

    rank: int
    matrix: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.matrix[i]

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        return symmetrize(self)

    @cached_property
    def key(self) -> str:
        """Stable text key used for caching and hashing."""
        return ";".join(",".join(map(str, r)) for r in self.matrix)

    def to_json(self) -> dict:
        return {"rank": self.rank, "matrix": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, obj) -> "CartanData":
        if isinstance(obj, str):
            obj = json.loads(obj)
        c = validate_cartan(obj["matrix"])
        if "rank" in obj and obj["rank"] != c.rank:
            raise InvalidCartan(f"rank {obj['rank']} does not match matrix size {c.rank}")
        return c


@dataclass(frozen=True)
class DynkinComponent:
    type: str
    rank: int
    # nodes[k] is the global (0-based) index of the k-th node in standard order
    nodes: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.type}{self.rank}"


@dataclass(frozen=True)
class DynkinDiagram:
    components: tuple[DynkinComponent, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "components": [
                {"type": c.type, "rank": c.rank, "nodes": [k + 1 for k in c.nodes]}
                for c in self.components
            ]
        }


def validate_cartan(matrix) -> CartanData:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InvalidCartan("matrix must be square and nonempty")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise InvalidCartan(f"non-integer entry {x!r}")
    rows = [[int(x) for x in r] for r in rows]
    for i in range(n):
        if rows[i][i] != 2:
            raise BadDiagonal(f"entry ({i + 1},{i + 1}) is {rows[i][i]}, expected 2")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0):
                raise AsymmetricZero(f"entries ({i + 1},{j + 1})={a} and ({j + 1},{i + 1})={b}")
            if a != 0 and (a, b) not in ALLOWED_PAIRS:
                raise BadPair(f"pair ({a},{b}) at nodes {i + 1},{j + 1}")
    c = CartanData(n, tuple(tuple(r) for r in rows))
    symmetrize(c)
    return c


def _components(c: CartanData) -> list[list[int]]:
    n = c.rank
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and c.matrix[i][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def symmetrize(c: CartanData) -> tuple[int, ...]:
    """Minimal positive integers d with d_i A_ij = d_j A_ji, gcd 1 per component."""
    n = c.rank
    A = c.matrix
    d: list[Fraction | None] = [None] * n
    for comp in _components(c):
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if j == i or A[i][j] == 0:
                    continue
                want = d[i] * A[i][j] / A[j][i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable(f"inconsistent cycle through nodes {i + 1},{j + 1}")
        lcm = math.lcm(*(d[k].denominator for k in comp))
        ints = [int(d[k] * lcm) for k in comp]
        g = math.gcd(*ints)
        for k, v in zip(comp, ints):
            d[k] = Fraction(v // g)
    return tuple(int(x) for x in d)


# --- builtin matrices ------------------------------------------------------

def _edges_matrix(n, edges, special=None):
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    for (i, j), v in (special or {}).items():
        m[i][j] = v
    return m


def _builtin_raw(t: str, n: int):
    chain = [(i, i + 1) for i in range(n - 1)]
    if t == "A" and n >= 1:
        return _edges_matrix(n, chain)
    if t == "B" and n >= 2:
        return _edges_matrix(n, chain, {(n - 2, n - 1): -2})
    if t == "C" and n >= 2:
        return _edges_matrix(n, chain, {(n - 1, n - 2): -2})
    if t == "D" and n >= 3:
        return _edges_matrix(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if t == "E" and n in (6, 7, 8):
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        return _edges_matrix(n, edges)
    if t == "F" and n == 4:
        return _edges_matrix(4, chain, {(1, 2): -2})
    if t == "G" and n == 2:
        return _edges_matrix(2, chain, {(1, 0): -3})
    raise UnsupportedType(f"{t}{n} is not a finite type")


def builtin(type_label: str, rank: int | None = None) -> CartanData:
    """Standard Cartan matrix; ``builtin("F4")`` and ``builtin("F", 4)`` agree."""
    t, n = parse_type(type_label, rank)
    return validate_cartan(_builtin_raw(t, n))


def parse_type(type_label: str, rank: int | None = None) -> tuple[str, int]:
    s = str(type_label).strip().upper()
    if not s or s[0] not in TYPE_LABELS:
        raise UnsupportedType(f"unknown type label {type_label!r}")
    t, rest = s[0], s[1:]
    if rest:
        if not rest.isdigit() or (rank is not None and int(rest) != rank):
            raise UnsupportedType(f"cannot read rank from {type_label!r}")
        rank = int(rest)
    if rank is None:
        raise UnsupportedType(f"type {t} needs a rank")
    _builtin_raw(t, int(rank))
    return t, int(rank)


def block_diagonal(*blocks: CartanData) -> CartanData:
    n = sum(b.rank for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rank):
            for j in range(b.rank):
                m[off + i][off + j] = b.matrix[i][j]
        off += b.rank
    return validate_cartan(m)


# --- classification --------------------------------------------------------

def _local(A, nodes):
    return [[A[i][j] for j in nodes] for i in nodes]


def _exact_candidates(m: int):
    for t in TYPE_LABELS:
        try:
            yield t, _builtin_raw(t, m)
        except UnsupportedType:
            continue


def _path_from(adj, start):
    path, prev, cur = [start], None, start
    while True:
        nxt = [k for k in adj[cur] if k != prev]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _classify_component(A, nodes) -> DynkinComponent:
    m = len(nodes)
    local = _local(A, nodes)
    # identity relabeling whenever the component is already in standard order
    for t, raw in _exact_candidates(m):
        if raw == local:
            return DynkinComponent(t, m, tuple(nodes))

    adj = {i: [j for j in nodes if j != i and A[i][j]] for i in nodes}
    n_edges = sum(len(v) for v in adj.values()) // 2
    if n_edges != m - 1:
        raise UnclassifiableComponent(f"component {[k + 1 for k in nodes]} contains a cycle")
    multi = [(i, j) for i in nodes for j in adj[i] if i < j and A[i][j] * A[j][i] > 1]
    degrees = {i: len(adj[i]) for i in nodes}
    bad = UnclassifiableComponent(f"component {[k + 1 for k in nodes]} is not of finite type")

    if multi:
        if len(multi) > 1 or max(degrees.values()) > 2:
            raise bad
        i, j = multi[0]
        if A[i][j] * A[j][i] == 3:
            if m != 2:
                raise bad
            long_ = i if A[i][j] == -3 else j
            short = j if long_ == i else i
            return DynkinComponent("G", 2, (short, long_))
        ends = sorted(k for k in nodes if degrees[k] <= 1)
        if m == 4:
            for e in ends:
                p = _path_from(adj, e)
                if {p[1], p[2]} == {i, j} and A[p[1]][p[2]] == -2:
                    return DynkinComponent("F", 4, tuple(p))
        for e in ends:
            p = _path_from(adj, e)
            if {p[-2], p[-1]} == {i, j}:
                t = "B" if A[p[-2]][p[-1]] == -2 else "C"
                return DynkinComponent(t, m, tuple(p))
        raise bad

    if max(degrees.values(), default=0) <= 2:
        ends = sorted(k for k in nodes if degrees[k] <= 1)
        return DynkinComponent("A", m, tuple(_path_from(adj, ends[0])))
    branch = [k for k in nodes if degrees[k] >= 3]
    if len(branch) != 1 or degrees[branch[0]] != 3:
        raise bad
    centre = branch[0]
    arms = []
    for s in sorted(adj[centre]):
        arm, prev, cur = [s], centre, s
        while True:
            nxt = [k for k in adj[cur] if k != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a[0]))
    lens = tuple(len(a) for a in arms)
    if lens[0] == 1 and lens[1] == 1:
        long_arm = arms[2]
        order = list(reversed(long_arm)) + [centre, arms[0][0], arms[1][0]]
        return DynkinComponent("D", m, tuple(order))
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        short, mid, long_ = arms
        # E_n: 1-3-4-5-..., with 2 attached to 4
        order = [mid[1], short[0], mid[0], centre] + long_
        return DynkinComponent("E", m, tuple(order))
    raise bad


def classify(c: CartanData) -> DynkinDiagram:
    comps = [_classify_component(c.matrix, nodes) for nodes in _components(c)]
    return DynkinDiagram(tuple(comps))
