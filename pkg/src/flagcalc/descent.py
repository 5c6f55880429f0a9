"""Bounds on line-bundle cohomology of Bott-Samelson towers, and the
uniqueness certifier built on them.

A query ``(word, L, i)`` asks for ``h^i`` of the pullback of ``L`` to the
tower of ``word``.  The engine peels the last letter ``x`` of the word and
branches on ``s = L . Gamma_x``:

    s = 0        same value on the shorter tower                 (dr1)
    s = -1       zero                                             (dr2)
    s = -2       h^{i-1} of L - K_x on the shorter tower          (dr3)
    s <= -3      at most the sum of h^{i-1}(L + t K_x), t=s+1..-1 (filtration)
    s >= 1       at most the sum of h^i(L + t K_x), t=0..s        (dr4)
    s = 1, ...   equal on the shorter tower in positive degree    (dr5)

plus a vanishing shortcut when ``L`` has degree >= -1 on every letter
(kkv2) and the lower bound ``h^1(K_j) >= 1`` when ``j`` already occurs in the
word (zeta).  Every value is an interval ``[lo, hi]``; upper bounds never
claim exactness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .bottsamelson import build_model, is_nef, pullback, BSDivisor
from .charcalc import GroupAlgebraElement, euler_char_bs
from .dynkin import CartanData
from .errors import BudgetExceeded, InconsistentDerivation, NotReduced
from .lattice import degrees_of
from .weyl import check_word, is_reduced

__all__ = [
    "Exact",
    "Range",
    "Unknown",
    "CohomologyValue",
    "Query",
    "DerivationTrace",
    "DescentEngine",
    "h_value",
    "h1_uniqueness",
    "Undetermined",
    "certify_word",
    "Certified",
    "FailsAt",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1_000_000


# --- values ------------------------------------------------------------------

@dataclass(frozen=True)
class Exact:
    n: int

    @property
    def bounds(self):
        return (self.n, self.n)

    def to_json(self):
        return {"exact": self.n}


@dataclass(frozen=True)
class Range:
    lo: int
    hi: int | None  # None: no upper bound derived

    @property
    def bounds(self):
        return (self.lo, self.hi)

    def to_json(self):
        return {"lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class Unknown:
    @property
    def bounds(self):
        return (0, None)

    def to_json(self):
        return {"unknown": True}


CohomologyValue = Union[Exact, Range, Unknown]


def as_value(lo: int, hi: int | None) -> CohomologyValue:
    if hi is not None and lo == hi:
        return Exact(lo)
    return Range(lo, hi)


def meet(a: tuple, b: tuple) -> tuple:
    lo = max(a[0], b[0])
    if a[1] is None:
        hi = b[1]
    elif b[1] is None:
        hi = a[1]
    else:
        hi = min(a[1], b[1])
    if hi is not None and lo > hi:
        raise InconsistentDerivation(f"disjoint bounds {a} and {b}")
    return (lo, hi)


@dataclass(frozen=True)
class Query:
    word: tuple[int, ...]
    payload: GroupAlgebraElement
    degree: int

    @classmethod
    def of(cls, word, L, degree: int) -> "Query":
        if isinstance(L, GroupAlgebraElement):
            return cls(tuple(word), L, degree)
        return cls(tuple(word), GroupAlgebraElement.exp(L), degree)


@dataclass
class DerivationTrace:
    """Rule applications in evaluation order.

    Each step is ``(rule, (word, L, i), children, (lo, hi))`` where children
    are the sub-queries the rule consulted.  ``zeta`` marks steps whose lower
    bound came from a known nonzero extension class.
    """

    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def rules_used(self) -> set[str]:
        return {s[0] for s in self.steps}


# --- engine ------------------------------------------------------------------

class _OutOfBudget(Exception):
    pass


class DescentEngine:
    """Memoized evaluator for single-term queries ``(word, L, i)``.

    The memo is keyed by the query itself and may be shared across many top
    level calls.  Only completed derivations are stored, so a budget abort
    never leaves a wrong entry behind.
    """

    def __init__(self, cartan: CartanData, budget: int = DEFAULT_BUDGET,
                 use_j3: bool = False, trace: bool = False):
        self.cartan = cartan
        self.A = cartan.matrix
        self.budget = budget
        self.use_j3 = use_j3
        self.memo: dict[tuple, tuple] = {}
        self.trace = DerivationTrace() if trace else None
        self._nodes = 0
        self._K = {tuple(-a for a in row): j for j, row in enumerate(self.A)}

    # public ------------------------------------------------------------------

    def value(self, word, L, i: int) -> CohomologyValue:
        """Interval for ``h^i`` of a class or a formal sum of classes."""
        w = check_word(self.cartan, word)
        terms = L.items() if isinstance(L, GroupAlgebraElement) else [(degrees_of(L), 1)]
        self._nodes = 0
        lo, hi = 0, 0
        try:
            for M, n in terms:
                a, b = self._h(w, tuple(M), i)
                if n >= 0:
                    lo += n * a
                    hi = None if (hi is None or b is None) else hi + n * b
                else:
                    if b is None:
                        return Unknown()
                    lo += n * b
                    hi = None if hi is None else hi + n * a
        except _OutOfBudget:
            return Unknown()
        return as_value(lo, hi)

    def clear(self) -> None:
        self.memo.clear()

    # rules -------------------------------------------------------------------

    def _h(self, w: tuple, L: tuple, i: int) -> tuple:
        key = (w, L, i)
        got = self.memo.get(key)
        if got is not None:
            return got
        self._nodes += 1
        if self._nodes > self.budget:
            raise _OutOfBudget()
        rule, children = self._plan(w, L, i)
        vals = [self._h(*q) for q in children]
        out = combine(self.cartan, rule, key, vals)
        if self._zeta_applies(w, L, i):
            out = meet(out, (1, None))
            rule_z = True
        else:
            rule_z = False
        self.memo[key] = out
        if self.trace is not None:
            self.trace.steps.append((rule, key, tuple(children), out, rule_z))
        return out

    def _zeta_applies(self, w, L, i) -> bool:
        if i != 1:
            return False
        j = self._K.get(L)
        return j is not None and j in w

    def _plan(self, w: tuple, L: tuple, i: int):
        r = len(w)
        if i < 0 or i > r:
            return "out_of_range", []
        if r == 0:
            return "point", []
        if all(L[x] >= -1 for x in w):
            return "kkv2", []
        if r == 1:
            return "curve", []
        x = w[-1]
        s = L[x]
        row = self.A[x]
        head = w[:-1]
        if i == 1 and L in self._K:
            # drop trailing letters on which K_j has degree 0 or 1
            k = r
            while k > 0 and L[w[k - 1]] in (0, 1):
                k -= 1
            if k < r:
                return "skip", [(w[:k], L, i)]
        if self.use_j3 and i > 0 and self._j3_applies(w, L):
            return "j3", []
        if s == 0:
            return "dr1", [(head, L, i)]
        if s == -1:
            return "dr2", []
        if s == -2:
            return "dr3", [(head, tuple(a + b for a, b in zip(L, row)), i - 1)]
        if s <= -3:
            kids = []
            for t in range(s + 1, 0):
                kids.append((head, tuple(a - t * b for a, b in zip(L, row)), i - 1))
            return "filtration", kids
        if s == 1 and i > 0:
            LK = tuple(a - b for a, b in zip(L, row))
            if all(LK[y] >= -1 for y in head):
                return "dr5", [(head, L, i)]
        kids = [(head, tuple(a - t * b for a, b in zip(L, row)), i) for t in range(s + 1)]
        return "dr4", kids

    def _j3_applies(self, w, L) -> bool:
        m = build_model(self.cartan, w)
        section = m.section_beta[-1]
        D = pullback(m, L) + BSDivisor(section)
        return is_nef(m, D)


def combine(cartan: CartanData, rule: str, key: tuple, vals: list) -> tuple:
    """Value of a rule application from the values of its sub-queries."""
    w, L, i = key
    if rule in ("out_of_range", "dr2", "j3"):
        return (0, 0)
    if rule == "point":
        return (1, 1) if i == 0 else (0, 0)
    if rule == "kkv2":
        if i > 0:
            return (0, 0)
        chi = euler_char_bs(cartan, w, L)
        return (chi, chi)
    if rule == "curve":
        s = L[w[0]]
        n = max(s + 1, 0) if i == 0 else max(-s - 1, 0) if i == 1 else 0
        return (n, n)
    if rule in ("dr1", "dr3", "dr5", "skip"):
        return vals[0]
    if rule in ("dr4", "filtration"):
        hi = 0
        for _, b in vals:
            if b is None:
                return (0, None)
            hi += b
        return (0, hi)
    raise ValueError(f"unknown rule {rule}")


def replay(cartan: CartanData, trace: DerivationTrace) -> bool:
    """Recompute every step from its children and compare."""
    seen: dict = {}
    for rule, key, children, out, zeta in trace.steps:
        vals = [seen[c] for c in children]
        v = combine(cartan, rule, key, vals)
        if zeta:
            v = meet(v, (1, None))
        if v != out:
            return False
        seen[key] = out
    return True


def h_value(c: CartanData, q: Query, budget: int = DEFAULT_BUDGET, use_j3: bool = False):
    """Evaluate a query on a fresh engine; returns ``(value, trace)``."""
    eng = DescentEngine(c, budget=budget, use_j3=use_j3, trace=True)
    v = eng.value(q.word, q.payload, q.degree)
    return v, eng.trace


# --- uniqueness ----------------------------------------------------------------

@dataclass(frozen=True)
class Undetermined:
    value: CohomologyValue

    def to_json(self):
        return {"undetermined": self.value.to_json()}


def _k_class(c: CartanData, j: int) -> tuple[int, ...]:
    return tuple(-a for a in c.matrix[j])


def h1_uniqueness(c: CartanData, word, target: int | None = None,
                  engine: DescentEngine | None = None):
    """Decide ``h^1`` of ``K_{l_r}`` on the tower of the word minus its last
    letter (``target=None``), or of ``K_target`` on the tower of the whole word.

    Returns ``Exact(0)``, ``Exact(1)`` or ``Undetermined(value)``.
    """
    w = check_word(c, word)
    if target is None:
        if not w:
            return Exact(0)
        j, base = w[-1], w[:-1]
    else:
        j, base = target, w
    K = _k_class(c, j)
    if all(K[y] in (0, 1, -2) for y in base):
        return Exact(1 if j in base else 0)
    eng = engine or DescentEngine(c)
    v = eng.value(base, K, 1)
    if isinstance(v, Exact) and v.n in (0, 1):
        return v
    return Undetermined(v)


@dataclass(frozen=True)
class Certified:
    steps: int

    def to_json(self):
        return {"certified": True, "steps": self.steps}


@dataclass(frozen=True)
class FailsAt:
    index: int  # 1-based length of the first prefix whose step is undetermined
    value: CohomologyValue

    @property
    def budget_exceeded(self) -> bool:
        return isinstance(self.value, Unknown)

    def to_json(self):
        return {"certified": False, "fails_at": self.index, "value": self.value.to_json()}


def certify_word(c: CartanData, word, engine: DescentEngine | None = None,
                 check: bool = True):
    """Check that every stage of the tower is forced, shortest prefix first.

    Stage ``m`` is forced when ``h^1`` of ``K_{l_m}`` on the tower of the first
    ``m - 1`` letters is exactly 0 or 1.
    """
    w = check_word(c, word)
    if check and not is_reduced(c, w):
        raise NotReduced(f"{[x + 1 for x in w]} is not reduced")
    eng = engine or DescentEngine(c)
    steps = 0
    for m in range(2, len(w) + 1):
        if w[m - 1] not in w[: m - 1]:
            continue
        steps += 1
        res = h1_uniqueness(c, w[:m], engine=eng)
        if isinstance(res, Undetermined):
            return FailsAt(m, res.value)
    return Certified(steps)
