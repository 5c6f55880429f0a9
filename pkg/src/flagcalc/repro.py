"""Named reproduction bundles: each runs a group of exact checks and
returns a pass/fail table."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .charcalc import (
    GroupAlgebraElement,
    bwb_cohomology,
    demazure_op,
    euler_char_bs,
    euler_char_x,
    index_of_contraction,
    serre_check,
)
from .bottsamelson import build_model
from .descent import Certified, DescentEngine, Exact, certify_word, h1_uniqueness
from .dynkin import builtin
from .lattice import Regular, affine_reflect, canonical_class, dominant_representative
from .scan import f4_scan
from .weyl import (
    count_reduced_words,
    enumerate_reduced_words,
    generate_roots,
    longest_element,
    weyl_group,
    weyl_order,
)

RANK4_TYPES = ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D3", "A4", "B4", "C4", "D4", "F4"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def u_word(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def d_word(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def word_counts() -> list[Check]:
    out = []
    for t, want in (("A2", 2), ("B2", 2), ("A3", 16), ("F4", 2144892)):
        w0 = longest_element(builtin(t))
        dp = count_reduced_words(w0)
        streamed = enumerate_reduced_words(w0)
        out.append(Check(f"reduced words of w0 in {t}", dp == want == streamed,
                         f"dp={dp} streamed={streamed} expected={want}"))
    return out


def dimensions() -> list[Check]:
    out = []
    for t in RANK4_TYPES:
        c = builtin(t)
        npos = len(generate_roots(c).positives)
        res = dominant_representative(c, canonical_class(c))
        lam = res.length if isinstance(res, Regular) else None
        out.append(Check(f"length of K_X in {t}", lam == npos, f"length={lam} positive roots={npos}"))
    c = builtin("F4")
    lam = dominant_representative(c, canonical_class(c)).length
    out.append(Check("F4 dimension", lam == 24, f"length={lam}"))
    return out


def f4_index() -> list[Check]:
    c = builtin("F4")
    rs = generate_roots(c)
    k = index_of_contraction(c, rs, 0, 15)
    out = [Check("F4 index of the contraction at node 1", k == 8, f"k={k}")]
    ok = True
    for j in range(1, 8):
        L = (-j, 0, 0, 0)
        res = dominant_representative(c, L)
        prof = bwb_cohomology(c, rs, L)
        if isinstance(res, Regular) and res.length == 15:
            ok = False
        if (not isinstance(res, Regular) or res.length != 15) and prof[15] != 0:
            ok = False
    out.append(Check("h^15 vanishes below k=8", ok))
    return out


def bwb(seed: int = 0) -> list[Check]:
    out = []
    c = builtin("A1")
    rs = generate_roots(c)
    ok = True
    for d in range(-10, 11):
        p = bwb_cohomology(c, rs, (d,))
        want = {0: d + 1} if d >= 0 else {1: -d - 1} if d <= -2 else {}
        ok &= p.values == want
    out.append(Check("projective line cohomology, d in [-10, 10]", ok))
    rng = random.Random(seed)
    for t in ("A2", "B2"):
        c = builtin(t)
        rs = generate_roots(c)
        ok = all(serre_check(c, rs, tuple(rng.randint(-8, 8) for _ in range(c.rank))) for _ in range(200))
        out.append(Check(f"Serre duality in {t}, 200 random classes", ok))
    return out


def chi(seed: int = 0) -> list[Check]:
    out = []
    rng = random.Random(seed)
    for t in ("A1", "A2", "A3", "B2", "B3"):
        c = builtin(t)
        rs = generate_roots(c)
        w = longest_element(c).witness_word
        bad = 0
        for _ in range(100):
            L = tuple(rng.randint(-6, 6) for _ in range(c.rank))
            bad += euler_char_bs(c, w, L) != euler_char_x(c, rs, L)
        out.append(Check(f"Euler characteristics agree in {t}", bad == 0, f"mismatches={bad}"))
    for t in ("A2", "B2"):
        c = builtin(t)
        rs = generate_roots(c)
        G = weyl_group(c)
        words = list(G.iter_words(G.longest))
        bad = 0
        for _ in range(50):
            L = tuple(rng.randint(-6, 6) for _ in range(c.rank))
            x = euler_char_x(c, rs, L)
            bad += any(euler_char_bs(c, w, L) != x for w in words)
        out.append(Check(f"every reduced word of w0 in {t}", bad == 0, f"mismatches={bad}"))
    return out


def demazure(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    types = [builtin(t) for t in ("A2", "B2", "G2")]
    idem = sign = True
    for _ in range(500):
        c = rng.choice(types)
        i = rng.randrange(c.rank)
        L = tuple(rng.randint(-8, 8) for _ in range(c.rank))
        x = GroupAlgebraElement.exp(L)
        once = demazure_op(c, i, x)
        idem &= demazure_op(c, i, once) == once
        # r_i(L) + K_i is the affine reflection of L
        other = GroupAlgebraElement.exp(affine_reflect(c, i, L))
        sign &= once == -demazure_op(c, i, other)
    return [Check("idempotence on 500 inputs", idem), Check("sign rule on 500 inputs", sign)]


def cone_duality(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for t in ("A3", "B3", "F4"):
        c = builtin(t)
        ok = True
        for _ in range(50):
            w = tuple(rng.randrange(c.rank) for _ in range(rng.randint(1, 12)))
            m = build_model(c, w)
            r = len(w)
            unip = all(m.NB[a][a] == 1 and all(m.NB[a][b] == 0 for b in range(a + 1, r)) for a in range(r))
            dual = all(
                sum(m.NB[a][j] * m.gamma_in_beta[b][j] for j in range(r)) == int(a == b)
                for a in range(r) for b in range(r)
            )
            ok &= unip and dual
        out.append(Check(f"cone duality on 50 random words in {t}", ok))
    return out


def simply_laced() -> list[Check]:
    out = []
    for t in ("A2", "A3"):
        c = builtin(t)
        G = weyl_group(c)
        eng = DescentEngine(c)
        words = list(G.iter_words(G.longest))
        cert = sum(isinstance(certify_word(c, w, eng), Certified) for w in words)
        out.append(Check(f"all reduced words of w0 certified in {t}", cert == len(words),
                         f"{cert}/{len(words)}"))
    return out


def bc_uniqueness() -> list[Check]:
    out = []
    for t, n, gen in (("B2", 2, u_word), ("B3", 3, u_word), ("C3", 3, d_word)):
        c = builtin(t)
        w = gen(n) * n
        res = certify_word(c, w)
        steps = [h1_uniqueness(c, w[:m]) for m in range(2, len(w) + 1)]
        exact = all(isinstance(s, Exact) and s.n in (0, 1) for s in steps)
        out.append(Check(f"{t} word {[x + 1 for x in w]}", isinstance(res, Certified) and exact, str(res)))
    return out


def f4_sample(k: int = 10_000) -> list[Check]:
    rep = f4_scan("sample", k=k)
    return [Check(f"F4 sample of {k} words has no certified word",
                  rep.certified == 0 and rep.processed == k,
                  f"processed={rep.processed} certified={rep.certified} failed={rep.failed} "
                  f"budget_exceeded={rep.budget_exceeded}")]


def roots() -> list[Check]:
    orders = {"A2": 6, "B2": 8, "G2": 12, "A3": 24, "B3": 48, "F4": 1152}
    out = []
    for t in RANK4_TYPES:
        c = builtin(t)
        rs = generate_roots(c)
        coeffs = set(rs.by_coeffs)
        closed = all(
            tuple(x if k != i else x - sum(c.matrix[j][i] * r[j] for j in range(c.rank))
                  for k, x in enumerate(r)) in coeffs
            for r in coeffs for i in range(c.rank)
        )
        partition = len(rs) == 2 * len(rs.positives) and all(tuple(-x for x in r) in coeffs for r in coeffs)
        w0 = longest_element(c)
        negates = all(not rs.by_degrees[w0.apply(r.degrees)].is_positive for r in rs.positives)
        integral = all(len(rs.coroot(r)) == c.rank for r in rs.roots)
        ok = closed and partition and rs.is_reduced_system() and negates and integral
        if t in orders:
            ok &= weyl_order(c) == orders[t]
        out.append(Check(f"root system {t}", ok))
    return out


SUITES = {
    "word-counts": word_counts,
    "dimensions": dimensions,
    "f4-index": f4_index,
    "bwb": bwb,
    "chi": chi,
    "demazure": demazure,
    "cone-duality": cone_duality,
    "simply-laced": simply_laced,
    "bc-uniqueness": bc_uniqueness,
    "f4-sample": f4_sample,
    "roots": roots,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [chk for fn in SUITES.values() for chk in fn()]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
