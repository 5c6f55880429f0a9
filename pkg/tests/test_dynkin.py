import itertools
import random

import numpy as np
import pytest

from flagcalc.dynkin import (
    CartanData,
    block_diagonal,
    builtin,
    classify,
    parse_type,
    symmetrize,
    validate_cartan,
)
from flagcalc.errors import (
    AsymmetricZero,
    BadDiagonal,
    BadPair,
    InvalidCartan,
    NotSymmetrizable,
    UnclassifiableComponent,
    UnsupportedType,
)

ALL_BUILTINS = [
    ("A", n) for n in range(1, 7)
] + [("B", n) for n in range(2, 6)] + [("C", n) for n in range(2, 6)] + [
    ("D", n) for n in range(3, 7)
] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


def permuted(c, perm):
    return validate_cartan([[c.matrix[perm[i]][perm[j]] for j in range(c.rank)] for i in range(c.rank)])


def is_positive_definite(c):
    d = symmetrize(c)
    S = np.array([[d[i] * c.matrix[i][j] for j in range(c.rank)] for i in range(c.rank)], dtype=float)
    assert np.allclose(S, S.T)
    return bool(np.linalg.eigvalsh(S).min() > 1e-9)


def test_conventions():
    assert builtin("B3").matrix[1][2] == -2
    assert builtin("C3").matrix[2][1] == -2
    assert builtin("F4").matrix == ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))
    assert builtin("G2").matrix == ((2, -1), (-3, 2))
    assert builtin("F4") == builtin("F", 4)


@pytest.mark.parametrize("t,n", ALL_BUILTINS)
def test_builtin_classifies_to_itself(t, n):
    c = builtin(t, n)
    diag = classify(c)
    assert [(k.type, k.rank, k.nodes) for k in diag.components] == [(t, n, tuple(range(n)))]
    assert is_positive_definite(c)


@pytest.mark.parametrize("t,n", ALL_BUILTINS)
def test_classification_is_permutation_invariant(t, n):
    c = builtin(t, n)
    rng = random.Random(n)
    std = _builtin_matrix(t, n)
    for _ in range(5):
        perm = list(range(n))
        rng.shuffle(perm)
        comp, = classify(permuted(c, perm)).components
        assert comp.rank == n
        # D3 and A3 share a diagram, as do B2 and C2 up to relabeling
        expected = {"D": {"D", "A"} if n == 3 else {"D"}, "A": {"A", "D"} if n == 3 else {"A"}, "B": {"B", "C"} if n == 2 else {"B"},
                    "C": {"C", "B"} if n == 2 else {"C"}}.get(t, {t})
        assert comp.type in expected
        pc = permuted(c, perm).matrix
        relabeled = [[pc[a][b] for b in comp.nodes] for a in comp.nodes]
        assert relabeled == _builtin_matrix(comp.type, n)


def _builtin_matrix(t, n):
    return [list(r) for r in builtin(t, n).matrix]


def test_symmetrizer():
    assert symmetrize(builtin("G2")) == (3, 1)
    # d_i A_ij = d_j A_ji makes d large on short roots
    assert symmetrize(builtin("B3")) == (1, 1, 2)
    assert symmetrize(builtin("C3")) == (2, 2, 1)
    assert symmetrize(builtin("F4")) == (1, 1, 2, 2)
    assert symmetrize(builtin("A3")) == (1, 1, 1)


def test_validation_errors():
    with pytest.raises(BadDiagonal):
        validate_cartan([[2, -1], [-1, 3]])
    with pytest.raises(BadPair):
        validate_cartan([[2, -2], [-2, 2]])
    with pytest.raises(BadPair):
        validate_cartan([[2, 1], [1, 2]])
    with pytest.raises(AsymmetricZero):
        validate_cartan([[2, 0], [-1, 2]])
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, -1, 0], [-1, 2]])
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, 0.5], [-1, 2]])
    with pytest.raises(NotSymmetrizable):
        validate_cartan([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])
    with pytest.raises(UnsupportedType):
        builtin("E", 9)
    with pytest.raises(UnsupportedType):
        parse_type("H3")


def test_cycles_validate_but_do_not_classify():
    c = validate_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    with pytest.raises(UnclassifiableComponent):
        classify(c)


def test_disconnected():
    c = block_diagonal(builtin("A2"), builtin("G2"))
    diag = classify(c)
    assert [(k.type, k.nodes) for k in diag.components] == [("A", (0, 1)), ("G", (2, 3))]
    assert diag.to_json()["components"][1]["nodes"] == [3, 4]


def test_json_round_trip():
    c = builtin("F4")
    assert CartanData.from_json(c.to_json()) == c


PAIR_CHOICES = [(0, 0), (-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1)]


def test_three_node_oracle_exhaustive():
    """Finite type iff the symmetrized matrix is positive definite."""
    seen = 0
    for p01, p02, p12 in itertools.product(PAIR_CHOICES, repeat=3):
        m = [[2, p01[0], p02[0]], [p01[1], 2, p12[0]], [p02[1], p12[1], 2]]
        try:
            c = validate_cartan(m)
        except NotSymmetrizable:
            continue
        seen += 1
        pd = is_positive_definite(c)
        try:
            classify(c)
            ok = True
        except UnclassifiableComponent:
            ok = False
        assert ok == pd, m
    assert seen > 100


def test_four_node_random_oracle():
    rng = random.Random(4)
    for _ in range(3000):
        m = [[2] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                a, b = rng.choice(PAIR_CHOICES[:3] + [(0, 0)] * 3 + PAIR_CHOICES[3:])
                m[i][j], m[j][i] = a, b
        try:
            c = validate_cartan(m)
        except NotSymmetrizable:
            continue
        try:
            classify(c)
            ok = True
        except UnclassifiableComponent:
            ok = False
        assert ok == is_positive_definite(c), m
