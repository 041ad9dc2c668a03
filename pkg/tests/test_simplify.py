import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import random_theta
from strata_pi1.compositions import closure, double_two, enumerate_omega, single_three
from strata_pi1.presentation import Presentation, classify_freeness, presentation, stabilize
from strata_pi1.presets import extorsion, omega_ge, single_three_only
from strata_pi1.simplify import (
    AbelianInvariants,
    abelianize,
    canonical_relator,
    certify_free,
    cyclic_reduce,
    determinantal_divisors_oracle,
    free_reduce,
    normalize,
    relation_matrix,
    replay,
    simplify,
    smith_normal_form,
)

a, b = (1, 1), (2, 2)


def test_reductions():
    assert free_reduce([(a, 1), (b, 1), (b, -1), (a, -1)]) == ()
    assert cyclic_reduce([(a, 1), (b, 1), (a, -1)]) == ((b, 1),)
    assert canonical_relator([(b, 1), (a, 1)]) == canonical_relator([(a, 1), (b, 1)])
    assert canonical_relator([(a, -1), (b, -1)]) == canonical_relator([(b, 1), (a, 1)])
    rels, trivial, dup = normalize([(), ((a, 1), (a, -1)), ((a, 1), (b, 1)), ((b, 1), (a, 1))])
    assert (len(rels), trivial, dup) == (1, 2, 1)


def test_extorsion_simplifies_to_square():
    s = simplify(presentation(extorsion()))
    assert s.generators == ((1, 1), (2, 2))
    assert s.relators == (((a, 1), (a, 1)),)
    assert certify_free(s) is None


def test_extorsion_abelianization():
    inv = abelianize(presentation(extorsion()))
    assert inv.torsion == (2,)
    assert inv.free_rank == 1


def test_extorsion_degree_eight_is_free():
    p = presentation(stabilize(extorsion(), 8))
    s = simplify(p)
    r = certify_free(s)
    assert r is not None
    assert abelianize(p) == AbelianInvariants(r, ())


def test_omega_ge3_trivial():
    for d in range(4, 11):
        s = simplify(presentation(omega_ge(d, 3)))
        assert s.generators == () and s.relators == ()


def test_single_three_is_infinite_cyclic():
    for d in range(4, 12):
        s = simplify(presentation(single_three_only(d)))
        assert len(s.generators) == 1 and s.relators == ()
        assert certify_free(s) == 1


def test_omega_ge2_free_rank():
    p = presentation(omega_ge(6, 2))
    assert certify_free(simplify(p)) == 6
    assert abelianize(p) == AbelianInvariants(6, ())


def test_empty_presentation():
    assert abelianize(Presentation(2, ())) == AbelianInvariants(0, ())


@pytest.mark.parametrize(
    "matrix, diag",
    [([[2]], [2]), ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]), ([[2, 4], [6, 8]], [2, 4]), ([[0, 0]], [0])],
)
def test_snf_examples(matrix, diag):
    assert smith_normal_form(matrix) == diag
    assert determinantal_divisors_oracle(matrix) == diag


def test_snf_big_integers():
    m = [[10**30, 0], [0, 3 * 10**30]]
    assert smith_normal_form(m) == [10**30, 3 * 10**30]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
@settings(max_examples=300)
def test_snf_matches_minor_oracle(m):
    diag = smith_normal_form(m)
    assert diag == determinantal_divisors_oracle(m)
    nz = [x for x in diag if x]
    assert all(y % x == 0 for x, y in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


@given(matrices, st.randoms(use_true_random=False))
@settings(max_examples=150)
def test_snf_invariance(m, rnd):
    rows = list(m)
    rnd.shuffle(rows)
    cols = list(range(len(m[0])))
    rnd.shuffle(cols)
    permuted = [[row[c] for c in cols] for row in rows]
    flipped = [[-x for x in row] if rnd.random() < 0.5 else row for row in permuted]
    assert smith_normal_form(flipped) == smith_normal_form(m)


def test_relation_matrix_orders_generators():
    p = presentation(extorsion())
    rows = relation_matrix(p)
    assert len(rows) == 5 and all(len(r) == 6 for r in rows)


def _random_presentations(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        d = rng.choice([6, 7, 8])
        yield presentation(random_theta(d, rng))


def test_tietze_invariance_and_replay():
    for p in _random_presentations(60, 1):
        s = simplify(p)
        assert abelianize(p) == abelianize(Presentation(p.d, s.generators, s.relators))
        assert replay(p, s.log) == s
        assert simplify(Presentation(p.d, s.generators, s.relators)).canonical() == s.canonical()
        for rel in s.relators:
            assert canonical_relator(rel) == rel
            assert not (len(rel) == 1 or (len(rel) == 2 and rel[0][0] != rel[1][0]))
        r = certify_free(s)
        if r is not None:
            assert abelianize(p) == AbelianInvariants(r, ())


def test_certify_free_under_freeness_criteria():
    rng = random.Random(6)
    for d in range(4, 13):
        eq2 = enumerate_omega(d, eq=2)
        separated = [w for w in eq2 if (s := double_two(w)) is not None and s[1] > 0]
        for _ in range(3):
            extra = [w for w in eq2 if w not in separated and rng.random() < 0.5]
            theta = closure(separated + extra, d)
            assert classify_freeness(theta) in ("case_i", "case_ii", "shortcut_ge3")
            assert certify_free(simplify(presentation(theta))) is not None
        theta = closure([w for w in eq2 if single_three(w) is not None], d)
        assert classify_freeness(theta) == "case_ii"
        assert certify_free(simplify(presentation(theta))) == 1
