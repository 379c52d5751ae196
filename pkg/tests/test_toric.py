from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobeniuskit.linalg import rank
from frobeniuskit.toric import (
    Cone,
    ConeError,
    Fan,
    SemigroupRing,
    WeilDivisor,
    dualize,
    projective_space,
    round_down,
)

from conftest import SEGRE_GENERATORS


def brute_force_dual_rays(gens, box=2):
    """Oracle: primitive v in a box, non-negative on every generator, whose
    tight generators span a hyperplane."""
    from math import gcd
    d = len(gens[0])
    out = []
    for v in product(range(-box, box + 1), repeat=d):
        if not any(v) or gcd(*v) != 1:
            continue
        vals = [sum(a * b for a, b in zip(g, v)) for g in gens]
        if min(vals) < 0:
            continue
        tight = [g for g, x in zip(gens, vals) if x == 0]
        if tight and rank(tight) == d - 1:
            out.append(v)
    return sorted(out)


SEGRE_RAYS = [(-1, 0, 0, 1), (0, -1, -1, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def test_dualize_examples():
    assert dualize([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]
    assert dualize([(2, -1), (0, 1)]) == [(1, 0), (1, 2)]
    assert brute_force_dual_rays(SEGRE_GENERATORS) == SEGRE_RAYS
    assert dualize(SEGRE_GENERATORS) == SEGRE_RAYS


def test_dualize_rejects_degenerate():
    with pytest.raises(ConeError, match="full-dimensional"):
        dualize([(1, 0), (2, 0)])
    with pytest.raises(ConeError, match="strongly convex"):
        dualize([(1, 0), (-1, 0), (0, 1)])


def test_dualize_involution(quadrant, veronese, segre):
    for cone in (quadrant, veronese, segre):
        assert dualize(dualize(cone.rays)) == sorted(cone.rays)


def test_cone_validation():
    with pytest.raises(ConeError, match="primitive"):
        Cone(2, ((2, 0), (0, 1)))
    with pytest.raises(ConeError, match="duplicate"):
        Cone(2, ((1, 0), (1, 0), (0, 1)))
    with pytest.raises(ConeError):
        Cone(2, ((1, 0), (1, 1), (0, 1)))  # (1,1) is not extremal
    with pytest.raises(ConeError):
        Cone(2, ((1, 0), (-1, 0)))


def test_class_groups(quadrant, veronese, segre):
    assert quadrant.class_group.is_trivial
    g = veronese.class_group
    assert (g.free_rank, g.torsion_invariants) == (0, (2,))
    g = segre.class_group
    assert (g.free_rank, g.torsion_invariants) == (1, ())


def test_principal_divisors(quadrant, veronese):
    assert quadrant.principal_divisor((0, 0)).coefficients == (0, 0)
    assert quadrant.principal_divisor((1, 0)).coefficients == (1, 0)
    assert veronese.principal_divisor((1, 0)).coefficients == (1, 1)


def test_divisor_class_examples(veronese):
    assert veronese.divisor_class([0, 0]).is_zero()
    d1 = veronese.divisor_class(WeilDivisor((1, 0)))
    assert not d1.is_zero() and (2 * d1).is_zero()
    with pytest.raises(ValueError):
        veronese.divisor_class([1, 0, 0])


def test_canonical_classes(quadrant, veronese, segre, p1):
    assert quadrant.canonical_class().is_zero()
    assert veronese.canonical_class().is_zero()
    assert p1.degree(p1.canonical_class()) == -2
    assert quadrant.is_q_gorenstein() and veronese.is_q_gorenstein()
    assert not segre.is_q_gorenstein()


def test_round_down_examples():
    assert round_down(WeilDivisor((1, -2))).coefficients == (1, -2)
    half = Fraction(1, 2)
    assert round_down(WeilDivisor((half, -half))).coefficients == (0, -1)
    assert round_down(WeilDivisor((Fraction(3, 4), Fraction(5, 4), Fraction(-7, 4)))
                      ).coefficients == (0, 1, -2)


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.lists(st.tuples(fractions, st.integers(-20, 20)), min_size=1, max_size=5))
def test_round_down_translation(pairs):
    d = WeilDivisor(tuple(a for a, _ in pairs))
    e = WeilDivisor(tuple(b for _, b in pairs))
    assert round_down(d + e) == round_down(d) + e


@given(st.sampled_from(["quadrant", "veronese", "segre"]), st.data())
def test_principal_divisors_are_trivial(name, data):
    cone = {"quadrant": Cone(2, ((1, 0), (0, 1))),
            "veronese": Cone(2, ((1, 0), (1, 2))),
            "segre": Cone.from_generators(SEGRE_GENERATORS)}[name]
    m = data.draw(st.lists(st.integers(-10, 10), min_size=cone.lattice_rank,
                           max_size=cone.lattice_rank))
    assert cone.divisor_class(cone.principal_divisor(m)).is_zero()


def test_free_rank_is_rays_minus_dimension(quadrant, veronese, segre):
    for cone in (quadrant, veronese, segre):
        assert cone.class_group.free_rank == cone.n_rays - cone.lattice_rank


def test_fans():
    p2 = projective_space(2)
    assert p2.rays == ((1, 0), (0, 1), (-1, -1))
    assert p2.class_group.free_rank == 1
    assert p2.degree(p2.canonical_class()) == -3
    p3 = projective_space(3)
    assert p3.degree(p3.canonical_class()) == -4
    with pytest.raises(ConeError, match="not smooth"):
        Fan(2, ((1, 0), (1, 2), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    with pytest.raises(ConeError, match="complete"):
        Fan(2, ((1, 0), (0, 1)), ((0, 1),))


def test_semigroup_ring(segre_ring):
    assert segre_ring.cone.rays == tuple(SEGRE_RAYS)
    with pytest.raises(ConeError, match="dual cone"):
        SemigroupRing(Cone(2, ((1, 0), (0, 1))), ((1, -1),))
