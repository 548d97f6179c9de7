from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exacthall.cones import (
    ConeD,
    cone_C,
    cone_D,
    cone_D_nonempty,
    degree_cone_oracle,
    face_lattice,
    fourier_motzkin_feasible,
    k0_quotient,
    membership,
)
from exacthall.degen import Valuation, classify_valuation, verify_valuation_degeneration, weight_function
from exacthall.errors import BudgetExceeded, StructureOrderError
from exacthall.exact import ExactStructure, comparable_pairs, enumerate_structures
from exacthall.quiver import BUILTIN_QUIVERS, ar_quiver


def test_k0_examples(a3):
    k1 = k0_quotient(ExactStructure.of(a3, 1))
    assert k1.relations == ((1, -1, -1, 1, 0, 0),) and k1.invariants == (1,)
    k12 = k0_quotient(ExactStructure.of(a3, 1, 2))
    assert k12.relations == ((1, -1, -1, 1, 0, 0), (0, 1, 0, -1, 1, 0))
    assert k12.rank == 4 and k12.torsion == ()
    kadd = k0_quotient(ExactStructure.split(a3))
    assert kadd.relations == () and kadd.rank == 6


@pytest.mark.parametrize("name", BUILTIN_QUIVERS)
def test_k0_rank(name):
    ar = ar_quiver(name)
    for e in enumerate_structures(ar):
        k = k0_quotient(e)
        assert k.rank == ar.n_indecs - len(e.meshes) and k.torsion == ()
    assert k0_quotient(ExactStructure.maximal(ar)).rank == ar.quiver.n


def test_cone_C_examples(a3):
    e12, e1 = ExactStructure.of(a3, 1, 2), ExactStructure.of(a3, 1)
    assert cone_C(e12, e1).generators == ((0, 1, 0, -1, 1, 0),)
    assert cone_C(e1, e1).generators == () and cone_C(e1, e1).dimension == 0
    c = cone_C(ExactStructure.maximal(a3), ExactStructure.split(a3))
    assert len(c.generators) == 3 and c.dimension == 6 - 3
    with pytest.raises(StructureOrderError):
        cone_C(e1, e12)


def test_cone_D_examples(a3):
    e12, e1 = ExactStructure.of(a3, 1, 2), ExactStructure.of(a3, 1)
    d = cone_D(e12, e1)
    assert d.describe() == ["d2-d4+d5 > 0", "d1-d2-d3+d4 = 0"]
    assert (d.closure_dimension, d.lineality_dimension) == (5, 4)
    same = cone_D(e1, e1)
    assert same.strict == () and same.equalities == ((1, -1, -1, 1, 0, 0),)


def test_membership_examples(a2, a3):
    d = cone_D(ExactStructure.of(a3, 1, 2), ExactStructure.of(a3, 1))
    assert membership((0, 0, 0, 0, 1, 0), d)
    assert membership([Fraction(1, 2), 0, Fraction(1, 2), 0, Fraction(1, 3), 0], d)
    assert not membership((0, 0, 0, 1, 1, 0), d)
    assert not membership((0,) * 3, cone_D(ExactStructure.maximal(a2), ExactStructure.split(a2)))
    e = ExactStructure.of(a3, 2)
    assert membership((0,) * 6, cone_D(e, e))
    with pytest.raises(ValueError):
        membership((0, 0), d)


@pytest.mark.parametrize("name", BUILTIN_QUIVERS)
def test_simplicial(name):
    ar = ar_quiver(name)
    for e in enumerate_structures(ar):
        assert cone_C(e, ExactStructure.split(ar)).is_simplicial


def test_duality_on_grid(a3):
    add = ExactStructure.split(a3)
    grid = list(product((-1, 0, 1), repeat=6))
    for e, f in comparable_pairs(enumerate_structures(a3)):
        d = cone_D(e, f)
        gens, lin = cone_C(e, f).generators, cone_C(f, add).generators
        for v in grid:
            dual = all(sum(a * b for a, b in zip(v, g)) > 0 for g in gens) and all(
                sum(a * b for a, b in zip(v, h)) == 0 for h in lin
            )
            assert membership(v, d) == dual


def test_fourier_motzkin_oracle():
    # x >= 1, -x >= -2 feasible; x >= 1, -x >= 0 not
    assert fourier_motzkin_feasible([((1,), 1), ((-1,), -2)], 1)
    assert not fourier_motzkin_feasible([((1,), 1), ((-1,), 0)], 1)
    assert fourier_motzkin_feasible([((1, 1), 1), ((1, -1), 0), ((-1, 0), -3)], 2)
    assert not fourier_motzkin_feasible([((1, 1), 1), ((-1, 0), 0), ((0, -1), 0)], 2)


@pytest.mark.parametrize("name", ["a2", "a3", "a3-linear", "disjoint-a2"])
def test_D_nonempty(name):
    ar = ar_quiver(name)
    for e, f in comparable_pairs(enumerate_structures(ar)):
        assert cone_D_nonempty(cone_D(e, f))
    # a contradictory system is caught
    n = ar.n_indecs
    g = ar.meshes[0].kclass(n)
    assert not cone_D_nonempty(ConeD(n, (g,), (g,)))


@given(st.lists(st.integers(-2, 3), min_size=6, max_size=6), st.sets(st.integers(0, 2)), st.sets(st.integers(0, 2)))
def test_cone_agrees_with_valuation_classes(weights, big, small):
    ar = ar_quiver("a3")
    e = ExactStructure(ar, frozenset(big | small))
    f = ExactStructure(ar, frozenset(small))
    d = cone_D(e, f)
    inside = membership(weights, d)
    # bound 4 reaches the end terms of every A_3 mesh, so the oracle sees all mesh constraints
    assert inside == degree_cone_oracle(e, f, weights, 2, 4)
    if all(x >= 0 for x in weights):
        w = Valuation(tuple(weights))
        cls = classify_valuation(w, e)
        assert inside == (cls.is_valuation and cls.characteristic_for == f)
        if inside:
            assert verify_valuation_degeneration(e, w, 2, 3).ok


def test_oracle_bound_covers_meshes(a3):
    from exacthall.hall import total_dim
    from exacthall.fqrep import ObjClass

    n = a3.n_indecs
    assert all(total_dim(a3, ObjClass.of(n, m.tau_end.id, m.end.id)) <= 4 for m in a3.meshes)


def test_weight_functions_pass_degree_oracle(a3):
    for e, f in comparable_pairs(enumerate_structures(a3)):
        w = weight_function(e, f)
        assert degree_cone_oracle(e, f, w.weights, 2, 4)


def test_face_lattice_examples(a2, a3):
    faces = face_lattice(ExactStructure.maximal(a3))
    assert len(faces) == 8
    assert len(face_lattice(ExactStructure.maximal(a2))) == 2
    by_mask = {f.bitmask: f.structure for f in faces}
    assert by_mask[0b010] == ExactStructure.of(a3, 2)
    assert {f.structure.meshes for f in faces} == {s.meshes for s in enumerate_structures(a3)}


def test_face_lattice_below_structure(a3):
    faces = face_lattice(ExactStructure.of(a3, 1, 3))
    assert sorted(f.structure.label for f in faces) == ["1", "1,3", "3", "add"]
    # inclusion of faces is inclusion of structures
    for f in faces:
        for g in faces:
            assert (f.meshes <= g.meshes) == (f.structure <= g.structure)


def test_face_lattice_budget(a3):
    with pytest.raises(BudgetExceeded):
        face_lattice(ExactStructure.maximal(a3), budget=2)
