import pytest
from hypothesis import given
from hypothesis import strategies as st

from exacthall.errors import CyclicQuiverError, NotDynkinError, QuiverError, QuiverParseError
from exacthall.fqrep import category, ext1_dim, hom_dim
from exacthall.quiver import (
    BUILTIN_QUIVERS,
    ar_quiver,
    euler_form,
    indecomposables,
    knit_ar_quiver,
    load_quiver,
    parse_quiver,
    positive_roots,
)


def test_parse_a2():
    q = parse_quiver("{vertices: [1, 2], arrows: [[1, 2]]}")
    assert q.n == 2 and len(q.arrows) == 1


def test_parse_a3_example():
    q = parse_quiver("{vertices: [1,2,3], arrows: [[1,2],[3,2]]}")
    assert q.vertices == ("1", "2", "3")
    assert q.arrows == (("1", "2"), ("3", "2"))


def test_json_document_accepted():
    q = parse_quiver('{"vertices": ["a", "b"], "arrows": [["a", "b"]]}')
    assert q.n == 2


@pytest.mark.parametrize(
    "text,exc",
    [
        ("{vertices: [1,2], arrows: [[1,2],[2,1]]}", CyclicQuiverError),
        ("{vertices: [1], arrows: [[1,1]]}", CyclicQuiverError),
        ("{vertices: [1,2], arrows: [[1,2],[1,2]]}", NotDynkinError),
        ("{vertices: [a,b,c,d,e], arrows: [[a,b],[c,b],[d,b],[e,b]]}", NotDynkinError),
        ("{vertices: [1,2,3], arrows: [[1,2],[2,3],[1,3]]}", NotDynkinError),
        ("{vertices: [1,2]}", QuiverParseError),
        ("[1, 2]", QuiverParseError),
        ("{vertices: [1,2], arrows: [[1,3]]}", QuiverError),
        ("{vertices: [1,1], arrows: []}", QuiverError),
        ("{vertices: ['a b'], arrows: []}", QuiverParseError),
        ("{vertices: [1,2], arrows: [[1]]}", QuiverParseError),
        ("vertices: [1,2\narrows: : :", QuiverParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_quiver(text)


def test_quiver_errors_are_value_errors():
    with pytest.raises(ValueError):
        parse_quiver("{vertices: [1,2], arrows: [[1,2],[2,1]]}")


def test_euler_form_examples():
    a2 = load_quiver("a2")
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (1, 0), (1, 0)) == 1
    a3 = ar_quiver("a3")
    # S2 is projective and I2 injective, so the pairing is hom - ext = 1 - 0
    s2, i2 = (category(a3, 2).indec_reps[a3.lookup(x).id] for x in ("S2", "I2"))
    assert (hom_dim(s2, i2), ext1_dim(s2, i2)) == (1, 0)
    assert euler_form(a3.quiver, (0, 1, 0), (1, 1, 1)) == 1


@given(
    st.sampled_from(["a2", "a3", "a3-linear", "disjoint-a2", "d4"]),
    st.data(),
)
def test_euler_form_bilinear(name, data):
    q = load_quiver(name)
    vec = st.lists(st.integers(-3, 3), min_size=q.n, max_size=q.n)
    d, d2, e = data.draw(vec), data.draw(vec), data.draw(vec)
    s = [a + b for a, b in zip(d, d2)]
    assert euler_form(q, s, e) == euler_form(q, d, e) + euler_form(q, d2, e)
    assert euler_form(q, e, s) == euler_form(q, e, d) + euler_form(q, e, d2)


def test_indecomposable_counts():
    assert sorted(u.dim for u in indecomposables(load_quiver("a2"))) == [(0, 1), (1, 0), (1, 1)]
    assert len(indecomposables(load_quiver("a3"))) == 6
    assert len(indecomposables(load_quiver("disjoint-a2"))) == 6


@pytest.mark.parametrize(
    "doc,n_ind,n_mesh",
    [
        ("{vertices: [1,2,3,4], arrows: [[1,2],[2,3],[3,4]]}", 10, 6),
        ("{vertices: [a,b,c,d], arrows: [[a,b],[c,b],[d,b]]}", 12, 8),
        ("{vertices: [1,2,3,4,5,6], arrows: [[1,2],[2,3],[3,4],[4,5],[3,6]]}", 36, 30),
        ("{vertices: [1,2,3,4,5,6,7], arrows: [[1,2],[2,3],[3,4],[4,5],[5,6],[3,7]]}", 63, 56),
    ],
)
def test_larger_dynkin_types(doc, n_ind, n_mesh):
    q = parse_quiver(doc)
    ar = knit_ar_quiver(q)
    assert ar.n_indecs == n_ind and len(ar.meshes) == n_mesh
    assert sorted(u.dim for u in ar.indecs) == sorted(positive_roots(q))


def test_a3_meshes_match_example(a3):
    got = [(m.tau_end.id, sorted(x.id for x in m.middle), m.end.id) for m in a3.meshes]
    s2, p1, p3, i2, s3, s1 = (a3.lookup(x).id for x in ("S2", "P1", "P3", "I2", "S3", "S1"))
    assert got == [(s2, sorted([p1, p3]), i2), (p1, [i2], s3), (p3, [i2], s1)]
    assert [a3.lookup(f"M{k}").label for k in range(1, 7)] == ["0.1.0", "1.1.0", "0.1.1", "1.1.1", "0.0.1", "1.0.0"]


def test_equioriented_a3_meshes():
    ar = ar_quiver("a3-linear")
    meshes = {(m.tau_end.label, tuple(sorted(x.label for x in m.middle)), m.end.label) for m in ar.meshes}
    # S_{i+1} >-> I_{i,i+1} ->> S_i
    assert ("0.0.1", ("0.1.1",), "0.1.0") in meshes
    assert ("0.1.0", ("1.1.0",), "1.0.0") in meshes
    # I_{2,3} >-> I_{1,3} + I_{2,2} ->> I_{1,2}
    assert ("0.1.1", ("0.1.0", "1.1.1"), "1.1.0") in meshes


def test_disjoint_meshes(disjoint):
    assert len(disjoint.meshes) == 2


@pytest.mark.parametrize("name", BUILTIN_QUIVERS)
def test_ar_invariants(name):
    ar = ar_quiver(name)
    n = ar.quiver.n
    ends = [m.end.id for m in ar.meshes]
    assert len(ends) == len(set(ends))
    assert set(ends) == set(range(ar.n_indecs)) - ar.projectives_max
    assert len(ar.meshes) == ar.n_indecs - len(ar.projectives_max) == ar.n_indecs - len(ar.injectives_max)
    assert len(ar.projectives_max) == n
    for m in ar.meshes:
        total = [sum(x.dim[i] for x in m.middle) for i in range(n)]
        assert [a + b for a, b in zip(m.tau_end.dim, m.end.dim)] == total
        assert m.end.id not in ar.projectives_max
    for u in ar.indecs:
        assert euler_form(ar.quiver, u.dim, u.dim) == 1


@pytest.mark.parametrize("name", ["a2", "a3", "a3-linear", "disjoint-a2", "d4"])
@pytest.mark.parametrize("p", [2, 3])
def test_euler_form_is_hom_minus_ext(name, p):
    ar = ar_quiver(name)
    reps = category(ar, p).indec_reps
    for u, ru in zip(ar.indecs, reps):
        for v, rv in zip(ar.indecs, reps):
            assert euler_form(ar.quiver, u.dim, v.dim) == hom_dim(ru, rv) - ext1_dim(ru, rv)


def test_lookup_names(a3):
    assert a3.lookup("1.1.1").id == a3.lookup("I2").id == a3.lookup("M4").id
    with pytest.raises(QuiverError):
        a3.lookup("nope")


def test_aliases():
    ar = knit_ar_quiver(parse_quiver("{vertices: [1,2], arrows: [[1,2]], aliases: {top: '1.0', proj: P1}}"))
    assert ar.lookup("top").label == "1.0"
    assert ar.lookup("proj").label == "1.1"
    bad = knit_ar_quiver(parse_quiver("{vertices: [1,2], arrows: [[1,2]], aliases: {x: '3.3'}}"))
    with pytest.raises(QuiverError):
        bad.lookup("x")


def test_load_quiver_from_path(tmp_path):
    f = tmp_path / "q.yaml"
    f.write_text("vertices: [x, y]\narrows: [[y, x]]\n")
    assert load_quiver(str(f)).arrows == (("y", "x"),)
    with pytest.raises(QuiverParseError):
        load_quiver(str(tmp_path / "missing.yaml"))


def test_knitting_is_deterministic():
    a = knit_ar_quiver(load_quiver("d4"))
    b = knit_ar_quiver(load_quiver("d4"))
    assert a.indecs == b.indecs and a.meshes == b.meshes
