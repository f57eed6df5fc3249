from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bredon.grp import all_subgroups, cyclic_group, symmetric_group
from bredon.gset import CosetSpace
from bredon.sset import (
    SimplexRef,
    SimplicialError,
    SimplicialGSet,
    circle,
    cone,
    fixed_point_sset,
    induced_space,
    interval,
    point,
    quotient_sset,
    sphere2,
    surjection_to_word,
    suspension,
    validate,
    word_to_surjection,
)

C2, C3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)


def builders():
    s3_orbit = CosetSpace(S3.trivial_subgroup)
    return {
        "point": point(),
        "interval": interval(),
        "circle1": circle(1),
        "circle5": circle(5),
        "circle4-antipodal": circle(4, "antipodal", C2),
        "circle8-antipodal": circle(8, "antipodal", C2),
        "circle2-reflection": circle(2, "reflection", C2),
        "circle6-reflection": circle(6, "reflection", C2),
        "circle3-rotation": circle(3, "rotation", C3),
        "circle6-rotation-c3": circle(6, "rotation", C3),
        "sphere2": sphere2(),
        "sphere2-antipodal": sphere2("antipodal", C2),
        "induced-s3": induced_space(s3_orbit),
        "cone-circle": cone(circle(4, "antipodal", C2)),
        "suspension-circle": suspension(circle(2, "reflection", C2)),
        "suspension-s3": suspension(induced_space(s3_orbit)),
    }


SPACES = builders()
FREE = ["circle4-antipodal", "circle8-antipodal", "circle3-rotation", "sphere2-antipodal", "induced-s3"]


def counts(x):
    return [x.count(n) for n in range(x.dim + 1)]


@pytest.mark.parametrize("name", list(SPACES))
def test_builders_validate(name):
    assert validate(SPACES[name], raise_on_error=False).ok


def test_point_and_one_vertex_circle():
    assert counts(point()) == [1]
    c = circle(1)
    assert counts(c) == [1, 1]
    v = SimplexRef(0, 0)
    assert c.faces[1][0] == (v, v)


def _square(d0_of_last: int) -> SimplicialGSet:
    names = [["v0", "v1", "v2", "v3"], ["e0", "e1", "e2", "e3"]]
    faces = [[()] * 4, [(SimplexRef(0, (k + 1) % 4), SimplexRef(0, k)) for k in range(4)]]
    faces[1][3] = (SimplexRef(0, d0_of_last), SimplexRef(0, 3))
    return SimplicialGSet(C2, names, faces, [[(0, 1, 2, 3), (2, 3, 0, 1)]] * 2)


def test_broken_square_circle_reported_in_degree_one():
    assert validate(_square(0), raise_on_error=False).ok
    report = validate(_square(1), raise_on_error=False)
    assert not report.ok and "degree 1" in report.problems[0]
    with pytest.raises(SimplicialError):
        validate(_square(1))


def test_bad_face_reference_rejected():
    x = SimplicialGSet(cyclic_group(1), [["v"], ["e"]], [[()], [(SimplexRef(0, 3), SimplexRef(0, 0))]])
    assert not validate(x, raise_on_error=False).ok


def test_non_permutation_action_rejected():
    x = SimplicialGSet(C2, [["a", "b"]], [[(), ()]], [[(0, 1), (0, 0)]])
    assert not validate(x, raise_on_error=False).ok


def test_fixed_points():
    c = circle(4, "antipodal", C2)
    assert fixed_point_sset(c, C2.whole).count(0) == 0
    r = fixed_point_sset(circle(2, "reflection", C2), C2.whole)
    assert r.names == [["v0", "v1"], []]
    t = circle(3)
    assert fixed_point_sset(t, t.group.whole).names == t.names


@pytest.mark.parametrize("name", list(SPACES))
def test_fixed_points_of_trivial_subgroup_is_everything(name):
    x = SPACES[name]
    f = fixed_point_sset(x, x.group.trivial_subgroup)
    assert f.names == x.names and f.faces == x.faces


@pytest.mark.parametrize("name", FREE)
def test_free_actions(name):
    x = SPACES[name]
    for h in [h for h in all_subgroups(x.group) if h.order > 1]:
        assert all(fixed_point_sset(x, h).count(n) == 0 for n in range(x.dim + 1))
    y, _ = quotient_sset(x)
    assert x.euler_characteristic() == x.group.order * y.euler_characteristic()


def test_quotients():
    assert counts(quotient_sset(circle(4, "antipodal", C2))[0]) == [2, 2]
    assert counts(quotient_sset(circle(2, "reflection", C2))[0]) == [2, 1]
    rp2, _ = quotient_sset(sphere2("antipodal", C2))
    assert counts(rp2) == [3, 6, 4] and rp2.euler_characteristic() == 1
    assert validate(rp2, raise_on_error=False).ok
    c = circle(3)
    q, _ = quotient_sset(c)
    assert q == c


@pytest.mark.parametrize("name", list(SPACES))
def test_quotient_counts_are_orbit_counts(name):
    x = SPACES[name]
    y, proj = quotient_sset(x)
    for n in range(x.dim + 1):
        s, _ = x.gset(n)
        assert y.count(n) == len(s.decomposition)
        assert len(proj[n]) == x.count(n)


def test_sphere_simplex_counts_with_degeneracies():
    x = sphere2()
    # nondegenerate 6, 12, 8; degenerate simplices counted by degeneracy words
    assert [len(x.simplices(n)) for n in range(4)] == [6, 18, 38, 66]
    assert x.euler_characteristic() == 2


def test_rotation_needs_cyclic_group_dividing_count():
    with pytest.raises(SimplicialError):
        circle(4, "rotation", C3)
    with pytest.raises(SimplicialError):
        circle(3, "rotation", S3)
    with pytest.raises(SimplicialError):
        circle(2, "antipodal", C2)
    with pytest.raises(SimplicialError):
        circle(3, "reflection", C2)


def test_word_surjection_round_trip():
    for n in range(1, 5):
        for s in _surjections(n):
            assert word_to_surjection(surjection_to_word(s), n) == tuple(s)


def _surjections(n):
    for steps in product((0, 1), repeat=n):
        out, v = [0], 0
        for d in steps:
            v += d
            out.append(v)
        yield out


@st.composite
def simplex_in(draw, top=4):
    name = draw(st.sampled_from(list(SPACES)))
    x = SPACES[name]
    n = draw(st.integers(1, top))
    refs = x.simplices(n)
    return x, draw(st.sampled_from(refs))


@settings(max_examples=300, deadline=None)
@given(simplex_in())
def test_face_identities(data):
    x, r = data
    n = r.dim
    for j in range(n + 1):
        for i in range(j):
            if n >= 2:
                assert x.face(x.face(r, j), i) == x.face(x.face(r, i), j - 1)


@settings(max_examples=300, deadline=None)
@given(simplex_in(3))
def test_face_degeneracy_identities(data):
    x, r = data
    n = r.dim
    for j in range(n + 1):
        s = x.degeneracy(r, j)
        for i in range(n + 2):
            lhs = x.face(s, i)
            if i < j:
                assert lhs == x.degeneracy(x.face(r, i), j - 1)
            elif i in (j, j + 1):
                assert lhs == r
            else:
                assert lhs == x.degeneracy(x.face(r, i - 1), j)
        for i in range(j + 1):
            assert x.degeneracy(x.degeneracy(r, j), i) == x.degeneracy(x.degeneracy(r, i), j + 1)


@settings(max_examples=200, deadline=None)
@given(simplex_in(3))
def test_action_commutes_with_faces_on_all_simplices(data):
    x, r = data
    for g in range(x.group.order):
        for i in range(r.dim + 1):
            assert x.face(x.act(g, r), i) == x.act(g, x.face(r, i))
