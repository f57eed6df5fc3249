import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bredon.coeff import (
    CoefficientError,
    FunctorialityError,
    GModule,
    constant_system,
    evaluate_on_gmap,
    evaluate_on_gset,
    explicit_system,
    fixed_point_system,
    fixed_subgroup,
)
from bredon.grp import cyclic_group, dihedral_group, symmetric_group
from bredon.gset import GMap, GSet, CosetSpace, coproduct, enumerate_gmaps, orbit_category
from bredon.homalg import AbHom, IntMatrix, canonical_group, cyclic, hom_compose, trivial_group

GROUPS = [cyclic_group(1), cyclic_group(2), cyclic_group(3), symmetric_group(3), dihedral_group(4)]


def sign(g):
    z = cyclic(0)
    return GModule(g, z, [AbHom(z, z, IntMatrix([[1 if a == g.identity else -1]])) for a in range(g.order)])


def swap_module(g):
    """Z^2 with the generator of C2 swapping the coordinates."""
    z2 = canonical_group(2)
    swap = AbHom(z2, z2, IntMatrix([[0, 1], [1, 0]]))
    return GModule(g, z2, [AbHom.identity(z2) if a == g.identity else swap for a in range(g.order)])


def test_module_action_must_be_multiplicative():
    g = cyclic_group(3)
    z = cyclic(0)
    neg = AbHom(z, z, IntMatrix([[-1]]))
    with pytest.raises(CoefficientError):
        GModule(g, z, [AbHom.identity(z), neg, neg])
    with pytest.raises(CoefficientError):
        GModule(g, z, [neg, neg, neg])


def test_constant_z_on_c2():
    cat = orbit_category(cyclic_group(2))
    k = constant_system(cyclic(0), cat)
    assert [str(v) for v in k.values] == ["Z", "Z"]
    assert len(cat.morphisms()) == 4
    assert all(k(m).is_identity() for m in cat.morphisms())


def test_constant_zero_and_z2_on_s3():
    cat = orbit_category(symmetric_group(3))
    assert all(v.is_trivial() for v in constant_system(trivial_group(), cat).values)
    k = constant_system(cyclic(2), cat)
    k.verify_functoriality()
    assert all(str(v) == "Z/2" for v in k.values)


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_transfer_is_index_multiplication(g):
    cat = orbit_category(g)
    k = fixed_point_system(GModule.trivial(g, cyclic(0)), cat)
    k.verify_functoriality()
    for f in cat.morphisms():
        fibre = sum(1 for v in cat.gmap(f).values if v == 0)
        assert fibre == cat.objects[f.tgt].order // cat.objects[f.src].order
        assert k(f).matrix == IntMatrix([[fibre]])


def test_transfer_to_whole_group_is_order():
    for g in GROUPS:
        cat = orbit_category(g)
        k = fixed_point_system(GModule.trivial(g, cyclic(0)), cat)
        m = cat.morphism_from(0, len(cat) - 1, g.identity)
        assert k(m).matrix == IntMatrix([[g.order]])


def test_sign_fixed_points_vanish():
    g = cyclic_group(2)
    k = fixed_point_system(sign(g), orbit_category(g))
    assert str(k.values[0]) == "Z" and k.values[1].is_trivial()


def test_swap_module_transfer():
    g = cyclic_group(2)
    k = fixed_point_system(swap_module(g), orbit_category(g))
    assert str(k.values[0]) == "Z^2" and str(k.values[1]) == "Z"
    k.verify_functoriality()
    # e -> C2 sends (a, b) to a + b on the diagonal
    ker = k.fixed_kernels[1]
    t = k(orbit_category(g).morphism_from(0, 1, g.identity))
    assert ker.inclusion.matrix.apply(t([1, 0])) in ([1, 1], [-1, -1])


def test_fixed_subgroup_at_ends():
    for g in GROUPS:
        m = GModule.trivial(g, canonical_group(1, (2,)))
        assert fixed_subgroup(m, g.trivial_subgroup.elements).group == m.underlying
        assert fixed_subgroup(m, range(g.order)).group == m.underlying
    g = cyclic_group(2)
    assert fixed_subgroup(sign(g), range(2)).group.is_trivial()


def test_explicit_system_broken_composition_names_pair():
    g = cyclic_group(2)
    cat = orbit_category(g)
    z = cyclic(0)
    t = cat.morphism_from(0, 0, 1)
    up = cat.morphism_from(0, 1, 0)
    with pytest.raises(FunctorialityError) as info:
        explicit_system({0: z, 1: z}, {t: [[-1]], up: [[1]]}, cat)
    assert info.value.pair is not None
    assert up in info.value.pair and t in info.value.pair


def test_explicit_system_generated_from_generators():
    g = cyclic_group(2)
    cat = orbit_category(g)
    z = cyclic(0)
    t = cat.morphism_from(0, 0, 1)
    up = cat.morphism_from(0, 1, 0)
    k = explicit_system({0: z, 1: z}, {t: [[-1]], up: [[0]]}, cat)
    assert k(t).matrix == IntMatrix([[-1]]) and k(up).is_zero()
    with pytest.raises(CoefficientError):
        explicit_system({0: z, 1: z}, {t: [[-1]]}, cat)


def test_evaluate_on_gset_sums():
    g = cyclic_group(2)
    cat = orbit_category(g)
    k = fixed_point_system(sign(g), cat)
    empty = GSet(g, [[], []])
    assert evaluate_on_gset(k, empty)[0].is_trivial()
    assert str(evaluate_on_gset(k, cat.spaces[0])[0]) == "Z"
    assert str(evaluate_on_gset(k, coproduct(cat.spaces[0], cat.spaces[0]))[0]) == "Z^2"
    kz2 = constant_system(cyclic(2), cat)
    total, incs = evaluate_on_gset(kz2, coproduct(cat.spaces[0], cat.spaces[1]))
    assert str(total) == "Z/2 ⊕ Z/2" and len(incs) == 2


def test_identity_and_folding():
    g = symmetric_group(3)
    cat = orbit_category(g)
    k = constant_system(cyclic(0), cat)
    for s in cat.spaces:
        assert evaluate_on_gmap(k, GMap(s, s, list(range(s.size)))).is_identity()
        two = coproduct(s, s)
        fold = GMap(two, s, list(range(s.size)) * 2)
        h = evaluate_on_gmap(k, fold)
        assert h.matrix == IntMatrix([[1, 1]])
        assert not any(h([5, -5]))


def test_transfer_on_gmap():
    for g in GROUPS:
        cat = orbit_category(g)
        k = fixed_point_system(GModule.trivial(g, cyclic(0)), cat)
        f = GMap(cat.spaces[0], cat.spaces[-1], [0] * g.order)
        assert evaluate_on_gmap(k, f).matrix == IntMatrix([[g.order]])


def _systems(g):
    cat = orbit_category(g)
    out = [constant_system(cyclic(0), cat), fixed_point_system(GModule.trivial(g, cyclic(0)), cat)]
    if g.order == 2:
        out += [fixed_point_system(sign(g), cat), fixed_point_system(swap_module(g), cat)]
    return out


@st.composite
def composable(draw):
    g = draw(st.sampled_from(GROUPS[:4]))
    cat = orbit_category(g)

    def gset():
        picks = draw(st.lists(st.integers(0, len(cat) - 1), min_size=1, max_size=3))
        s = cat.spaces[picks[0]]
        for p in picks[1:]:
            s = coproduct(s, cat.spaces[p])
        return s

    s, t, u = gset(), gset(), gset()
    fs, gs = enumerate_gmaps(s, t), enumerate_gmaps(t, u)
    if not fs or not gs:
        return None
    return g, draw(st.sampled_from(fs)), draw(st.sampled_from(gs))


@settings(max_examples=60, deadline=None)
@given(composable())
def test_evaluate_on_gmap_is_functorial(data):
    if data is None:
        return
    g, f, h = data
    for k in _systems(g):
        assert evaluate_on_gmap(k, h.compose(f)) == hom_compose(evaluate_on_gmap(k, h), evaluate_on_gmap(k, f))


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_isomorphic_gsets_give_isomorphic_values(g):
    cat = orbit_category(g)
    for k in _systems(g):
        for i, s in enumerate(cat.spaces):
            # relabel the coset space by a permutation of its points
            n = s.size
            perm = list(range(1, n)) + [0]
            inv = [perm.index(x) for x in range(n)]
            t = GSet(g, [[perm[row[inv[x]]] for x in range(n)] for row in s.action])
            iso = GMap(s, t, perm)
            back = GMap(t, s, inv)
            assert evaluate_on_gset(k, t)[0] == k.values[i]
            assert hom_compose(evaluate_on_gmap(k, back), evaluate_on_gmap(k, iso)).is_identity()
