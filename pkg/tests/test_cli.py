import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import coefficients, spaces

from bredon.cli import (
    EXIT_DISAGREE,
    EXIT_INPUT,
    EXIT_PASS,
    ParseError,
    main,
    parse_coeff,
    parse_group,
    parse_space,
    serialize_coeff,
    serialize_group,
    serialize_space,
)
from bredon.coeff import explicit_system
from bredon import pipelines
from bredon.grp import all_subgroups, cyclic_group, dihedral_group, symmetric_group
from bredon.gset import orbit_category
from bredon.homalg import ChainComplex, canonical_group, cyclic, group_direct_sum
from bredon.sset import circle, cone, sphere2, suspension, validate

C2 = cyclic_group(2)


def test_group_examples():
    assert parse_group("group cyclic 2") == C2
    assert parse_group("group cyclic 1").order == 1
    assert parse_group("# comment\ngroup symmetric 3  # S3\n") == symmetric_group(3)
    assert parse_group("group table 2\n0 1\n1 0\n") == C2


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("grp cyclic 2", 1, 1),
        ("group cyclic two", 1, 14),
        ("group mystery 3", 1, 7),
        ("group table 2\n0 1\n", 3, 1),
        ("group table 2\n0 1\n1 5\n", 3, 3),
        ("group table 2\n0 1\n0 1\n", 2, 1),
        ("group cyclic 2\nextra", 2, 1),
    ],
)
def test_group_errors_are_located(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_group(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_space_builders():
    x = parse_space("space builder circle 4 antipodal", C2)
    assert x == circle(4, "antipodal", C2) and validate(x, raise_on_error=False).ok
    assert parse_space("space builder suspension sphere2 antipodal", C2) == suspension(sphere2("antipodal", C2))
    assert parse_space("space builder cone circle 2 reflection", C2) == cone(circle(2, "reflection", C2))
    assert parse_space("space builder induced e", C2).count(0) == 2


def test_explicit_space():
    text = """
    space dim 1
    simplices 0: a b
    simplices 1: e f
    face e 0 = b
    face e 1 = a
    face f 0 = a
    face f 1 = b
    action 1 0: b a
    action 1 1: f e
    """
    x = parse_space(text, C2)
    assert x.names == [["a", "b"], ["e", "f"]]
    assert x.action[1][1] == (1, 0)


def test_degenerate_face_target():
    text = "space dim 2\nsimplices 0: v\nsimplices 1: e\nsimplices 2: t\n" "face e 0 = v\nface e 1 = v\nface t 0 = e\nface t 1 = e\nface t 2 = [s 0] v\n"
    x = parse_space(text, cyclic_group(1))
    assert x.faces[2][0][2].word == (0,)


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("space dim 1\nsimplices 0: a b\nsimplices 1: e\nface e 0 = b\nface e 1 = q\n", 5, "unknown simplex"),
        ("space dim 1\nsimplices 0: a b\nsimplices 1: e\nface e 0 = b\n", 1, "face 1 of e"),
        ("space dim 1\nsimplices 0: a\n", 1, "no 'simplices 1:'"),
        ("space dim 0\nsimplices 0: a a\n", 2, "duplicate"),
        ("space dim 0\nsimplices 0: a b\naction 1 0: a a\n", 3, "permutation"),
        ("space dim 0\nsimplices 0: a\nbogus\n", 3, "unknown declaration"),
        ("space builder circle 3 antipodal", 1, "antipodal"),
        ("space builder torus", 1, "unknown space builder"),
        ("space dim 1\nsimplices 0: a b\nsimplices 1: e\nface e 0 = b\nface e 1 = a\naction 1 0: b a\n", 1, "not equivariant"),
    ],
)
def test_space_errors(text, line, message):
    with pytest.raises(ParseError) as info:
        parse_space(text, C2)
    assert info.value.line == line and message in info.value.message


def test_coeff_examples():
    k = parse_coeff("coeff constant Z", C2)
    assert k.constant == cyclic(0) and k.kind == "constant"
    assert str(parse_coeff("coeff constant Z^2 ⊕ Z/2", C2).constant) == "Z^2 ⊕ Z/2"
    k = parse_coeff("coeff module 1\nact 1: -1\n", C2)
    assert k.kind == "fixed_point" and k.values[1].is_trivial()
    k = parse_coeff("coeff explicit\nvalue e: Z\nvalue G: Z\nmap e -> G [0]: 2\nmap {0} -> {0} [1]: 1\n", C2)
    assert k.kind == "explicit"


def test_module_action_generated_from_generators():
    g = cyclic_group(4)
    k = parse_coeff("coeff module 1\nact 1: -1\n", g)
    assert [k.module.action[a].matrix.tolist() for a in range(4)] == [[[1]], [[-1]], [[1]], [[-1]]]


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("coeff constant Q", 1, "cannot read"),
        ("coeff module 1\nact 1: 1 0\n", 2, "row needs 1"),
        ("coeff module 1\nact 1: 2\n", 1, "multiplicative"),
        ("coeff explicit\nvalue e: Z\n", 1, "no value for subgroup {0,1}"),
        ("coeff explicit\nvalue e: Z\nvalue G: Z\nmap G -> e [0]: 1\n", 4, "no G-map"),
        ("coeff explicit\nvalue e: Z\nvalue G: Z\nmap {0} -> {0} [1]: -1\nmap e -> G [0]: 1\n", 5, "disagrees"),
        ("coeff explicit\nvalue {1}: Z\n", 2, "not a subgroup"),
        ("coeff unknown", 1, "unknown coefficient kind"),
    ],
)
def test_coeff_errors(text, line, message):
    with pytest.raises(ParseError) as info:
        parse_coeff(text, C2)
    assert info.value.line == line and message in info.value.message


def test_non_representative_subgroup_rejected():
    g = symmetric_group(3)
    reps = [h.elements for h in orbit_category(g).objects]
    other = next(h for h in all_subgroups(g) if h.order == 2 and h.elements not in reps)
    spec = "{" + ",".join(map(str, other.elements)) + "}"
    with pytest.raises(ParseError, match="representative"):
        parse_coeff(f"coeff explicit\nvalue {spec}: Z\n", g)


# -- round trips -------------------------------------------------------------


@pytest.mark.parametrize("g", [cyclic_group(1), C2, cyclic_group(5), dihedral_group(4), symmetric_group(3)], ids=lambda g: g.name)
def test_group_round_trip(g):
    assert parse_group(serialize_group(g)) == g
    tabled = parse_group("group table %d\n%s" % (g.order, "\n".join(" ".join(map(str, r)) for r in g.table)))
    assert parse_group(serialize_group(tabled)) == tabled


@pytest.mark.parametrize("order", [1, 2, 3])
def test_space_round_trip(order):
    for x in spaces(order).values():
        assert parse_space(serialize_space(x), x.group) == x
    if order == 2:
        for x in (cone(circle(4, "antipodal", C2)), suspension(sphere2("antipodal", C2))):
            assert parse_space(serialize_space(x), C2) == x


@pytest.mark.parametrize("order", [1, 2, 3])
def test_coeff_round_trip(order):
    for k in coefficients(order).values():
        back = parse_coeff(serialize_coeff(k), k.group)
        assert back.same_as(k) and back.kind == k.kind


@st.composite
def explicit_c2_systems(draw):
    """Z/n-valued systems on C2 given by a translation t and a restriction r."""
    cat = orbit_category(C2)
    n = draw(st.sampled_from([0, 2, 3, 4]))
    a = cyclic(n)
    t = draw(st.sampled_from([1, -1]))
    up = draw(st.integers(-3, 3))
    if (up * t - up) % (n or 10**9):
        up = 0
    return explicit_system(
        {0: a, 1: a}, {cat.morphism_from(0, 0, 1): [[t]], cat.morphism_from(0, 1, 0): [[up]]}, cat
    )


@settings(max_examples=40, deadline=None)
@given(explicit_c2_systems())
def test_explicit_coeff_round_trip(k):
    back = parse_coeff(serialize_coeff(k), C2)
    assert back.same_as(k)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.lists(st.sampled_from([2, 3, 4, 6]), max_size=2))
def test_constant_round_trip_any_group(rank, tors):
    a = group_direct_sum([canonical_group(rank)] + [cyclic(d) for d in tors])
    k = parse_coeff(f"coeff constant {a}", C2)
    assert k.constant == a
    assert parse_coeff(serialize_coeff(k), C2).same_as(k)


# -- the command -------------------------------------------------------------


def _files(tmp_path, group, space, coeff):
    paths = []
    for name, text in (("g", group), ("s", space), ("k", coeff)):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        paths.append(str(p))
    return ["--group", paths[0], "--space", paths[1], "--coeff", paths[2]]


def test_point_table(tmp_path, capsys):
    args = _files(tmp_path, "group cyclic 2", "space builder point", "coeff constant Z")
    assert main(args) == EXIT_PASS
    out = capsys.readouterr().out.splitlines()
    assert out[0].split()[0] == "degree"
    assert [row.split()[1] for row in out[1:4]] == ["Z", "0", "0"]
    assert out[-1] == "PASS"


def test_rp2_records_match_table(tmp_path, capsys):
    args = _files(tmp_path, "group cyclic 2", "space builder sphere2 antipodal", "coeff constant Z")
    assert main(args + ["--format", "record"]) == EXIT_PASS
    records = [line.split(" ", 2) for line in capsys.readouterr().out.splitlines()]
    assert {r[2] for r in records if r[0] == "1"} == {"Z/2"}
    assert main(args) == EXIT_PASS
    table = capsys.readouterr().out.splitlines()
    header = table[0].split()
    cells = {}
    for row in table[1:4]:
        parts = [p.strip() for p in row.split("  ") if p.strip()]
        for name, grp in zip(header[1:], parts[1:]):
            cells[(parts[0], name)] = grp
    assert cells == {(d, name): grp for d, name, grp in records}
    assert [cells[(str(n), "cellular/normalized")] for n in range(3)] == ["Z", "Z/2", "0"]


def test_corrupted_space_is_input_error(tmp_path, capsys):
    args = _files(tmp_path, "group cyclic 2", "space dim 1\nsimplices 0: a\nsimplices 1: e\nface e 0 = a\nface e 1 = zz\n", "coeff constant Z")
    assert main(args) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "space file" in err and "line 5" in err


def test_bad_flags_are_input_errors(tmp_path, capsys):
    args = _files(tmp_path, "group cyclic 2", "space builder point", "coeff constant Z")
    assert main(args + ["--pipelines", "cellular,bogus"]) == EXIT_INPUT
    assert main(args + ["--max-degree", "-1"]) == EXIT_INPUT
    assert main(["--group", str(tmp_path / "missing"), *args[2:]]) == EXIT_INPUT
    assert main(["--format", "yaml"]) == EXIT_INPUT


def test_disagreement_exits_one(tmp_path, capsys, monkeypatch):
    real = pipelines.coend_chain_complex

    def skewed(x, k, max_degree=None, variant="normalized"):
        cc = real(x, k, max_degree, variant)
        cc.complex = ChainComplex({0: canonical_group(3)}, {})
        return cc

    monkeypatch.setattr(pipelines, "coend_chain_complex", skewed)
    args = _files(tmp_path, "group cyclic 2", "space builder point", "coeff constant Z")
    assert main(args + ["--pipelines", "cellular,coend", "--variant", "normalized", "--max-degree", "0"]) == EXIT_DISAGREE
    out = capsys.readouterr().out
    assert "FAIL degree 0: cellular/normalized gives Z but coend/normalized gives Z^3" in out


def test_module_entry_point(tmp_path):
    args = _files(tmp_path, "group cyclic 2", "space builder circle 2 reflection", "coeff module 1\nact 1: -1\n")
    done = subprocess.run(
        [sys.executable, "-m", "bredon", *args, "--format", "record", "--max-degree", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert done.returncode == 0
    lines = done.stdout.splitlines()
    assert "1 fixedpoint/normalized Z" in lines and "0 cellular/unnormalized 0" in lines
