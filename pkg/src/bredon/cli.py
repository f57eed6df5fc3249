"""Plain-text formats for groups, spaces and coefficient systems, and the
``bredon`` command that runs the pipelines on them.

Formats are line oriented; ``#`` starts a comment.

Group::

    group cyclic 3            # or dihedral N, symmetric N
    group table 2             # followed by N rows of N element indices
    0 1
    1 0

Space, either a builder line::

    space builder circle 4 antipodal
    space builder suspension sphere2 trivial

or an explicit simplicial set (faces of nondegenerate simplices only;
a degenerate target is written ``s j1 ... jk <base>``)::

    space dim 1
    simplices 0: a b
    simplices 1: e f
    face e 0 = b
    face e 1 = a
    face f 0 = a
    face f 1 = b
    action 1 0: b a           # images of the degree-0 names under element 1
    action 1 1: f e           # and of the degree-1 names

Coefficients::

    coeff constant Z/2
    coeff module 1            # rank, then torsion orders
    act 1: -1                 # rows separated by ';'
    coeff explicit
    value {0}: Z
    value {0,1}: Z
    map {0} -> {0} [1]: 1
    map {0} -> {0,1} [0]: 2

Subgroups are written as element sets ``{a,b,...}`` and must be the
representatives of their conjugacy classes, as listed by the orbit category;
``e`` and ``G`` abbreviate the trivial and the whole group.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coeff import (
    CoefficientError,
    CoeffSystem,
    GModule,
    constant_system,
    explicit_system,
    fixed_point_system,
)
from .grp import FiniteGroup, GroupError, Subgroup, make_group
from .gset import GSetError, Morphism, orbit_category
from .homalg import (
    AbHom,
    FgAbGroup,
    IntMatrix,
    WellDefinednessError,
    canonical_group,
    cyclic,
    group_direct_sum,
    hom_compose,
)
from .pipelines import PIPELINES, VARIANTS, PipelineError, verify_theorem
from .sset import (
    SimplexRef,
    SimplicialError,
    SimplicialGSet,
    circle,
    cone,
    induced_space,
    interval,
    point,
    sphere2,
    surjection_to_word,
    suspension,
    validate,
    word_to_surjection,
)

EXIT_PASS, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass
class _Line:
    number: int
    text: str  # comment stripped, trailing space removed
    indent: int

    def col(self, token: str | None = None, start: int = 0) -> int:
        if token is None:
            return self.indent + 1
        pos = self.text.find(token, start)
        return (pos if pos >= 0 else 0) + 1

    def error(self, message: str, token: str | None = None) -> ParseError:
        return ParseError(self.number, self.col(token), message)


def _lines(text: str) -> list[_Line]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            out.append(_Line(i, body, len(body) - len(body.lstrip())))
    return out


def _int(line: _Line, tok: str, what: str = "integer") -> int:
    try:
        return int(tok)
    except ValueError:
        raise line.error(f"expected {what}, got {tok!r}", tok) from None


def _expect_header(lines: list[_Line], keyword: str) -> tuple[_Line, list[str]]:
    if not lines:
        raise ParseError(1, 1, f"empty input, expected '{keyword} ...'")
    first = lines[0]
    toks = first.text.split()
    if toks[0] != keyword:
        raise first.error(f"expected '{keyword}', got {toks[0]!r}", toks[0])
    return first, toks[1:]


# -- groups ------------------------------------------------------------------


def parse_group(text: str) -> FiniteGroup:
    lines = _lines(text)
    first, toks = _expect_header(lines, "group")
    if not toks:
        raise first.error("missing group kind")
    kind = toks[0]
    if kind not in ("cyclic", "dihedral", "symmetric", "table"):
        raise first.error(f"unknown group kind {kind!r}", kind)
    if len(toks) != 2:
        raise first.error(f"'group {kind}' takes exactly one size", kind)
    n = _int(first, toks[1], "group size")
    if n < 1:
        raise first.error("group size must be positive", toks[1])
    if kind != "table":
        if len(lines) > 1:
            raise lines[1].error("unexpected line after group declaration")
        return make_group(kind, n)
    rows = lines[1:]
    if len(rows) != n:
        at = rows[n] if len(rows) > n else None
        if at is not None:
            raise at.error(f"table has more than {n} rows")
        raise ParseError(
            (rows[-1].number if rows else first.number) + 1, 1, f"expected {n} table rows, got {len(rows)}"
        )
    table = []
    for ln in rows:
        vals = ln.text.split()
        if len(vals) != n:
            raise ln.error(f"table row needs {n} entries, got {len(vals)}")
        row = [_int(ln, v, "element index") for v in vals]
        for v, tok in zip(row, vals):
            if not 0 <= v < n:
                raise ln.error(f"element index {v} out of range", tok)
        table.append(row)
    try:
        return make_group("table", table=table)
    except GroupError as e:
        raise ParseError(rows[0].number, 1, f"not a group table: {e}") from None


_NAMED = {"C": "cyclic", "D": "dihedral", "S": "symmetric"}


def serialize_group(g: FiniteGroup) -> str:
    m = re.fullmatch(r"([CDS])(\d+)", g.name or "")
    if m:
        kind, n = _NAMED[m.group(1)], int(m.group(2))
        if make_group(kind, n) == g:
            return f"group {kind} {n}\n"
    rows = "\n".join(" ".join(map(str, r)) for r in g.table)
    return f"group table {g.order}\n{rows}\n"


# -- subgroups and abelian groups --------------------------------------------


def _subgroup_spec(line: _Line, tok: str, g: FiniteGroup) -> int:
    """Orbit-category object index of a subgroup written ``{a,b}``, ``e`` or ``G``."""
    cat = orbit_category(g)
    if tok == "e":
        elems = (g.identity,)
    elif tok == "G":
        elems = tuple(range(g.order))
    else:
        m = re.fullmatch(r"\{([0-9,\s]*)\}", tok)
        if not m:
            raise line.error(f"expected subgroup as {{a,b,...}}, got {tok!r}", tok)
        parts = [p for p in m.group(1).replace(" ", "").split(",") if p]
        elems = tuple(sorted({_int(line, p, "element index") for p in parts}))
    for i, h in enumerate(cat.objects):
        if h.elements == elems:
            return i
    sub = Subgroup(g, elems)
    if all(0 <= a < g.order for a in elems) and sub.is_closed():
        raise line.error(f"subgroup {tok} is not the chosen representative of its conjugacy class", tok)
    raise line.error(f"{tok} is not a subgroup", tok)


def _subgroup_text(h: Subgroup) -> str:
    return "{" + ",".join(map(str, h.elements)) + "}"


_GROUP_TERM = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)|0)$")


def parse_abelian(line: _Line, text: str) -> FgAbGroup:
    """``Z^r ⊕ Z/d1 ⊕ ...`` (``+`` also accepted for the sum, ``0`` for trivial)."""
    terms = [t.strip() for t in re.split(r"⊕|\+", text)]
    free, tors = 0, []
    for t in terms:
        m = _GROUP_TERM.match(t)
        if not m:
            raise line.error(f"cannot read abelian group term {t!r}", t or None)
        if t == "0":
            continue
        if m.group(2) is not None:
            d = int(m.group(2))
            if d < 1:
                raise line.error("cyclic order must be positive", t)
            if d > 1:
                tors.append(d)
        else:
            free += int(m.group(1)) if m.group(1) else 1
    if not free and not tors:
        return canonical_group(0)
    return group_direct_sum([cyclic(0)] * free + [cyclic(d) for d in tors])


def _matrix(line: _Line, text: str, rows: int, cols: int) -> IntMatrix:
    body = text.strip()
    if rows == 0 or cols == 0:
        if body and body != "-":
            raise line.error(f"expected an empty matrix ('-') of shape {rows}x{cols}", body)
        return IntMatrix.zeros(rows, cols)
    data = []
    for r in body.split(";"):
        vals = r.split()
        if len(vals) != cols:
            raise line.error(f"matrix row needs {cols} entries, got {len(vals)}", r.strip() or None)
        data.append([_int(line, v) for v in vals])
    if len(data) != rows:
        raise line.error(f"matrix needs {rows} rows, got {len(data)}")
    return IntMatrix(data, cols)


def _matrix_text(m: IntMatrix) -> str:
    if m.rows == 0 or m.cols == 0:
        return "-"
    return "; ".join(" ".join(map(str, r)) for r in m.tolist())


# -- spaces ------------------------------------------------------------------


def _close_action(
    g: FiniteGroup, given: dict[int, tuple[int, ...]], size: int, on_conflict: Callable[[int], Exception]
) -> list[tuple[int, ...]]:
    """Extend a partial action to all of ``g`` by composing the given elements."""
    acts: dict[int, tuple[int, ...]] = {g.identity: tuple(range(size))}
    for a, p in given.items():
        if a in acts and acts[a] != p:
            raise on_conflict(a)
        acts[a] = p
    changed = True
    while changed:
        changed = False
        for a, pa in list(acts.items()):
            for b, pb in list(acts.items()):
                ab = g.mul(a, b)
                pab = tuple(pa[pb[x]] for x in range(size))
                if ab in acts:
                    if acts[ab] != pab:
                        raise on_conflict(ab)
                else:
                    acts[ab] = pab
                    changed = True
    missing = [a for a in range(g.order) if a not in acts]
    if missing:
        raise on_conflict(missing[0])
    return [acts[a] for a in range(g.order)]


def _builder(line: _Line, toks: list[str], g: FiniteGroup) -> SimplicialGSet:
    if not toks:
        raise line.error("missing builder name")
    name, args = toks[0], toks[1:]

    def arity(k: int):
        if len(args) != k:
            raise line.error(f"builder {name} takes {k} argument(s)", name)

    try:
        if name in ("cone", "suspension"):
            inner = _builder(line, args, g)
            return cone(inner) if name == "cone" else suspension(inner)
        if name == "point":
            arity(0)
            return point(g)
        if name == "interval":
            arity(0)
            return interval(g)
        if name == "circle":
            if len(args) not in (1, 2):
                raise line.error("builder circle takes a vertex count and an optional action", name)
            n = _int(line, args[0], "vertex count")
            return circle(n, args[1] if len(args) == 2 else "trivial", g)
        if name == "sphere2":
            if len(args) > 1:
                raise line.error("builder sphere2 takes an optional action", name)
            return sphere2(args[0] if args else "trivial", g)
        if name == "induced":
            arity(1)
            obj = _subgroup_spec(line, args[0], g)
            return induced_space(orbit_category(g).spaces[obj])
    except (SimplicialError, GSetError, GroupError) as e:
        raise line.error(str(e), name) from None
    raise line.error(f"unknown space builder {name!r}", name)


def parse_space(text: str, group: FiniteGroup) -> SimplicialGSet:
    lines = _lines(text)
    first, toks = _expect_header(lines, "space")
    if toks and toks[0] == "builder":
        if len(lines) > 1:
            raise lines[1].error("unexpected line after builder declaration")
        return _builder(first, toks[1:], group)
    if len(toks) != 2 or toks[0] != "dim":
        raise first.error("expected 'space dim D' or 'space builder ...'")
    dim = _int(first, toks[1], "dimension")
    if dim < 0:
        raise first.error("dimension must be nonnegative", toks[1])
    names: list[list[str] | None] = [None] * (dim + 1)
    index: dict[str, tuple[int, int]] = {}
    faces: dict[tuple[int, int], dict[int, tuple[SimplexRef, _Line]]] = {}
    actions: list[dict[int, tuple[tuple[int, ...], _Line]]] = [dict() for _ in range(dim + 1)]
    pending = []
    for ln in lines[1:]:
        kw = ln.text.split()[0]
        head, colon, rest = ln.text.partition(":") if kw in ("simplices", "action") else (ln.text, "", "")
        words = head.split()
        if kw == "simplices":
            if len(words) != 2 or not colon:
                raise ln.error("expected 'simplices <n>: <names>'")
            n = _int(ln, words[1], "degree")
            if not 0 <= n <= dim:
                raise ln.error(f"degree {n} outside 0..{dim}", words[1])
            if names[n] is not None:
                raise ln.error(f"simplices of degree {n} declared twice", words[1])
            ns = rest.split()
            for nm in ns:
                if nm in index:
                    raise ln.error(f"duplicate simplex name {nm!r}", nm)
                if not re.fullmatch(r"[^\s:=\[\]]+", nm):
                    raise ln.error(f"invalid simplex name {nm!r}", nm)
            if len(set(ns)) != len(ns):
                raise ln.error("duplicate simplex name in one degree")
            names[n] = ns
            for i, nm in enumerate(ns):
                index[nm] = (n, i)
        elif kw == "face" or kw == "action":
            pending.append((kw, ln, words, rest))
        else:
            raise ln.error(f"unknown declaration {kw!r}", kw)
    for n, ns in enumerate(names):
        if ns is None:
            raise ParseError(first.number, first.col(), f"no 'simplices {n}:' line")
    for kw, ln, words, rest in pending:
        if kw == "face":
            lhs, eq, rhs = ln.text.partition("=")
            lw = lhs.split()
            if not eq or len(lw) != 3:
                raise ln.error("expected 'face <name> <i> = [s j1 ... jk] <target>'")
            nm = lw[1]
            if nm not in index:
                raise ln.error(f"unknown simplex {nm!r}", nm)
            n, k = index[nm]
            if n == 0:
                raise ln.error("vertices have no faces", nm)
            i = _int(ln, lw[2], "face index")
            if not 0 <= i <= n:
                raise ln.error(f"face index {i} outside 0..{n}", lw[2])
            rw = rhs.replace("[", " ").replace("]", " ").split()
            if not rw:
                raise ln.error("missing face target")
            target, word = rw[-1], rw[:-1]
            if word:
                if word[0] != "s":
                    raise ln.error("degenerate target must start with 's'", word[0])
                word = [_int(ln, w, "degeneracy index") for w in word[1:]]
            if target not in index:
                raise ln.error(f"unknown simplex {target!r}", target)
            tn, tb = index[target]
            if tn + len(word) != n - 1:
                raise ln.error(f"face of a {n}-simplex must have degree {n - 1}", target)
            try:
                word = surjection_to_word(word_to_surjection(word, n - 1))
            except SimplicialError as e:
                raise ln.error(str(e), target) from None
            slot = faces.setdefault((n, k), {})
            if i in slot:
                raise ln.error(f"face {i} of {nm} given twice", lw[2])
            slot[i] = (SimplexRef(tn, tb, tuple(word)), ln)
        else:
            if len(words) != 3:
                raise ln.error("expected 'action <element> <n>: <names>'")
            a = _int(ln, words[1], "element index")
            if not 0 <= a < group.order:
                raise ln.error(f"element {a} not in the group", words[1])
            n = _int(ln, words[2], "degree")
            if not 0 <= n <= dim:
                raise ln.error(f"degree {n} outside 0..{dim}", words[2])
            imgs = rest.split()
            if len(imgs) != len(names[n]):
                raise ln.error(f"action needs {len(names[n])} images in degree {n}")
            perm = []
            for nm in imgs:
                if nm not in index or index[nm][0] != n:
                    raise ln.error(f"{nm!r} is not a {n}-simplex", nm)
                perm.append(index[nm][1])
            if sorted(perm) != list(range(len(perm))):
                raise ln.error("action images are not a permutation")
            if a in actions[n]:
                raise ln.error(f"action of element {a} in degree {n} given twice", words[1])
            actions[n][a] = (tuple(perm), ln)
    face_lists = []
    for n, ns in enumerate(names):
        deg = []
        for k, nm in enumerate(ns):
            if n == 0:
                deg.append(())
                continue
            slot = faces.get((n, k), {})
            missing = [i for i in range(n + 1) if i not in slot]
            if missing:
                raise ParseError(first.number, 1, f"face {missing[0]} of {nm} not given")
            deg.append(tuple(slot[i][0] for i in range(n + 1)))
        face_lists.append(deg)
    action = []
    for n in range(dim + 1):
        given = {a: p for a, (p, _) in actions[n].items()}
        if not given:
            action.append([tuple(range(len(names[n])))] * group.order)
            continue
        at = next(iter(actions[n].values()), (None, first))[1]

        def conflict(a, at=at, n=n):
            return at.error(f"action in degree {n} does not extend to a group action (element {a})")

        action.append(_close_action(group, given, len(names[n]), conflict))
    x = SimplicialGSet(group, names, face_lists, action)
    report = validate(x, raise_on_error=False)
    if not report.ok:
        raise ParseError(first.number, 1, f"invalid simplicial G-set: {report.problems[0]}")
    return x


def serialize_space(x: SimplicialGSet) -> str:
    out = [f"space dim {x.dim}"]
    for n, ns in enumerate(x.names):
        out.append(f"simplices {n}: " + " ".join(ns))
    for n in range(1, x.dim + 1):
        for k, nm in enumerate(x.names[n]):
            for i, f in enumerate(x.faces[n][k]):
                base = x.names[f.base_dim][f.base]
                word = ("s " + " ".join(map(str, f.word)) + " ") if f.word else ""
                out.append(f"face {nm} {i} = {word}{base}")
    for n, ns in enumerate(x.names):
        for a in range(x.group.order):
            if a == x.group.identity:
                continue
            perm = x.action[n][a]
            out.append(f"action {a} {n}: " + " ".join(ns[perm[i]] for i in range(len(ns))))
    return "\n".join(out) + "\n"


# -- coefficient systems -----------------------------------------------------


def parse_coeff(text: str, group: FiniteGroup) -> CoeffSystem:
    lines = _lines(text)
    first, toks = _expect_header(lines, "coeff")
    cat = orbit_category(group)
    if not toks:
        raise first.error("missing coefficient kind")
    kind = toks[0]
    if kind == "constant":
        if len(lines) > 1:
            raise lines[1].error("unexpected line after constant declaration")
        rest = first.text.split("constant", 1)[1]
        return constant_system(parse_abelian(first, rest.strip()), cat)
    if kind == "module":
        if len(toks) < 2:
            raise first.error("expected 'coeff module <rank> <torsion...>'")
        rank = _int(first, toks[1], "rank")
        tors = [_int(first, t, "torsion order") for t in toks[2:]]
        if rank < 0 or any(d < 2 for d in tors):
            raise first.error("rank must be nonnegative and torsion orders at least 2")
        u = parse_abelian(first, " ⊕ ".join(["Z"] * rank + [f"Z/{d}" for d in tors]) or "0")
        given: dict[int, tuple[AbHom, _Line]] = {}
        for ln in lines[1:]:
            head, colon, rest = ln.text.partition(":")
            hw = head.split()
            if hw[0] != "act" or len(hw) != 2 or not colon:
                raise ln.error("expected 'act <element>: <matrix rows>'", hw[0])
            a = _int(ln, hw[1], "element index")
            if not 0 <= a < group.order:
                raise ln.error(f"element {a} not in the group", hw[1])
            if a in given:
                raise ln.error(f"action of element {a} given twice", hw[1])
            m = _matrix(ln, rest, u.ngens, u.ngens)
            try:
                given[a] = (AbHom(u, u, m), ln)
            except WellDefinednessError as e:
                raise ln.error(str(e)) from None
        acts = {group.identity: AbHom.identity(u)}
        for a, (h, ln) in given.items():
            if a in acts and acts[a] != h:
                raise ln.error("identity must act trivially")
            acts[a] = h
        changed = True
        while changed:
            changed = False
            for a, ha in list(acts.items()):
                for b, hb in list(acts.items()):
                    ab = group.mul(a, b)
                    hab = hom_compose(ha, hb)
                    if ab in acts:
                        if acts[ab] != hab:
                            raise ParseError(first.number, 1, f"action is not multiplicative at element {ab}")
                    else:
                        acts[ab] = hab
                        changed = True
        missing = [a for a in range(group.order) if a not in acts]
        if missing:
            raise ParseError(first.number, 1, f"action of element {missing[0]} not determined")
        try:
            m = GModule(group, u, [acts[a] for a in range(group.order)])
        except CoefficientError as e:
            raise ParseError(first.number, 1, str(e)) from None
        return fixed_point_system(m, cat)
    if kind == "explicit":
        values: dict[int, FgAbGroup] = {}
        maps: dict[Morphism, AbHom] = {}
        lines_of: dict[Morphism, _Line] = {}
        pending = []
        for ln in lines[1:]:
            head, colon, rest = ln.text.partition(":")
            hw = head.split()
            if not colon or hw[0] not in ("value", "map"):
                raise ln.error("expected 'value <H>: <group>' or 'map <H> -> <K> [<rep>]: <rows>'", hw[0])
            if hw[0] == "value":
                if len(hw) != 2:
                    raise ln.error("expected 'value <H>: <group>'")
                obj = _subgroup_spec(ln, hw[1], group)
                if obj in values:
                    raise ln.error("value given twice", hw[1])
                values[obj] = parse_abelian(ln, rest.strip())
            else:
                pending.append((ln, head, rest))
        for i in range(len(cat)):
            if i not in values:
                raise ParseError(
                    first.number, 1, f"no value for subgroup {_subgroup_text(cat.objects[i])}"
                )
        for ln, head, rest in pending:
            m = re.fullmatch(r"\s*map\s+(\S+)\s*->\s*(\S+)(?:\s*\[\s*(\d+)\s*\])?\s*", head)
            if not m:
                raise ln.error("expected 'map <H> -> <K> [<coset rep>]: <rows>'")
            src = _subgroup_spec(ln, m.group(1), group)
            tgt = _subgroup_spec(ln, m.group(2), group)
            rep = int(m.group(3)) if m.group(3) else group.identity
            if not 0 <= rep < group.order:
                raise ln.error(f"element {rep} not in the group", m.group(3))
            image = cat.spaces[tgt].coset_of[rep]
            mor = Morphism(src, tgt, image)
            if mor not in set(cat.homs[(src, tgt)]):
                raise ln.error(
                    f"no G-map G/H -> G/K sends eH to {rep}K", m.group(3) or m.group(2)
                )
            if mor in maps:
                raise ln.error("map given twice")
            mat = _matrix(ln, rest, values[tgt].ngens, values[src].ngens)
            try:
                maps[mor] = AbHom(values[src], values[tgt], mat)
            except WellDefinednessError as e:
                raise ln.error(str(e)) from None
            lines_of[mor] = ln
        try:
            return explicit_system(values, maps, cat)
        except CoefficientError as e:
            pair = getattr(e, "pair", None)
            at = next((lines_of[p] for p in (pair or ()) if p in lines_of), first)
            raise ParseError(at.number, 1, str(e)) from None
    raise first.error(f"unknown coefficient kind {kind!r}", kind)


def serialize_coeff(k: CoeffSystem) -> str:
    g = k.group
    if k.constant is not None:
        return f"coeff constant {k.constant}\n"
    if k.module is not None:
        u = k.module.underlying
        head = ["coeff module", str(u.free_rank), *map(str, u.torsion)]
        out = [" ".join(head)]
        for a in range(g.order):
            if a != g.identity:
                out.append(f"act {a}: {_matrix_text(k.module.action[a].matrix)}")
        return "\n".join(out) + "\n"
    cat = k.category
    out = ["coeff explicit"]
    for i, h in enumerate(cat.objects):
        out.append(f"value {_subgroup_text(h)}: {k.values[i]}")
    for f in cat.morphisms():
        if f == cat.identity(f.src):
            continue
        rep = cat.spaces[f.tgt].reps[f.image]
        out.append(
            f"map {_subgroup_text(cat.objects[f.src])} -> {_subgroup_text(cat.objects[f.tgt])}"
            f" [{rep}]: {_matrix_text(k.maps[f].matrix)}"
        )
    return "\n".join(out) + "\n"


# -- running -----------------------------------------------------------------


@dataclass
class JobSpec:
    group: str
    space: str
    coeff: str
    max_degree: int = 2
    pipelines: tuple[str, ...] = PIPELINES
    variants: tuple[str, ...] = VARIANTS
    format: str = "table"


@dataclass
class RunResult:
    records: list[tuple[int, str, str]]
    failures: list[str]
    columns: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def run(job: JobSpec) -> RunResult:
    if job.max_degree < 0:
        raise ValueError("max degree must be nonnegative")
    g = parse_group(job.group)
    x = parse_space(job.space, g)
    k = parse_coeff(job.coeff, g)
    report = verify_theorem(x, k, job.max_degree, job.pipelines, job.variants)
    return RunResult(report.table(), report.failures, list(report.homology))


def format_table(res: RunResult) -> str:
    header = ["degree", *res.columns]
    rows = {}
    for n, name, grp in res.records:
        rows.setdefault(n, {})[name] = grp
    body = [[str(n), *(rows[n][c] for c in res.columns)] for n in sorted(rows)]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    out = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *body]]
    out.extend(f"FAIL {f}" for f in res.failures)
    out.append("PASS" if res.passed else "FAIL")
    return "\n".join(out) + "\n"


def format_records(res: RunResult) -> str:
    return "".join(f"{n} {name} {grp}\n" for n, name, grp in res.records)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


class _InputError(Exception):
    pass


def _labelled(what: str, thunk):
    try:
        return thunk()
    except ParseError as e:
        raise _InputError(f"{what} file: {e}") from None
    except (CoefficientError, SimplicialError, GroupError, GSetError) as e:
        raise _InputError(f"{what} file: {e}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bredon", description="Equivariant homology of simplicial G-sets.")
    p.add_argument("--group", required=True, metavar="FILE")
    p.add_argument("--space", required=True, metavar="FILE")
    p.add_argument("--coeff", required=True, metavar="FILE")
    p.add_argument("--max-degree", type=int, default=2, metavar="N")
    p.add_argument("--pipelines", default=",".join(PIPELINES))
    p.add_argument("--variant", choices=[*VARIANTS, "both"], default="both")
    p.add_argument("--format", choices=["table", "record"], default="table")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    pipes = tuple(p.strip() for p in args.pipelines.split(",") if p.strip())
    bad = [p for p in pipes if p not in PIPELINES]
    if bad or not pipes or args.max_degree < 0:
        msg = f"unknown pipeline {bad[0]!r}" if bad else "need a nonnegative degree and some pipeline"
        print(f"bredon: {msg}", file=sys.stderr)
        return EXIT_INPUT
    variants = VARIANTS if args.variant == "both" else (args.variant,)
    try:
        texts = {name: _read(getattr(args, name)) for name in ("group", "space", "coeff")}
    except OSError as e:
        print(f"bredon: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        g = _labelled("group", lambda: parse_group(texts["group"]))
        x = _labelled("space", lambda: parse_space(texts["space"], g))
        k = _labelled("coeff", lambda: parse_coeff(texts["coeff"], g))
        report = verify_theorem(x, k, args.max_degree, pipes, variants)
    except _InputError as e:
        print(f"bredon: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineError as e:
        print(f"bredon: {e}", file=sys.stderr)
        return EXIT_INPUT
    res = RunResult(report.table(), report.failures, list(report.homology))
    sys.stdout.write(format_table(res) if args.format == "table" else format_records(res))
    if not res.passed and args.format == "record":
        for f in res.failures:
            print(f"bredon: {f}", file=sys.stderr)
    return EXIT_PASS if res.passed else EXIT_DISAGREE


if __name__ == "__main__":
    raise SystemExit(main())
