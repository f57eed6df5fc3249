"""Simplicial G-sets stored by their nondegenerate simplices.

Every simplex is ``s_{j1} ... s_{jk} y`` for a unique nondegenerate ``y``
and a unique strictly decreasing word ``j1 > ... > jk``.  Internally a
word is handled as the monotone surjection ``[n] -> [dim y]`` it encodes,
which makes faces and degeneracies of degenerate simplices a matter of
composing maps of finite ordinals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .grp import FiniteGroup, Subgroup, cyclic_group
from .gset import GSet


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimplexRef:
    base_dim: int
    base: int
    word: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.word)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)


def word_to_surjection(word: Sequence[int], n: int) -> tuple[int, ...]:
    s = list(range(n + 1))
    top = n
    for j in word:
        if not 0 <= j < top:
            raise SimplicialError(f"degeneracy index {j} out of range in word {list(word)}")
        s = [v if v <= j else v - 1 for v in s]
        top -= 1
    return tuple(s)


def surjection_to_word(s: Sequence[int]) -> tuple[int, ...]:
    return tuple(j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1])


def _trivial_group() -> FiniteGroup:
    return cyclic_group(1)


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.problems


class SimplicialGSet:
    """Degreewise finite simplicial set with a simplicial G-action.

    ``names[n]`` lists the nondegenerate n-simplices, ``faces[n][k]`` the
    ``n + 1`` faces of the k-th one as :class:`SimplexRef`, and
    ``action[n][g]`` the permutation by which element ``g`` moves them.
    Everything above ``dim`` is degenerate.
    """

    def __init__(
        self,
        group: FiniteGroup,
        names: Sequence[Sequence[str]],
        faces: Sequence[Sequence[Sequence[SimplexRef]]],
        action: Sequence[Sequence[Sequence[int]]] | None = None,
    ):
        self.group = group
        self.names = [list(ns) for ns in names]
        self.dim = len(self.names) - 1
        self.faces = [[tuple(fs) for fs in deg] for deg in faces]
        if len(self.faces) != len(self.names):
            raise SimplicialError("faces must be given for every degree")
        if action is None:
            action = [[tuple(range(len(ns)))] * group.order for ns in self.names]
        self.action = [[tuple(p) for p in deg] for deg in action]
        seen = set()
        for ns in self.names:
            for nm in ns:
                if nm in seen:
                    raise SimplicialError(f"duplicate simplex name {nm!r}")
                seen.add(nm)

    # -- lookups ---------------------------------------------------------

    def count(self, n: int) -> int:
        return len(self.names[n]) if 0 <= n <= self.dim else 0

    @cached_property
    def _index(self) -> dict[str, tuple[int, int]]:
        return {nm: (n, i) for n, ns in enumerate(self.names) for i, nm in enumerate(ns)}

    def ref(self, name: str) -> SimplexRef:
        n, i = self._index[name]
        return SimplexRef(n, i)

    def name(self, r: SimplexRef) -> str:
        base = self.names[r.base_dim][r.base]
        if not r.word:
            return base
        return "s" + ",".join(map(str, r.word)) + " " + base

    # -- simplicial operators -------------------------------------------

    def face(self, r: SimplexRef, i: int) -> SimplexRef:
        n = r.dim
        if n == 0 or not 0 <= i <= n:
            raise SimplicialError(f"face d_{i} undefined in degree {n}")
        s = word_to_surjection(r.word, n)
        t = [s[v] if v < i else s[v + 1] for v in range(n)]
        m = r.base_dim
        hit = set(t)
        if len(hit) == m + 1:
            return SimplexRef(m, r.base, surjection_to_word(t))
        (v,) = set(range(m + 1)) - hit
        t2 = [u if u < v else u - 1 for u in t]
        f = self.faces[m][r.base][v]
        s2 = word_to_surjection(f.word, m - 1)
        return SimplexRef(f.base_dim, f.base, surjection_to_word([s2[u] for u in t2]))

    def degeneracy(self, r: SimplexRef, j: int) -> SimplexRef:
        n = r.dim
        if not 0 <= j <= n:
            raise SimplicialError(f"degeneracy s_{j} undefined in degree {n}")
        s = word_to_surjection(r.word, n)
        return SimplexRef(
            r.base_dim, r.base, surjection_to_word([s[u if u <= j else u - 1] for u in range(n + 2)])
        )

    def act(self, g: int, r: SimplexRef) -> SimplexRef:
        return SimplexRef(r.base_dim, self.action[r.base_dim][g][r.base], r.word)

    # -- enumeration -----------------------------------------------------

    def simplices(self, n: int, degenerate: bool = True) -> list[SimplexRef]:
        """All n-simplices: nondegenerate first, then by base dimension descending."""
        out = [SimplexRef(n, i) for i in range(self.count(n))]
        if degenerate:
            for m in range(min(n - 1, self.dim), -1, -1):
                for j in combinations(range(n), n - m):
                    word = tuple(sorted(j, reverse=True))
                    out.extend(SimplexRef(m, i, word) for i in range(self.count(m)))
        return out

    def gset(self, n: int, degenerate: bool = False) -> tuple[GSet, list[SimplexRef]]:
        """Degree-n simplices as a G-set, with the simplex behind each point."""
        key = (n, degenerate)
        cache = self.__dict__.setdefault("_gsets", {})
        if key not in cache:
            refs = self.simplices(n, degenerate)
            index = {r: i for i, r in enumerate(refs)}
            act = [[index[self.act(g, r)] for r in refs] for g in range(self.group.order)]
            cache[key] = (GSet(self.group, act, check=False), refs)
        return cache[key]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.count(n) for n in range(self.dim + 1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialGSet):
            return NotImplemented
        return (
            self.group == other.group
            and self.names == other.names
            and self.faces == other.faces
            and self.action == other.action
        )

    __hash__ = None

    def __repr__(self) -> str:
        counts = [self.count(n) for n in range(self.dim + 1)]
        return f"SimplicialGSet(counts={counts}, group={self.group!r})"


def validate(x: SimplicialGSet, raise_on_error: bool = True) -> ValidationReport:
    """Check the simplicial identities and the equivariance of the action.

    The first problem found is raised as :class:`SimplicialError` unless
    ``raise_on_error`` is false, in which case all problems are collected.
    """
    rep = ValidationReport()

    def fail(msg):
        if raise_on_error:
            raise SimplicialError(msg)
        rep.problems.append(msg)

    g = x.group
    for n in range(x.dim + 1):
        k = x.count(n)
        if len(x.faces[n]) != k:
            fail(f"degree {n}: {len(x.faces[n])} face lists for {k} simplices")
            continue
        if len(x.action[n]) != g.order:
            fail(f"degree {n}: action needs {g.order} permutations")
            continue
        for a, perm in enumerate(x.action[n]):
            if sorted(perm) != list(range(k)):
                fail(f"degree {n}: element {a} does not act by a permutation")
        for i, fs in enumerate(x.faces[n]):
            nm = x.names[n][i]
            if n == 0:
                if fs:
                    fail(f"degree 0: vertex {nm!r} has faces")
                continue
            if len(fs) != n + 1:
                fail(f"degree {n}: simplex {nm!r} has {len(fs)} faces, expected {n + 1}")
                continue
            for j, f in enumerate(fs):
                rep.checks += 1
                if f.dim != n - 1 or not 0 <= f.base < x.count(f.base_dim):
                    fail(f"degree {n}: face d_{j} of {nm!r} is not a valid {n - 1}-simplex")
                elif list(f.word) != sorted(set(f.word), reverse=True):
                    fail(f"degree {n}: face d_{j} of {nm!r} has a non-normal word {list(f.word)}")
                else:
                    try:
                        word_to_surjection(f.word, n - 1)
                    except SimplicialError as e:
                        fail(f"degree {n}: face d_{j} of {nm!r}: {e}")
    if rep.problems:
        return rep
    for n in range(x.dim + 1):
        perms = x.action[n]
        if any(perms[g.identity][i] != i for i in range(x.count(n))):
            fail(f"degree {n}: identity element moves a simplex")
        for a in range(g.order):
            for b in range(g.order):
                pa, pb, pab = perms[a], perms[b], perms[g.mul(a, b)]
                if any(pa[pb[i]] != pab[i] for i in range(x.count(n))):
                    fail(f"degree {n}: action of {a}*{b} is not the composite")
    for n in range(1, x.dim + 1):
        for k in range(x.count(n)):
            r = SimplexRef(n, k)
            nm = x.names[n][k]
            for a in range(g.order):
                for i in range(n + 1):
                    rep.checks += 1
                    if x.face(x.act(a, r), i) != x.act(a, x.face(r, i)):
                        fail(f"degree {n}: d_{i} of {nm!r} not equivariant for element {a}")
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        rep.checks += 1
                        if x.face(x.face(r, j), i) != x.face(x.face(r, i), j - 1):
                            fail(f"degree {n}: d_{i} d_{j} != d_{j - 1} d_{i} on {nm!r} (i={i}, j={j})")
    # face/degeneracy interchange on s_j y for every nondegenerate y
    for m in range(x.dim + 1):
        for k in range(x.count(m)):
            y = SimplexRef(m, k)
            for j in range(m + 1):
                sy = x.degeneracy(y, j)
                for i in range(m + 2):
                    rep.checks += 1
                    got = x.face(sy, i)
                    if i < j:
                        want = x.degeneracy(x.face(y, i), j - 1)
                    elif i in (j, j + 1):
                        want = y
                    else:
                        want = x.degeneracy(x.face(y, i - 1), j)
                    if got != want:
                        fail(f"degree {m + 1}: d_{i} s_{j} law fails on {x.names[m][k]!r}")
                for i in range(j + 1):
                    rep.checks += 1
                    if x.degeneracy(sy, i) != x.degeneracy(x.degeneracy(y, i), j + 1):
                        fail(f"degree {m + 2}: s_{i} s_{j} law fails on {x.names[m][k]!r}")
    return rep


# -- fixed points and quotients ---------------------------------------------


def _reindexed(x: SimplicialGSet, keep: list[list[int]], relabel) -> tuple[list, list]:
    names = [[x.names[n][i] for i in keep[n]] for n in range(x.dim + 1)]
    faces = [[tuple(relabel(f) for f in x.faces[n][i]) for i in keep[n]] for n in range(x.dim + 1)]
    return names, faces


def fixed_point_sset(x: SimplicialGSet, h: Subgroup) -> SimplicialGSet:
    """The simplicial set ``X^H`` of simplices fixed by every element of ``h``."""
    keep = [
        [i for i in range(x.count(n)) if all(x.action[n][a][i] == i for a in h.elements)]
        for n in range(x.dim + 1)
    ]
    new = [{old: new for new, old in enumerate(ks)} for ks in keep]

    def relabel(f: SimplexRef) -> SimplexRef:
        return SimplexRef(f.base_dim, new[f.base_dim][f.base], f.word)

    names, faces = _reindexed(x, keep, relabel)
    return SimplicialGSet(_trivial_group(), names, faces)


def quotient_sset(x: SimplicialGSet) -> tuple[SimplicialGSet, list[list[int]]]:
    """``X/G`` together with the degreewise projection onto orbit indices."""
    proj = []
    keep = []
    for n in range(x.dim + 1):
        d = x.gset(n)[0].decomposition
        proj.append(list(d.orbit_of))
        keep.append([o.basepoint for o in d])

    def relabel(f: SimplexRef) -> SimplexRef:
        return SimplexRef(f.base_dim, proj[f.base_dim][f.base], f.word)

    names, faces = _reindexed(x, keep, relabel)
    return SimplicialGSet(_trivial_group(), names, faces), proj


# -- builders ----------------------------------------------------------------


def _checked(x: SimplicialGSet) -> SimplicialGSet:
    validate(x)
    return x


def point(group: FiniteGroup | None = None) -> SimplicialGSet:
    g = group or _trivial_group()
    return _checked(SimplicialGSet(g, [["v"]], [[()]]))


def interval(group: FiniteGroup | None = None) -> SimplicialGSet:
    g = group or _trivial_group()
    return _checked(
        SimplicialGSet(g, [["a", "b"], ["e"]], [[(), ()], [(SimplexRef(0, 1), SimplexRef(0, 0))]])
    )


def _order_two(group: FiniteGroup | None, what: str) -> tuple[FiniteGroup, int]:
    g = group or cyclic_group(2)
    if g.order != 2:
        raise SimplicialError(f"{what} action needs a group of order 2")
    return g, next(a for a in range(2) if a != g.identity)


def _rotation_powers(g: FiniteGroup) -> list[int]:
    """``k`` with ``element == gen^k`` for the least-index generator ``gen``."""
    gen = next((a for a in range(g.order) if g.element_order(a) == g.order), None)
    if gen is None:
        raise SimplicialError("rotation action needs a cyclic group")
    power = [0] * g.order
    x = g.identity
    for k in range(g.order):
        power[x] = k
        x = g.mul(x, gen)
    return power


def circle(
    subdivisions: int = 1,
    action: str = "trivial",
    group: FiniteGroup | None = None,
) -> SimplicialGSet:
    """A circle with ``subdivisions`` vertices and as many edges.

    ``rotation`` uses a cyclic group whose order divides ``subdivisions``
    (default ``C_n``); ``antipodal`` is the half-turn and needs an even
    count of at least 4; ``reflection`` fixes two vertices and needs an even
    count so that edge orientations can be chosen invariantly.
    """
    n = subdivisions
    if n < 1:
        raise SimplicialError("a circle needs at least one vertex")
    verts = [f"v{k}" for k in range(n)]
    edges = [f"e{k}" for k in range(n)]
    v = lambda k: SimplexRef(0, k % n)  # noqa: E731
    if action == "reflection":
        if n % 2:
            raise SimplicialError("reflection needs an even number of subdivisions")
        g, s = _order_two(group, "reflection")
        height = lambda k: min(k % n, (-k) % n)  # noqa: E731
        faces = []
        for k in range(n):
            lo, hi = (k, k + 1) if height(k) < height(k + 1) else (k + 1, k)
            faces.append((v(hi), v(lo)))
        vperm = [(-k) % n for k in range(n)]
        eperm = [(-k - 1) % n for k in range(n)]
        act = [[None] * g.order for _ in range(2)]
        act[0][g.identity], act[1][g.identity] = tuple(range(n)), tuple(range(n))
        act[0][s], act[1][s] = tuple(vperm), tuple(eperm)
        return _checked(SimplicialGSet(g, [verts, edges], [[()] * n, faces], act))

    faces = [(v(k + 1), v(k)) for k in range(n)]
    if action == "trivial":
        g = group or _trivial_group()
        return _checked(SimplicialGSet(g, [verts, edges], [[()] * n, faces]))
    if action == "antipodal":
        if n % 2 or n < 4:
            raise SimplicialError("antipodal circle needs an even number >= 4 of subdivisions")
        g, s = _order_two(group, "antipodal")
        shifts = {g.identity: 0, s: n // 2}
    elif action == "rotation":
        g = group or cyclic_group(n)
        if n % g.order:
            raise SimplicialError(f"rotation group order {g.order} does not divide {n}")
        power = _rotation_powers(g)
        shifts = {a: power[a] * (n // g.order) for a in range(g.order)}
    else:
        raise SimplicialError(f"unknown circle action {action!r}")
    perm = [tuple((k + shifts[a]) % n for k in range(n)) for a in range(g.order)]
    return _checked(SimplicialGSet(g, [verts, edges], [[()] * n, faces], [perm, perm]))


def from_ordered_complex(
    group: FiniteGroup,
    simplices: Sequence[Sequence[str]],
    vertex_action: Sequence[dict[str, str]] | None = None,
) -> SimplicialGSet:
    """Simplicial G-set of an ordered simplicial complex.

    ``simplices`` lists every simplex as its ordered vertex tuple; faces
    drop one vertex.  ``vertex_action[g]`` maps vertex names and must carry
    each ordered simplex to another one in the same order.
    """
    by_dim: dict[int, list[tuple[str, ...]]] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(s))
    top = max(by_dim)
    levels = [by_dim.get(n, []) for n in range(top + 1)]
    index = [{s: i for i, s in enumerate(lv)} for lv in levels]
    name = lambda s: s[0] if len(s) == 1 else "".join(s)  # noqa: E731
    names = [[name(s) for s in lv] for lv in levels]
    faces = []
    for n, lv in enumerate(levels):
        if n == 0:
            faces.append([()] * len(lv))
            continue
        deg = []
        for s in lv:
            fs = []
            for i in range(n + 1):
                f = s[:i] + s[i + 1 :]
                if f not in index[n - 1]:
                    raise SimplicialError(f"face {f} of {s} missing from the complex")
                fs.append(SimplexRef(n - 1, index[n - 1][f]))
            deg.append(tuple(fs))
        faces.append(deg)
    act = None
    if vertex_action is not None:
        act = []
        for n, lv in enumerate(levels):
            deg = []
            for a in range(group.order):
                perm = []
                for s in lv:
                    img = tuple(vertex_action[a][u] for u in s)
                    if img not in index[n]:
                        raise SimplicialError(
                            f"action of element {a} does not preserve the vertex order of {s}"
                        )
                    perm.append(index[n][img])
                deg.append(tuple(perm))
            act.append(deg)
    return _checked(SimplicialGSet(group, names, faces, act))


def sphere2(action: str = "trivial", group: FiniteGroup | None = None) -> SimplicialGSet:
    """Boundary of the octahedron, vertices ``x+ y+ z+ x- y- z-``.

    Each simplex has at most one vertex per axis and is ordered x < y < z,
    which the antipodal map preserves.
    """
    axes = "xyz"
    simplices = []
    for k in (1, 2, 3):
        for chosen in combinations(axes, k):
            for signs in range(2**k):
                simplices.append(
                    tuple(ax + ("+" if not signs >> i & 1 else "-") for i, ax in enumerate(chosen))
                )
    if action == "trivial":
        return from_ordered_complex(group or _trivial_group(), simplices)
    if action == "antipodal":
        g, s = _order_two(group, "antipodal")
        flip = {ax + sg: ax + ("-" if sg == "+" else "+") for ax in axes for sg in "+-"}
        ident = {u: u for u in flip}
        va = [None] * 2
        va[g.identity], va[s] = ident, flip
        return from_ordered_complex(g, simplices, va)
    raise SimplicialError(f"unknown sphere action {action!r}")


def induced_space(s: GSet) -> SimplicialGSet:
    """The discrete simplicial G-set on the points of ``s``."""
    names = [[f"p{i}" for i in range(s.size)]]
    return _checked(SimplicialGSet(s.group, names, [[()] * s.size], [list(s.action)]))


def _join_apexes(x: SimplicialGSet, apexes: Sequence[str]) -> SimplicialGSet:
    """Glue one cone per apex name onto ``x``; the apex is the last vertex."""
    D = x.dim
    g = x.group
    k = len(apexes)
    counts = [x.count(n) for n in range(D + 1)]

    def offset(n: int, a: int) -> int:
        # index of the first a-th cone simplex in degree n
        if n == 0:
            return counts[0] + a
        return (counts[n] if n <= D else 0) + a * counts[n - 1]

    def cone_ref(a: int, r: SimplexRef) -> SimplexRef:
        return SimplexRef(r.base_dim + 1, offset(r.base_dim + 1, a) + r.base, r.word)

    names, faces, act = [], [], []
    for n in range(D + 2):
        ns = list(x.names[n]) if n <= D else []
        fs = list(x.faces[n]) if n <= D else []
        if n == 0:
            ns += list(apexes)
            fs += [()] * k
        else:
            for a, ap in enumerate(apexes):
                for i, nm in enumerate(x.names[n - 1]):
                    ns.append(f"{ap}*{nm}")
                    base = SimplexRef(n - 1, i)
                    if n == 1:
                        cf = [SimplexRef(0, offset(0, a)), base]
                    else:
                        cf = [cone_ref(a, x.faces[n - 1][i][j]) for j in range(n)] + [base]
                    fs.append(tuple(cf))
        names.append(ns)
        faces.append(fs)
        deg = []
        for e in range(g.order):
            perm = list(x.action[n][e]) if n <= D else []
            if n == 0:
                perm += [offset(0, a) for a in range(k)]
            else:
                for a in range(k):
                    perm += [offset(n, a) + j for j in x.action[n - 1][e]]
            deg.append(tuple(perm))
        act.append(deg)
    return _checked(SimplicialGSet(g, names, faces, act))


def cone(x: SimplicialGSet, apex: str = "c") -> SimplicialGSet:
    return _join_apexes(x, [apex])


def suspension(x: SimplicialGSet, apexes: tuple[str, str] = ("n", "s")) -> SimplicialGSet:
    return _join_apexes(x, list(apexes))
