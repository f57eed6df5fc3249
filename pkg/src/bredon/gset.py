"""Finite G-sets, equivariant maps and the orbit category.

A G-set has points ``0 .. size-1`` and an action table with
``action[g][x]`` the image of point ``x`` under element ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import NamedTuple, Sequence

from .grp import FiniteGroup, Subgroup, conjugacy_classes_of_subgroups

DEFAULT_MAP_BOUND = 100_000


class GSetError(ValueError):
    pass


class GSet:
    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        self.action = tuple(tuple(row) for row in action)
        if len(self.action) != group.order:
            raise GSetError("action table needs one row per group element")
        self.size = len(self.action[0])
        if check:
            self._check()

    def _check(self):
        g, n = self.group, self.size
        for row in self.action:
            if len(row) != n or sorted(row) != list(range(n)):
                raise GSetError("each group element must act by a permutation")
        if any(self.action[g.identity][x] != x for x in range(n)):
            raise GSetError("identity does not act trivially")
        for a in range(g.order):
            for b in range(g.order):
                ab = self.action[g.mul(a, b)]
                ra, rb = self.action[a], self.action[b]
                if any(ra[rb[x]] != ab[x] for x in range(n)):
                    raise GSetError(f"action not compatible with product {a}*{b}")

    @classmethod
    def trivial(cls, group: FiniteGroup, size: int) -> GSet:
        return cls(group, [list(range(size))] * group.order, check=False)

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, [g for g in range(self.group.order) if self.action[g][x] == x])

    def orbit_of(self, x: int) -> list[int]:
        return sorted({row[x] for row in self.action})

    @cached_property
    def decomposition(self) -> OrbitDecomposition:
        return _decompose(self)

    def restrict(self, points: Sequence[int]) -> tuple[GSet, list[int]]:
        """Sub-G-set on an invariant subset, plus the inclusion as point list."""
        pts = sorted(points)
        index = {p: i for i, p in enumerate(pts)}
        try:
            act = [[index[row[p]] for p in pts] for row in self.action]
        except KeyError:
            raise GSetError("subset is not invariant") from None
        return GSet(self.group, act, check=False), pts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GSet):
            return NotImplemented
        return self.group == other.group and self.action == other.action

    def __hash__(self) -> int:
        return hash(self.action)

    def __repr__(self) -> str:
        return f"GSet(size={self.size}, group={self.group!r})"


class CosetSpace(GSet):
    """``G/H``: left cosets ``xH``, with ``eH`` as point 0."""

    def __init__(self, subgroup: Subgroup):
        g = subgroup.parent
        seen: dict[int, int] = {}
        covered: set[int] = set()
        cosets: list[tuple[int, ...]] = []
        for x in [g.identity] + [a for a in range(g.order) if a != g.identity]:
            if x in covered:
                continue
            c = tuple(sorted(g.mul(x, h) for h in subgroup.elements))
            covered.update(c)
            cosets.append(c)
        cosets = [cosets[0]] + sorted(cosets[1:])
        for i, c in enumerate(cosets):
            for a in c:
                seen[a] = i
        self.subgroup = subgroup
        self.cosets = cosets
        self.coset_of = [seen[a] for a in range(g.order)]
        reps = [g.identity] + [c[0] for c in cosets[1:]]
        self.reps = reps
        act = [[self.coset_of[g.mul(a, reps[i])] for i in range(len(cosets))] for a in range(g.order)]
        super().__init__(g, act, check=False)


class GMap:
    """An equivariant map between G-sets, given by its values."""

    def __init__(self, source: GSet, target: GSet, values: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.values = tuple(values)
        if len(self.values) != source.size:
            raise GSetError("value list length differs from source size")
        if source.group != target.group:
            raise GSetError("group mismatch")
        if check and not self.is_equivariant():
            raise GSetError(f"map {list(self.values)} is not equivariant")

    def is_equivariant(self) -> bool:
        sa, ta, v = self.source.action, self.target.action, self.values
        if any(not 0 <= y < self.target.size for y in v):
            return False
        return all(v[sa[g][x]] == ta[g][v[x]] for g in range(len(sa)) for x in range(len(v)))

    def __call__(self, x: int) -> int:
        return self.values[x]

    def compose(self, first: GMap) -> GMap:
        """``self o first``."""
        return GMap(first.source, self.target, [self.values[y] for y in first.values], check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMap):
            return NotImplemented
        return self.values == other.values and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"GMap({list(self.values)})"


# -- orbit decomposition -----------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    basepoint: int
    stabilizer: Subgroup
    representative: Subgroup
    object_index: int
    conjugator: int
    identification: GMap

    @property
    def anchor(self) -> int:
        """The point of the orbit whose stabilizer is exactly the representative."""
        return self.identification.values[0]


@dataclass(frozen=True)
class OrbitDecomposition:
    gset: GSet
    orbits: tuple[Orbit, ...]
    orbit_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def locate(self, x: int) -> tuple[int, int]:
        """``(orbit index, coset index)`` of point ``x`` under the identifications."""
        o = self.orbit_of[x]
        return o, self.orbits[o].identification.values.index(x)


def orbits(s: GSet) -> OrbitDecomposition:
    return s.decomposition


def _decompose(s: GSet) -> OrbitDecomposition:
    g = s.group
    cat = orbit_category(g)
    orbit_of = [-1] * s.size
    out = []
    for b in range(s.size):
        if orbit_of[b] >= 0:
            continue
        pts = tuple(s.orbit_of(b))
        for p in pts:
            orbit_of[p] = len(out)
        stab = s.stabilizer(b)
        obj = cat.object_of(stab)
        rep = cat.objects[obj]
        # c with c rep c^-1 = stab, so that stab(c^-1 b) = rep
        c = next(x for x in range(g.order) if rep.conjugate(x).elements == stab.elements)
        anchor = s.act(g.inv(c), b)
        space = cat.spaces[obj]
        ident = GMap(space, s, [s.act(r, anchor) for r in space.reps], check=False)
        out.append(Orbit(pts, b, stab, rep, obj, c, ident))
    return OrbitDecomposition(s, tuple(out), tuple(orbit_of))


# -- constructions -----------------------------------------------------------


def _same_group(s: GSet, t: GSet):
    if s.group != t.group:
        raise GSetError("G-sets over different groups")


def coproduct(s: GSet, t: GSet) -> GSet:
    _same_group(s, t)
    act = [list(rs) + [y + s.size for y in rt] for rs, rt in zip(s.action, t.action)]
    return GSet(s.group, act, check=False)


def product(s: GSet, t: GSet) -> GSet:
    """Row-major: point ``(x, y)`` has index ``x * t.size + y``."""
    _same_group(s, t)
    act = [
        [rs[x] * t.size + rt[y] for x in range(s.size) for y in range(t.size)]
        for rs, rt in zip(s.action, t.action)
    ]
    return GSet(s.group, act, check=False)


def quotient(s: GSet) -> tuple[int, list[int]]:
    """Orbit set ``S/G`` as ``(number of orbits, projection)``."""
    d = s.decomposition
    return len(d), list(d.orbit_of)


def fixed_points(s: GSet, h: Subgroup) -> list[int]:
    return [x for x in range(s.size) if all(s.action[g][x] == x for g in h.elements)]


def pullback(
    alpha: Sequence[int], pi: Sequence[int], s: GSet
) -> tuple[GSet, GMap, list[int]]:
    """Pullback of ``alpha: T -> Q`` along ``pi: S -> Q`` (``Q`` with trivial action).

    Points are the pairs ``(t, x)`` with ``alpha(t) == pi(x)``, ordered by
    ``t`` then ``x``; the group acts through ``S``.  Returns the G-set, its
    projection to ``S`` and its base map to ``T``.
    """
    if len(pi) != s.size:
        raise GSetError("pi must be defined on every point of S")
    for row in s.action:
        if any(pi[row[x]] != pi[x] for x in range(s.size)):
            raise GSetError("pi is not constant on orbits")
    pairs = [(t, x) for t in range(len(alpha)) for x in range(s.size) if alpha[t] == pi[x]]
    index = {p: i for i, p in enumerate(pairs)}
    act = [[index[(t, row[x])] for t, x in pairs] for row in s.action]
    p = GSet(s.group, act, check=False)
    proj = GMap(p, s, [x for _, x in pairs], check=False)
    return p, proj, [t for t, _ in pairs]


def coset_criterion_count(h: Subgroup, k: Subgroup) -> int:
    """``|{g in G : g^-1 H g <= K}| / |K|``, the size of ``Hom(G/H, G/K)``."""
    g = h.parent
    n = sum(1 for x in range(g.order) if h.conjugate(g.inv(x)) <= k)
    return n // k.order


def enumerate_gmaps(s: GSet, t: GSet, bound: int = DEFAULT_MAP_BOUND) -> list[GMap]:
    """All equivariant maps ``s -> t`` in lexicographic order of values.

    A map is fixed by where it sends each orbit's basepoint, and a target
    point is allowed iff its stabilizer contains the basepoint's.
    """
    _same_group(s, t)
    g = s.group
    choices = []
    transports = []
    total = 1
    for orb in s.decomposition:
        b = orb.basepoint
        stab = orb.stabilizer
        allowed = [y for y in range(t.size) if all(t.action[h][y] == y for h in stab.elements)]
        choices.append(allowed)
        total *= len(allowed)
        if total > bound:
            raise GSetError(f"more than {bound} equivariant maps")
        mover = {}
        for a in range(g.order):
            mover.setdefault(s.action[a][b], a)
        transports.append(mover)
    maps = []
    for pick in cartesian(*choices):
        vals = [0] * s.size
        for orb, y, mover in zip(s.decomposition, pick, transports):
            for x in orb.points:
                vals[x] = t.action[mover[x]][y]
        maps.append(vals)
    maps.sort()
    return [GMap(s, t, v, check=False) for v in maps]


# -- orbit category ----------------------------------------------------------


class Morphism(NamedTuple):
    """``G/H_src -> G/H_tgt`` sending ``eH_src`` to coset ``image`` of the target."""

    src: int
    tgt: int
    image: int


class OrbitCategory:
    """Skeleton of the orbit category: one ``G/H`` per conjugacy class."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        classes = conjugacy_classes_of_subgroups(group)
        self.objects = [rep for rep, _ in classes]
        self._class_of = {}
        for i, (_, members) in enumerate(classes):
            for m in members:
                self._class_of[m.elements] = i
        self.spaces = [CosetSpace(h) for h in self.objects]
        self.homs: dict[tuple[int, int], list[Morphism]] = {}
        self._gmaps: dict[Morphism, GMap] = {}
        n = len(self.objects)
        for i in range(n):
            h = self.objects[i]
            for j in range(n):
                sp = self.spaces[j]
                ms = []
                for p in range(sp.size):
                    if all(sp.action[x][p] == p for x in h.elements):
                        m = Morphism(i, j, p)
                        ms.append(m)
                        self._gmaps[m] = self._realize(m)
                self.homs[(i, j)] = ms
        self._compose = {
            (g, f): Morphism(f.src, g.tgt, self._gmaps[g].values[f.image])
            for (i, j), fs in self.homs.items()
            for f in fs
            for k in range(n)
            for g in self.homs[(j, k)]
        }

    def _realize(self, m: Morphism) -> GMap:
        src, tgt = self.spaces[m.src], self.spaces[m.tgt]
        x = tgt.reps[m.image]
        # xH -> x g K where g represents the image coset
        vals = [tgt.coset_of[self.group.mul(r, x)] for r in src.reps]
        return GMap(src, tgt, vals, check=False)

    def object_of(self, h: Subgroup) -> int:
        return self._class_of[h.elements]

    def gmap(self, m: Morphism) -> GMap:
        return self._gmaps[m]

    def identity(self, i: int) -> Morphism:
        return Morphism(i, i, 0)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """``g o f``."""
        return self._compose[(g, f)]

    def morphisms(self) -> list[Morphism]:
        return [m for key in sorted(self.homs) for m in self.homs[key]]

    def morphism_from(self, src: int, tgt: int, element: int) -> Morphism:
        """The morphism sending ``eH`` to ``element * K``."""
        m = Morphism(src, tgt, self.spaces[tgt].coset_of[element])
        if m not in self._gmaps:
            raise GSetError(
                f"no G-map G/{list(self.objects[src].elements)} -> "
                f"G/{list(self.objects[tgt].elements)} through element {element}"
            )
        return m

    def __len__(self) -> int:
        return len(self.objects)


def orbit_category(group: FiniteGroup) -> OrbitCategory:
    cat = getattr(group, "_orbit_category", None)
    if cat is None:
        cat = OrbitCategory(group)
        group._orbit_category = cat
    return cat
