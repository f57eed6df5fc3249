"""Covariant coefficient systems on the orbit category.

A system stores a group for every skeleton object ``G/H`` and a hom for
every morphism.  Values on arbitrary finite G-sets come from the orbit
decomposition: one summand per orbit, transported along the recorded
identification of that orbit with its skeleton object.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .grp import FiniteGroup
from .gset import GMap, GSet, Morphism, OrbitCategory, orbit_category
from .homalg import (
    AbHom,
    FgAbGroup,
    IntMatrix,
    Kernel,
    group_direct_sum,
    hom_compose,
    vstack,
)


class CoefficientError(ValueError):
    pass


class FunctorialityError(CoefficientError):
    def __init__(self, message: str, pair: tuple[Morphism, Morphism] | None = None):
        super().__init__(message)
        self.pair = pair


class GModule:
    """A f.g. abelian group with a left action of ``group`` by automorphisms."""

    def __init__(self, group: FiniteGroup, underlying: FgAbGroup, action: Sequence[AbHom]):
        self.group = group
        self.underlying = underlying
        self.action = tuple(action)
        if len(self.action) != group.order:
            raise CoefficientError("module action needs one hom per group element")
        for a in self.action:
            if a.source != underlying or a.target != underlying:
                raise CoefficientError("module action homs must be endomorphisms")
        if not self.action[group.identity].is_identity():
            raise CoefficientError("identity must act as the identity")
        for a in range(group.order):
            for b in range(group.order):
                if hom_compose(self.action[a], self.action[b]) != self.action[group.mul(a, b)]:
                    raise CoefficientError(f"action is not multiplicative at ({a}, {b})")

    @classmethod
    def trivial(cls, group: FiniteGroup, underlying: FgAbGroup) -> GModule:
        return cls(group, underlying, [AbHom.identity(underlying)] * group.order)

    def act(self, g: int, vec: Sequence[int]) -> list[int]:
        return self.action[g].matrix.apply(vec)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GModule):
            return NotImplemented
        return (
            self.group == other.group
            and self.underlying == other.underlying
            and self.action == other.action
        )

    __hash__ = None


class CoeffSystem:
    """A covariant functor from the orbit category to f.g. abelian groups."""

    def __init__(
        self,
        category: OrbitCategory,
        values: Sequence[FgAbGroup],
        maps: Mapping[Morphism, AbHom],
        *,
        constant: FgAbGroup | None = None,
        module: GModule | None = None,
        check: bool = True,
    ):
        self.category = category
        self.values = list(values)
        self.maps = dict(maps)
        self.constant = constant
        self.module = module
        if len(self.values) != len(category):
            raise CoefficientError("one value per orbit-category object required")
        missing = [m for m in category.morphisms() if m not in self.maps]
        if missing:
            raise CoefficientError(f"no value given for morphism {missing[0]}")
        for m, h in self.maps.items():
            if h.source != self.values[m.src] or h.target != self.values[m.tgt]:
                raise CoefficientError(f"map for {m} has wrong source or target")
        if check:
            self.verify_functoriality()

    @property
    def group(self) -> FiniteGroup:
        return self.category.group

    @property
    def kind(self) -> str:
        if self.constant is not None:
            return "constant"
        if self.module is not None:
            return "fixed_point"
        return "explicit"

    def __call__(self, m: Morphism) -> AbHom:
        return self.maps[m]

    def value(self, obj: int) -> FgAbGroup:
        return self.values[obj]

    def verify_functoriality(self) -> None:
        cat = self.category
        for i in range(len(cat)):
            if not self.maps[cat.identity(i)].is_identity():
                raise FunctorialityError(f"identity of object {i} not sent to the identity")
        for f in cat.morphisms():
            for k in range(len(cat)):
                for g in cat.homs[(f.tgt, k)]:
                    gf = cat.compose(g, f)
                    if hom_compose(self.maps[g], self.maps[f]) != self.maps[gf]:
                        raise FunctorialityError(
                            f"k({g} o {f}) != k({g}) o k({f})", (g, f)
                        )

    def same_as(self, other: CoeffSystem) -> bool:
        """Structural equality of values and matrices."""
        return (
            self.category is other.category
            and all(a.invariants == b.invariants for a, b in zip(self.values, other.values))
            and all(self.maps[m].matrix == other.maps[m].matrix for m in self.category.morphisms())
        )


def constant_system(a: FgAbGroup, cat: OrbitCategory) -> CoeffSystem:
    ident = AbHom.identity(a)
    return CoeffSystem(
        cat, [a] * len(cat), {m: ident for m in cat.morphisms()}, constant=a, check=False
    )


def fixed_subgroup(m: GModule, elements: Sequence[int]) -> Kernel:
    """``M^H`` as the joint kernel of ``action(h) - id`` over ``h`` in ``elements``."""
    u = m.underlying
    n = u.ngens
    ident = IntMatrix.identity(n)
    blocks = [m.action[h].matrix - ident for h in elements]
    stacked = vstack(blocks, n) if blocks else IntMatrix.zeros(0, n)
    target = group_direct_sum([u] * len(blocks))
    return Kernel(AbHom(u, target, target.to_canonical @ stacked))


def fixed_point_system(m: GModule, cat: OrbitCategory) -> CoeffSystem:
    """The system ``G/H -> Hom_G(G/H, M) = M^H`` with fibrewise-sum maps."""
    if m.group != cat.group:
        raise CoefficientError("module and category over different groups")
    kernels = [fixed_subgroup(m, h.elements) for h in cat.objects]
    maps = {}
    for f in cat.morphisms():
        src = cat.spaces[f.src]
        fmap = cat.gmap(f)
        fiber = [src.reps[s] for s in range(src.size) if fmap.values[s] == 0]
        kh, kk = kernels[f.src], kernels[f.tgt]
        cols = []
        for b in kh.basis.columns():
            # psi(xH) = x.b; pushforward evaluated at eK sums psi over the fibre
            v = [0] * m.underlying.ngens
            for x in fiber:
                v = [p + q for p, q in zip(v, m.act(x, b))]
            cols.append(kk._coords(v))
        pres = IntMatrix.from_columns(cols, kk.group.npres)
        maps[f] = AbHom.from_presentation(kh.group, kk.group, pres)
    sys = CoeffSystem(cat, [k.group for k in kernels], maps, module=m, check=False)
    sys.fixed_kernels = kernels
    return sys


def explicit_system(
    values: Mapping[int, FgAbGroup],
    maps: Mapping[Morphism, AbHom | IntMatrix | Sequence[Sequence[int]]],
    cat: OrbitCategory,
) -> CoeffSystem:
    """A system from values on objects and maps on a generating set of morphisms.

    Maps on the remaining morphisms are filled in by composition.  Two
    different composites landing on the same morphism with different
    values raise :class:`FunctorialityError` naming the pair.
    """
    vals = []
    for i in range(len(cat)):
        if i not in values:
            raise CoefficientError(f"no value for object {i}")
        vals.append(values[i])
    known: dict[Morphism, AbHom] = {cat.identity(i): AbHom.identity(vals[i]) for i in range(len(cat))}
    for m, h in maps.items():
        if not isinstance(m, Morphism) or m not in set(cat.morphisms()):
            raise CoefficientError(f"{m} is not a morphism of the orbit category")
        if not isinstance(h, AbHom):
            mat = h if isinstance(h, IntMatrix) else IntMatrix(h, vals[m.src].ngens)
            h = AbHom(vals[m.src], vals[m.tgt], mat)
        if m in known and known[m] != h:
            raise FunctorialityError(f"identity morphism {m} given a non-identity value", (m, m))
        known[m] = h
    changed = True
    while changed:
        changed = False
        for f in list(known):
            for g in list(known):
                if g.src != f.tgt:
                    continue
                gf = cat.compose(g, f)
                h = hom_compose(known[g], known[f])
                if gf in known:
                    if known[gf] != h:
                        raise FunctorialityError(
                            f"k({g} o {f}) disagrees with the value already on {gf}", (g, f)
                        )
                else:
                    known[gf] = h
                    changed = True
    missing = [m for m in cat.morphisms() if m not in known]
    if missing:
        raise CoefficientError(f"morphism {missing[0]} not generated by the given maps")
    return CoeffSystem(cat, vals, known)


# -- additive extension ------------------------------------------------------


def _offsets(k: CoeffSystem, s: GSet) -> list[int]:
    out, pos = [], 0
    for orb in s.decomposition:
        out.append(pos)
        pos += k.values[orb.object_index].ngens
    out.append(pos)
    return out


def evaluate_on_gset(k: CoeffSystem, s: GSet) -> tuple[FgAbGroup, list[AbHom]]:
    """``k(S)`` as the direct sum over orbits, with the orbit inclusions.

    The presentation generators of the result are the canonical generators
    of the orbit summands, concatenated in orbit order.
    """
    if s.group != k.group:
        raise CoefficientError("G-set and coefficient system over different groups")
    parts = [k.values[o.object_index] for o in s.decomposition]
    total = group_direct_sum(parts)
    offs = _offsets(k, s)
    incs = []
    for i, p in enumerate(parts):
        pres = IntMatrix(
            [[int(r == offs[i] + c) for c in range(p.ngens)] for r in range(total.npres)], p.ngens
        )
        incs.append(AbHom(p, total, total.to_canonical @ pres))
    return total, incs


def gmap_presentation_matrix(k: CoeffSystem, f: GMap) -> IntMatrix:
    """``k(f)`` between the orbit-summand presentations of source and target."""
    s, t = f.source, f.target
    ds, dt = s.decomposition, t.decomposition
    offs, offt = _offsets(k, s), _offsets(k, t)
    out = [[0] * offs[-1] for _ in range(offt[-1])]
    for o, orb in enumerate(ds):
        j, c = dt.locate(f.values[orb.anchor])
        m = Morphism(orb.object_index, dt.orbits[j].object_index, c)
        block = k.maps[m].matrix
        for r in range(block.rows):
            row = out[offt[j] + r]
            for cc in range(block.cols):
                row[offs[o] + cc] += block[r, cc]
    return IntMatrix(out, offs[-1])


def evaluate_on_gmap(k: CoeffSystem, f: GMap) -> AbHom:
    """``k(f): k(S) -> k(T)``, assembled orbit by orbit."""
    vs, _ = evaluate_on_gset(k, f.source)
    vt, _ = evaluate_on_gset(k, f.target)
    return AbHom.from_presentation(vs, vt, gmap_presentation_matrix(k, f))
