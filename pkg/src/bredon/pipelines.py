"""Equivariant chains ``GSX (x)_GF k`` built four ways, and their homology.

* cellular: one summand ``k(G/Stab)`` per orbit of n-simplices, the closed
  form of the coend over represented functors;
* coend: the explicit coequalizer, generators ``(G/H, H-fixed simplex,
  generator of k(G/H))`` modulo the identifications ``(t f^*, s) ~ (t, f_* s)``;
* quotient: ordinary chains of ``X/G`` with constant coefficients, compared
  with the cellular complex through the projection and the pullback section;
* fixed point: invariants of ``M (x) X_n`` under the diagonal action,
  compared with the cellular complex of the transfer system ``M_tr``.

Every comparison is checked by composing both ways and asking for the
identity, not by comparing isomorphism types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coeff import (
    CoeffSystem,
    GModule,
    constant_system,
    evaluate_on_gset,
    fixed_point_system,
    fixed_subgroup,
    gmap_presentation_matrix,
)
from .gset import GMap, GSet, Morphism, fixed_points, orbit_category, pullback
from .homalg import (
    AbHom,
    ChainComplex,
    FgAbGroup,
    IntMatrix,
    Kernel,
    group_direct_sum,
    group_from_presentation,
    hom_compose,
    homology_at,
)
from .sset import SimplexRef, SimplicialGSet, quotient_sset

VARIANTS = ("normalized", "unnormalized")


class PipelineError(ValueError):
    pass


def _check_variant(variant: str) -> bool:
    if variant not in VARIANTS:
        raise PipelineError(f"unknown variant {variant!r}")
    return variant == "unnormalized"


def _top(x: SimplicialGSet, max_degree: int | None) -> int:
    return (x.dim if max_degree is None else max_degree) + 1


def _face_terms(x: SimplicialGSet, r: SimplexRef, degenerate: bool):
    """``(sign, face)`` pairs of the alternating face sum, degenerate faces
    dropped in the normalized complex."""
    for i in range(r.dim + 1):
        f = x.face(r, i)
        if degenerate or not f.is_degenerate:
            yield (-1) ** i, f


def _mat(rows: list[list[int]], cols: int) -> IntMatrix:
    return IntMatrix(rows, cols)


def _zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def _offsets(sizes: Sequence[int]) -> list[int]:
    out, pos = [], 0
    for s in sizes:
        out.append(pos)
        pos += s
    out.append(pos)
    return out


def homology_list(c: ChainComplex, max_degree: int) -> list[FgAbGroup]:
    return [homology_at(c, n) for n in range(max_degree + 1)]


# -- cellular ----------------------------------------------------------------


@dataclass
class BredonComplex:
    complex: ChainComplex
    variant: str
    # per degree: (anchor simplex name, orbit-category object, coefficient generator)
    provenance: dict[int, list[tuple[str, int, int]]]
    gsets: dict[int, tuple[GSet, list[SimplexRef]]] = field(repr=False)
    offsets: dict[int, list[int]] = field(repr=False)

    def homology(self, max_degree: int) -> list[FgAbGroup]:
        return homology_list(self.complex, max_degree)


def cellular_chain_complex(
    x: SimplicialGSet, k: CoeffSystem, variant: str = "normalized", max_degree: int | None = None
) -> BredonComplex:
    """``C_n = (+)_{orbits of n-simplices} k(G/Stab)`` with the induced differential.

    Degrees ``0 .. max_degree + 1`` are built (``max_degree`` defaults to
    the dimension of ``x``).
    """
    if x.group != k.group:
        raise PipelineError("space and coefficient system over different groups")
    degenerate = _check_variant(variant)
    top = _top(x, max_degree)
    groups, diffs, prov, gsets, offs = {}, {}, {}, {}, {}
    for n in range(top + 1):
        s, refs = x.gset(n, degenerate)
        gsets[n] = (s, refs)
        groups[n], _ = evaluate_on_gset(k, s)
        sizes = [k.values[o.object_index].ngens for o in s.decomposition]
        offs[n] = _offsets(sizes)
        prov[n] = [
            (x.name(refs[o.anchor]), o.object_index, j)
            for o in s.decomposition
            for j in range(k.values[o.object_index].ngens)
        ]
    for n in range(1, top + 1):
        s, refs = gsets[n]
        t, trefs = gsets[n - 1]
        tindex = {r: i for i, r in enumerate(trefs)}
        dt = t.decomposition
        out = _zeros(offs[n - 1][-1], offs[n][-1])
        for o, orb in enumerate(s.decomposition):
            for sign, f in _face_terms(x, refs[orb.anchor], degenerate):
                j, c = dt.locate(tindex[f])
                block = k.maps[Morphism(orb.object_index, dt.orbits[j].object_index, c)].matrix
                for r in range(block.rows):
                    row = out[offs[n - 1][j] + r]
                    for cc in range(block.cols):
                        row[offs[n][o] + cc] += sign * block[r, cc]
        diffs[n] = AbHom.from_presentation(groups[n], groups[n - 1], _mat(out, offs[n][-1]))
    return BredonComplex(ChainComplex(groups, diffs), variant, prov, gsets, offs)


def face_gmap(x: SimplicialGSet, n: int, i: int) -> GMap:
    """``d_i`` from all n-simplices to all (n-1)-simplices, as a G-map."""
    s, refs = x.gset(n, True)
    t, trefs = x.gset(n - 1, True)
    tindex = {r: j for j, r in enumerate(trefs)}
    return GMap(s, t, [tindex[x.face(r, i)] for r in refs], check=False)


# -- coequalizer -------------------------------------------------------------


@dataclass
class CoendPresentation:
    """Free group on ``(object, point, coefficient generator)`` modulo the coend relations."""

    generators: list[tuple[int, int, int]]
    relations: IntMatrix
    quotient: FgAbGroup
    target: FgAbGroup
    comparison: AbHom
    inverse: AbHom
    labels: list[str] | None = None

    def collapses(self) -> bool:
        """Both composites with the orbit-sum value are identities."""
        return (
            hom_compose(self.inverse, self.comparison).is_identity()
            and hom_compose(self.comparison, self.inverse).is_identity()
        )


def coend_of_gset(k: CoeffSystem, s: GSet) -> CoendPresentation:
    """The coequalizer presenting ``Hom_G(-, S) (x)_G k``."""
    cat = k.category
    gens: list[tuple[int, int, int]] = []
    for i, h in enumerate(cat.objects):
        for p in fixed_points(s, h):
            gens.extend((i, p, j) for j in range(k.values[i].ngens))
    index = {g: a for a, g in enumerate(gens)}
    ng = len(gens)
    rels: list[list[int]] = []
    for i, p, j in gens:
        d = k.values[i].orders[j]
        if d:
            v = [0] * ng
            v[index[(i, p, j)]] = d
            rels.append(v)
    for f in cat.morphisms():
        kf = k.maps[f].matrix
        x = cat.spaces[f.tgt].reps[f.image]
        for p in fixed_points(s, cat.objects[f.tgt]):
            # the G-map G/K -> S at p, precomposed with f, sends eH to x.p
            q = s.act(x, p)
            for j in range(k.values[f.src].ngens):
                v = [0] * ng
                v[index[(f.src, q, j)]] += 1
                for l in range(k.values[f.tgt].ngens):
                    if kf[l, j]:
                        v[index[(f.tgt, p, l)]] -= kf[l, j]
                if any(v):
                    rels.append(v)
    quot = group_from_presentation(_mat(rels, ng) if rels else IntMatrix.zeros(0, ng), ng)
    target, _ = evaluate_on_gset(k, s)
    dec = s.decomposition
    offs = _offsets([k.values[o.object_index].ngens for o in dec])
    # (G/H, p, kappa) |-> k(G/H -> orbit of p)(kappa), the sum  sum a_s x_s
    comp = _zeros(offs[-1], ng)
    for a, (i, p, j) in enumerate(gens):
        o, c = dec.locate(p)
        col = k.maps[Morphism(i, dec.orbits[o].object_index, c)].matrix.column(j)
        for r, v in enumerate(col):
            comp[offs[o] + r][a] += v
    inv = _zeros(ng, offs[-1])
    for o, orb in enumerate(dec):
        for j in range(k.values[orb.object_index].ngens):
            inv[index[(orb.object_index, orb.anchor, j)]][offs[o] + j] = 1
    return CoendPresentation(
        gens,
        _mat(rels, ng) if rels else IntMatrix.zeros(0, ng),
        quot,
        target,
        AbHom.from_presentation(quot, target, _mat(comp, ng)),
        AbHom.from_presentation(target, quot, _mat(inv, offs[-1])),
    )


def coequalizer_coend(
    x: SimplicialGSet, k: CoeffSystem, n: int, variant: str = "normalized"
) -> CoendPresentation:
    degenerate = _check_variant(variant)
    s, refs = x.gset(n, degenerate)
    pres = coend_of_gset(k, s)
    pres.labels = [x.name(r) for r in refs]
    return pres


@dataclass
class CoendComplex:
    complex: ChainComplex
    presentations: dict[int, CoendPresentation]


def coend_chain_complex(
    x: SimplicialGSet, k: CoeffSystem, max_degree: int | None = None, variant: str = "normalized"
) -> CoendComplex:
    """Chain complex of the coequalizer groups with faces applied to generators."""
    if x.group != k.group:
        raise PipelineError("space and coefficient system over different groups")
    degenerate = _check_variant(variant)
    top = _top(x, max_degree)
    pres = {n: coequalizer_coend(x, k, n, variant) for n in range(top + 1)}
    diffs = {}
    for n in range(1, top + 1):
        _, refs = x.gset(n, degenerate)
        _, trefs = x.gset(n - 1, degenerate)
        tindex = {r: a for a, r in enumerate(trefs)}
        src, tgt = pres[n], pres[n - 1]
        gindex = {g: a for a, g in enumerate(tgt.generators)}
        out = _zeros(len(tgt.generators), len(src.generators))
        for a, (i, p, j) in enumerate(src.generators):
            for sign, f in _face_terms(x, refs[p], degenerate):
                out[gindex[(i, tindex[f], j)]][a] += sign
        diffs[n] = AbHom.from_presentation(
            src.quotient, tgt.quotient, _mat(out, len(src.generators))
        )
    groups = {n: p.quotient for n, p in pres.items()}
    return CoendComplex(ChainComplex(groups, diffs), pres)


def coend_homology(
    x: SimplicialGSet, k: CoeffSystem, max_degree: int, variant: str = "normalized"
) -> list[FgAbGroup]:
    return homology_list(coend_chain_complex(x, k, max_degree, variant).complex, max_degree)


# -- ordinary chains of a plain simplicial set ------------------------------


def simplicial_chain_complex(
    y: SimplicialGSet, a: FgAbGroup, max_degree: int | None = None, variant: str = "normalized"
) -> tuple[ChainComplex, dict[int, list[SimplexRef]]]:
    """``C_n(Y; a)``: one copy of ``a`` per n-simplex, alternating face sums.

    The group action of ``y``, if any, is ignored.
    """
    degenerate = _check_variant(variant)
    top = _top(y, max_degree)
    r = a.ngens
    cells = {n: y.simplices(n, degenerate) for n in range(top + 1)}
    groups = {n: group_direct_sum([a] * len(cells[n])) for n in cells}
    diffs = {}
    for n in range(1, top + 1):
        tindex = {s: i for i, s in enumerate(cells[n - 1])}
        out = _zeros(r * len(cells[n - 1]), r * len(cells[n]))
        for c, s in enumerate(cells[n]):
            for sign, f in _face_terms(y, s, degenerate):
                t = tindex[f]
                for j in range(r):
                    out[t * r + j][c * r + j] += sign
        diffs[n] = AbHom.from_presentation(groups[n], groups[n - 1], _mat(out, r * len(cells[n])))
    return ChainComplex(groups, diffs), cells


# -- quotient pipeline -------------------------------------------------------


@dataclass
class QuotientComparison:
    complex: ChainComplex
    cellular: BredonComplex
    q: dict[int, AbHom]
    p: dict[int, AbHom]
    quotient_space: SimplicialGSet

    def failures(self) -> list[str]:
        out = []
        for n in self.q:
            if not hom_compose(self.q[n], self.p[n]).is_identity():
                out.append(f"degree {n}: q o p is not the identity")
            if not hom_compose(self.p[n], self.q[n]).is_identity():
                out.append(f"degree {n}: p o q is not the identity")
            if n >= 1:
                lhs = hom_compose(self.q[n - 1], self.cellular.complex.differential(n))
                rhs = hom_compose(self.complex.differential(n), self.q[n])
                if lhs != rhs:
                    out.append(f"degree {n}: q does not commute with the differential")
        return out


def quotient_pipeline(
    x: SimplicialGSet,
    a: FgAbGroup,
    max_degree: int | None = None,
    variant: str = "normalized",
) -> QuotientComparison:
    """Chains of ``X/G`` with coefficients ``a`` and the maps to and from the
    cellular complex of the constant system at ``a``.

    ``q`` projects each orbit summand onto the orbit's simplex.  ``p`` pulls
    the quotient simplices back along ``X_n -> X_n/G`` and pushes the
    resulting G-set into ``X_n``.
    """
    k = constant_system(a, orbit_category(x.group))
    cell = cellular_chain_complex(x, k, variant, max_degree)
    y, proj = quotient_sset(x)
    qc, cells = simplicial_chain_complex(y, a, max_degree, variant)
    r = a.ngens
    qmaps, pmaps = {}, {}
    for n, (s, refs) in cell.gsets.items():
        yindex = {c: i for i, c in enumerate(cells[n])}
        offs = cell.offsets[n]
        pi = [yindex[SimplexRef(f.base_dim, proj[f.base_dim][f.base], f.word)] for f in refs]
        qm = _zeros(r * len(cells[n]), offs[-1])
        for o, orb in enumerate(s.decomposition):
            t = pi[orb.basepoint]
            for j in range(r):
                qm[t * r + j][offs[o] + j] = 1
        qmaps[n] = AbHom.from_presentation(cell.complex.group(n), qc.group(n), _mat(qm, offs[-1]))

        ptot, pproj, base = pullback(list(range(len(cells[n]))), pi, s)
        pdec = ptot.decomposition
        if len(pdec) != len(cells[n]) or sorted(base[o.basepoint] for o in pdec) != list(
            range(len(cells[n]))
        ):
            raise PipelineError(f"degree {n}: pullback does not recover the quotient simplices")
        # a^T -> k(p(T)): orbit of p(T) over t receives the coefficient at t
        poffs = _offsets([r] * len(pdec))
        lift = _zeros(poffs[-1], r * len(cells[n]))
        for o, orb in enumerate(pdec):
            t = base[orb.basepoint]
            for j in range(r):
                lift[poffs[o] + j][t * r + j] = 1
        push = gmap_presentation_matrix(k, pproj)
        pm = push @ _mat(lift, r * len(cells[n]))
        pmaps[n] = AbHom.from_presentation(qc.group(n), cell.complex.group(n), pm)
    return QuotientComparison(qc, cell, qmaps, pmaps, y)


# -- fixed-point pipeline ----------------------------------------------------


@dataclass
class FixedPointComparison:
    complex: ChainComplex
    cellular: BredonComplex
    f: dict[int, AbHom]
    h: dict[int, AbHom]
    invariants: dict[int, Kernel] = field(repr=False)

    def failures(self) -> list[str]:
        out = []
        for n in self.f:
            if not hom_compose(self.h[n], self.f[n]).is_identity():
                out.append(f"degree {n}: h o f is not the identity")
            if not hom_compose(self.f[n], self.h[n]).is_identity():
                out.append(f"degree {n}: f o h is not the identity")
            if n >= 1:
                lhs = hom_compose(self.f[n - 1], self.cellular.complex.differential(n))
                rhs = hom_compose(self.complex.differential(n), self.f[n])
                if lhs != rhs:
                    out.append(f"degree {n}: f does not commute with the differential")
        return out


def _ambient_module(m: GModule, s: GSet) -> GModule:
    """``M (x) S``: one copy of ``M`` per point, ``g(m x) = (g m)(g x)``."""
    u = m.underlying
    r = u.ngens
    amb = group_direct_sum([u] * s.size)
    acts = []
    for g in range(m.group.order):
        rho = m.action[g].matrix
        out = _zeros(r * s.size, r * s.size)
        for x in range(s.size):
            gx = s.act(g, x)
            for a in range(r):
                for b in range(r):
                    out[gx * r + a][x * r + b] = rho[a, b]
        acts.append(AbHom.from_presentation(amb, amb, _mat(out, r * s.size)))
    return GModule(m.group, amb, acts)


def fixed_point_pipeline(
    x: SimplicialGSet,
    m: GModule,
    max_degree: int | None = None,
    variant: str = "normalized",
) -> FixedPointComparison:
    """``(M (x) X_n)^G`` with the induced differential, and the maps ``f``, ``h``
    to and from the cellular complex of ``M_tr``.

    The normalized variant keeps only nondegenerate simplices; since the
    degenerate simplices form a G-stable complement, this is the quotient
    of the invariants by their degenerate part.
    """
    if x.group != m.group:
        raise PipelineError("space and module over different groups")
    degenerate = _check_variant(variant)
    k = fixed_point_system(m, orbit_category(x.group))
    cell = cellular_chain_complex(x, k, variant, max_degree)
    u = m.underlying
    r = u.ngens
    amb: dict[int, GModule] = {}
    inv: dict[int, Kernel] = {}
    for n, (s, _) in cell.gsets.items():
        amb[n] = _ambient_module(m, s)
        inv[n] = fixed_subgroup(amb[n], range(x.group.order))
    diffs = {}
    for n in range(1, max(cell.gsets) + 1):
        _, refs = cell.gsets[n]
        _, trefs = cell.gsets[n - 1]
        tindex = {c: i for i, c in enumerate(trefs)}
        out = _zeros(r * len(trefs), r * len(refs))
        for c, sref in enumerate(refs):
            for sign, f in _face_terms(x, sref, degenerate):
                t = tindex[f]
                for j in range(r):
                    out[t * r + j][c * r + j] += sign
        d_amb = AbHom.from_presentation(amb[n].underlying, amb[n - 1].underlying, _mat(out, r * len(refs)))
        diffs[n] = inv[n - 1].factor(hom_compose(d_amb, inv[n].inclusion))
    fixed_complex = ChainComplex({n: kk.group for n, kk in inv.items()}, diffs)

    cat = k.category
    fmaps, hmaps = {}, {}
    for n, (s, refs) in cell.gsets.items():
        A = amb[n].underlying
        F = inv[n]
        offs = cell.offsets[n]
        dec = s.decomposition
        # f: (phi, psi) |-> sum over cosets xH of psi(xH) at phi(xH)
        cols = []
        for orb in dec:
            space = cat.spaces[orb.object_index]
            kern = k.fixed_kernels[orb.object_index]
            for j in range(k.values[orb.object_index].ngens):
                b = kern.inclusion.matrix.column(j)
                vec = [0] * (r * s.size)
                for c, pt in enumerate(orb.identification.values):
                    mb = m.act(space.reps[c], b)
                    for a in range(r):
                        vec[pt * r + a] += mb[a]
                cols.append(F._coords(A.to_canonical.apply(vec)))
        fm = IntMatrix.from_columns(cols, F.group.npres) if cols else IntMatrix.zeros(F.group.npres, 0)
        fmaps[n] = AbHom.from_presentation(cell.complex.group(n), F.group, fm)

        hcols = []
        for col in F.inclusion.matrix.columns():
            vec = A.from_canonical.apply(col)
            coeffs = [u.reduce(vec[pt * r : (pt + 1) * r]) for pt in range(s.size)]
            support = [pt for pt in range(s.size) if any(coeffs[pt])]
            # the support is G-stable and carries the invariant coefficients
            tset, incl = s.restrict(support)
            for g in range(x.group.order):
                for pt in support:
                    if u.reduce(m.act(g, coeffs[pt])) != coeffs[s.act(g, pt)]:
                        raise PipelineError(f"degree {n}: element is not invariant")
            out = [0] * offs[-1]
            for torb in tset.decomposition:
                o = dec.orbit_of[incl[torb.basepoint]]
                orb = dec.orbits[o]
                kern = k.fixed_kernels[orb.object_index]
                val = kern.lift(coeffs[orb.anchor])
                for j, v in enumerate(val):
                    out[offs[o] + j] += v
            hcols.append(out)
        C = cell.complex.group(n)
        hm = IntMatrix.from_columns(hcols, offs[-1]) if hcols else IntMatrix.zeros(offs[-1], 0)
        hmaps[n] = AbHom(F.group, C, C.to_canonical @ hm)
    return FixedPointComparison(fixed_complex, cell, fmaps, hmaps, inv)


# -- the theorem check -------------------------------------------------------


PIPELINES = ("cellular", "coend", "quotient", "fixedpoint")


@dataclass
class TheoremReport:
    max_degree: int
    homology: dict[str, list[FgAbGroup]]
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def table(self) -> list[tuple[int, str, str]]:
        return [
            (n, name, str(groups[n]))
            for n in range(self.max_degree + 1)
            for name, groups in self.homology.items()
        ]


def verify_theorem(
    x: SimplicialGSet,
    k: CoeffSystem,
    max_degree: int,
    pipelines: Sequence[str] = PIPELINES,
    variants: Sequence[str] = VARIANTS,
) -> TheoremReport:
    """Compute homology through ``max_degree`` by every applicable pipeline
    and report any disagreement or failed comparison.

    The quotient pipeline applies to constant systems, the fixed-point
    pipeline to transfer systems of a module.
    """
    for p in pipelines:
        if p not in PIPELINES:
            raise PipelineError(f"unknown pipeline {p!r}")
    homology: dict[str, list[FgAbGroup]] = {}
    failures: list[str] = []
    for v in variants:
        _check_variant(v)
        if "cellular" in pipelines:
            homology[f"cellular/{v}"] = cellular_chain_complex(x, k, v, max_degree).homology(max_degree)
        if "coend" in pipelines:
            cc = coend_chain_complex(x, k, max_degree, v)
            homology[f"coend/{v}"] = homology_list(cc.complex, max_degree)
            for n, pres in cc.presentations.items():
                if not pres.collapses():
                    failures.append(f"coend/{v} degree {n}: comparison with orbit sum not inverse")
        if "quotient" in pipelines and k.constant is not None:
            qp = quotient_pipeline(x, k.constant, max_degree, v)
            homology[f"quotient/{v}"] = homology_list(qp.complex, max_degree)
            failures.extend(f"quotient/{v} {msg}" for msg in qp.failures())
        if "fixedpoint" in pipelines and k.module is not None:
            fp = fixed_point_pipeline(x, k.module, max_degree, v)
            homology[f"fixedpoint/{v}"] = homology_list(fp.complex, max_degree)
            failures.extend(f"fixedpoint/{v} {msg}" for msg in fp.failures())
    names = list(homology)
    if names:
        ref = names[0]
        for name in names[1:]:
            for n in range(max_degree + 1):
                a, b = homology[ref][n], homology[name][n]
                if a != b:
                    failures.append(f"degree {n}: {ref} gives {a} but {name} gives {b}")
    return TheoremReport(max_degree, homology, failures)
