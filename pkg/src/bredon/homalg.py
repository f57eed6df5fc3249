"""Exact integer linear algebra for finitely generated abelian groups.

Groups are stored in canonical form ``Z^r + Z/d_1 + ... + Z/d_t`` with
``d_1 | d_2 | ... | d_t`` and every ``d_i >= 2``.  Canonical generators are
ordered free ones first, then the torsion ones in divisibility order.

Homomorphisms act on column vectors of canonical coordinates, so a hom
``A -> B`` has a ``B.ngens x A.ngens`` matrix.  A group built from a
presentation remembers how its presentation generators sit in canonical
coordinates, which lets callers define maps on whatever generators are
convenient and transport them with :meth:`AbHom.from_presentation`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix with arbitrary precision entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(v) for v in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: expected {cols} columns, got {len(r)}")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls([[col[i] for col in columns] for i in range(rows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(v for row in self.data for v in row)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.columns(), self.rows)

    T = property(transpose)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for r in self.data:
            nz = [(k, v) for k, v in enumerate(r) if v]
            out.append([sum(v * c[k] for k, v in nz) for c in ocols])
        return IntMatrix(out, other.cols)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, v) for k, v in enumerate(vec) if v]
        return [sum(r[k] * v for k, v in nz) for r in self.data]

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + other.scale(-1)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([[c * v for v in r] for r in self.data], self.cols)

    def is_zero(self) -> bool:
        return not any(v for r in self.data for v in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, cols={self.cols})"


def hstack(mats: Sequence[IntMatrix], rows: int) -> IntMatrix:
    out = [[] for _ in range(rows)]
    for m in mats:
        if m.rows != rows:
            raise ValueError("row count mismatch in hstack")
        for i in range(rows):
            out[i].extend(m.data[i])
    return IntMatrix(out, sum(m.cols for m in mats))


def vstack(mats: Sequence[IntMatrix], cols: int) -> IntMatrix:
    out = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch in vstack")
        out.extend(m.data)
    return IntMatrix(out, cols)


def block_diag(mats: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.data):
            out[r0 + i][c0 : c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return IntMatrix(out, cols)


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = m.rows
    if n != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- Smith normal form -----------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U @ m @ V == D``; ``Vinv`` is carried along for change of basis."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Vinv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _snf(m: IntMatrix) -> SmithForm:
    rows, cols = m.rows, m.cols
    a = m.tolist()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]
    vinv = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        ra, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                ra[k] += q * rs[k]
        ua, us = u[dst], u[src]
        for k in range(rows):
            if us[k]:
                ua[k] += q * us[k]

    def add_col(dst, src, q):
        # col dst += q * col src; inverse update is row src -= q * row dst of vinv
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        for r in v:
            if r[src]:
                r[dst] += q * r[src]
        vd, vs = vinv[dst], vinv[src]
        for k in range(cols):
            if vd[k]:
                vs[k] -= q * vd[k]

    t = 0
    while t < min(rows, cols):
        while True:
            best = None
            for i in range(t, rows):
                r = a[i]
                for j in range(t, cols):
                    x = r[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, rows):
                if any(x % p for x in a[i][t + 1 :]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SmithForm(
        IntMatrix(u, rows), IntMatrix(a, cols), IntMatrix(v, cols), IntMatrix(vinv, cols)
    )


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries forming a divisibility chain.  Pivots are the nonzero entries of
    least absolute value, ties broken by smallest ``(row, col)``, so the
    output is a deterministic function of the input.
    """
    s = _snf(m)
    return s.U, s.D, s.V


def smith_form(m: IntMatrix) -> SmithForm:
    return _snf(m)


class IntSolver:
    """Reusable exact solver for ``A x = b`` over the integers."""

    def __init__(self, a: IntMatrix):
        self.a = a
        self.snf = _snf(a)
        self.diag = self.snf.diagonal
        self.rank = self.snf.rank

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
        ub = self.snf.U.apply(b)
        y = [0] * self.a.cols
        for i, d in enumerate(self.diag):
            if d == 0:
                continue
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        if any(ub[i] for i in range(self.rank, len(ub))):
            return None
        return self.snf.V.apply(y)

    def kernel_basis(self) -> list[list[int]]:
        """Basis of ``{x : A x = 0}`` as a list of column vectors."""
        cols = self.snf.V.columns()
        return [list(c) for c in cols[self.rank :]]


def kernel_basis(a: IntMatrix) -> list[list[int]]:
    return IntSolver(a).kernel_basis()


# -- groups and homomorphisms ----------------------------------------------


def _fmt_group(free_rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class FgAbGroup:
    """A finitely generated abelian group in canonical form.

    ``to_canonical`` (``ngens x npres``) sends presentation generators to
    canonical coordinates; ``from_canonical`` (``npres x ngens``) picks
    presentation-level representatives of canonical generators.  Equality
    is isomorphism type.
    """

    free_rank: int
    torsion: tuple[int, ...]
    relations: IntMatrix = field(repr=False)
    to_canonical: IntMatrix = field(repr=False)
    from_canonical: IntMatrix = field(repr=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError(f"divisibility chain broken at {self.torsion}")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def npres(self) -> int:
        return self.to_canonical.cols

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 meaning infinite."""
        return (0,) * self.free_rank + self.torsion

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.torsion

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d if d else x for x, d in zip(vec, self.orders))

    def is_zero(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def canonical_of(self, pres_vec: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(self.to_canonical.apply(pres_vec))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    def __str__(self) -> str:
        return _fmt_group(self.free_rank, self.torsion)

    def __repr__(self) -> str:
        return f"FgAbGroup({self})"


def group_from_presentation(rels: IntMatrix, generators: int) -> FgAbGroup:
    """Canonical form of ``Z^generators / rowspan(rels)``."""
    if rels.cols != generators:
        raise ValueError(f"relation matrix has {rels.cols} columns, expected {generators}")
    s = _snf(rels)
    diag = s.diagonal + [0] * (generators - len(s.diagonal))
    free = [c for c, d in enumerate(diag) if d == 0]
    tors = [c for c, d in enumerate(diag) if d > 1]
    keep = free + tors
    # x (row) |-> x V sends rowspan(rels) onto rowspan(D)
    to_can = IntMatrix([[s.V[j, c] for j in range(generators)] for c in keep], generators)
    from_can = IntMatrix([[s.Vinv[c, j] for c in keep] for j in range(generators)], len(keep))
    return FgAbGroup(len(free), tuple(diag[c] for c in tors), rels, to_can, from_can)


def cyclic(n: int = 0) -> FgAbGroup:
    """``Z`` for ``n == 0``, else ``Z/n`` (trivial for ``n == 1``)."""
    if n == 0:
        return free_group(1)
    return group_from_presentation(IntMatrix([[abs(n)]]), 1)


def free_group(rank: int) -> FgAbGroup:
    return group_from_presentation(IntMatrix.zeros(0, rank), rank)


def trivial_group() -> FgAbGroup:
    return free_group(0)


def canonical_group(free_rank: int, torsion: Sequence[int] = ()) -> FgAbGroup:
    """``Z^free_rank + Z/t1 + ...``; an invariant-factor chain is kept verbatim."""
    orders = [0] * free_rank + list(torsion)
    rels = _order_relations(orders)
    chain = all(d >= 2 for d in torsion) and all(b % a == 0 for a, b in zip(torsion, torsion[1:]))
    if not chain:
        return group_from_presentation(rels, len(orders))
    ident = IntMatrix.identity(len(orders))
    return FgAbGroup(free_rank, tuple(torsion), rels, ident, ident)


def _order_relations(orders: Sequence[int]) -> IntMatrix:
    n = len(orders)
    return IntMatrix([[d if j == i else 0 for j in range(n)] for i, d in enumerate(orders) if d], n)


def group_direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    """Direct sum, re-canonicalized.

    Presentation generators of the result are the canonical generators of
    the summands, concatenated in order.
    """
    orders = [d for g in groups for d in g.orders]
    return group_from_presentation(_order_relations(orders), len(orders))


class WellDefinednessError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AbHom:
    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"matrix shape {m.shape} does not fit {self.source} -> {self.target}"
            )
        red = IntMatrix([self.target.reduce(c) for c in m.columns()], self.target.ngens).T
        object.__setattr__(self, "matrix", red)
        for j, d in enumerate(self.source.orders):
            if d and not self.target.is_zero([d * x for x in red.column(j)]):
                raise WellDefinednessError(
                    f"generator {j} of order {d} does not map to an element killed by {d}"
                )

    @classmethod
    def from_presentation(cls, source: FgAbGroup, target: FgAbGroup, pres: IntMatrix) -> AbHom:
        """Hom given on presentation generators of both groups."""
        if pres.shape != (target.npres, source.npres):
            raise ValueError(f"presentation matrix shape {pres.shape} mismatch")
        tp = target.to_canonical @ pres
        for r in source.relations.data:
            if not target.is_zero(tp.apply(r)):
                raise WellDefinednessError(f"relation {list(r)} not mapped to zero")
        return cls(source, target, tp @ source.from_canonical)

    @classmethod
    def identity(cls, g: FgAbGroup) -> AbHom:
        return cls(g, g, IntMatrix.identity(g.ngens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> AbHom:
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def __call__(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(vec))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_identity(self) -> bool:
        return self.source == self.target and self.matrix == IntMatrix.identity(self.source.ngens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def __repr__(self) -> str:
        return f"AbHom({self.source} -> {self.target}, {self.matrix.tolist()})"


def hom_compose(g: AbHom, f: AbHom) -> AbHom:
    """``g o f``."""
    if f.target != g.source or f.target.ngens != g.source.ngens:
        raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    return AbHom(f.source, g.target, g.matrix @ f.matrix)


def hom_add(f: AbHom, g: AbHom) -> AbHom:
    if f.source != g.source or f.target != g.target:
        raise ValueError("sum of homs with different endpoints")
    return AbHom(f.source, f.target, f.matrix + g.matrix)


def hom_direct_sum(homs: Sequence[AbHom]) -> AbHom:
    src = group_direct_sum([h.source for h in homs])
    tgt = group_direct_sum([h.target for h in homs])
    return AbHom.from_presentation(src, tgt, block_diag([h.matrix for h in homs]))


# -- kernels, cokernels, homology ------------------------------------------


class Kernel:
    """Kernel of ``f: S -> T`` as a subgroup of ``S``.

    The presentation generators of :attr:`group` are a basis of the
    lattice of integer lifts of kernel elements, written in canonical
    coordinates of ``S``.
    """

    def __init__(self, f: AbHom):
        self.hom = f
        s, t = f.source, f.target
        tors_cols = [
            [d if i == j else 0 for i in range(t.ngens)] for j, d in enumerate(t.orders) if d
        ]
        a = hstack([f.matrix, IntMatrix.from_columns(tors_cols, t.ngens)], t.ngens)
        # the torsion columns are independent, so projecting kernel vectors
        # onto the first block stays injective
        basis = [v[: s.ngens] for v in kernel_basis(a)]
        self.basis = IntMatrix.from_columns(basis, s.ngens)
        self._solver = IntSolver(self.basis)
        rels = []
        for j, d in enumerate(s.orders):
            if d:
                rels.append(self._coords([d if i == j else 0 for i in range(s.ngens)]))
        self.group = group_from_presentation(
            IntMatrix(rels, len(basis)) if rels else IntMatrix.zeros(0, len(basis)), len(basis)
        )
        self.inclusion = AbHom(self.group, s, self.basis @ self.group.from_canonical)

    def _coords(self, vec: Sequence[int]) -> list[int]:
        c = self._solver.solve(vec)
        if c is None:
            raise ValueError("vector does not lie in the kernel")
        return c

    def lift(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates in the kernel of an element of ``S`` it contains."""
        return self.group.canonical_of(self._coords(vec))

    def contains(self, vec: Sequence[int]) -> bool:
        return self._solver.solve(vec) is not None

    def factor(self, g: AbHom) -> AbHom:
        """``g`` viewed as a map into the kernel (``g`` must land there)."""
        cols = [self.lift(c) for c in g.matrix.columns()]
        return AbHom(g.source, self.group, IntMatrix.from_columns(cols, self.group.ngens))


def kernel(f: AbHom) -> tuple[FgAbGroup, AbHom]:
    k = Kernel(f)
    return k.group, k.inclusion


def cokernel(f: AbHom) -> tuple[FgAbGroup, AbHom]:
    t = f.target
    rels = list(_order_relations(t.orders).data) + [list(c) for c in f.matrix.columns()]
    q = group_from_presentation(IntMatrix(rels, t.ngens) if rels else IntMatrix.zeros(0, t.ngens), t.ngens)
    # presentation generators of q are the canonical generators of t
    return q, AbHom(t, q, q.to_canonical)


def subquotient(ker: Kernel, into: AbHom) -> FgAbGroup:
    """``ker / im(into)`` where ``into`` lands inside ``ker``."""
    g = ker.group
    rels = list(g.relations.data)
    for col in into.matrix.columns():
        rels.append(ker._coords(col))
    n = g.npres
    return group_from_presentation(IntMatrix(rels, n) if rels else IntMatrix.zeros(0, n), n)


class ChainComplexError(ValueError):
    pass


class ChainComplex:
    """Chain complex of f.g. abelian groups over a finite degree range.

    ``differentials[n]`` maps degree ``n`` to degree ``n - 1``.  Degrees
    outside the stored range hold the zero group.
    """

    def __init__(self, groups: dict[int, FgAbGroup], differentials: dict[int, AbHom]):
        self.groups = dict(groups)
        self.differentials = dict(differentials)
        for n, d in self.differentials.items():
            if d.source != self.group(n) or d.target != self.group(n - 1):
                raise ChainComplexError(f"differential {n} has wrong endpoints")
        for n in self.differentials:
            if n - 1 in self.differentials:
                dd = self.differentials[n - 1].matrix @ self.differentials[n].matrix
                if not all(self.group(n - 2).is_zero(c) for c in dd.columns()):
                    raise ChainComplexError(f"d o d != 0 at degree {n}")

    @property
    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def group(self, n: int) -> FgAbGroup:
        return self.groups.get(n) or trivial_group()

    def differential(self, n: int) -> AbHom:
        if n in self.differentials:
            return self.differentials[n]
        return AbHom.zero(self.group(n), self.group(n - 1))

    def boundary_squares_vanish(self) -> bool:
        for n in self.differentials:
            dd = hom_compose(self.differential(n - 1), self.differential(n))
            if not dd.is_zero():
                return False
        return True

    def homology(self, n: int) -> FgAbGroup:
        return homology_at(self, n)


def homology_at(c: ChainComplex, n: int) -> FgAbGroup:
    """``ker d_n / im d_{n+1}`` in canonical form."""
    z = Kernel(c.differential(n))
    return subquotient(z, c.differential(n + 1))
