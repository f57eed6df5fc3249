"""Finite groups as Cayley tables, their subgroups and conjugacy classes.

Elements are opaque indices ``0 .. order-1``; ``table[a][b]`` is the index
of ``a * b``.  The concrete constructors below put the identity at index 0.
"""

from __future__ import annotations

from functools import cached_property
from itertools import permutations, product
from typing import Sequence

DEFAULT_SUBGROUP_BOUND = 24


class GroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        n = len(table)
        if n == 0:
            raise GroupError("a group has at least one element")
        tab = tuple(tuple(int(x) for x in row) for row in table)
        for row in tab:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupError("table rows must be permutations of element indices")
        ident = [e for e in range(n) if all(tab[e][x] == x and tab[x][e] == x for x in range(n))]
        if not ident:
            raise GroupError("no identity element")
        e = ident[0]
        inverses = []
        for a in range(n):
            inv = [b for b in range(n) if tab[a][b] == e and tab[b][a] == e]
            if not inv:
                raise GroupError(f"element {a} has no inverse")
            inverses.append(inv[0])
        for a, b, c in product(range(n), repeat=3):
            if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                raise GroupError(f"not associative at ({a}, {b}, {c})")
        self.order = n
        self.table = tab
        self.identity = e
        self.inverses = tuple(inverses)
        self.name = name

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.table[self.table[g][h]][self.inverses[g]]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (self.identity,))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def generated(self, gens: Sequence[int]) -> Subgroup:
        return Subgroup(self, tuple(sorted(_closure(self, {self.identity, *gens}))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def _closure(g: FiniteGroup, elems: set[int]) -> set[int]:
    out = set(elems)
    frontier = list(out)
    while frontier:
        new = []
        for a in frontier:
            for b in list(out):
                for c in (g.table[a][b], g.table[b][a]):
                    if c not in out:
                        out.add(c)
                        new.append(c)
        frontier = new
    return out


class Subgroup:
    """A subgroup, identified by its sorted element tuple."""

    __slots__ = ("parent", "elements", "_set")

    def __init__(self, parent: FiniteGroup, elements: Sequence[int]):
        self.parent = parent
        self.elements = tuple(sorted(elements))
        self._set = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    def __le__(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def conjugate(self, g: int) -> Subgroup:
        """``g H g^-1``."""
        return Subgroup(self.parent, [self.parent.conj(g, h) for h in self.elements])

    def is_closed(self) -> bool:
        p = self.parent
        return (
            p.identity in self
            and all(p.mul(a, b) in self for a in self.elements for b in self.elements)
            and all(p.inv(a) in self for a in self.elements)
        )

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.elements), self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements and self.parent is other.parent

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)})"


# -- constructors ------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order ``2n``.

    Element ``i + n*j`` is ``r^i s^j`` with ``s r s = r^-1``.
    """
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")

    def mul(a, b):
        i, j = a % n, a // n
        k, l = b % n, b // n
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
        return (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)

    return FiniteGroup([[mul(a, b) for b in range(2 * n)] for a in range(2 * n)], f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    g = FiniteGroup(table, f"S{n}")
    g.permutations = perms
    return g


def group_from_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    return FiniteGroup(table)


def make_group(kind: str, n: int | None = None, table=None) -> FiniteGroup:
    """Build a group: ``kind`` is one of cyclic, dihedral, symmetric, table."""
    if kind == "table":
        if table is None:
            raise GroupError("explicit table missing")
        return group_from_table(table)
    builders = {"cyclic": cyclic_group, "dihedral": dihedral_group, "symmetric": symmetric_group}
    if kind not in builders:
        raise GroupError(f"unknown group kind {kind!r}")
    if n is None:
        raise GroupError(f"{kind} group needs a size")
    return builders[kind](n)


# -- subgroups ---------------------------------------------------------------


def all_subgroups(g: FiniteGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[Subgroup]:
    """Every subgroup of ``g``, sorted by ``(size, elements)``.

    Cyclic subgroups seed the search; each found subgroup is then joined
    with every element outside it until nothing new appears.
    """
    if g.order > bound:
        raise GroupError(f"group order {g.order} exceeds subgroup enumeration bound {bound}")
    cache = getattr(g, "_subgroups", None)
    if cache is not None:
        return list(cache)
    found: dict[tuple[int, ...], Subgroup] = {}
    frontier = []
    for a in range(g.order):
        h = g.generated([a])
        if h.elements not in found:
            found[h.elements] = h
            frontier.append(h)
    while frontier:
        new = []
        for h in frontier:
            for a in range(g.order):
                if a in h:
                    continue
                j = g.generated([*h.elements, a])
                if j.elements not in found:
                    found[j.elements] = j
                    new.append(j)
        frontier = new
    out = sorted(found.values(), key=lambda h: h.sort_key)
    g._subgroups = tuple(out)
    return out


def conjugacy_classes_of_subgroups(
    g: FiniteGroup, bound: int = DEFAULT_SUBGROUP_BOUND
) -> list[tuple[Subgroup, list[Subgroup]]]:
    """Partition of all subgroups under conjugation.

    Each class is ``(representative, members)`` with the representative the
    lexicographically least member; classes come in the order of their
    representatives in :func:`all_subgroups`.
    """
    cache = getattr(g, "_subgroup_classes", None)
    if cache is not None:
        return [(r, list(m)) for r, m in cache]
    subs = all_subgroups(g, bound)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for h in subs:
        if h.elements in seen:
            continue
        members = {h.conjugate(x).elements for x in range(g.order)}
        seen |= members
        ms = sorted((Subgroup(g, m) for m in members), key=lambda s: s.sort_key)
        classes.append((ms[0], ms))
    g._subgroup_classes = tuple((r, tuple(m)) for r, m in classes)
    return classes


def class_representative(h: Subgroup) -> Subgroup:
    for rep, members in conjugacy_classes_of_subgroups(h.parent):
        if any(m.elements == h.elements for m in members):
            return rep
    raise GroupError(f"{h} is not a subgroup of {h.parent}")
