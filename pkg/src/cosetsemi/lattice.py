"""Subgroup lattices of finite groups.

Subgroups are stored as integer bitmasks over the group's elements.  The
lattice lists them sorted by (size, member tuple) so ids are deterministic;
joins are resolved lazily by closure and memoised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce

from .errors import CapExceeded, NotNormal
from .group import DEFAULT_ORDER_CAP, FiniteGroup, _factor


def mask_of(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def closure(g: FiniteGroup, gens) -> int:
    """Mask of the subgroup generated by ``gens``."""
    gens = [x for x in dict.fromkeys(gens) if x != 0]
    seen = 1
    frontier = [0]
    rows = g.rows
    for u in frontier:
        row = rows[u]
        for x in gens:
            v = row[x]
            if not (seen >> v) & 1:
                seen |= 1 << v
                frontier.append(v)
    return seen


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: FiniteGroup
    mask: int
    lattice_id: int
    gens: tuple[int, ...]

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return members(self.mask)

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.group), self.mask))

    def __repr__(self):
        return f"Subgroup(#{self.lattice_id}, order={self.order}, {list(self.elements)})"


class SubgroupLattice:
    """All subgroups of ``group`` with lazily memoised join/meet/conjugation."""

    def __init__(self, group: FiniteGroup, found: dict[int, tuple[int, ...]]):
        self.group = group
        order = sorted(found, key=lambda m: (bin(m).count("1"), members(m)))
        self.all: list[Subgroup] = [Subgroup(group, m, i, found[m]) for i, m in enumerate(order)]
        self.by_mask: dict[int, int] = {s.mask: s.lattice_id for s in self.all}
        self.trivial = 0
        self.whole = len(self.all) - 1
        self._join: dict[tuple[int, int], int] = {}
        self._conj: list[list[int] | None] = [None] * len(self.all)

    def __len__(self):
        return len(self.all)

    def __getitem__(self, i: int) -> Subgroup:
        return self.all[i]

    def id_of(self, mask: int) -> int:
        return self.by_mask[mask]

    def order_of(self, i: int) -> int:
        return self.all[i].order

    def contains(self, i: int, x: int) -> bool:
        return bool((self.all[i].mask >> x) & 1)

    def is_subgroup_of(self, i: int, j: int) -> bool:
        a, b = self.all[i].mask, self.all[j].mask
        return a & b == a

    @cached_property
    def minimal(self) -> list[int]:
        """Ids of the minimal nontrivial subgroups (Omega_G)."""
        out = []
        for s in self.all[1:]:
            if not any(self.is_subgroup_of(t.lattice_id, s.lattice_id) for t in self.all[1:s.lattice_id]):
                out.append(s.lattice_id)
        return out

    @cached_property
    def maximal(self) -> list[int]:
        top = self.whole
        out = []
        for s in self.all[:top]:
            i = s.lattice_id
            if not any(self.is_subgroup_of(i, j) for j in range(i + 1, top)):
                out.append(i)
        return out

    def join(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        hit = self._join.get(key)
        if hit is not None:
            return hit
        a, b = self.all[i], self.all[j]
        if a.mask & b.mask == a.mask:
            out = j
        else:
            out = self.by_mask[closure(self.group, a.gens + b.gens)]
        self._join[key] = out
        return out

    def meet(self, i: int, j: int) -> int:
        return self.by_mask[self.all[i].mask & self.all[j].mask]

    def join_all(self, ids) -> int:
        return reduce(self.join, ids, self.trivial)

    def meet_all(self, ids) -> int:
        return reduce(self.meet, ids, self.whole)

    def conj(self, i: int, a: int) -> int:
        """Lattice id of H^a = a^-1 H a."""
        row = self._conj[i]
        if row is None:
            row = self._conj[i] = [-1] * self.group.order
        hit = row[a]
        if hit < 0:
            g = self.group
            hit = self.by_mask[mask_of(g.conj(h, a) for h in self.all[i].elements)]
            row[a] = hit
        return hit

    def normalizer(self, i: int) -> int:
        return self.by_mask[mask_of(a for a in self.group.elements if self.conj(i, a) == i)]

    def is_normal(self, i: int) -> bool:
        return all(self.conj(i, a) == i for a in self.group.elements)

    def conjugacy_class(self, i: int) -> tuple[int, ...]:
        return tuple(sorted({self.conj(i, a) for a in self.group.elements}))

    def is_conjugate_to_subgroup_of(self, i: int, j: int) -> bool:
        """True iff some conjugate of subgroup ``i`` lies inside subgroup ``j``."""
        return any(self.is_subgroup_of(k, j) for k in self.conjugacy_class(i))

    def below(self, i: int) -> list[int]:
        """Ids of the subgroups of subgroup ``i`` (including itself and 1)."""
        return [s.lattice_id for s in self.all[: i + 1] if self.is_subgroup_of(s.lattice_id, i)]

    def is_abelian(self, i: int) -> bool:
        rows = self.group.rows
        el = self.all[i].elements
        return all(rows[x][y] == rows[y][x] for x in el for y in el)

    def is_cyclic(self, i: int) -> bool:
        s = self.all[i]
        return any(self.group.orders[x] == s.order for x in s.elements)

    def exponent_of(self, i: int) -> int:
        return reduce(math.lcm, (self.group.orders[x] for x in self.all[i].elements), 1)

    def coset_rep(self, i: int, a: int) -> int:
        """Smallest element of the right coset H a."""
        return self.coset_reps_table(i)[a]

    def coset_reps_table(self, i: int) -> list[int]:
        tables = self.__dict__.setdefault("_coset_tables", {})
        t = tables.get(i)
        if t is None:
            g = self.group
            el = self.all[i].elements
            t = [-1] * g.order
            for a in g.elements:
                if t[a] < 0:
                    coset = [g.rows[h][a] for h in el]
                    rep = min(coset)
                    for x in coset:
                        t[x] = rep
            tables[i] = t
        return t

    def coset_mask(self, i: int, a: int) -> int:
        g = self.group
        return mask_of(g.rows[h][a] for h in self.all[i].elements)

    def right_transversal(self, i: int) -> list[int]:
        return sorted(set(self.coset_reps_table(i)))


def enumerate_subgroups(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> SubgroupLattice:
    """Seed with the cyclic subgroups, then close under join-with-a-cyclic."""
    if cap is not None and g.order > cap:
        raise CapExceeded(f"{g.name}: order {g.order} exceeds lattice cap {cap}")
    found: dict[int, tuple[int, ...]] = {1: ()}
    frontier = []
    for x in g.elements:
        m = closure(g, [x])
        if m not in found:
            found[m] = (x,) if x else ()
            frontier.append(m)
    cyclic_masks = list(found)
    for m in frontier:
        gens = found[m]
        for c in cyclic_masks:
            if c & m == c:
                continue
            new = closure(g, gens + found[c])
            if new not in found:
                found[new] = gens + found[c]
                frontier.append(new)
    lat = SubgroupLattice(g, found)
    for s in lat.all:
        assert g.order % s.order == 0, "Lagrange violated"
    return lat


def enumerate_subgroups_bruteforce(g: FiniteGroup) -> set[int]:
    """Every subset closed under product and inverse (only for tiny groups)."""
    if g.order > 12:
        raise CapExceeded("brute-force subgroup scan is capped at order 12")
    out = set()
    rows, inv = g.rows, g.inverse
    rest = list(range(1, g.order))
    for bits in range(1 << len(rest)):
        subset = [0] + [rest[k] for k in range(len(rest)) if (bits >> k) & 1]
        m = mask_of(subset)
        if all((m >> inv[x]) & 1 for x in subset) and all(
            (m >> rows[x][y]) & 1 for x in subset for y in subset
        ):
            out.add(m)
    return out


def generated_subgroup(lat: SubgroupLattice, gens) -> Subgroup:
    return lat.all[lat.by_mask[closure(lat.group, list(gens))]]


def conjugate_subgroup(lat: SubgroupLattice, h: Subgroup, a: int) -> Subgroup:
    return lat.all[lat.conj(h.lattice_id, a)]


def center(lat: SubgroupLattice) -> Subgroup:
    g = lat.group
    rows = g.rows
    z = [x for x in g.elements if all(rows[x][y] == rows[y][x] for y in g.elements)]
    return lat.all[lat.by_mask[mask_of(z)]]


def maximal_abelian_subgroups(lat: SubgroupLattice) -> list[int]:
    ab = [s.lattice_id for s in lat.all if lat.is_abelian(s.lattice_id)]
    return [i for i in ab if not any(j != i and lat.is_subgroup_of(i, j) for j in ab)]


def center_via_maximal_abelian(lat: SubgroupLattice) -> Subgroup:
    return lat.all[lat.meet_all(maximal_abelian_subgroups(lat))]


def frattini(lat: SubgroupLattice) -> Subgroup:
    return lat.all[lat.meet_all(lat.maximal)]


def omega_subgroups(lat: SubgroupLattice) -> tuple[dict[int, Subgroup], Subgroup]:
    """(Omega_p(G) for each prime p dividing |G|, Omega(G))."""
    per_prime = {}
    for p in sorted(_factor(lat.group.order)):
        ids = [i for i in lat.minimal if lat.order_of(i) == p]
        per_prime[p] = lat.all[lat.join_all(ids)]
    whole = lat.join_all(s.lattice_id for s in per_prime.values())
    return per_prime, lat.all[whole]


def subgroup_as_group(lat: SubgroupLattice, i: int, name: str | None = None) -> FiniteGroup:
    el = lat.all[i].elements
    index = {x: k for k, x in enumerate(el)}
    rows = lat.group.rows
    t = [[index[rows[x][y]] for y in el] for x in el]
    return FiniteGroup(t, name or f"{lat.group.name}[{i}]", validate=False)


def quotient(lat: SubgroupLattice, i: int, name: str | None = None) -> FiniteGroup:
    """G/N for a normal subgroup N; coset N (the identity) gets label 0."""
    if not lat.is_normal(i):
        raise NotNormal(f"subgroup #{i} of {lat.group.name} is not normal")
    reps = lat.coset_reps_table(i)
    labels = {r: k for k, r in enumerate(sorted(set(reps)))}
    g = lat.group
    order = sorted(labels)
    t = [[labels[reps[g.rows[a][b]]] for b in order] for a in order]
    return FiniteGroup(t, name or f"{g.name}/N{i}", validate=False)


def prime_exponents(n: int) -> dict[int, int]:
    return _factor(n)


def is_metacyclic(lat: SubgroupLattice) -> bool:
    """Some cyclic normal N has a cyclic quotient G/N."""
    g = lat.group
    for s in lat.all:
        i = s.lattice_id
        if not (lat.is_cyclic(i) and lat.is_normal(i)):
            continue
        if quotient(lat, i).exponent == g.order // s.order:
            return True
    return False
