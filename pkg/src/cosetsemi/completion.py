"""Permissible subsets, the unit group of the completion, tau and eta.

Two independent routes to the units of C(K1(G)):

* ``units_bruteforce`` picks one coset of every minimal subgroup, keeps the
  pairwise compatible choices (compatibility read off the product table),
  closes each downward and tests ``A A^-1 = A^-1 A = E`` by multiplying
  sets.
* ``build_A_G`` searches the tuples anchored at one minimal subgroup H_r
  using the coset-level compatibility formula and L-classes from the
  lattice, translates them by a transversal of H_r and multiplies them with
  the tau rule ``A . B = {H_i a_i b_tau(i)}``.

Units are stored as ideals: bitmasks over the element indices of K1(G).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod

import numpy as np

from .cosets import NONTRIVIAL, Coset, CosetSemigroup, compatible, compatible_by_definition
from .errors import BudgetExceeded, CapExceeded, Degenerate
from .group import FiniteGroup
from .lattice import members

DEFAULT_TUPLE_BUDGET = 10**6
FULL_COMPLETION_CAP = 16


def _check_k1(s: CosetSemigroup):
    if s.variant != NONTRIVIAL:
        raise ValueError("units are computed for K1(G) only")
    if not s.lattice.minimal:
        raise Degenerate("the trivial group has no minimal subgroups")


# --- permissible subsets ----------------------------------------------------


def ideal_of(s: CosetSemigroup, elems) -> int:
    """Order ideal generated by ``elems`` as a bitmask over element indices."""
    out = 0
    im = s.ideal_masks
    for x in elems:
        out |= im[x]
    return out


def as_mask(elems) -> int:
    out = 0
    for x in elems:
        out |= 1 << x
    return out


def is_permissible(s: CosetSemigroup, elems) -> bool:
    """Pairwise compatible and downward closed."""
    elems = sorted(set(elems))
    if ideal_of(s, elems) != as_mask(elems):
        return False
    return all(compatible_by_definition(s, x, y) for i, x in enumerate(elems) for y in elems[i + 1:])


def set_product(s: CosetSemigroup, a, b) -> frozenset[int]:
    a, b = list(a), list(b)
    if not a or not b:
        return frozenset()
    return frozenset(np.unique(s.mul[np.ix_(a, b)]).tolist())


def set_inverse(s: CosetSemigroup, a) -> frozenset[int]:
    return frozenset(int(s.inv[x]) for x in a)


def is_unit(s: CosetSemigroup, a) -> bool:
    """A A^-1 = A^-1 A = E(S) by set multiplication."""
    e = frozenset(s.idempotents)
    ainv = set_inverse(s, a)
    return set_product(s, a, ainv) == e and set_product(s, ainv, a) == e


def meets_classes_once(s: CosetSemigroup, a) -> bool:
    """|A meet L_K| = |A meet R_K| = 1 for every nontrivial K."""
    r = [0] * s.size
    l = [0] * s.size
    for x in a:
        r[int(s.right_id[x])] += 1
        l[int(s.left_id[x])] += 1
    return all(r[e] == 1 and l[e] == 1 for e in s.idempotents)


# --- brute force ------------------------------------------------------------


@dataclass
class BruteUnits:
    """Result of the table-driven unit search."""

    units: list[int]  # ideals, sorted
    tuples: list[tuple[int, ...]]  # generating coset of each minimal subgroup, same order as units
    candidates: int  # compatible tuples examined
    criterion_mismatches: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.units)


def minimal_cosets(s: CosetSemigroup) -> list[list[int]]:
    """Element indices of the cosets of each minimal subgroup, in lattice order."""
    by_sub: dict[int, list[int]] = {}
    for i, c in enumerate(s.elements):
        by_sub.setdefault(c.subgroup_id, []).append(i)
    return [by_sub[h] for h in s.lattice.minimal]


def tuple_budget(s: CosetSemigroup) -> int:
    lat = s.lattice
    return prod(s.group.order // lat.order_of(h) for h in lat.minimal)


def units_bruteforce(s: CosetSemigroup, budget: int = DEFAULT_TUPLE_BUDGET) -> BruteUnits:
    """Every unit of C(K1(G)) from choices of one coset per minimal subgroup.

    Each compatible choice is tested two ways: by set multiplication on its
    ideal and by the class-count criterion.  Disagreements are collected in
    ``criterion_mismatches``.
    """
    _check_k1(s)
    need = tuple_budget(s)
    if need > budget:
        raise BudgetExceeded(f"{s.group.name}: {need} coset choices exceed budget {budget}")
    choices = minimal_cosets(s)
    n = len(choices)
    found: dict[int, tuple[int, ...]] = {}
    mismatches = []
    candidates = 0
    picked: list[int] = []

    def rec(k):
        nonlocal candidates
        if k == n:
            candidates += 1
            ideal = ideal_of(s, picked)
            elems = members(ideal)
            unit = is_unit(s, elems)
            if unit != meets_classes_once(s, elems):
                mismatches.append(tuple(picked))
            if unit:
                assert is_permissible(s, elems)
                found[ideal] = tuple(picked)
            return
        for x in choices[k]:
            if all(compatible_by_definition(s, x, y) for y in picked):
                picked.append(x)
                rec(k + 1)
                picked.pop()

    rec(0)
    units = sorted(found, key=lambda m: members(m))
    return BruteUnits(units, [found[u] for u in units], candidates, mismatches)


# --- the tuple group --------------------------------------------------------


@dataclass(frozen=True, order=True)
class UnitTuple:
    """One coset H_i a_i per minimal subgroup; ``reps[i]`` is the canonical a_i."""

    reps: tuple[int, ...]


@dataclass
class UnitGroup:
    semigroup: CosetSemigroup
    minimal: list[int]
    anchor: int  # position of H_r in ``minimal``
    anchored: list[UnitTuple]
    tuples: list[UnitTuple]  # identity first

    def __len__(self):
        return len(self.tuples)

    @cached_property
    def table(self) -> np.ndarray:
        index = self.index
        n = len(self.tuples)
        out = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(self.tuples):
            for j, b in enumerate(self.tuples):
                out[i, j] = index[self.multiply(a, b)]
        out.setflags(write=False)
        return out

    @cached_property
    def index(self) -> dict[UnitTuple, int]:
        return {t: i for i, t in enumerate(self.tuples)}

    @cached_property
    def generators(self) -> list[int]:
        """A generating set, grown greedily; indices into ``tuples``."""
        index = self.index
        have = {0}
        gens: list[int] = []
        for k in range(len(self.tuples)):
            if k in have:
                continue
            gens.append(k)
            frontier = list(have)
            while frontier:
                nxt = []
                for i in frontier:
                    for gk in gens:
                        j = index[self.multiply(self.tuples[i], self.tuples[gk])]
                        if j not in have:
                            have.add(j)
                            nxt.append(j)
                frontier = nxt
            if len(have) == len(self.tuples):
                break
        return gens

    def right_products(self, j: int) -> list[int]:
        """Column j of the table without building the table."""
        b = self.tuples[j]
        return [self.index[self.multiply(a, b)] for a in self.tuples]

    @cached_property
    def group(self) -> FiniteGroup:
        return FiniteGroup(self.table.tolist(), f"A({self.semigroup.group.name})", validate=False)

    def cosets(self, t: UnitTuple) -> list[Coset]:
        return [Coset(h, a) for h, a in zip(self.minimal, t.reps)]

    def elements_of(self, t: UnitTuple) -> list[int]:
        return [self.semigroup.index[c] for c in self.cosets(t)]

    def ideal(self, t: UnitTuple) -> int:
        return ideal_of(self.semigroup, self.elements_of(t))

    def tau(self, t: UnitTuple) -> tuple[int, ...]:
        return tau(self.semigroup, self.minimal, t)

    def multiply(self, a: UnitTuple, b: UnitTuple) -> UnitTuple:
        return tuple_product(self.semigroup, self.minimal, a, b)


def tau(s: CosetSemigroup, minimal: list[int], t: UnitTuple) -> tuple[int, ...]:
    """Positions i -> j with H_j = H_i^(a_i)."""
    pos = {h: i for i, h in enumerate(minimal)}
    return tuple(pos[s.lattice.conj(h, a)] for h, a in zip(minimal, t.reps))


def tuple_product(s: CosetSemigroup, minimal: list[int], a: UnitTuple, b: UnitTuple) -> UnitTuple:
    """A . B = {H_i a_i b_tau(i)}."""
    lat, g = s.lattice, s.group
    ta = tau(s, minimal, a)
    return UnitTuple(tuple(
        lat.coset_rep(h, g.mul(x, b.reps[ta[i]])) for i, (h, x) in enumerate(zip(minimal, a.reps))
    ))


def translate(s: CosetSemigroup, minimal: list[int], t: UnitTuple, c: int) -> UnitTuple:
    """A c = {H_i a_i c}."""
    lat, g = s.lattice, s.group
    return UnitTuple(tuple(lat.coset_rep(h, g.mul(a, c)) for h, a in zip(minimal, t.reps)))


def anchored_tuples(s: CosetSemigroup, anchor: int = 0, node_budget: int = DEFAULT_TUPLE_BUDGET) -> list[UnitTuple]:
    """All tuples of the unit group with a_r in H_r, H_r = minimal[anchor].

    Backtracking over coset choices with the compatibility formula and the
    rule that no two choices share an L-class.
    """
    _check_k1(s)
    lat = s.lattice
    minimal = list(lat.minimal)
    n = len(minimal)
    options = [
        [Coset(h, 0)] if i == anchor else [Coset(h, a) for a in lat.right_transversal(h)]
        for i, h in enumerate(minimal)
    ]
    order = [anchor] + [i for i in range(n) if i != anchor]
    chosen: dict[int, Coset] = {}
    used_l: set[int] = set()
    out = []
    nodes = 0

    def rec(k):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"{s.group.name}: tuple search exceeded {node_budget} nodes")
        if k == n:
            out.append(UnitTuple(tuple(chosen[i].rep for i in range(n))))
            return
        i = order[k]
        for c in options[i]:
            target = lat.conj(c.subgroup_id, c.rep)
            if target in used_l:
                continue
            if all(compatible(s, c, d) for d in chosen.values()):
                chosen[i] = c
                used_l.add(target)
                rec(k + 1)
                used_l.discard(target)
                del chosen[i]

    rec(0)
    return sorted(out)


def build_A_G(s: CosetSemigroup, anchor: int = 0, node_budget: int = DEFAULT_TUPLE_BUDGET) -> UnitGroup:
    """The tuple group A_G built as A(H_r) translated by a transversal of H_r."""
    lat = s.lattice
    minimal = list(lat.minimal)
    anchored = anchored_tuples(s, anchor, node_budget)
    transversal = lat.right_transversal(minimal[anchor])
    all_tuples = {translate(s, minimal, t, c) for t in anchored for c in transversal}
    if len(all_tuples) != len(anchored) * len(transversal):
        raise AssertionError("translates of anchored tuples collide")
    return UnitGroup(s, minimal, anchor, anchored, sorted(all_tuples))


def ideal_bijection(ag: UnitGroup, brute: BruteUnits) -> list[int] | None:
    """Map tuple k to the brute-force unit with the same ideal, or None."""
    pos = {u: i for i, u in enumerate(brute.units)}
    out = []
    for t in ag.tuples:
        j = pos.get(ag.ideal(t))
        if j is None:
            return None
        out.append(j)
    return out if len(set(out)) == len(brute.units) else None


def brute_unit_table(s: CosetSemigroup, brute: BruteUnits) -> np.ndarray:
    """Cayley table of the brute-force units under set multiplication."""
    pos = {u: i for i, u in enumerate(brute.units)}
    elems = [members(u) for u in brute.units]
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = pos[as_mask(set_product(s, elems[i], elems[j]))]
    return table


def r_side_violations(ag: UnitGroup) -> list[UnitTuple]:
    """Tuples whose ideal misses the one-per-class rule on either side."""
    s = ag.semigroup
    return [t for t in ag.tuples if not meets_classes_once(s, members(ag.ideal(t)))]


def translation_closed(ag: UnitGroup) -> bool:
    s = ag.semigroup
    have = set(ag.tuples)
    return all(translate(s, ag.minimal, t, c) in have for t in ag.tuples for c in s.group.elements)


def tau_homomorphism_violation(ag: UnitGroup):
    """First pair (i, j) with tau(A.B) != tau(A) then tau(B), else None.

    B runs over a generating set; that covers every pair by associativity.
    """
    taus = [ag.tau(t) for t in ag.tuples]
    for j in ag.generators:
        tb = taus[j]
        for i, k in enumerate(ag.right_products(j)):
            if taus[k] != tuple(tb[x] for x in taus[i]):
                return (i, j)
    return None


def tau_respects_orbits(ag: UnitGroup) -> bool:
    lat = ag.semigroup.lattice
    for t in ag.tuples:
        for i, j in enumerate(ag.tau(t)):
            if ag.minimal[j] not in lat.conjugacy_class(ag.minimal[i]):
                return False
    return True


# --- eta --------------------------------------------------------------------


def eta(s: CosetSemigroup, a: int) -> frozenset[int]:
    """{K a : K nontrivial} as element indices."""
    lat = s.lattice
    return frozenset(s.index[Coset(h, lat.coset_rep(h, a))] for h in s.subgroup_ids)


def eta_kernel_by_fibre(s: CosetSemigroup) -> list[int]:
    e = frozenset(s.idempotents)
    return [a for a in s.group.elements if eta(s, a) == e]


def eta_kernel_by_intersection(s: CosetSemigroup) -> list[int]:
    lat = s.lattice
    return list(lat[lat.meet_all(s.subgroup_ids)].elements)


def eta_homomorphism_violation(s: CosetSemigroup):
    g = s.group
    images = [sorted(eta(s, a)) for a in g.elements]
    for a in g.elements:
        for b in g.elements:
            if set_product(s, images[a], images[b]) != frozenset(images[g.mul(a, b)]):
                return (a, b)
    return None


def eta_as_tuple(ag: UnitGroup, a: int) -> UnitTuple:
    lat = ag.semigroup.lattice
    return UnitTuple(tuple(lat.coset_rep(h, a) for h in ag.minimal))


# --- the whole completion for tiny semigroups -------------------------------


@dataclass
class Completion:
    semigroup: CosetSemigroup
    ideals: list[int]  # every permissible subset as a bitmask

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.ideals)}

    def product(self, a: int, b: int) -> int:
        return as_mask(set_product(self.semigroup, members(a), members(b)))

    def inverse(self, a: int) -> int:
        return as_mask(set_inverse(self.semigroup, members(a)))

    @property
    def identity(self) -> int:
        return as_mask(self.semigroup.idempotents)

    def units(self) -> list[int]:
        e = self.identity
        return [a for a in self.ideals if self.product(a, self.inverse(a)) == e == self.product(self.inverse(a), a)]

    def iota(self, x: int) -> int:
        return self.semigroup.ideal_masks[x]


def full_completion(s: CosetSemigroup, cap: int = FULL_COMPLETION_CAP) -> Completion:
    """All permissible subsets, via ideals of compatible antichains."""
    if s.size > cap:
        raise CapExceeded(f"{s.name} has {s.size} elements, full completion cap is {cap}")
    n = s.size
    im = s.ideal_masks
    comparable = [[(im[i] >> j) & 1 or (im[j] >> i) & 1 for j in range(n)] for i in range(n)]
    compat = [[compatible_by_definition(s, i, j) for j in range(n)] for i in range(n)]
    ideals = set()
    chain: list[int] = []

    def rec(start):
        ideals.add(ideal_of(s, chain))
        for x in range(start, n):
            if all(compat[x][y] and not comparable[x][y] for y in chain):
                chain.append(x)
                rec(x + 1)
                chain.pop()

    rec(0)
    return Completion(s, sorted(ideals, key=lambda m: (m.bit_count(), members(m))))


def completion_closed(c: Completion):
    """First pair whose product is not permissible, else None."""
    have = set(c.ideals)
    for a in c.ideals:
        for b in c.ideals:
            if c.product(a, b) not in have:
                return (a, b)
    return None


def iota_is_embedding(c: Completion) -> bool:
    s = c.semigroup
    images = [c.iota(x) for x in range(s.size)]
    if len(set(images)) != s.size:
        return False
    return all(
        c.product(images[x], images[y]) == images[int(s.mul[x, y])] for x in range(s.size) for y in range(s.size)
    )
