"""The coset semigroups K(G) and K1(G).

Elements are right cosets ``Ha`` written as ``Coset(subgroup_id, rep)`` with
``rep`` the smallest element of the coset.  The product

    Ha * Kb = <H, K^(a^-1)> ab

is tabulated once at build time; every query afterwards is a lookup.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import CapExceeded
from .group import DEFAULT_ORDER_CAP, FiniteGroup
from .lattice import SubgroupLattice, enumerate_subgroups

FULL = "K"
NONTRIVIAL = "K1"


@dataclass(frozen=True, order=True)
class Coset:
    subgroup_id: int
    rep: int

    def __repr__(self):
        return f"H{self.subgroup_id}*{self.rep}"


class GreensClasses(NamedTuple):
    """Class ids per element index: R by H, L by H^a, D by conjugacy class of H."""

    r: tuple[int, ...]
    l: tuple[int, ...]
    d: tuple[int, ...]
    h: tuple[tuple[int, int], ...]


class CosetSemigroup:
    """K(G) (``variant="K"``) or K1(G) (``variant="K1"``) with its product table."""

    def __init__(self, group: FiniteGroup, lattice: SubgroupLattice, variant: str = NONTRIVIAL):
        if variant not in (FULL, NONTRIVIAL):
            raise ValueError(f"unknown variant {variant!r}")
        if variant == NONTRIVIAL and group.order == 1:
            raise ValueError("K1 of the trivial group is empty")
        self.group = group
        self.lattice = lattice
        self.variant = variant
        first = 0 if variant == FULL else 1
        self.subgroup_ids = list(range(first, len(lattice)))
        self.elements: list[Coset] = [
            Coset(h, r) for h in self.subgroup_ids for r in lattice.right_transversal(h)
        ]
        self.index = {c: i for i, c in enumerate(self.elements)}
        self.size = len(self.elements)
        self.sub = np.array([c.subgroup_id for c in self.elements], dtype=np.int64)
        self.rep = np.array([c.rep for c in self.elements], dtype=np.int64)
        self.mul = self._product_table()
        self.inv = np.array([self.index[self._inverse(c)] for c in self.elements], dtype=np.int64)
        self.idempotents = [self.index[Coset(h, 0)] for h in self.subgroup_ids]
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"CosetSemigroup({self.variant}({self.group.name}), size={self.size})"

    @property
    def name(self) -> str:
        return f"{self.variant}({self.group.name})"

    @property
    def degenerate(self) -> bool:
        """K1 of a prime-order group: a single element."""
        return self.variant == NONTRIVIAL and self.size == 1

    # --- the product --------------------------------------------------------

    def product_coset(self, x: Coset, y: Coset) -> Coset:
        lat, g = self.lattice, self.group
        k_conj = lat.conj(y.subgroup_id, g.inv(x.rep))
        j = lat.join(x.subgroup_id, k_conj)
        return Coset(j, lat.coset_rep(j, g.mul(x.rep, y.rep)))

    def _inverse(self, x: Coset) -> Coset:
        lat, g = self.lattice, self.group
        h = lat.conj(x.subgroup_id, x.rep)
        return Coset(h, lat.coset_rep(h, g.inv(x.rep)))

    def _product_table(self) -> np.ndarray:
        lat, g = self.lattice, self.group
        index = self.index
        out = np.empty((self.size, self.size), dtype=np.int64)
        conj, join, rows, inv = lat.conj, lat.join, g.rows, g.inverse
        coset_tables = {h: lat.coset_reps_table(h) for h in self.subgroup_ids}
        for i, x in enumerate(self.elements):
            h, a = x.subgroup_id, x.rep
            ainv = inv[a]
            row = rows[a]
            cache: dict[int, int] = {}  # K -> <H, K^(a^-1)>
            out_row = out[i]
            for k, y in enumerate(self.elements):
                j = cache.get(y.subgroup_id)
                if j is None:
                    j = cache[y.subgroup_id] = join(h, conj(y.subgroup_id, ainv))
                out_row[k] = index[Coset(j, coset_tables[j][row[y.rep]])]
        return out

    # --- element-level helpers ---------------------------------------------

    def coset(self, i: int) -> Coset:
        return self.elements[i]

    def idx(self, x: Coset) -> int:
        return self.index[x]

    def times(self, i: int, j: int) -> int:
        return int(self.mul[i, j])

    def is_idempotent(self, i: int) -> bool:
        return self.mul[i, i] == i

    def idempotent_of(self, h: int) -> int:
        return self.index[Coset(h, 0)]

    @cached_property
    def masks(self) -> list[int]:
        """Element set of each coset as a bitmask over G."""
        return [self.lattice.coset_mask(c.subgroup_id, c.rep) for c in self.elements]

    @cached_property
    def ideal_masks(self) -> list[int]:
        """[x] as a bitmask over element indices: every coset containing x."""
        masks = self.masks
        out = []
        for m in masks:
            bits = 0
            for j, mj in enumerate(masks):
                if mj & m == m:
                    bits |= 1 << j
            out.append(bits)
        return out

    @cached_property
    def left_id(self) -> np.ndarray:
        """x^-1 x for each x (the idempotent generating the L-class)."""
        return self.mul[self.inv, np.arange(self.size)]

    @cached_property
    def right_id(self) -> np.ndarray:
        """x x^-1 for each x (the idempotent generating the R-class)."""
        return self.mul[np.arange(self.size), self.inv]

    def to_dict(self) -> dict:
        """Element list plus product table, for debugging dumps."""
        return {
            "semigroup": self.name,
            "elements": [[c.subgroup_id, c.rep] for c in self.elements],
            "subgroups": [list(self.lattice[h].elements) for h in self.subgroup_ids],
            "table": self.mul.tolist(),
        }


def build_coset_semigroup(
    g: FiniteGroup,
    variant: str = NONTRIVIAL,
    lattice: SubgroupLattice | None = None,
    cap: int | None = DEFAULT_ORDER_CAP,
) -> CosetSemigroup:
    if cap is not None and g.order > cap:
        raise CapExceeded(f"{g.name}: order {g.order} exceeds cap {cap}")
    if lattice is None:
        lattice = enumerate_subgroups(g, cap)
    return CosetSemigroup(g, lattice, variant)


def product(s: CosetSemigroup, x: Coset, y: Coset) -> Coset:
    return s.product_coset(x, y)


def inverse(s: CosetSemigroup, x: Coset) -> Coset:
    """(Ha)^-1 = H^a a^-1."""
    return s._inverse(x)


def greens_relations(s: CosetSemigroup) -> GreensClasses:
    lat = s.lattice
    r = tuple(int(h) for h in s.sub)
    l = tuple(lat.conj(c.subgroup_id, c.rep) for c in s.elements)
    d = tuple(lat.conjugacy_class(c.subgroup_id)[0] for c in s.elements)
    return GreensClasses(r, l, d, tuple(zip(r, l)))


def natural_leq(s: CosetSemigroup, x: Coset, y: Coset) -> bool:
    """x <= y in the natural order, i.e. x contains y as a set."""
    mx, my = s.masks[s.index[x]], s.masks[s.index[y]]
    return mx & my == my


def natural_leq_algebraic(s: CosetSemigroup, i: int, j: int) -> bool:
    """i = e * j for some idempotent e (equivalently e = i i^-1)."""
    return int(s.mul[s.right_id[i], j]) == i


def order_filter(s: CosetSemigroup, x: Coset) -> frozenset[Coset]:
    """{Kb : 1 < K <= H, a b^-1 in H} for x = Ha."""
    lat, g = s.lattice, s.group
    h, a = x.subgroup_id, x.rep
    out = set()
    for c in s.elements:
        k = c.subgroup_id
        if k == lat.trivial or not lat.is_subgroup_of(k, h):
            continue
        if lat.contains(h, g.mul(a, g.inv(c.rep))):
            out.add(c)
    return frozenset(out)


def order_filter_by_order(s: CosetSemigroup, x: Coset) -> frozenset[Coset]:
    i = s.index[x]
    return frozenset(c for j, c in enumerate(s.elements) if natural_leq_algebraic(s, i, j))


def compatible(s: CosetSemigroup, x: Coset, y: Coset) -> bool:
    """Ha ~ Kb  iff  a b^-1 lies in <H, K^(b a^-1)> and in <H, K>."""
    lat, g = s.lattice, s.group
    h, a, k, b = x.subgroup_id, x.rep, y.subgroup_id, y.rep
    ab = g.mul(a, g.inv(b))
    ba = g.inv(ab)
    first = lat.join(h, lat.conj(k, ba))
    second = lat.join(h, k)
    return lat.contains(first, ab) and lat.contains(second, ab)


def compatible_by_definition(s: CosetSemigroup, i: int, j: int) -> bool:
    """Both x y^-1 and x^-1 y are idempotent."""
    p = s.mul[i, s.inv[j]]
    q = s.mul[s.inv[i], j]
    return s.mul[p, p] == p and s.mul[q, q] == q


def k1_abelian(s: CosetSemigroup) -> bool:
    return bool((s.mul == s.mul.T).all())


def maximal_elements(s: CosetSemigroup) -> list[int]:
    """Indices maximal under the natural order (smallest cosets)."""
    masks = s.masks
    out = []
    for i, m in enumerate(masks):
        if not any(j != i and m & masks[j] == masks[j] for j in range(s.size)):
            out.append(i)
    return out
