"""The graph Gamma(H_r) on minimal subgroups and the counts built on it.

Vertices are the minimal subgroups other than the anchor H_r; H_i and H_j
are adjacent when the element-set product H_i H_j meets H_r trivially.
The set product is used literally even when it is not a subgroup.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .completion import UnitTuple
from .cosets import CosetSemigroup
from .errors import Degenerate, HypothesisFailed
from .lattice import SubgroupLattice, omega_subgroups


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted(sorted(v) for v in out.values())


def set_product_mask(lat: SubgroupLattice, i: int, j: int) -> int:
    """H_i H_j = {hk} as an element mask (not necessarily a subgroup)."""
    rows = lat.group.rows
    out = 0
    for h in lat[i].elements:
        row = rows[h]
        for k in lat[j].elements:
            out |= 1 << row[k]
    return out


@dataclass(frozen=True)
class Permutability:
    by_products: bool  # H_i H_j = H_j H_i for all minimal pairs
    by_omega_p: bool  # every Omega_p(G) trivial or elementary abelian
    by_omega: bool  # Omega(G) abelian

    @property
    def consistent(self) -> bool:
        return self.by_products == self.by_omega_p == self.by_omega


def permutability(lat: SubgroupLattice) -> Permutability:
    mins = lat.minimal
    by_products = all(
        set_product_mask(lat, a, b) == set_product_mask(lat, b, a) for k, a in enumerate(mins) for b in mins[k + 1:]
    )
    per_prime, omega = omega_subgroups(lat)
    by_omega_p = all(
        w.order == 1 or (lat.is_abelian(w.lattice_id) and lat.exponent_of(w.lattice_id) == p)
        for p, w in per_prime.items()
    )
    return Permutability(by_products, by_omega_p, lat.is_abelian(omega.lattice_id))


def minimal_permutable(lat: SubgroupLattice) -> bool:
    return permutability(lat).by_products


@dataclass
class MinGraph:
    anchor: int
    vertices: list[int]
    edges: list[tuple[int, int]]
    components: list[list[int]]

    @property
    def J(self) -> int:
        return len(self.components)

    @property
    def degenerate(self) -> bool:
        return not self.vertices

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in set(self.edges)

    def to_dot(self, lat: SubgroupLattice) -> str:
        def label(i):
            return '"' + " ".join(map(str, lat[i].elements)) + '"'

        lines = [f"graph gamma_{self.anchor} {{"]
        lines += [f"  v{i} [label={label(i)}];" for i in self.vertices]
        lines += [f"  v{a} -- v{b};" for a, b in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_gamma(lat: SubgroupLattice, anchor: int) -> MinGraph:
    """Gamma(H_r) for the minimal subgroup with lattice id ``anchor``."""
    mins = lat.minimal
    if len(mins) < 2:
        raise Degenerate(f"{lat.group.name} has {len(mins)} minimal subgroup(s)")
    if anchor not in mins:
        raise ValueError(f"subgroup #{anchor} is not minimal")
    verts = [i for i in mins if i != anchor]
    r_mask = lat[anchor].mask
    uf = UnionFind(verts)
    edges = []
    for k, a in enumerate(verts):
        for b in verts[k + 1:]:
            if set_product_mask(lat, a, b) & r_mask == 1:
                edges.append((a, b))
                uf.union(a, b)
    return MinGraph(anchor, verts, edges, uf.groups())


def edge_symmetry_violation(lat: SubgroupLattice, anchor: int):
    """First ordered pair where the edge rule is not symmetric, else None."""
    r_mask = lat[anchor].mask
    verts = [i for i in lat.minimal if i != anchor]
    for a in verts:
        for b in verts:
            if a != b and (set_product_mask(lat, a, b) & r_mask == 1) != (set_product_mask(lat, b, a) & r_mask == 1):
                return (a, b)
    return None


def omega_order(lat: SubgroupLattice) -> int:
    return omega_subgroups(lat)[1].order


def predicted_J(lat: SubgroupLattice) -> int | None:
    """|J| as the theorems predict it, or None when their hypotheses fail."""
    if len(lat.minimal) < 2 or not minimal_permutable(lat):
        return None
    g = lat.group
    if not g.is_p_group:
        return 1
    p = g.prime_divisors[0]
    size = omega_order(lat)
    if size == p * p:
        return (p * p - 1) // (p - 1) - 1
    if size > p * p:
        return 1
    return None


def sigma_order_formula(lat: SubgroupLattice, gamma: MinGraph) -> int:
    """|G| |H_r|^(|J|-1)."""
    if len(lat.minimal) < 2 or not minimal_permutable(lat):
        raise HypothesisFailed(f"{lat.group.name}: minimal subgroups must permute and number at least two")
    return lat.group.order * lat.order_of(gamma.anchor) ** (gamma.J - 1)


def anchored_from_components(s: CosetSemigroup, gamma: MinGraph) -> list[UnitTuple]:
    """Tuples with H_r fixed and one rep from H_r per component."""
    lat = s.lattice
    mins = list(lat.minimal)
    comp_of = {v: k for k, comp in enumerate(gamma.components) for v in comp}
    out = []
    for choice in product(lat[gamma.anchor].elements, repeat=gamma.J):
        reps = tuple(0 if h == gamma.anchor else lat.coset_rep(h, choice[comp_of[h]]) for h in mins)
        out.append(UnitTuple(reps))
    return sorted(out)


def mixed_order_violations(lat: SubgroupLattice, gamma: MinGraph) -> list[tuple[int, int]]:
    """Vertices of order != |H_r| that miss an edge to another vertex."""
    r = lat.order_of(gamma.anchor)
    edges = set(gamma.edges)
    out = []
    for h in gamma.vertices:
        if lat.order_of(h) == r:
            continue
        for v in gamma.vertices:
            if v != h and (min(h, v), max(h, v)) not in edges:
                out.append((h, v))
    return out
