"""Group isomorphism by backtracking over images of a generating sequence."""
from __future__ import annotations

from typing import Iterator

import networkx as nx

from .errors import CapExceeded
from .group import DEFAULT_ORDER_CAP, FiniteGroup
from .lattice import closure


def generating_sequence(g: FiniteGroup) -> list[int]:
    """Greedy: repeatedly add the element that enlarges the span the most."""
    gens: list[int] = []
    span = 1
    full = (1 << g.order) - 1
    while span != full:
        best, best_key = None, None
        for x in g.elements:
            if (span >> x) & 1:
                continue
            m = closure(g, gens + [x])
            key = (m.bit_count(), g.orders[x], -x)
            if best_key is None or key > best_key:
                best, best_key = (x, m), key
        gens.append(best[0])
        span = best[1]
    return gens


def _extend(g1: FiniteGroup, g2: FiniteGroup, gens, imgs):
    """Map <gens> into g2 via the Cayley graph; None on any inconsistency."""
    phi = {0: 0}
    used = {0}
    queue = [0]
    r1, r2 = g1.rows, g2.rows
    for u in queue:
        pu = phi[u]
        for x, y in zip(gens, imgs):
            v = r1[u][x]
            w = r2[pu][y]
            got = phi.get(v)
            if got is None:
                if w in used:
                    return None
                phi[v] = w
                used.add(w)
                queue.append(v)
            elif got != w:
                return None
    return phi


def isomorphisms(g1: FiniteGroup, g2: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> Iterator[list[int]]:
    """Yield every isomorphism g1 -> g2 as a list ``phi[x]``."""
    for g in (g1, g2):
        if cap is not None and g.order > cap:
            raise CapExceeded(f"{g.name}: order {g.order} exceeds cap {cap}")
    if g1.order != g2.order or g1.order_census != g2.order_census:
        return
    gens = generating_sequence(g1)
    by_order: dict[int, list[int]] = {}
    for y in g2.elements:
        by_order.setdefault(g2.orders[y], []).append(y)

    def search(k, imgs):
        if k == len(gens):
            phi = _extend(g1, g2, gens, imgs)
            if phi is not None and len(phi) == g1.order:
                yield [phi[x] for x in g1.elements]
            return
        for y in by_order.get(g1.orders[gens[k]], ()):
            if y in imgs:
                continue
            cand = imgs + [y]
            if _extend(g1, g2, gens[: k + 1], cand) is not None:
                yield from search(k + 1, cand)

    yield from search(0, [])


def group_isomorphic(g1: FiniteGroup, g2: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> list[int] | None:
    """A witness isomorphism g1 -> g2, or None if the groups are not isomorphic."""
    return next(isomorphisms(g1, g2, cap), None)


def automorphisms(g: FiniteGroup) -> list[list[int]]:
    return list(isomorphisms(g, g, cap=None))


def is_isomorphism(g1: FiniteGroup, g2: FiniteGroup, phi) -> bool:
    if sorted(phi) != list(g2.elements):
        return False
    r1, r2 = g1.rows, g2.rows
    return all(phi[r1[a][b]] == r2[phi[a]][phi[b]] for a in g1.elements for b in g1.elements)


def hasse_digraph(n: int, leq) -> nx.DiGraph:
    """Cover relation of a finite poset on ``range(n)``; ``leq(i, j)`` is i <= j."""
    below = {j: {i for i in range(n) if i != j and leq(i, j)} for j in range(n)}
    d = nx.DiGraph()
    d.add_nodes_from(range(n))
    for j in range(n):
        for i in below[j]:
            if not any(i in below[k] for k in below[j]):
                d.add_edge(i, j)
    return d


def posets_isomorphic(n1: int, leq1, n2: int, leq2) -> bool:
    if n1 != n2:
        return False
    return nx.is_isomorphic(hasse_digraph(n1, leq1), hasse_digraph(n2, leq2))
