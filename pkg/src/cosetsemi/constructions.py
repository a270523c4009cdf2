"""Recipes for the catalog groups the DSL cannot express.

Running ``python -m cosetsemi.constructions DIR`` regenerates the packaged
Cayley-table files from these recipes.
"""
from __future__ import annotations

import sys
from pathlib import Path

from .group import FiniteGroup, cyclic, dicyclic, dihedral, direct_product, parse_group_spec, quaternion
from .isomorphism import _extend, automorphisms
from .lattice import enumerate_subgroups


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action, name: str) -> FiniteGroup:
    """N x| H with (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2).

    ``action[h]`` is an automorphism of N given as an element list; it must
    be a homomorphism H -> Aut(N).  (x, y) is encoded as x * |H| + y.
    """
    k = h.order
    nr, hr = n.rows, h.rows
    size = n.order * k
    t = [[0] * size for _ in range(size)]
    for x1 in n.elements:
        for y1 in h.elements:
            act = action[y1]
            row = t[x1 * k + y1]
            for x2 in n.elements:
                base = nr[x1][act[x2]] * k
                for y2 in h.elements:
                    row[x2 * k + y2] = base + hr[y1][y2]
    return FiniteGroup(t, name)


def automorphism_from_images(n: FiniteGroup, gens, imgs) -> list[int]:
    phi = _extend(n, n, list(gens), list(imgs))
    if phi is None or len(phi) != n.order:
        raise ValueError("generator images do not define an automorphism")
    return [phi[x] for x in n.elements]


def _compose_power(aut, e, n_order):
    out = list(range(n_order))
    for _ in range(e):
        out = [aut[x] for x in out]
    return out


def cyclic_extension(n: FiniteGroup, k: int, aut, name: str) -> FiniteGroup:
    """N x| C_k where the generator of C_k acts by ``aut``."""
    action = [_compose_power(aut, e, n.order) for e in range(k)]
    return semidirect_product(n, cyclic(k), action, name)


def index_two_extension(n: FiniteGroup, h: FiniteGroup, kernel_mask: int, aut, name: str) -> FiniteGroup:
    """N x| H where H acts by ``aut`` (an involution) off an index-2 kernel."""
    ident = list(range(n.order))
    action = [ident if (kernel_mask >> y) & 1 else list(aut) for y in h.elements]
    return semidirect_product(n, h, action, name)


def _unit_map(m: int, r: int) -> list[int]:
    return [(r * x) % m for x in range(m)]


def _index_two(h: FiniteGroup, cyclic_kernel: bool) -> int:
    lat = enumerate_subgroups(h)
    for i in lat.maximal:
        if lat.order_of(i) * 2 == h.order and lat.is_cyclic(i) == cyclic_kernel:
            return lat[i].mask
    raise ValueError("no suitable index-2 subgroup")


def _order_three_automorphism(g: FiniteGroup) -> list[int]:
    for aut in automorphisms(g):
        if aut != list(g.elements) and _compose_power(aut, 3, g.order) == list(g.elements):
            return aut
    raise ValueError("no automorphism of order 3")


def _c4xc2() -> FiniteGroup:
    # a = (1, 0) -> 2, b = (0, 1) -> 1
    return direct_product(cyclic(4), cyclic(2))


def recipes() -> dict[str, callable]:
    return {
        "Dic12": lambda: dicyclic(12),
        "M16": lambda: cyclic_extension(cyclic(8), 2, _unit_map(8, 5), "M16"),
        "SD16": lambda: cyclic_extension(cyclic(8), 2, _unit_map(8, 3), "SD16"),
        "C4:C4": lambda: cyclic_extension(cyclic(4), 4, _unit_map(4, 3), "C4:C4"),
        "(C4xC2):C2": lambda: cyclic_extension(
            _c4xc2(), 2, automorphism_from_images(_c4xc2(), [2, 1], [3, 1]), "(C4xC2):C2"
        ),
        "C4oD8": lambda: cyclic_extension(
            _c4xc2(), 2, automorphism_from_images(_c4xc2(), [2, 1], [2, 5]), "C4oD8"
        ),
        "(C3xC3):C2": lambda: cyclic_extension(
            parse_group_spec("C3xC3"), 2, parse_group_spec("C3xC3").inverse, "(C3xC3):C2"
        ),
        "Dic20": lambda: dicyclic(20),
        "F20": lambda: cyclic_extension(cyclic(5), 4, _unit_map(5, 2), "F20"),
        "C7:C3": lambda: cyclic_extension(cyclic(7), 3, _unit_map(7, 2), "C7:C3"),
        "SL(2,3)": lambda: cyclic_extension(quaternion(8), 3, _order_three_automorphism(quaternion(8)), "SL(2,3)"),
        "Dic24": lambda: dicyclic(24),
        "C3:C8": lambda: cyclic_extension(cyclic(3), 8, _unit_map(3, 2), "C3:C8"),
        "C3:D8": lambda: index_two_extension(
            cyclic(3), dihedral(8), _index_two(dihedral(8), cyclic_kernel=False), _unit_map(3, 2), "C3:D8"
        ),
        "Dic12xC2": lambda: direct_product(dicyclic(12), cyclic(2), "Dic12xC2"),
    }


def file_stem(name: str) -> str:
    return name.replace(":", "_").replace("(", "").replace(")", "").replace(",", "_")


def write_group_files(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, make in recipes().items():
        g: FiniteGroup = make()
        path = directory / f"{file_stem(name)}.txt"
        path.write_text(g.to_text())
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_group_files(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data" / "groups"):
        print(p)
