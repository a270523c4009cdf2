"""Isomorphism testing for finite inverse semigroups given by tables.

The search only uses semigroup-intrinsic data (the table and inverses), so
it works for any pair of ``CosetSemigroup`` objects regardless of the
groups behind them.

1. Colour every element by invariants: for idempotents the R-class size,
   the maximal subgroup (H-class) order census, up/down counts in the
   natural order and the D-class size, refined along the cover relation of
   the idempotent poset; other elements get the colours of x x^-1, x^-1 x
   and their order within the semigroup.  Colours are assigned jointly so
   the two histograms are comparable.
2. Mismatched histograms mean "not isomorphic".
3. Otherwise backtrack over images of idempotents and then of the maximal
   elements, propagating every product whose factors are both mapped.
"""
from __future__ import annotations

import time
from collections import Counter

import numpy as np

from .errors import CapExceeded, SearchTimeout

DEFAULT_SEMIGROUP_CAP = 400
DEFAULT_TIMEOUT = 10.0


class _Table:
    """Plain-list view of an inverse semigroup for the inner loops."""

    def __init__(self, s):
        self.mul = np.asarray(s.mul)
        self.rows = self.mul.tolist()
        self.inv = [int(x) for x in s.inv]
        self.size = len(self.rows)
        self.idem = [i for i in range(self.size) if self.rows[i][i] == i]
        self.right = [self.rows[i][self.inv[i]] for i in range(self.size)]
        self.left = [self.rows[self.inv[i]][i] for i in range(self.size)]
        iset = set(self.idem)
        # e <= f for idempotents iff e f = e
        self.up = {e: [f for f in self.idem if f != e and self.rows[e][f] == e] for e in self.idem}
        self.down = {f: [e for e in self.idem if e != f and self.rows[e][f] == e] for f in self.idem}
        self.covers_up = {
            e: [f for f in ups if not any(g in iset and f in self.up[g] for g in ups if g != f)]
            for e, ups in self.up.items()
        }
        self.covers_down = {f: [e for e in self.idem if f in self.covers_up[e]] for f in self.idem}
        # i <= j iff i = (i i^-1) j; maximal elements generate an inverse semigroup
        # together with the idempotents
        self.maximal = [
            i for i in range(self.size)
            if not any(j != i and self.rows[self.right[i]][j] == i for j in range(self.size))
        ]

    def power_order(self, x: int) -> tuple[int, int]:
        """(index, period) of x: the first repeat in x, x^2, x^3, ..."""
        seen = {}
        y, k = x, 1
        while y not in seen:
            seen[y] = k
            y = self.rows[y][x]
            k += 1
        return seen[y], k - seen[y]


def _initial_idempotent_key(t: _Table, e: int):
    r_class = [x for x in range(t.size) if t.right[x] == e]
    h_class = [x for x in r_class if t.left[x] == e]
    census = tuple(sorted(Counter(t.power_order(x)[1] for x in h_class).items()))
    d_size = len({t.left[x] for x in r_class})
    central = all(t.rows[e][x] == t.rows[x][e] for x in range(t.size))
    return (len(r_class), len(h_class), census, len(t.up[e]), len(t.down[e]), d_size, central)


def joint_colours(s1, s2) -> tuple[list[int], list[int]]:
    """Comparable invariant colourings of the elements of two semigroups."""
    t1, t2 = (s if isinstance(s, _Table) else _Table(s) for s in (s1, s2))
    tables = (t1, t2)
    colour = [{e: _initial_idempotent_key(t, e) for e in t.idem} for t in tables]

    def canon(keys_per_table):
        palette = {k: n for n, k in enumerate(sorted({k for ks in keys_per_table for k in ks.values()}, key=repr))}
        return [{e: palette[k] for e, k in ks.items()} for ks in keys_per_table]

    colour = canon(colour)
    n_classes = len({c for col in colour for c in col.values()})
    while True:
        refined = []
        for t, col in zip(tables, colour):
            refined.append({
                e: (
                    col[e],
                    tuple(sorted(col[f] for f in t.covers_up[e])),
                    tuple(sorted(col[f] for f in t.covers_down[e])),
                )
                for e in t.idem
            })
        colour = canon(refined)
        n = len({c for col in colour for c in col.values()})
        if n == n_classes:
            break
        n_classes = n

    keys = []
    for t, col in zip(tables, colour):
        ks = {}
        for x in range(t.size):
            if x in col:
                ks[x] = ("e", col[x])
            else:
                ks[x] = ("x", col[t.right[x]], col[t.left[x]], t.power_order(x))
        keys.append(ks)
    final = canon(keys)
    return [final[0][x] for x in range(t1.size)], [final[1][x] for x in range(t2.size)]


def fingerprint(s) -> dict:
    """Cheap invariants of a single semigroup (for reports)."""
    t = _Table(s)
    r_sizes = Counter(t.right)
    h_orders = sorted(sum(1 for x in range(t.size) if t.right[x] == e and t.left[x] == e) for e in t.idem)
    return {
        "elements": t.size,
        "idempotents": len(t.idem),
        "r_class_sizes": sorted(r_sizes[e] for e in t.idem),
        "h_class_orders": h_orders,
    }


def semigroup_isomorphic(s1, s2, *, cap: int | None = DEFAULT_SEMIGROUP_CAP, timeout: float | None = DEFAULT_TIMEOUT):
    """A witness isomorphism as a list ``phi[i]`` of element indices, or None.

    Raises ``CapExceeded`` when a semigroup is larger than ``cap`` and
    ``SearchTimeout`` when the search runs past ``timeout`` seconds.
    """
    if s1.size != s2.size:
        return None
    if cap is not None and max(s1.size, s2.size) > cap:
        raise CapExceeded(f"semigroups of size {s1.size} exceed cap {cap}")
    t1, t2 = _Table(s1), _Table(s2)
    if len(t1.idem) != len(t2.idem):
        return None
    c1, c2 = joint_colours(t1, t2)
    if Counter(c1) != Counter(c2):
        return None
    phi = _Search(t1, t2, c1, c2, timeout).run()
    if phi is not None:
        assert is_semigroup_isomorphism(s1, s2, phi)
    return phi


def is_semigroup_isomorphism(s1, s2, phi) -> bool:
    f = np.asarray(phi)
    if sorted(phi) != list(range(s2.size)):
        return False
    return bool((np.asarray(s2.mul)[f[:, None], f[None, :]] == f[np.asarray(s1.mul)]).all())


class _Search:
    def __init__(self, t1: _Table, t2: _Table, c1, c2, timeout):
        self.t1, self.t2 = t1, t2
        self.c1, self.c2 = c1, c2
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.nodes = 0
        n = t1.size
        self.f = [-1] * n
        self.g = [-1] * n
        self.assigned: list[int] = []
        self.by_colour: dict[int, list[int]] = {}
        for y in range(n):
            self.by_colour.setdefault(c2[y], []).append(y)
        idem = set(t1.idem)
        self.branch_order = list(t1.idem) + [x for x in t1.maximal if x not in idem]

    def _assign(self, x, y) -> bool:
        """Map x -> y and close under products; False on contradiction."""
        f, g = self.f, self.g
        r1, r2 = self.t1.rows, self.t2.rows
        c1, c2 = self.c1, self.c2
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            fx = f[x]
            if fx >= 0:
                if fx != y:
                    return False
                continue
            if g[y] >= 0 or c1[x] != c2[y]:
                return False
            f[x] = y
            g[y] = x
            self.assigned.append(x)
            queue.append((self.t1.inv[x], self.t2.inv[y]))
            rx, ry = r1[x], r2[y]
            for z in self.assigned:
                fz = f[z]
                for p, q in ((rx[z], ry[fz]), (r1[z][x], r2[fz][y])):
                    fp = f[p]
                    if fp < 0:
                        queue.append((p, q))
                    elif fp != q:
                        return False
        return True

    def _undo(self, mark):
        f, g = self.f, self.g
        while len(self.assigned) > mark:
            x = self.assigned.pop()
            g[f[x]] = -1
            f[x] = -1

    def _candidates(self, x):
        t1, t2, f = self.t1, self.t2, self.f
        cands = [y for y in self.by_colour[self.c1[x]] if self.g[y] < 0]
        e, e2 = t1.right[x], t1.left[x]
        if e != x:
            if f[e] >= 0:
                cands = [y for y in cands if t2.right[y] == f[e]]
            if f[e2] >= 0:
                cands = [y for y in cands if t2.left[y] == f[e2]]
        return cands

    def run(self):
        return self._step()

    def _step(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout(f"semigroup isomorphism search exceeded its budget after {self.nodes} nodes")
        best, best_c = None, None
        for x in self.branch_order:
            if self.f[x] >= 0:
                continue
            cands = self._candidates(x)
            if best is None or len(cands) < len(best_c):
                best, best_c = x, cands
                if len(cands) <= 1:
                    break
        if best is None:
            if len(self.assigned) == self.t1.size:
                return list(self.f)
            return None
        mark = len(self.assigned)
        for y in best_c:
            if self._assign(best, y):
                out = self._step()
                if out is not None:
                    return out
            self._undo(mark)
        return None
