"""Finite groups given by Cayley tables, plus the constructor DSL.

Every group has elements ``0..n-1`` with ``0`` the identity.  The table is
stored both as a read-only numpy array (for vectorised axiom checks) and as
nested lists (for fast scalar lookups in the combinatorial code).
"""
from __future__ import annotations

import itertools
import math
import re
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomError, CapExceeded, ParseError

DEFAULT_ORDER_CAP = 48


class FiniteGroup:
    """A finite group on ``range(order)`` with identity ``0``."""

    def __init__(self, table, name: str = "G", *, validate: bool = True):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise AxiomError(f"{name}: Cayley table must be a non-empty square array")
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0])
        self.name = name
        self.identity = 0
        self.rows: list[list[int]] = arr.tolist()
        if validate:
            check_group_axioms(self)
        inv = [0] * self.order
        for a, row in enumerate(self.rows):
            inv[a] = row.index(0)
        self.inverse: tuple[int, ...] = tuple(inv)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, a: int) -> int:
        """x^a = a^-1 x a."""
        return self.rows[self.rows[self.inverse[a]][x]][a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out, base = 0, a
        while k:
            if k & 1:
                out = self.rows[out][base]
            base = self.rows[base][base]
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        return self.orders[a]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.rows[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @cached_property
    def order_census(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, count) pairs; an isomorphism invariant."""
        counts: dict[int, int] = {}
        for k in self.orders:
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(sorted(_factor(self.order)))

    @property
    def is_p_group(self) -> bool:
        return len(self.prime_divisors) == 1

    def relabeled(self, perm: Sequence[int], name: str | None = None) -> "FiniteGroup":
        """Isomorphic copy where old element ``x`` becomes ``perm[x]``."""
        if perm[0] != 0:
            raise ValueError("relabeling must fix the identity")
        n = self.order
        back = [0] * n
        for old, new in enumerate(perm):
            back[new] = old
        t = [[perm[self.rows[back[i]][back[j]]] for j in range(n)] for i in range(n)]
        return FiniteGroup(t, name or self.name, validate=False)

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(map(str, row)) for row in self.rows]
        return "\n".join(lines) + "\n"


def element_order(g: FiniteGroup, x: int) -> int:
    if not 0 <= x < g.order:
        raise ValueError(f"element {x} not in {g.name}")
    return g.orders[x]


def exponent(g: FiniteGroup) -> int:
    return g.exponent


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def check_group_axioms(g: FiniteGroup) -> None:
    """Exhaustive closure, identity-0, inverse and associativity checks."""
    t, n = g.table, g.order
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = map(int, bad[0])
        raise AxiomError(f"{g.name}: entry ({i},{j}) = {int(t[i, j])} out of range", (i, j))
    ar = np.arange(n)
    if not (t[0] == ar).all() or not (t[:, 0] == ar).all():
        x = int(np.argmax((t[0] != ar) | (t[:, 0] != ar)))
        raise AxiomError(f"{g.name}: 0 is not a two-sided identity (fails at {x})", (x,))
    for a in range(n):
        right = np.flatnonzero(t[a] == 0)
        if len(right) != 1 or t[right[0], a] != 0:
            raise AxiomError(f"{g.name}: element {a} has no two-sided inverse", (a,))
    lhs = t[t, :]  # lhs[a, b, c] = (ab)c
    rhs = t[:, t]  # rhs[a, b, c] = a(bc)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = map(int, bad[0])
        raise AxiomError(f"{g.name}: not associative at ({a},{b},{c})", (a, b, c))


# --------------------------------------------------------------------------
# constructions

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"C{n}: order must be positive")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}", validate=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``n``: r^i s^j encoded as i + m*j, m = n/2."""
    if n < 4 or n % 2:
        raise ParseError(f"D{n}: dihedral order must be even and >= 4")
    m = n // 2

    def mul(x, y):
        i, j = x % m, x // m
        k, l = y % m, y // m
        return ((i + (k if j == 0 else -k)) % m) + m * ((j + l) % 2)

    return FiniteGroup([[mul(x, y) for y in range(n)] for x in range(n)], f"D{n}", validate=False)


def dicyclic(n: int, name: str | None = None) -> FiniteGroup:
    """Dicyclic group of order ``n = 4m``: <a, x | a^2m, x^2 = a^m, a^x = a^-1>.

    a^i x^j is encoded as i + 2m*j.
    """
    if n < 8 or n % 4:
        raise ParseError(f"dicyclic order must be a multiple of 4 and >= 8, got {n}")
    m2 = n // 2
    m = m2 // 2

    def mul(x, y):
        i, j = x % m2, x // m2
        k, l = y % m2, y // m2
        if j == 0:
            return (i + k) % m2 + m2 * l
        if l == 0:
            return (i - k) % m2 + m2
        return (i - k + m) % m2

    return FiniteGroup([[mul(x, y) for y in range(n)] for x in range(n)], name or f"Dic{n}", validate=False)


def quaternion(n: int) -> FiniteGroup:
    if n not in (8, 16, 32):
        raise ParseError(f"Q{n}: generalized quaternion order must be 8, 16 or 32")
    return dicyclic(n, f"Q{n}")


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    # p*q means "apply p, then q"
    t = [[index[tuple(q[p[k]] for k in range(len(p)))] for q in perms] for p in perms]
    return FiniteGroup(t, name, validate=False)


def _parity(p) -> int:
    seen, sign = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign ^= (length - 1) & 1
    return sign


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"S{n}: degree must be positive")
    if math.factorial(n) > 720:
        raise ParseError(f"S{n}: too large")
    return _perm_group(list(itertools.permutations(range(n))), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"A{n}: degree must be positive")
    if math.factorial(n) > 1440:
        raise ParseError(f"A{n}: too large")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _perm_group(perms, f"A{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """(x, y) is encoded as x * |h| + y, so the identity stays at 0."""
    m = h.order
    t = g.table[:, None, :, None] * m + h.table[None, :, None, :]
    t = t.reshape(g.order * m, g.order * m)
    return FiniteGroup(t, name or f"{g.name}x{h.name}", validate=False)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if k < 1 or len(_factor(p)) != 1 or _factor(p).get(p) != 1:
        raise ParseError(f"E({p},{k}): need prime p and k >= 1")
    g = cyclic(p)
    for _ in range(k - 1):
        g = direct_product(g, cyclic(p))
    g.name = f"E({p},{k})"
    return g


# --------------------------------------------------------------------------
# DSL and file formats

_ATOM = re.compile(r"\s*(?:E\(\s*(\d+)\s*,\s*(\d+)\s*\)|([CDQSA])(\d+))\s*")


def parse_group_spec(text: str, cap: int | None = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Parse ``atom ("x" atom)*`` where atom is Cn, Dn, Qn, Sn, An or E(p,k)."""
    pos, factors = 0, []
    text = text.strip()
    if not text:
        raise ParseError("empty group spec")
    while True:
        m = _ATOM.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse group spec {text!r} at position {pos}")
        if m.group(1):
            factors.append(("E", int(m.group(1)), int(m.group(2))))
        else:
            factors.append((m.group(3), int(m.group(4)), None))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise ParseError(f"expected 'x' at position {pos} in {text!r}")
        pos += 1
    size = 1
    for kind, a, b in factors:
        size *= _atom_order(kind, a, b)
    if cap is not None and size > cap:
        raise CapExceeded(f"{text}: order {size} exceeds cap {cap}")
    builders = {"C": cyclic, "D": dihedral, "Q": quaternion, "S": symmetric, "A": alternating}
    groups = [elementary_abelian(a, b) if kind == "E" else builders[kind](a) for kind, a, b in factors]
    g = reduce(direct_product, groups)
    g.name = text.replace(" ", "")
    return g


def _atom_order(kind, a, b) -> int:
    if kind == "E":
        return a ** b
    if kind == "S":
        return math.factorial(a)
    if kind == "A":
        return max(1, math.factorial(a) // 2)
    return a


def read_cayley_file(path, name: str | None = None) -> FiniteGroup:
    path = Path(path)
    try:
        tokens = path.read_text().split("\n")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = [ln.split() for ln in tokens if ln.strip()]
    try:
        n = int(lines[0][0])
        if len(lines[0]) != 1 or n < 1 or len(lines) != n + 1:
            raise ValueError
        rows = [[int(x) for x in ln] for ln in lines[1:]]
        if any(len(r) != n for r in rows):
            raise ValueError
    except (ValueError, IndexError):
        raise ParseError(f"{path}: malformed Cayley table file") from None
    return FiniteGroup(rows, name or path.stem)


def write_cayley_file(g: FiniteGroup, path) -> None:
    Path(path).write_text(g.to_text())


def build_group(spec, cap: int | None = DEFAULT_ORDER_CAP, name: str | None = None) -> FiniteGroup:
    """Build a validated group from a DSL expression or a Cayley-table path."""
    if isinstance(spec, FiniteGroup):
        return spec
    text = str(spec)
    if text.startswith("file:"):
        g = read_cayley_file(text[5:], name)
    elif Path(text).suffix == ".txt" or Path(text).is_file():
        g = read_cayley_file(text, name)
    else:
        g = parse_group_spec(text, cap)
        check_group_axioms(g)
        if name:
            g.name = name
        return g
    if cap is not None and g.order > cap:
        raise CapExceeded(f"{g.name}: order {g.order} exceeds cap {cap}")
    return g


def from_elements(elements: Iterable, mul, name: str = "G") -> FiniteGroup:
    """Build a table from concrete elements; the identity must come first."""
    elems = list(elements)
    index = {e: i for i, e in enumerate(elems)}
    return FiniteGroup([[index[mul(a, b)] for b in elems] for a in elems], name)
