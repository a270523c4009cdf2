"""Catalogs of named group specs.

A catalog file has one ``<name> <spec>`` pair per line; ``#`` starts a
comment.  ``file:<path>`` specs are resolved relative to the catalog file.
Entries are built lazily so that one bad entry cannot poison the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .group import DEFAULT_ORDER_CAP, FiniteGroup, build_group

# number of groups of order n up to isomorphism, n = 1..24
GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: str

    def build(self, cap: int | None = DEFAULT_ORDER_CAP) -> FiniteGroup:
        return build_group(self.spec, cap=cap, name=self.name)


@dataclass
class Catalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    source: str = "<memory>"

    def __post_init__(self):
        names = [e.name for e in self.entries]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ParseError(f"duplicate catalog names: {sorted(dupes)}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @classmethod
    def from_pairs(cls, pairs) -> "Catalog":
        return cls([CatalogEntry(n, s) for n, s in pairs])


def parse_catalog(text: str, base: Path) -> Catalog:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"catalog line {lineno}: expected '<name> <spec>'")
        name, spec = parts[0], parts[1].strip()
        if spec.startswith("file:"):
            path = Path(spec[5:])
            if not path.is_absolute():
                path = base / path
            spec = f"file:{path}"
        entries.append(CatalogEntry(name, spec))
    return Catalog(entries)


def load_catalog(path=None) -> Catalog:
    if path is None:
        data = resources.files("cosetsemi") / "data" / "catalog.txt"
        base = Path(str(data)).parent
        cat = parse_catalog(data.read_text(), base)
        cat.source = "default"
        return cat
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read catalog {path}: {exc}") from exc
    cat = parse_catalog(text, path.parent)
    cat.source = str(path)
    return cat


def default_catalog(max_order: int = 24) -> Catalog:
    """The packaged catalog restricted to orders <= ``max_order``.

    Orders are read from the specs without building the groups.
    """
    cat = load_catalog()
    keep = [e for e in cat if spec_order(e.spec) <= max_order]
    out = Catalog(keep)
    out.source = cat.source
    return out


def spec_order(spec: str) -> int:
    if spec.startswith("file:"):
        with open(spec[5:]) as fh:
            return int(fh.readline().split()[0])
    from .group import _ATOM, _atom_order

    size, pos = 1, 0
    while pos < len(spec):
        m = _ATOM.match(spec, pos)
        if not m:
            raise ParseError(f"cannot parse group spec {spec!r}")
        if m.group(1):
            size *= _atom_order("E", int(m.group(1)), int(m.group(2)))
        else:
            size *= _atom_order(m.group(3), int(m.group(4)), None)
        pos = m.end() + 1
    return size
