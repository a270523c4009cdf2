"""Verdict records and their JSON / text renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = 1

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
INCONCLUSIVE = "inconclusive"
VERDICTS = (PASS, FAIL, SKIPPED, INCONCLUSIVE)

# reason tags for skipped / inconclusive verdicts
DEGENERATE = "degenerate"
HYPOTHESIS_FAILED = "hypothesis-failed"
BUDGET = "budget"
TIMEOUT = "timeout"
BUILD_ERROR = "build-error"


@dataclass
class Report:
    suite: str
    groups: tuple[str, ...]
    verdict: str
    reason: str | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        self.groups = tuple(self.groups)

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"groups": list(self.groups), "verdict": self.verdict, "evidence": _plain(self.evidence)}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        return out

    def line(self) -> str:
        tag = self.verdict if self.reason is None else f"{self.verdict}({self.reason})"
        ev = " ".join(f"{k}={_short(v)}" for k, v in sorted(self.evidence.items()))
        out = f"{self.suite:15} {' ~ '.join(self.groups):28} {tag:28} {ev}"
        if self.witness is not None:
            out += f" witness={_short(self.witness)}"
        return out.rstrip()


def passed(suite, groups, **evidence) -> Report:
    return Report(suite, groups, PASS, evidence=evidence)


def failed(suite, groups, witness, **evidence) -> Report:
    return Report(suite, groups, FAIL, evidence=evidence, witness=witness)


def skipped(suite, groups, reason, **evidence) -> Report:
    return Report(suite, groups, SKIPPED, reason=reason, evidence=evidence)


def inconclusive(suite, groups, **evidence) -> Report:
    return Report(suite, groups, INCONCLUSIVE, reason=TIMEOUT, evidence=evidence)


def _plain(x):
    """Recursively convert to JSON-friendly builtins with stable ordering."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_plain(v) for v in x), key=repr)
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return repr(x)


def _short(v) -> str:
    s = json.dumps(_plain(v), separators=(",", ":"))
    return s if len(s) <= 60 else s[:57] + "..."


def exit_code(reports) -> int:
    """0 all pass/skip, 1 any fail, 3 any inconclusive without fails."""
    verdicts = {r.verdict for r in reports}
    if FAIL in verdicts:
        return 1
    if INCONCLUSIVE in verdicts:
        return 3
    return 0


def summary(reports) -> dict[str, int]:
    out = {v: 0 for v in VERDICTS}
    for r in reports:
        out[r.verdict] += 1
    return out


def sort_key(r: Report):
    return (r.suite, r.groups)


def to_json(suite: str, reports, **meta) -> str:
    doc = {
        "schema": SCHEMA,
        "suite": suite,
        "summary": summary(reports),
        "entries": [dict(r.to_dict(), suite=r.suite) for r in sorted(reports, key=sort_key)],
    }
    doc.update({k: _plain(v) for k, v in meta.items()})
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_text(suite: str, reports) -> str:
    lines = [r.line() for r in sorted(reports, key=sort_key)]
    counts = summary(reports)
    lines.append(f"{suite}: " + ", ".join(f"{counts[v]} {v}" for v in VERDICTS))
    return "\n".join(lines) + "\n"
