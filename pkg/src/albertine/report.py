"""Pass/fail records shared by the verification routines and the command line."""

from __future__ import annotations

import json
import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__


@dataclass(frozen=True)
class Check:
    name: str
    ref: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = None

    def __post_init__(self):
        if self.passed and self.counterexample is not None:
            raise ValueError(f"check {self.name!r} passed but carries a counterexample")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {"name": self.name, "ref": self.ref, "status": self.status, "detail": self.detail,
                "counterexample": self.counterexample}


@dataclass
class Report:
    command: str = ""
    checks: list[Check] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter)
    elapsed_ms: float | None = None

    def add(self, name: str, ref: str, passed: bool, detail: str = "", counterexample: dict | None = None) -> Check:
        c = Check(name, ref, bool(passed), detail, counterexample)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def finish(self) -> "Report":
        self.elapsed_ms = round((time.perf_counter() - self.started) * 1000, 3)
        return self

    def as_dict(self) -> dict:
        if self.elapsed_ms is None:
            self.finish()
        return {
            "version": __version__,
            "command": self.command,
            "checks": [c.as_dict() for c in self.checks],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"[{c.status.upper()}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
            if c.counterexample is not None:
                out.append(f"    counterexample: {json.dumps(c.counterexample)}")
        return out


def _plain(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else str(c)
    if hasattr(c, "v"):
        return c.v
    try:
        return int(c)
    except (TypeError, ValueError):
        return str(c)


def find_counterexample(G, diff, tries: int = 64, seed: int = 0, **extra) -> dict | None:
    """Values of the indeterminates of ``G`` at which some entry of ``diff`` is nonzero.

    Ordinary indeterminates get small integers; invertible ones get +-1 (or any
    nonzero value over a field).  Values are grouped by name prefix, so a
    generic point x0..x26 is reported as the coordinate list ``x``.  Returns
    None when ``diff`` vanishes or no specialization was found.
    """
    from .exact import PolyRing, evaluate

    diff = list(diff) if isinstance(diff, (list, tuple)) else [diff]
    live = [(k, p) for k, p in enumerate(diff) if p != 0]
    if not live:
        return None
    if not isinstance(G, PolyRing):
        return {"component": live[0][0], **extra}
    base = G.base
    rng = random.Random(seed)
    for t in range(tries):
        bound = 1 + t // 8
        vals = {}
        for name, inv in zip(G.names, G.laurent):
            if inv:
                v = rng.choice((1, -1)) if not base.is_field else rng.choice([k for k in range(-bound, bound + 1) if k])
                if base.is_field and base.is_zero(base(v)):
                    v = 1
            else:
                v = rng.randint(-bound, bound)
            vals[name] = base(v)
        for k, p in live:
            if evaluate(p, vals, base) != 0:
                groups: dict = {}
                for name in G.names:
                    m = re.fullmatch(r"([A-Za-z_]+?)(\d+)", name)
                    key = m.group(1) if m else name
                    groups.setdefault(key, []).append(_plain(vals[name]))
                return {"values": groups, "component": k, **extra}
    return None


def record_identity(rep, name, ref, G, lhs, rhs, **where):
    """Add a check that ``lhs == rhs``; a failure carries specialized inputs where the sides differ."""
    if isinstance(lhs, list):
        diff = [a - b for a, b in zip(lhs, rhs)]
    else:
        diff = [lhs - rhs]
    ok = all(c == 0 for c in diff)
    rep.add(name, ref, ok, counterexample=None if ok else find_counterexample(G, diff, **where))
    return ok
