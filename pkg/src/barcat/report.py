"""Structured pass/fail records for verification suites."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class Check:
    cid: str
    law: str
    status: str  # "pass" | "fail" | "skipped"
    witness: dict | None = None
    elapsed_ms: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        d = {"id": self.cid, "law": self.law, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if timings:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class VerificationReport:
    example: str = ""
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def record(self, cid: str, law: str, passed: bool,
               witness: dict | None = None, elapsed_ms: float = 0.0) -> bool:
        status = "pass" if passed else "fail"
        self.checks.append(Check(cid, law, status,
                                 witness if not passed else None, elapsed_ms))
        return passed

    def skip(self, cid: str, law: str, reason: str = ""):
        self.checks.append(Check(cid, law, "skipped",
                                 {"reason": reason} if reason else None))

    def timed(self, cid: str, law: str, fn) -> bool:
        t0 = time.perf_counter()
        res = fn()
        dt = (time.perf_counter() - t0) * 1000.0
        if isinstance(res, tuple):
            ok, witness = res
        else:
            ok, witness = res, None
        return self.record(cid, law, ok, witness, dt)

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            cid = f"{prefix}{c.cid}" if prefix else c.cid
            self.checks.append(Check(cid, c.law, c.status, c.witness,
                                     c.elapsed_ms))

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "schema": 1,
            "example": self.example,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "counts": self.counts(),
            "checks": [c.as_dict(timings) for c in self.checks],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.as_dict(timings), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"example: {self.example}  params: {self.params}"]
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skipped": "skip"}[c.status]
            line = f"  [{mark}] {c.cid:40s} {c.law}"
            if c.elapsed_ms >= 1.0:
                line += f"  ({c.elapsed_ms:.0f} ms)"
            if c.status == "fail" and c.witness:
                line += f"\n         witness: {c.witness}"
            lines.append(line)
        n = self.counts()
        lines.append(f"  {n['pass']} passed, {n['fail']} failed, "
                     f"{n['skipped']} skipped")
        return "\n".join(lines)


def scalar_witness(key, got, want) -> dict:
    return {"index": list(key), "got": repr(got), "want": repr(want)}


def map_witness(a, b) -> dict | None:
    """First differing entry of two maps/tensors (deterministic order)."""
    ea = a.entries if hasattr(a, "entries") else a.ent
    eb = b.entries if hasattr(b, "entries") else b.ent
    keys = sorted(set(ea) | set(eb), key=repr)
    from .cyclo import rat
    for k in keys:
        va = ea.get(k, rat(0))
        vb = eb.get(k, rat(0))
        if va != vb:
            return scalar_witness(k, va, vb)
    return None
