"""Deterministic verification reports.

A report is a flat list of case records plus the echoed command, the adopted
convention manifest, and a runtime block.  Everything outside the runtime
block is a pure function of the inputs, so two runs with different seeds
produce byte-identical bodies.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

SCHEMA = "qbalance-report@1"

# Conventions that the underlying formulas leave open; fixed here once and
# echoed in every report so downstream consumers can audit them.
CONVENTIONS = {
    "exponent_lattice": "half-integers stored as doubled integers",
    "negative_pochhammer": "(x)_-k = 1 / prod_{m=1..k} (1 - x q^-m)",
    "roof_branch": "s(w) = -w^(1/2) / (1 - w)",
    "shift_commutation": "Q^a S^b = q^(-a*b) S^b Q^a per component",
    "operator_balance_twin": "(1 - M) pairs with (1 + y M) against the plus-sign class balance",
    "abelian_operator_variant": "second-operator t-block carries (1 + y P_i S_i / t_a)",
    "bethe_parameters": {"k": "hbar", "s": 1},
    "vertex_normalization": "q^(n d / 2) and (-q^(1/2) hbar^(-1/2))^d absorbed into the degree variable",
}


@dataclass
class CaseRecord:
    case_id: str
    status: str  # "pass" | "fail"
    note: str = ""
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"case": self.case_id, "status": self.status}
        if self.note:
            out["note"] = self.note
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    command: dict
    cases: list[CaseRecord] = field(default_factory=list)
    started: float = field(default_factory=time.monotonic)
    wall_time_s: float = 0.0
    seed: Optional[int] = None
    jobs: int = 1

    def record(self, case_id: str, ok: bool, note: str = "", witness: Optional[dict] = None) -> bool:
        self.cases.append(CaseRecord(case_id, "pass" if ok else "fail", note, witness))
        return ok

    def finish(self) -> "Report":
        self.wall_time_s = time.monotonic() - self.started
        return self

    @property
    def all_pass(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    @property
    def summary(self) -> dict:
        passed = sum(1 for c in self.cases if c.status == "pass")
        return {"total": len(self.cases), "pass": passed, "fail": len(self.cases) - passed}

    def body(self) -> dict:
        """The deterministic part of the report (no timing, no seed)."""
        return {
            "schema": SCHEMA,
            "command": self.command,
            "conventions": CONVENTIONS,
            "cases": [c.to_json() for c in self.cases],
            "summary": self.summary,
        }

    def to_json(self, include_runtime: bool = True) -> dict:
        out = self.body()
        if include_runtime:
            out["runtime"] = {"wall_time_s": round(self.wall_time_s, 6), "seed": self.seed, "jobs": self.jobs}
        return out

    def dumps(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_json(include_runtime), sort_keys=True, indent=2)

    def text_lines(self) -> list[str]:
        lines = [f"{c.status.upper():4s}  {c.case_id}" + (f"  [{c.note}]" if c.note else "") for c in self.cases]
        s = self.summary
        lines.append(f"---- {s['pass']}/{s['total']} passed, {s['fail']} failed")
        return lines
