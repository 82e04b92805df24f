"""Deterministic check reports shared by the verification modules.

A report is a list of named records with status pass/fail/deferred plus a
free-form witness string.  Rendering sorts by record name so identical
inputs produce byte-identical output regardless of evaluation order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
DEFERRED = "deferred"


@dataclass
class CheckRecord:
    name: str
    status: str
    witness: str = ""


@dataclass
class Report:
    title: str
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str = "") -> None:
        self.records.append(CheckRecord(name, PASS if ok else FAIL, witness))

    def defer(self, name: str, witness: str = "") -> None:
        self.records.append(CheckRecord(name, DEFERRED, witness))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.status == FAIL]

    @property
    def deferred(self) -> list:
        return [r for r in self.records if r.status == DEFERRED]

    def sorted_records(self) -> list:
        return sorted(self.records, key=lambda r: r.name)

    def render_text(self) -> str:
        lines = [f"== {self.title} =="]
        for r in self.sorted_records():
            line = f"[{r.status.upper():>8}] {r.name}"
            if r.witness:
                line += f"  :: {r.witness}"
            lines.append(line)
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append(f"result: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(lines)

    def render_json_lines(self) -> str:
        out = []
        for r in self.sorted_records():
            out.append(
                json.dumps(
                    {"check": r.name, "status": r.status, "witness": r.witness or None},
                    sort_keys=True,
                )
            )
        return "\n".join(out)
