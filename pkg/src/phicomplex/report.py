"""Verification reports: per-residual verdicts, provenance and exit codes."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .scalar.zero import INDETERMINATE, NONZERO, Verdict

SCHEMA = "1"
TOOL = "phicomplex"

EXIT_OK = 0
EXIT_NONZERO = 1
EXIT_CONFIG = 2
EXIT_INDETERMINATE = 3


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


@dataclass
class Entry:
    check: str
    residual: str
    verdict: Verdict
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "residual": self.residual,
            "verdict": self.verdict.to_json(),
            "elapsed": round(self.elapsed, 6),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Entry":
        return cls(d["check"], d["residual"], Verdict.from_json(d["verdict"]), d.get("elapsed", 0.0))


@dataclass
class Report:
    command: str
    input_digest: str
    entries: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    version: str = __version__

    def add(self, check: str, verdicts: dict, elapsed: float = 0.0):
        for name in sorted(verdicts):
            if any(e.check == check and e.residual == name for e in self.entries):
                raise ValueError(f"duplicate residual {check}.{name}")
            self.entries.append(Entry(check, name, verdicts[name], elapsed))

    def sorted_entries(self) -> list:
        return sorted(self.entries, key=lambda e: (e.check, e.residual))

    def verdicts(self) -> list:
        return [e.verdict for e in self.entries]

    @property
    def exit_code(self) -> int:
        return exit_code(self.verdicts())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": TOOL,
            "version": self.version,
            "command": self.command,
            "input_digest": self.input_digest,
            "checks": [e.to_json() for e in self.sorted_entries()],
            "values": self.values,
            "exit_code": self.exit_code,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            d["command"],
            d["input_digest"],
            [Entry.from_json(e) for e in d["checks"]],
            d.get("values", {}),
            d["version"],
        )

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))

    def render_text(self) -> str:
        lines = [f"{TOOL} {self.version}  {self.command}  {self.input_digest}"]
        width = max((len(e.check) + len(e.residual) + 1 for e in self.entries), default=0)
        for e in self.sorted_entries():
            label = f"{e.check}.{e.residual}".ljust(width)
            v = e.verdict
            text = v.kind
            if v.kind == "NumericZero":
                text += f" (tol {v.tolerance:g})"
            elif v.kind == NONZERO:
                point = ", ".join(f"{k}={val:.6g}" for k, val in sorted(v.witness.items()))
                text += f" at ({point}) value {v.value:.6g}"
            lines.append(f"  {label}  {text}")
        for key in sorted(self.values):
            lines.append(f"  {key} = {json.dumps(self.values[key], sort_keys=True)}")
        lines.append(f"exit {self.exit_code}")
        return "\n".join(lines) + "\n"


def exit_code(verdicts) -> int:
    kinds = {v.kind for v in verdicts}
    if NONZERO in kinds:
        return EXIT_NONZERO
    if INDETERMINATE in kinds:
        return EXIT_INDETERMINATE
    return EXIT_OK
