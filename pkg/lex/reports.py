from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

LOGGER = logging.getLogger(__name__)


@dataclass(slots=True)
class Check:
    name: str
    passed: bool
    details: str = ""


@dataclass(slots=True)
class Report:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, str] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str, passed: bool, details: str = "") -> Check:
        entry = Check(name=name, passed=bool(passed), details=details)
        self.checks.append(entry)
        if not entry.passed:
            LOGGER.warning("Check failed: %s %s", name, details)
        return entry

    def table(self, name: str, csv_text: str) -> None:
        self.tables[name] = csv_text

    def merge(self, other: "Report", prefix: str) -> None:
        for entry in other.checks:
            self.checks.append(Check(name=f"{prefix}.{entry.name}", passed=entry.passed, details=entry.details))
        for name, text in other.tables.items():
            self.tables[f"{prefix}.{name}"] = text
        if other.data:
            self.data[prefix] = other.data

    def as_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "command": self.command,
            "params": self.params,
            "ok": self.ok,
            "checks": [{"name": c.name, "pass": c.passed, "details": c.details} for c in self.checks],
            "tables": self.tables,
        }
        if self.data:
            payload["data"] = self.data
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def to_csv(self) -> str:
        if not self.tables:
            return ""
        return "\n".join(f"# {name}\n{text}" for name, text in sorted(self.tables.items()))

    def write(self, path: Path, fmt: str = "json") -> None:
        """Write the report to `path`; tables also land beside it as CSV files."""
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() if fmt == "json" else self.to_csv(), encoding="utf-8")
        for name, text in self.tables.items():
            safe = name.replace("/", "_").replace(" ", "_")
            (path.parent / f"{path.stem}.{safe}.csv").write_text(text, encoding="utf-8")
        LOGGER.info("Report written to %s", path)
