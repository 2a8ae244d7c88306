"""Report rows shared by all verification suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

STATUSES = ("pass", "fail", "skipped")


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [_jsonable(x) for x in items]
    return str(v)


@dataclass
class Row:
    check: str
    params: dict
    status: str
    witness: str | None = None
    dims: dict | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        self.params = _jsonable(self.params)

    @property
    def ok(self):
        return self.status != "fail"

    def sort_key(self):
        return (self.check, json.dumps(self.params, sort_keys=True))

    def to_json(self):
        d = {"check": self.check, "params": self.params, "status": self.status,
             "witness": None if self.witness is None else str(self.witness)}
        if self.dims is not None:
            d["dims"] = _jsonable(self.dims)
        return d


def row(check, params, ok, witness=None, dims=None) -> Row:
    return Row(check, params, "pass" if ok else "fail", witness, dims)


def skipped(check, params, reason) -> Row:
    return Row(check, params, "skipped", reason)


@dataclass
class Report:
    suite: str
    rows: list = field(default_factory=list)
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def add(self, r):
        if isinstance(r, Row):
            self.rows.append(r)
        else:
            self.rows.extend(r)
        return self

    def summary(self):
        out = {s: 0 for s in STATUSES}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def sorted_rows(self):
        return sorted(self.rows, key=Row.sort_key)

    def to_json(self):
        return {"suite": self.suite, "timestamp": self.timestamp,
                "rows": [r.to_json() for r in self.sorted_rows()],
                "summary": self.summary()}

    def exit_code(self):
        return 0 if self.ok else 1
