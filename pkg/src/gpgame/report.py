"""Suite reports and their text / JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from .families import DEFAULT_VERTEX_CAP

CSV_HEADER = ["suite", "case", "rule", "expected", "computed", "states", "ms"]
TEXT_CASE_LIMIT = 40


@dataclass
class Config:
    vertex_cap: int = DEFAULT_VERTEX_CAP
    state_cap: int | None = None
    cache_dir: str | None = None
    output_format: str = "text"
    restrict_first_move: bool = False
    seed: int = 1

    def __post_init__(self):
        if self.vertex_cap < 1:
            raise ValueError("vertex cap must be positive")
        if self.state_cap is not None and self.state_cap < 1:
            raise ValueError("state cap must be positive")
        if self.output_format not in ("text", "json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass
class Case:
    case: str
    rule: str
    expected: str
    computed: str
    states: int = 0
    ms: float = 0.0
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or self.expected == self.computed


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "cases": [asdict(c) for c in self.cases]}

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteReport":
        report = cls(data["suite"], int(data["seed"]), [Case(**c) for c in data["cases"]])
        if report.passed != data["passed"]:
            raise ValueError("report pass flag disagrees with its cases")
        return report


def render_json(reports: list[SuiteReport]) -> str:
    return json.dumps({"passed": all(r.passed for r in reports),
                       "suites": [r.to_dict() for r in reports]}, indent=2)


def parse_json(text: str) -> list[SuiteReport]:
    return [SuiteReport.from_dict(d) for d in json.loads(text)["suites"]]


def render_csv(reports: list[SuiteReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        for c in r.cases:
            w.writerow([r.suite, c.case, c.rule, c.expected, c.computed, c.states, f"{c.ms:.1f}"])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    if rows and list(rows[0]) != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    return rows


def render_text(reports: list[SuiteReport]) -> str:
    lines = []
    for r in reports:
        failed = [c for c in r.cases if not c.passed]
        shown = r.cases if len(r.cases) <= TEXT_CASE_LIMIT else failed
        lines.append(f"== {r.suite} (seed {r.seed}): {'PASS' if r.passed else 'FAIL'} "
                     f"[{len(r.cases) - len(failed)}/{len(r.cases)} cases]")
        for c in shown:
            mark = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
            lines.append(f"  {mark:4} {c.case} [{c.rule}] expected={c.expected} "
                         f"computed={c.computed} states={c.states} {c.ms:.1f}ms")
        if shown is failed and len(r.cases) > TEXT_CASE_LIMIT:
            lines.append(f"  ({len(r.cases) - len(failed)} passing cases not listed)")
    lines.append("ALL PASS" if all(r.passed for r in reports) else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"


def render(reports: list[SuiteReport], fmt: str) -> str:
    return {"text": render_text, "json": render_json, "csv": render_csv}[fmt](reports)
