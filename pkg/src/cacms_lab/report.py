"""Residual bookkeeping and report serialisation (JSON and CSV).

Reports are deterministic: field order is fixed, floats use the
shortest round-trip representation in both formats, and nothing
time- or host-dependent is recorded.  Running the same scene with the
same seed twice must produce byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

__all__ = [
    "ResidualEntry",
    "SuiteResult",
    "RatioEntry",
    "PointReport",
    "ResidualReport",
    "emit",
]


@dataclass(frozen=True)
class ResidualEntry:
    """One named residual; diagnostic entries carry asserted=False."""

    name: str
    value: float
    tol: float | None = None
    asserted: bool = True
    convention: str | None = None

    @property
    def passed(self) -> bool | None:
        if not self.asserted or self.tol is None:
            return None
        return self.value <= self.tol


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    h: float | None
    entries: list[ResidualEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries if e.asserted and e.tol is not None)

    @property
    def max_residual(self) -> float:
        return max((e.value for e in self.entries), default=0.0)

    def value_of(self, name: str) -> float:
        for e in self.entries:
            if e.name == name:
                return e.value
        raise KeyError(name)


@dataclass(frozen=True)
class RatioEntry:
    """Richardson ratio of one residual between two step sizes."""

    suite: str
    name: str
    h_coarse: float
    h_fine: float
    coarse: float
    fine: float
    ratio: float | None  # None when the coarse residual sits at the noise floor


@dataclass
class PointReport:
    index: int
    seed: list[float]
    point: list[float] | None = None
    f_residual: float | None = None
    error: str | None = None
    suites: list[SuiteResult] = field(default_factory=list)
    ratios: list[RatioEntry] = field(default_factory=list)


@dataclass
class ResidualReport:
    scene_hash: str
    rng_seed: int
    conventions: dict[str, str]
    points: list[PointReport]

    def counts(self) -> tuple[int, int, int]:
        asserted = failed = errors = 0
        for pt in self.points:
            if pt.error is not None:
                errors += 1
            for suite in pt.suites:
                for e in suite.entries:
                    if e.passed is None:
                        continue
                    asserted += 1
                    failed += not e.passed
        return asserted, failed, errors

    @property
    def exit_code(self) -> int:
        asserted, failed, errors = self.counts()
        if errors:
            return 2
        return 1 if failed else 0


def _report_dict(report: ResidualReport) -> dict:
    asserted, failed, errors = report.counts()
    return {
        "schema": "cacms-lab/1",
        "scene_hash": report.scene_hash,
        "rng_seed": report.rng_seed,
        "conventions": dict(sorted(report.conventions.items())),
        "points": [
            {
                "index": pt.index,
                "seed": pt.seed,
                "point": pt.point,
                "f_residual": pt.f_residual,
                "error": pt.error,
                "suites": [
                    {
                        "suite": s.suite,
                        "h": s.h,
                        "entries": [
                            {
                                "name": e.name,
                                "value": e.value,
                                "tol": e.tol,
                                "asserted": e.asserted,
                                "passed": e.passed,
                                "convention": e.convention,
                            }
                            for e in s.entries
                        ],
                    }
                    for s in pt.suites
                ],
                "ratios": [
                    {
                        "suite": r.suite,
                        "name": r.name,
                        "h_coarse": r.h_coarse,
                        "h_fine": r.h_fine,
                        "coarse": r.coarse,
                        "fine": r.fine,
                        "ratio": r.ratio,
                    }
                    for r in pt.ratios
                ],
            }
            for pt in report.points
        ],
        "summary": {
            "asserted": asserted,
            "failed": failed,
            "errors": errors,
            "exit_code": report.exit_code,
        },
    }


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _emit_csv(report: ResidualReport) -> str:
    buf = io.StringIO(newline="")
    buf.write("# schema=cacms-lab/1\n")
    buf.write(f"# scene_hash={report.scene_hash}\n")
    buf.write(f"# rng_seed={report.rng_seed}\n")
    for key, val in sorted(report.conventions.items()):
        buf.write(f"# convention_{key}={val}\n")
    asserted, failed, errors = report.counts()
    buf.write(f"# summary_asserted={asserted}\n")
    buf.write(f"# summary_failed={failed}\n")
    buf.write(f"# summary_errors={errors}\n")
    buf.write(f"# exit_code={report.exit_code}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["kind", "point", "suite", "h", "name", "value", "tol", "asserted", "passed", "convention"]
    )
    bools = {True: "true", False: "false", None: ""}
    for pt in report.points:
        if pt.error is not None:
            writer.writerow(["error", pt.index, "", "", pt.error, "", "", "", "", ""])
        for s in pt.suites:
            for e in s.entries:
                writer.writerow(
                    [
                        "residual",
                        pt.index,
                        s.suite,
                        _fmt(s.h),
                        e.name,
                        _fmt(e.value),
                        _fmt(e.tol),
                        bools[e.asserted],
                        bools[e.passed],
                        e.convention or "",
                    ]
                )
        for r in pt.ratios:
            writer.writerow(
                [
                    "ratio",
                    pt.index,
                    r.suite,
                    f"{_fmt(r.h_coarse)}/{_fmt(r.h_fine)}",
                    r.name,
                    _fmt(r.ratio),
                    "",
                    "false",
                    "",
                    "",
                ]
            )
    return buf.getvalue()


def emit(report: ResidualReport, fmt: str = "json") -> bytes:
    """Serialise a report to bytes in the requested format."""
    if fmt == "json":
        return (json.dumps(_report_dict(report), indent=2) + "\n").encode()
    if fmt == "csv":
        return _emit_csv(report).encode()
    raise ValueError(f"unknown report format {fmt!r} (expected 'json' or 'csv')")
