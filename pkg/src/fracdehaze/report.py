"""CSV/JSON serialization of metric records and benchmark reports.

CSV numbers use six significant digits with ``.`` as decimal separator;
missing values are empty cells. Header rows are fixed.
"""

from __future__ import annotations

import csv
import io
import json

from .iqa import MetricReport
from .pipeline import BenchReport

METRIC_COLUMNS = ("entropy", "gcf", "colourfulness", "avg_gradient", "uiqm", "uciqe")
BENCH_COLUMNS = ("image", "status", "config", "runtime_ms", *METRIC_COLUMNS, "cef", "error")
SUMMARY_ID = "MEAN"


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".6g")


def _metric_values(m: MetricReport | None, columns):
    if m is None:
        return {c: None for c in columns}
    d = m.as_dict()
    return {c: d[c] for c in columns}


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in header])
    return buf.getvalue()


def metrics_record(image_id: str, m: MetricReport, with_cef: bool) -> dict:
    rec = {"image": image_id, **_metric_values(m, METRIC_COLUMNS)}
    if with_cef:
        rec["cef"] = m.cef
    return rec


def metrics_to_csv(records: list[dict], with_cef: bool) -> str:
    header = ("image", *METRIC_COLUMNS) + (("cef",) if with_cef else ())
    return _write_csv(header, records)


def metrics_to_json(records: list[dict]) -> str:
    return json.dumps(records if len(records) != 1 else records[0], indent=2) + "\n"


def bench_records(report: BenchReport, timing: bool = True) -> list[dict]:
    rows = []
    for r in report.rows:
        rows.append({
            "image": r.image,
            "status": "ok" if r.ok else "error",
            "config": r.config,
            "runtime_ms": r.runtime_ms if timing else None,
            **_metric_values(r.metrics, METRIC_COLUMNS + ("cef",)),
            "error": r.error,
        })
    ok = len(report.rows) - report.failures
    rows.append({
        "image": SUMMARY_ID,
        "status": f"{ok}/{len(report.rows)} ok",
        "config": report.config.summary(),
        "runtime_ms": report.mean_runtime_ms if timing else None,
    })
    return rows


def bench_to_csv(report: BenchReport, timing: bool = True) -> str:
    return _write_csv(BENCH_COLUMNS, bench_records(report, timing))


def bench_to_json(report: BenchReport, timing: bool = True) -> str:
    *rows, summary = bench_records(report, timing)
    doc = {
        "config": report.config.summary(),
        "rows": rows,
        "summary": {k: summary[k] for k in ("status", "runtime_ms")},
    }
    return json.dumps(doc, indent=2) + "\n"
