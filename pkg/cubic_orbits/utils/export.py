"""
Rendering of reports as JSON, CSV or plain text.

CSV rows always use the columns q, class_or_theorem, value, multiplicity_or_verdict.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

CSV_COLUMNS = ("q", "class_or_theorem", "value", "multiplicity_or_verdict")


def render_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def render_csv(rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def class_rows(q: int, counts: Dict[str, int]) -> List[tuple]:
    return [(q, tag, "count", count) for tag, count in counts.items()]


def census_rows(census: Dict[str, Any]) -> List[tuple]:
    return [(census["q"], census["class"], o["length"], o["multiplicity"]) for o in census["orbits"]]


def orbit_rows(orbit: Dict[str, Any]) -> List[tuple]:
    q = orbit["q"]
    return [(q, orbit["class"], key, orbit[key]) for key in ("size", "stabilizer_order", "group_id", "representative")]


def verify_rows(report: Dict[str, Any]) -> List[tuple]:
    return [
        (report["q"], c["check_id"], json.dumps(c["measured"], sort_keys=True), c["verdict"])
        for c in report["checks"]
    ]


def save_report(path: str, data: Dict[str, Any]) -> Path:
    """Write a JSON report, creating parent directories"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w") as f:
        f.write(render_json(data))
        f.write("\n")
    return target
