"""
Report writers

Every run writes report.json and summary.txt; some also write samples.csv.
Reports carry no timestamps so identical runs give identical bytes.
"""
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence
import csv
import json
import logging

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
SUMMARY_FILE = "summary.txt"
SAMPLES_FILE = "samples.csv"


def _default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Path):
        return str(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"


def write_report(out_dir: Path, report: Dict[str, Any], summary: str) -> Path:
    """
    Write report.json and summary.txt into out_dir

    Args:
        out_dir: Output directory, created if missing
        report: JSON-ready report
        summary: Human-readable summary

    Returns:
        Path of report.json
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / REPORT_FILE
    path.write_text(dumps_report(report), encoding="utf-8")
    (out_dir / SUMMARY_FILE).write_text(summary.rstrip("\n") + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    logger.info("wrote %s", path)
    return path
