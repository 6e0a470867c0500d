"""Result CSVs and the markdown summary that ranks grid settings."""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np

from ..metrics import IOU_COLUMNS, BinaryConfusion, classification_scores

RESULT_FILES = {"classification": "cls_results.csv", "segmentation": "seg_results.csv"}
SUMMARY_NAME = "summary.md"
COUNT_COLUMNS = ("tp", "fn", "fp", "tn")
COLUMNS = {
    "classification": ("setting", "model", "seed", "sensitivity", "specificity", "f_value", *COUNT_COLUMNS, "status"),
    "segmentation": ("setting", "seed", *IOU_COLUMNS, "mean_iou", "status"),
}


def _format(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6f}"
    return str(value)


def write_results(task: str, rows: Iterable[dict], path: Path) -> Path:
    """Rows ordered by (setting, model, seed); floats with six decimals, no timings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ordered = sorted(rows, key=lambda r: (int(r["setting"]), r.get("model") or "", int(r["seed"])))
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS[task], extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in ordered:
            w.writerow({key: _format(row.get(key)) for key in COLUMNS[task]})
    return path


def read_results(path: Path) -> list[dict[str, str]]:
    with Path(path).open(encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def _ok(rows: list[dict[str, str]]) -> list[dict[str, str]]:
    return [r for r in rows if r.get("status", "ok") == "ok"]


def aggregate_classification(rows: list[dict[str, str]]) -> list[dict[str, Any]]:
    """Sum confusion counts over seeds per (setting, model), then score; best F-value first."""
    by_cell: dict[tuple[int, str], list[dict[str, str]]] = defaultdict(list)
    for row in rows:
        by_cell[(int(row["setting"]), row.get("model") or "")].append(row)
    summary = []
    for (setting, model), group in by_cell.items():
        good = _ok(group)
        total = BinaryConfusion()
        for row in good:
            total = total + BinaryConfusion(**{k: int(row[k]) for k in COUNT_COLUMNS})
        summary.append(
            {
                "setting": setting,
                "model": model,
                "runs": len(good),
                "failed": len(group) - len(good),
                **(classification_scores(total) if good else {}),
                **total.to_dict(),
            }
        )
    return sorted(summary, key=lambda s: (-s.get("f_value", -1.0), s["setting"], s["model"]))


def aggregate_segmentation(rows: list[dict[str, str]]) -> list[dict[str, Any]]:
    """Average IoU columns over seeds per setting; best sign IoU first."""
    by_setting: dict[int, list[dict[str, str]]] = defaultdict(list)
    for row in rows:
        by_setting[int(row["setting"])].append(row)
    summary = []
    for setting, group in by_setting.items():
        good = _ok(group)
        entry: dict[str, Any] = {"setting": setting, "runs": len(good), "failed": len(group) - len(good)}
        for column in (*IOU_COLUMNS, "mean_iou"):
            if good:
                entry[column] = float(np.mean([float(r[column]) for r in good]))
        summary.append(entry)
    return sorted(
        summary,
        key=lambda s: (-s.get("iou_sign", -1.0), -s.get("mean_iou", -1.0), s["setting"]),
    )


def _table(columns: tuple[str, ...], entries: list[dict[str, Any]]) -> list[str]:
    lines = ["| rank | " + " | ".join(columns) + " |", "|" + "---|" * (len(columns) + 1)]
    for rank, entry in enumerate(entries, start=1):
        cells = []
        for column in columns:
            value = entry.get(column)
            cells.append("n/a" if value is None else (f"{value:.4f}" if isinstance(value, float) else str(value)))
        lines.append(f"| {rank} | " + " | ".join(cells) + " |")
    return lines


def render_summary(task: str, rows: list[dict[str, str]]) -> str:
    if task == "classification":
        entries = aggregate_classification(rows)
        columns = ("setting", "model", "runs", "failed", "sensitivity", "specificity", "f_value", *COUNT_COLUMNS)
        title = "Classification settings (confusion counts summed over seeds)"
    else:
        entries = aggregate_segmentation(rows)
        columns = ("setting", "runs", "failed", *IOU_COLUMNS, "mean_iou")
        title = "Segmentation settings (IoU averaged over seeds)"
    return "\n".join([f"## {title}", "", *_table(columns, entries), ""])


def write_report(in_dir: Path, out_path: Optional[Path] = None) -> Path:
    """Summarise every result CSV found in ``in_dir`` into one markdown file."""
    in_dir = Path(in_dir)
    sections = []
    for task, name in RESULT_FILES.items():
        path = in_dir / name
        if path.is_file():
            sections.append(render_summary(task, read_results(path)))
    if not sections:
        raise FileNotFoundError(f"no result files ({', '.join(RESULT_FILES.values())}) in {in_dir}")
    out_path = Path(out_path) if out_path is not None else in_dir / SUMMARY_NAME
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("# Grid report\n\n" + "\n".join(sections), encoding="utf-8")
    return out_path
