"""
Report manager for simulation campaigns and benches.

Two report types:
1. sim   - one CSV row per error weight plus the full JSON dump with raw trials
2. bench - median phase timings per error weight
Each save writes one .meta.json sidecar listing the files it wrote.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from src.config import config
from src.logger import logger
from src.schema import PHASE_VALUES, BenchReport, SimReport


SIM_COLUMNS = ["q", "m", "alg", "s", "l", "weight", "trials", "successes", "rate"]


def sim_frame(report: SimReport) -> pd.DataFrame:
    """One row per error weight, timing means after the count columns."""
    records = []
    for row in report.rows:
        record = {col: getattr(row, col) for col in SIM_COLUMNS}
        if report.config.companion is not None:
            record["companion_successes"] = row.companion_successes
        for phase in PHASE_VALUES:
            record[f"mean_{phase}"] = row.mean_timings.get(phase, 0.0)
        records.append(record)
    columns = SIM_COLUMNS + (["companion_successes"] if report.config.companion else [])
    columns += [f"mean_{phase}" for phase in PHASE_VALUES]
    return pd.DataFrame.from_records(records, columns=columns)


def bench_frame(report: BenchReport) -> pd.DataFrame:
    records = []
    for row in report.rows:
        record = {"weight": row.weight, "runs": row.runs, "attempts": row.attempts}
        for phase in PHASE_VALUES:
            record[f"median_{phase}"] = row.median_timings.get(phase, 0.0)
        record["total"] = row.total
        records.append(record)
    columns = ["weight", "runs", "attempts"] + [f"median_{p}" for p in PHASE_VALUES] + ["total"]
    return pd.DataFrame.from_records(records, columns=columns)


class ReportManager:
    """Writes campaign outputs below a base directory"""

    def __init__(self, base_dir: Union[str, Path, None] = None):
        self.base_dir = Path(base_dir) if base_dir is not None else config.report_root
        self.report_types = ("sim", "bench")

    def generate_stem(self, report_type: str, tag: str, timestamp: Optional[str] = None) -> Path:
        """Timestamped output stem inside the report type's directory"""
        if timestamp is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return self.base_dir / report_type / f"{report_type}_{tag}_{timestamp}"

    def resolve_stem(self, report_type: str, tag: str, out: Optional[str]) -> Path:
        """Stem given by `out` (a .csv/.json suffix is dropped), else a timestamped one"""
        if out:
            stem = Path(out)
            return stem.with_suffix("") if stem.suffix in (".csv", ".json") else stem
        return self.generate_stem(report_type, tag)

    @staticmethod
    def output_paths(stem: Path, fmt: str) -> List[Path]:
        """Every file a save under `stem` writes, the sidecar last"""
        suffixes = {"csv": [".csv"], "json": [".json"], "both": [".csv", ".json"]}[fmt]
        return [Path(f"{stem}{suffix}") for suffix in suffixes] + [Path(f"{stem}.meta.json")]

    def _write(self, path: Path, content: str) -> Optional[Path]:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            logger.info(f"Saved report: {path}")
            return path
        except OSError as e:
            logger.error(f"Failed to save report {path}: {e}")
            return None

    def save_csv(self, frame: pd.DataFrame, stem: Path) -> Optional[Path]:
        return self._write(Path(f"{stem}.csv"), frame.to_csv(index=False))

    def save_json(self, data: Dict[str, Any], stem: Path) -> Optional[Path]:
        return self._write(Path(f"{stem}.json"), json.dumps(data, indent=2))

    def save_metadata(self, stem: Path, metadata: Dict[str, Any], files: List[Path]) -> Optional[Path]:
        """One sidecar per stem, listing every file written with it"""
        content = json.dumps(
            {
                **metadata,
                "files": [{"filename": p.name, "file_size": p.stat().st_size} for p in files],
                "written_at": datetime.now().isoformat(),
            },
            indent=2,
        )
        return self._write(Path(f"{stem}.meta.json"), content)

    def _save(
        self,
        stem: Path,
        fmt: str,
        frame: pd.DataFrame,
        data: Dict[str, Any],
        metadata: Dict[str, Any],
    ) -> List[Path]:
        written = []
        if fmt in ("csv", "both"):
            written.append(self.save_csv(frame, stem))
        if fmt in ("json", "both"):
            written.append(self.save_json(data, stem))
        written = [p for p in written if p is not None]
        if written:
            self.save_metadata(stem, metadata, written)
        return written

    def save_sim_report(self, report: SimReport, fmt: str = "both", out: Optional[str] = None) -> List[Path]:
        """Write the CSV and/or JSON of a campaign; returns the paths written"""
        cfg = report.config
        stem = self.resolve_stem("sim", f"q{cfg.q}_m{cfg.m}_{cfg.decoder.value}", out)
        return self._save(
            stem, fmt, sim_frame(report), report.model_dump(mode="json"), report.metadata
        )

    def save_bench_report(self, report: BenchReport, fmt: str = "both", out: Optional[str] = None) -> List[Path]:
        cfg = report.config
        stem = self.resolve_stem("bench", f"q{cfg.q}_m{cfg.m}_{cfg.decoder.value}", out)
        return self._save(
            stem, fmt, bench_frame(report), report.model_dump(mode="json"), report.metadata
        )

    def list_reports(self, report_type: Optional[str] = None, limit: int = 20) -> List[Dict[str, Any]]:
        """Most recent reports first"""
        reports = []
        for rtype in [report_type] if report_type else self.report_types:
            type_path = self.base_dir / rtype
            if not type_path.exists():
                continue
            for file_path in type_path.glob("*.*"):
                if file_path.name.endswith(".meta.json"):
                    continue
                reports.append(
                    {
                        "filename": file_path.name,
                        "type": rtype,
                        "modified": file_path.stat().st_mtime,
                        "path": str(file_path),
                    }
                )
        reports.sort(key=lambda r: r["modified"], reverse=True)
        return reports[:limit]
