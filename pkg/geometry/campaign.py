"""
Resumable search campaigns over generated point sets.

A campaign draws one point set per trial, verifies it and appends the
outcome to an append-only JSONL journal. Trials already in the journal are
skipped on a re-run. The summary is rebuilt from the whole journal with
min / sum aggregates only, so it does not depend on completion order.
"""
import hashlib
import json
import logging
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import pandas as pd

from .bounds import verify_set
from .exceptions import CampaignMismatchError, GeometryError, JournalCorruptionError
from .generators import GenSpec, canonical_kind, generate
from .pointset_io import dump_point_set, write_json
from .reports import BoundEntry, Relation

logger = logging.getLogger(__name__)

CAMPAIGN_SCHEMA_VERSION = 1

# check name -> prefixes of the BoundReport entry names it covers
CHECKS: Dict[str, Tuple[str, ...]] = {
    "welzl": ("welzl",),
    "corollary": ("corollary",),
    "prop": ("prop S_j", "2S_j"),
    "two-facet": ("two j-facets",),
    "guarantee": ("max depth",),
    "hull": ("s_0",),
    "s1": ("s_1", "sum(delta", "generators per", "#doubly"),
    "conj2": ("conj2",),
    "conj3": ("conj3",),
}
DEFAULT_CHECKS = tuple(name for name in CHECKS if name != "two-facet")


def check_of(entry_name: str) -> Optional[str]:
    for check, prefixes in CHECKS.items():
        if entry_name.startswith(prefixes):
            return check
    return None


def derive_seed(base_seed: int, trial: int) -> int:
    """64-bit seed of a trial, independent of scheduling."""
    digest = hashlib.sha256(f"{base_seed}:{trial}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class Campaign:
    """
    kind and sizes describe the generator template: sizes are n values, or
    m values for the four-chain construction, cycled over the trials.
    """

    kind: str
    sizes: Tuple[int, ...]
    trials: int
    seed: int = 0
    checks: Tuple[str, ...] = DEFAULT_CHECKS
    stop_on_conjecture_violation: bool = False
    algorithm: str = "sweep"
    grid: int = 1_000_000
    denominator: int = 1_000_000
    jitter: int = 8
    max_rejections: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "checks", tuple(self.checks))
        if not self.sizes:
            raise ValueError("a campaign needs at least one size")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        unknown = [check for check in self.checks if check not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; expected some of {', '.join(CHECKS)}")
        if self.kind == "random-planar":
            raise ValueError("campaigns verify 3D sets; use lifted-random for planar instances")

    def trial_spec(self, trial: int) -> GenSpec:
        size = self.sizes[trial % len(self.sizes)]
        common = dict(
            seed=derive_seed(self.seed, trial),
            grid=self.grid,
            denominator=self.denominator,
            jitter=self.jitter,
            max_rejections=self.max_rejections,
        )
        if self.kind == "paper-construction":
            return GenSpec(self.kind, m=size, **common)
        return GenSpec(self.kind, n=size, **common)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["sizes"] = list(self.sizes)
        data["checks"] = list(self.checks)
        return {"schema_version": CAMPAIGN_SCHEMA_VERSION, **data}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Campaign":
        data = dict(data)
        data.pop("schema_version", None)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown campaign fields: {', '.join(sorted(unknown))}")
        return cls(**data)


def _checksum(record: Dict[str, Any]) -> str:
    canonical = json.dumps(record, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class Journal:
    """Append-only JSONL file of trial records, one checksummed object per line."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def recover(self) -> Dict[int, Dict[str, Any]]:
        """
        Read every record, verifying checksums.

        A final line without a newline is a write torn by an interrupt: it is
        dropped and the file truncated so appends resume on a clean line.

        Raises:
            JournalCorruptionError: on a bad checksum, bad JSON or a repeated trial.
        """
        if not self.path.exists():
            return {}
        raw = self.path.read_bytes()
        lines = raw.split(b"\n")
        tail = lines.pop()
        if tail:
            logger.warning("dropping torn journal line %d in %s", len(lines) + 1, self.path)
            with self.path.open("r+b") as handle:
                handle.truncate(len(raw) - len(tail))

        records: Dict[int, Dict[str, Any]] = {}
        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                raise JournalCorruptionError(str(self.path), number, f"invalid JSON: {exc}") from exc
            if not isinstance(record, dict) or "checksum" not in record:
                raise JournalCorruptionError(str(self.path), number, "missing checksum")
            stored = record.pop("checksum")
            if stored != _checksum(record):
                raise JournalCorruptionError(str(self.path), number, "checksum mismatch")
            trial = record.get("trial")
            if trial in records:
                raise JournalCorruptionError(str(self.path), number, f"trial {trial} journaled twice")
            records[trial] = record
        return records

    def append(self, record: Dict[str, Any]) -> None:
        line = json.dumps({**record, "checksum": _checksum(record)}, sort_keys=True)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
            handle.flush()


def run_trial(campaign: Campaign, trial: int) -> Tuple[Dict[str, Any], Optional[Dict[str, Any]]]:
    """
    Generate and verify one trial. Returns the journal record and, when any
    check is violated, the full instance (point-set document and report).
    """
    spec = campaign.trial_spec(trial)
    record: Dict[str, Any] = {"trial": trial, "genspec": spec.to_dict()}
    started = time.perf_counter()
    try:
        point_set = generate(spec)
        report = verify_set(point_set, algorithm=campaign.algorithm, two_facet="two-facet" in campaign.checks)
    except GeometryError as exc:
        logger.warning("trial %d (%s) failed: %s", trial, spec.kind, exc)
        record.update({"error": {"code": exc.code, "message": str(exc)}, "elapsed": time.perf_counter() - started})
        return record, None

    report.entries = [entry for entry in report.entries if check_of(entry.name) in campaign.checks]
    record.update(
        {
            "set_id": report.set_id,
            "n": report.n,
            "convex": report.convex,
            "entries": [entry.to_dict() for entry in report.entries],
            "theorem_violations": len(report.theorem_violations),
            "conjecture_violations": len(report.conjecture_violations),
            "elapsed": time.perf_counter() - started,
        }
    )
    instance = None
    if report.theorem_violations or report.conjecture_violations:
        instance = {"point_set": dump_point_set(point_set, spec.to_dict()), "report": report.to_dict()}
    return record, instance


@dataclass
class MarginRow:
    check: str
    name: str
    j: Optional[int]
    severity: str
    trials: int = 0
    min_margin: Optional[int] = None
    equalities: int = 0
    violations: int = 0


@dataclass
class CampaignSummary:
    trials_completed: int = 0
    errors: int = 0
    theorem_violations: int = 0
    conjecture_violations: int = 0
    sizes: Dict[int, int] = field(default_factory=dict)
    margins: Dict[Tuple[str, int], MarginRow] = field(default_factory=dict)
    elapsed: float = 0.0

    def add(self, record: Dict[str, Any]) -> None:
        self.trials_completed += 1
        self.elapsed += record.get("elapsed", 0.0)
        if "error" in record:
            self.errors += 1
            return
        self.sizes[record["n"]] = self.sizes.get(record["n"], 0) + 1
        self.theorem_violations += record["theorem_violations"]
        self.conjecture_violations += record["conjecture_violations"]
        for raw in record["entries"]:
            if raw["formula"] is None:
                continue
            key = (raw["name"], -1 if raw["j"] is None else raw["j"])
            row = self.margins.get(key)
            if row is None:
                row = self.margins[key] = MarginRow(check_of(raw["name"]), raw["name"], raw["j"], raw["severity"])
            entry = BoundEntry.compare(raw["name"], raw["empirical"], raw["formula"], Relation(raw["relation"]))
            margin = entry.margin
            row.trials += 1
            row.min_margin = margin if row.min_margin is None else min(row.min_margin, margin)
            row.equalities += raw["empirical"] == raw["formula"]
            row.violations += raw["status"] == "VIOLATION"

    def to_frame(self) -> pd.DataFrame:
        rows = [asdict(row) for _, row in sorted(self.margins.items())]
        columns = ["check", "name", "j", "severity", "trials", "min_margin", "equalities", "violations"]
        frame = pd.DataFrame(rows, columns=columns)
        for column in ("j", "min_margin"):
            frame[column] = frame[column].astype("Int64")
        return frame

    def to_dict(self) -> Dict[str, Any]:
        """Deterministic content first; wall-clock figures sit under ``timing``."""
        return {
            "schema_version": CAMPAIGN_SCHEMA_VERSION,
            "trials_completed": self.trials_completed,
            "errors": self.errors,
            "theorem_violations": self.theorem_violations,
            "conjecture_violations": self.conjecture_violations,
            "sizes": {str(n): count for n, count in sorted(self.sizes.items())},
            "margins": [asdict(row) for _, row in sorted(self.margins.items())],
            "timing": {"trial_seconds_total": round(self.elapsed, 6)},
        }


def summarize(records: Dict[int, Dict[str, Any]]) -> CampaignSummary:
    summary = CampaignSummary()
    for trial in sorted(records):
        summary.add(records[trial])
    return summary


@dataclass
class CampaignResult:
    output_dir: Path
    summary: CampaignSummary
    skipped: int
    ran: int
    stopped_early: bool = False
    violation_files: List[Path] = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        if self.summary.theorem_violations:
            return 3
        if self.summary.conjecture_violations:
            return 4
        return 0


def _prepare_directory(campaign: Campaign, output_dir: Path) -> None:
    output_dir.mkdir(parents=True, exist_ok=True)
    spec_path = output_dir / "campaign.json"
    if spec_path.exists():
        stored = json.loads(spec_path.read_text(encoding="utf-8"))
        if stored != campaign.to_dict():
            raise CampaignMismatchError(f"{output_dir} holds a different campaign; use a fresh directory")
    else:
        write_json(spec_path, campaign.to_dict())


def _save_violation(output_dir: Path, trial: int, instance: Dict[str, Any]) -> List[Path]:
    folder = output_dir / "violations"
    return [
        write_json(folder / f"trial-{trial:06d}.json", instance["point_set"]),
        write_json(folder / f"trial-{trial:06d}-report.json", instance["report"]),
    ]


def run_campaign(
    campaign: Campaign,
    output_dir: Union[str, Path],
    workers: int = 1,
    on_record: Optional[Callable[[Dict[str, Any]], None]] = None,
) -> CampaignResult:
    """
    Run every trial not yet in the journal and write summary.json and
    margins.csv. The main process is the only journal writer; workers only
    compute.
    """
    output_dir = Path(output_dir)
    _prepare_directory(campaign, output_dir)
    journal = Journal(output_dir / "journal.jsonl")
    records = journal.recover()
    pending = [trial for trial in range(campaign.trials) if trial not in records]
    result = CampaignResult(output_dir, CampaignSummary(), skipped=len(records), ran=0)
    logger.info("campaign in %s: %d journaled, %d pending", output_dir, len(records), len(pending))

    def should_stop() -> bool:
        return campaign.stop_on_conjecture_violation and any(
            record.get("conjecture_violations") for record in records.values()
        )

    def accept(record: Dict[str, Any], instance: Optional[Dict[str, Any]]) -> None:
        journal.append(record)
        records[record["trial"]] = record
        result.ran += 1
        if instance is not None:
            result.violation_files.extend(_save_violation(output_dir, record["trial"], instance))
            logger.warning(
                "trial %d: %d theorem and %d conjecture violations",
                record["trial"], record["theorem_violations"], record["conjecture_violations"],
            )
        if on_record is not None:
            on_record(record)

    if pending and not should_stop():
        if workers <= 1:
            for trial in pending:
                accept(*run_trial(campaign, trial))
                if should_stop():
                    result.stopped_early = True
                    break
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = {pool.submit(run_trial, campaign, trial) for trial in pending}
                while futures:
                    done, futures = wait(futures, return_when=FIRST_COMPLETED)
                    for future in sorted(done, key=lambda f: f.result()[0]["trial"]):
                        accept(*future.result())
                    if should_stop():
                        result.stopped_early = True
                        for future in futures:
                            future.cancel()
                        break
    else:
        result.stopped_early = bool(pending)

    result.summary = summarize(records)
    write_json(output_dir / "summary.json", result.summary.to_dict())
    result.summary.to_frame().to_csv(output_dir / "margins.csv", index=False, encoding="utf-8")
    return result
