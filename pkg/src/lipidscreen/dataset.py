"""Dataset ingestion, per-study score rescaling, and the train/eval split.

File format: UTF-8 line-delimited JSON, one record per line with fields
``id, smiles, source_study, raw_efficiency, toxic`` (optional pre-assigned
``efficiency_score``); ``#``-prefixed lines are comments.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import warnings
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

from .chem import SmilesError, parse_smiles

SCORE_MIN = 1
SCORE_MAX = 10


class DatasetError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class LipidRecord:
    id: str
    smiles: str
    source_study: str
    toxic: bool
    raw_efficiency: Optional[float] = None
    efficiency_score: Optional[int] = None

    def validate(self) -> None:
        if not self.id:
            raise DatasetError("record id must be non-empty")
        if self.efficiency_score is not None and not (
            SCORE_MIN <= self.efficiency_score <= SCORE_MAX
        ):
            raise DatasetError(
                f"efficiency_score {self.efficiency_score} outside [1, 10] for id {self.id!r}"
            )


@dataclass
class DatasetSplit:
    train: list[str]
    eval: list[str]
    seed: int
    manifest_digest: str

    def to_manifest(self) -> dict:
        return asdict(self)


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_records(path: str | Path) -> list[LipidRecord]:
    """Load and validate a line-delimited record file; fails on the first
    offending line."""
    path = Path(path)
    records: list[LipidRecord] = []
    seen: dict[str, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"malformed JSON: {exc}", lineno) from exc
            try:
                rec = LipidRecord(
                    id=str(obj["id"]),
                    smiles=str(obj["smiles"]),
                    source_study=str(obj["source_study"]),
                    toxic=bool(obj["toxic"]),
                    raw_efficiency=(
                        None if obj.get("raw_efficiency") is None
                        else float(obj["raw_efficiency"])
                    ),
                    efficiency_score=(
                        None if obj.get("efficiency_score") is None
                        else int(obj["efficiency_score"])
                    ),
                )
            except KeyError as exc:
                raise DatasetError(f"missing field {exc}", lineno) from exc
            if rec.id in seen:
                raise DatasetError(
                    f"duplicate id {rec.id!r} (first seen on line {seen[rec.id]})", lineno
                )
            seen[rec.id] = lineno
            try:
                rec.validate()
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    parse_smiles(rec.smiles)
            except (DatasetError, SmilesError) as exc:
                raise DatasetError(str(exc), lineno) from exc
            records.append(rec)
    return records


def save_records(records: list[LipidRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for rec in records:
            obj = {k: v for k, v in asdict(rec).items() if v is not None}
            fh.write(json.dumps(obj, sort_keys=True) + "\n")


def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def rescale_scores(records: list[LipidRecord]) -> list[LipidRecord]:
    """Fill efficiency_score via per-study min-max onto [1, 10].

    min maps to 1, max to 10, rounding half away from zero. Degenerate
    groups (constant or single raw value) get the midpoint score 5 with a
    warning. Toxic records are untouched.
    """
    groups: dict[str, list[LipidRecord]] = {}
    for rec in records:
        if rec.toxic:
            continue
        if rec.raw_efficiency is None:
            raise DatasetError(
                f"non-toxic record {rec.id!r} in study {rec.source_study!r} "
                "has no raw_efficiency"
            )
        groups.setdefault(rec.source_study, []).append(rec)

    out = [LipidRecord(**asdict(r)) for r in records]
    by_id = {r.id: r for r in out}
    for study, members in groups.items():
        raws = [r.raw_efficiency for r in members]
        lo, hi = min(raws), max(raws)
        if hi == lo:
            warnings.warn(
                f"study {study!r}: constant raw efficiency, assigning midpoint score 5"
            )
            for r in members:
                by_id[r.id].efficiency_score = 5
            continue
        for r in members:
            score = 1.0 + 9.0 * (r.raw_efficiency - lo) / (hi - lo)
            by_id[r.id].efficiency_score = _round_half_away(score)
    return out


def split(
    records: list[LipidRecord],
    seed: int,
    train_n: int,
    manifest_digest: str = "",
) -> DatasetSplit:
    """Deterministic stratified split: toxic/non-toxic ratio preserved to
    within one record per class."""
    n = len(records)
    if train_n > n:
        raise DatasetError(f"train_n {train_n} exceeds dataset size {n}")
    toxic_ids = [r.id for r in records if r.toxic]
    clean_ids = [r.id for r in records if not r.toxic]
    rng = random.Random(seed)
    rng.shuffle(toxic_ids)
    rng.shuffle(clean_ids)
    train_tox = _round_half_away(train_n * len(toxic_ids) / n) if n else 0
    train_tox = min(train_tox, len(toxic_ids), train_n)
    train_clean = train_n - train_tox
    if train_clean > len(clean_ids):
        train_clean = len(clean_ids)
        train_tox = train_n - train_clean
    train = toxic_ids[:train_tox] + clean_ids[:train_clean]
    evals = toxic_ids[train_tox:] + clean_ids[train_clean:]
    rng.shuffle(train)
    rng.shuffle(evals)
    return DatasetSplit(train=train, eval=evals, seed=seed, manifest_digest=manifest_digest)


def save_split(spl: DatasetSplit, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spl.to_manifest(), indent=2), encoding="utf-8")


def load_split(path: str | Path) -> DatasetSplit:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    return DatasetSplit(**obj)
