"""Seeded synthetic data generator.

The real curated dataset is not redistributable, so this module emits
plausible structure-efficiency-toxicity records that make every pipeline
stage testable offline:

- efficiency signal is planted through ten distinctive linker motifs, one
  per score level, embedded between a polar head and an alkyl tail;
- toxicity is planted as a trichloromethyl fragment, so a circular
  fingerprint separates the classes;
- raw efficiencies are reported on per-study affine scales plus small
  noise, exercising the min-max rescaling path.
"""

from __future__ import annotations

import random

from .dataset import LipidRecord

# Score-indexed linker motifs (index 0 -> score 1, ... index 9 -> score 10).
SCORE_MOTIFS = [
    "OCO",
    "OCN",
    "OCS",
    "NCN",
    "NCS",
    "SCS",
    "C(=O)O",
    "C(=O)N",
    "C(=O)S",
    "C(=N)N",
]

TOXIC_MOTIF = "C(Cl)(Cl)Cl"

HEADS = ["CCN(C)C", "CN(C)CC", "OCCN", "OCC(O)C"]

# Per-study affine transforms applied to the latent 1-10 score.
STUDIES = [
    ("assayA", 1.0, 0.0),
    ("assayB", 12.5, 40.0),
    ("assayC", 0.01, -2.0),
    ("assayD", 3.7, 100.0),
]


def _tail(rng: random.Random) -> str:
    length = rng.randint(4, 12)
    tail = "C" * length
    if rng.random() < 0.3:
        cut = rng.randint(1, length - 1)
        tail = tail[:cut] + "(C)" + tail[cut:]
    return tail


def _clean_smiles(rng: random.Random, score: int) -> str:
    return rng.choice(HEADS) + SCORE_MOTIFS[score - 1] + _tail(rng)


def _toxic_smiles(rng: random.Random) -> str:
    return rng.choice(HEADS) + "C" * rng.randint(1, 6) + TOXIC_MOTIF


def generate_records(
    n_clean: int = 1200, n_toxic: int = 400, seed: int = 0
) -> list[LipidRecord]:
    """Emit n_clean non-toxic + n_toxic toxic records, deterministically."""
    rng = random.Random(seed)
    records: list[LipidRecord] = []
    for i in range(n_clean):
        score = (i % 10) + 1
        study, a, b = STUDIES[i % len(STUDIES)]
        noise = rng.uniform(-0.2, 0.2)
        raw = a * (score + noise) + b
        records.append(
            LipidRecord(
                id=f"SYN-{i:05d}",
                smiles=_clean_smiles(rng, score),
                source_study=study,
                toxic=False,
                raw_efficiency=round(raw, 6),
            )
        )
    for i in range(n_toxic):
        records.append(
            LipidRecord(
                id=f"TOX-{i:05d}",
                smiles=_toxic_smiles(rng),
                source_study="toxpanel",
                toxic=True,
            )
        )
    rng.shuffle(records)
    return records


def generate_library(n: int = 10024, seed: int = 1, toxic_fraction: float = 0.2) -> list[tuple[str, str]]:
    """Candidate (id, smiles) pairs for virtual screening."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        if rng.random() < toxic_fraction:
            smi = _toxic_smiles(rng)
        else:
            smi = _clean_smiles(rng, rng.randint(1, 10))
        out.append((f"LIB-{i:05d}", smi))
    return out


def true_score(smiles: str) -> tuple[bool, int | None]:
    """Ground truth of the planted rules: (toxic, score or None)."""
    if TOXIC_MOTIF in smiles:
        return True, None
    # Longer motifs first so "C(=O)O" is not matched as "OCO" etc.
    for idx in sorted(range(10), key=lambda k: -len(SCORE_MOTIFS[k])):
        if SCORE_MOTIFS[idx] in smiles:
            return False, idx + 1
    return False, None
