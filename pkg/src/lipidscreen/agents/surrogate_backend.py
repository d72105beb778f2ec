"""Local deterministic backend wrapping a trained surrogate checkpoint.

The numeric outputs ignore corrective feedback (the MLP is stateless);
each round's trace acknowledges how many feedback messages were received
so transcripts show the loop progressing. Verification uses the rule-based
checker.
"""

from __future__ import annotations

import warnings
from pathlib import Path

from .. import surrogate
from ..agent_types import Candidate, PredictorOutput, VerifierVerdict
from ..chem import HASH_SEED, fingerprint_smiles
from .rules import rule_verify


class SurrogateBackend:
    def __init__(self, checkpoint: surrogate.Checkpoint):
        self.checkpoint = checkpoint

    @classmethod
    def from_checkpoint(cls, path: str | Path) -> "SurrogateBackend":
        return cls(surrogate.load_checkpoint(path))

    @property
    def fingerprint_params(self) -> dict:
        return {
            "radius": self.checkpoint.radius,
            "nbits": self.checkpoint.nbits,
            "hash_seed": hex(HASH_SEED),
        }

    def predict(self, candidate: Candidate, feedback_history: list[str]) -> PredictorOutput:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fp = fingerprint_smiles(
                candidate.smiles,
                radius=self.checkpoint.radius,
                nbits=self.checkpoint.nbits,
            )
        return surrogate.predict(
            self.checkpoint.params, fp, feedback_rounds=len(feedback_history)
        )

    def verify(self, r_pred: str, y_eff: int) -> VerifierVerdict:
        return rule_verify(r_pred, y_eff)
