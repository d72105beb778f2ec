"""Shared predictor/verifier message types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class PredictorOutput:
    """One inference round: toxicity verdict, optional efficiency score,
    reasoning trace, and entropy-based confidence.

    A toxic verdict structurally omits the efficiency fields — the safety
    gate is enforced in __post_init__, not by convention.
    """

    y_tox: bool
    r_pred: str
    conf: float
    y_eff: Optional[int] = None
    p_eff: Optional[list[float]] = None
    round: int = 1

    def __post_init__(self):
        if self.y_tox:
            if self.y_eff is not None or self.p_eff is not None:
                raise ValueError("toxic prediction must not carry an efficiency score")
        if not 0.0 <= self.conf <= 1.0:
            raise ValueError(f"conf must be in [0, 1], got {self.conf}")
        if self.y_eff is not None and not 1 <= self.y_eff <= 10:
            raise ValueError(f"y_eff must be in [1, 10], got {self.y_eff}")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifierVerdict:
    """Consistency bit plus corrective feedback when the check fails."""

    y_ver: int
    r_corr: Optional[str] = None
    checks: list[CheckResult] = field(default_factory=list)

    def __post_init__(self):
        if self.y_ver not in (0, 1):
            raise ValueError(f"y_ver must be 0 or 1, got {self.y_ver}")
        if self.y_ver == 1 and self.r_corr is not None:
            raise ValueError("a passing verdict must not carry corrective feedback")


@dataclass
class BackendConfig:
    kind: str  # surrogate | scripted | remote
    checkpoint_path: Optional[str] = None
    fixture_path: Optional[str] = None
    endpoint: Optional[str] = None
    timeout: float = 30.0
    max_retries: int = 2
    auth_token_env: Optional[str] = None

    def __post_init__(self):
        populated = {
            "surrogate": self.checkpoint_path is not None,
            "scripted": self.fixture_path is not None,
            "remote": self.endpoint is not None,
        }
        if self.kind not in populated:
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if not populated[self.kind]:
            raise ValueError(f"backend kind {self.kind!r} is missing its location field")
        if sum(populated.values()) != 1:
            raise ValueError("exactly one backend kind's fields may be populated")


@dataclass
class Candidate:
    id: str
    smiles: str
