"""Backend protocols and the config-driven factory."""

from __future__ import annotations

from typing import Protocol, runtime_checkable

from ..agent_types import BackendConfig, Candidate, PredictorOutput, VerifierVerdict


class BackendError(RuntimeError):
    """Typed failure from a backend call; aborts the candidate, never
    silently defaults."""


@runtime_checkable
class PredictorBackend(Protocol):
    def predict(
        self, candidate: Candidate, feedback_history: list[str]
    ) -> PredictorOutput: ...


@runtime_checkable
class VerifierBackend(Protocol):
    def verify(self, r_pred: str, y_eff: int) -> VerifierVerdict: ...


def make_backends(
    predictor_cfg: BackendConfig, verifier_cfg: BackendConfig | None = None
):
    """Build (predictor, verifier) services from configs; a single config
    may serve both roles."""
    from .scripted import ScriptedBackend
    from .surrogate_backend import SurrogateBackend
    from .remote import RemoteBackend

    def build(cfg: BackendConfig):
        if cfg.kind == "surrogate":
            return SurrogateBackend.from_checkpoint(cfg.checkpoint_path)
        if cfg.kind == "scripted":
            return ScriptedBackend.from_file(cfg.fixture_path)
        return RemoteBackend(
            cfg.endpoint,
            timeout=cfg.timeout,
            max_retries=cfg.max_retries,
            auth_token_env=cfg.auth_token_env,
        )

    predictor = build(predictor_cfg)
    verifier = predictor if verifier_cfg is None else build(verifier_cfg)
    return predictor, verifier
