from ..agent_types import (
    BackendConfig,
    Candidate,
    CheckResult,
    PredictorOutput,
    VerifierVerdict,
)
from .base import PredictorBackend, VerifierBackend, BackendError, make_backends
from .rules import rule_verify
from .scripted import ScriptedBackend, FixtureMissingError
from .surrogate_backend import SurrogateBackend
from .remote import (
    RemoteBackend,
    RemoteTimeoutError,
    MalformedReplyError,
)

__all__ = [
    "BackendConfig",
    "Candidate",
    "CheckResult",
    "PredictorOutput",
    "VerifierVerdict",
    "PredictorBackend",
    "VerifierBackend",
    "BackendError",
    "make_backends",
    "rule_verify",
    "ScriptedBackend",
    "FixtureMissingError",
    "SurrogateBackend",
    "RemoteBackend",
    "RemoteTimeoutError",
    "MalformedReplyError",
]
