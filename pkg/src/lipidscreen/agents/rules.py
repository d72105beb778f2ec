"""Rule-based verifier: a pure function of (reasoning trace, claimed score).

Named checks, all of which must pass for a consistent verdict:

- argmax-match: the claimed score equals the argmax of the stated
  distribution and the score under verification;
- confidence-match: the stated confidence matches the entropy of the
  stated distribution within 1e-6;
- feature-count: at most 5 top features listed;
- margin-sign: a score implies a non-toxic margin (<= 0).
"""

from __future__ import annotations

import math

from ..agent_types import CheckResult, VerifierVerdict
from ..trace import TraceParseError, parse_trace

_LN10 = math.log(10.0)


def rule_verify(r_pred: str, y_eff: int) -> VerifierVerdict:
    if not 1 <= y_eff <= 10:
        raise ValueError(f"y_eff must be in [1, 10], got {y_eff}")
    try:
        trace = parse_trace(r_pred)
    except TraceParseError:
        return VerifierVerdict(
            y_ver=0,
            r_corr="unparseable trace",
            checks=[CheckResult("parse", False, "unparseable trace")],
        )
    if trace["toxic"] or "distribution" not in trace:
        return VerifierVerdict(
            y_ver=0,
            r_corr="trace carries no efficiency distribution to check",
            checks=[CheckResult("parse", False, "no efficiency claim")],
        )

    checks: list[CheckResult] = [CheckResult("parse", True)]
    dist = trace["distribution"]
    stated_argmax = dist.index(max(dist)) + 1
    checks.append(
        CheckResult(
            "argmax-match",
            trace["score"] == stated_argmax and trace["score"] == y_eff,
            f"claimed {trace['score']}, distribution argmax {stated_argmax}, "
            f"score under review {y_eff}",
        )
    )
    ent = -sum(p * math.log(p) for p in dist if p > 0.0)
    conf = max(0.0, min(1.0, 1.0 - ent / _LN10))
    checks.append(
        CheckResult(
            "confidence-match",
            abs(trace["confidence"] - conf) <= 1e-6,
            f"stated {trace['confidence']:.8f}, recomputed {conf:.8f}",
        )
    )
    checks.append(
        CheckResult(
            "feature-count",
            len(trace.get("top_features", [])) <= 5,
            f"{len(trace.get('top_features', []))} features listed",
        )
    )
    checks.append(
        CheckResult(
            "margin-sign",
            trace["margin"] <= 0.0,
            f"margin {trace['margin']:.4f} with an efficiency score present",
        )
    )

    failed = [c for c in checks if not c.passed]
    if failed:
        return VerifierVerdict(
            y_ver=0,
            r_corr="; ".join(f"{c.name}: {c.detail}" for c in failed),
            checks=checks,
        )
    return VerifierVerdict(y_ver=1, checks=checks)
