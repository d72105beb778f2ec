"""Reasoning-trace format emitted by the surrogate predictor.

The trace is a small key: value block the rule-based verifier can parse
and cross-check: claimed decision and score, stated confidence, the full
10-class distribution, the toxicity margin, and the top contributing
fingerprint bits.
"""

from __future__ import annotations

from typing import Optional


class TraceParseError(ValueError):
    pass


def render_trace(
    toxic: bool,
    conf: float,
    margin: float,
    score: Optional[int] = None,
    distribution: Optional[list[float]] = None,
    top_features: Optional[list[int]] = None,
    feedback_rounds: int = 0,
) -> str:
    lines = [f"decision: {'toxic' if toxic else 'non-toxic'}"]
    if not toxic:
        lines.append(f"score: {score}")
        lines.append("distribution: " + " ".join(f"{p:.12g}" for p in distribution))
    lines.append(f"confidence: {conf:.12g}")
    lines.append(f"toxicity-margin: {margin:.12g}")
    if top_features:
        lines.append("top-features: " + " ".join(str(b) for b in top_features))
    lines.append(f"feedback-rounds: {feedback_rounds}")
    return "\n".join(lines)


def parse_trace(text: str) -> dict:
    """Parse a trace block back into a dict; strict, no repair."""
    if not text or not text.strip():
        raise TraceParseError("empty trace")
    fields: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if ":" not in line:
            raise TraceParseError(f"unparseable line {line!r}")
        key, _, value = line.partition(":")
        fields[key.strip()] = value.strip()
    if "decision" not in fields:
        raise TraceParseError("trace missing decision")
    decision = fields["decision"]
    if decision not in ("toxic", "non-toxic"):
        raise TraceParseError(f"unknown decision {decision!r}")
    out: dict = {"toxic": decision == "toxic"}
    try:
        out["confidence"] = float(fields["confidence"])
        out["margin"] = float(fields["toxicity-margin"])
        if not out["toxic"]:
            out["score"] = int(fields["score"])
            dist = [float(x) for x in fields["distribution"].split()]
            if len(dist) != 10:
                raise TraceParseError(
                    f"distribution must have 10 entries, got {len(dist)}"
                )
            out["distribution"] = dist
        if "top-features" in fields:
            out["top_features"] = [int(x) for x in fields["top-features"].split()]
        out["feedback_rounds"] = int(fields.get("feedback-rounds", "0"))
    except KeyError as exc:
        raise TraceParseError(f"trace missing field {exc}") from exc
    except ValueError as exc:
        raise TraceParseError(f"malformed trace value: {exc}") from exc
    return out
