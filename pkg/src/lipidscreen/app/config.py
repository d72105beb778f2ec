"""Key-value config file support.

Format: one ``key = value`` pair per line, ``#`` comments. Every default
the pipeline uses is named here so a written config documents itself.
"""

from __future__ import annotations

from pathlib import Path

DEFAULTS: dict[str, object] = {
    # screening loop
    "tau": 0.7,
    "max_loops": 3,
    "top_fraction": 0.001,
    "parallelism": 4,
    # training
    "alpha": 0.1,
    "lr": 2e-4,
    "eps": 1e-8,
    "epochs": 50,
    "batch_size": 32,
    "seed": 0,
    "hidden1": 256,
    "hidden2": 64,
    "eval_every": 5,
    # featurization
    "radius": 2,
    "nbits": 2048,
    # dataset split
    "split_seed": 7,
    "train_n": 800,
}


def load_config(path: str | Path | None) -> dict:
    values = dict(DEFAULTS)
    if path is None:
        return values
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in DEFAULTS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        default = DEFAULTS[key]
        values[key] = type(default)(raw) if not isinstance(default, int) else int(raw)
    return values


def write_defaults(path: str | Path) -> None:
    lines = ["# lipidscreen configuration (all values shown are the defaults)"]
    for key, value in DEFAULTS.items():
        lines.append(f"{key} = {value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
