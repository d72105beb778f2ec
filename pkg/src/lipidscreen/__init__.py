"""Safety-gated lipid virtual screening toolkit."""

__version__ = "0.1.0"
