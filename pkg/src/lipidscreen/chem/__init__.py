from .smiles import (
    SmilesError,
    SmilesToken,
    TokenKind,
    Atom,
    Bond,
    MolGraph,
    AROMATIC_BOND,
    tokenize,
    parse,
    parse_smiles,
)
from .fingerprint import Fingerprint, fingerprint, fingerprint_smiles, HASH_SEED

__all__ = [
    "SmilesError",
    "SmilesToken",
    "TokenKind",
    "Atom",
    "Bond",
    "MolGraph",
    "AROMATIC_BOND",
    "tokenize",
    "parse",
    "parse_smiles",
    "Fingerprint",
    "fingerprint",
    "fingerprint_smiles",
    "HASH_SEED",
]
