"""Circular (Morgan-style) fingerprints over parsed molecular graphs.

Each atom's r-neighborhood for r = 0..radius is hashed with a pinned 64-bit
FNV-1a variant and folded modulo the bit length, so fingerprints are
bit-stable across platforms and invariant to atom input order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .smiles import MolGraph, parse_smiles

# Pinned seed: changing it changes every fingerprint, so it is recorded in
# checkpoints and screening report headers.
HASH_SEED = 0x5CA1AB1E0F00D

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def _hash64(data: bytes, seed: int = HASH_SEED) -> int:
    h = (_FNV_OFFSET ^ seed) & _MASK64
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass
class Fingerprint:
    bits: np.ndarray  # uint8 0/1 vector of length nbits
    nbits: int
    radius: int

    @property
    def popcount(self) -> int:
        return int(self.bits.sum())

    def on_bits(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.bits)]


def _initial_ids(graph: MolGraph) -> list[int]:
    ids = []
    for i, atom in enumerate(graph.atoms):
        enc = (
            f"{atom.element}|{int(atom.aromatic)}|{atom.charge}|{atom.hcount}"
            f"|{len(graph.adjacency[i])}"
        ).encode()
        ids.append(_hash64(enc))
    return ids


def fingerprint(graph: MolGraph, radius: int = 2, nbits: int = 2048) -> Fingerprint:
    """Hash every atom's r-neighborhood for r <= radius into a bit vector."""
    if not 0 <= radius <= 4:
        raise ValueError(f"radius must be in [0, 4], got {radius}")
    if nbits < 256 or nbits > 65536 or nbits & (nbits - 1):
        raise ValueError(f"nbits must be a power of two in [256, 65536], got {nbits}")
    if not graph.atoms:
        raise ValueError("cannot fingerprint an empty graph")

    bond_order = {}
    for bond in graph.bonds:
        bond_order[(bond.a, bond.b)] = bond.order
        bond_order[(bond.b, bond.a)] = bond.order

    bits = np.zeros(nbits, dtype=np.uint8)
    ids = _initial_ids(graph)
    for h in ids:
        bits[h % nbits] = 1
    for _ in range(radius):
        nxt = []
        for i in range(len(graph.atoms)):
            if not graph.adjacency[i]:
                # isolated atom: the neighborhood stops growing at r=0
                nxt.append(ids[i])
                continue
            env = sorted((bond_order[(i, j)], ids[j]) for j in graph.adjacency[i])
            enc = b"%016x" % ids[i] + b"".join(
                b"|%d:%016x" % (o, nid) for o, nid in env
            )
            h = _hash64(enc)
            nxt.append(h)
            bits[h % nbits] = 1
        ids = nxt
    return Fingerprint(bits=bits, nbits=nbits, radius=radius)


def fingerprint_smiles(smiles: str, radius: int = 2, nbits: int = 2048) -> Fingerprint:
    return fingerprint(parse_smiles(smiles), radius=radius, nbits=nbits)
