"""SMILES tokenizer and parser for a practical organic-subset grammar.

Supported: organic-subset atoms (B, C, N, O, P, S, F, Cl, Br, I and the
aromatic lowercase b, c, n, o, p, s), bracket atoms with charge and explicit
hydrogen counts, bonds ``- = # :``, branches, single-digit and ``%nn`` ring
closures, and dot-disconnected components.  Stereo markers (``/ \\ @``) are
accepted and discarded with a warning.  Syntax only: no valence checks.

See GRAMMAR.md for the EBNF.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class SmilesError(ValueError):
    """Syntax error in a SMILES string, carrying the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class TokenKind(Enum):
    ORGANIC_ATOM = "organic-atom"
    BRACKET_ATOM = "bracket-atom"
    BOND = "bond"
    BRANCH_OPEN = "branch-open"
    BRANCH_CLOSE = "branch-close"
    RING_CLOSURE = "ring-closure"
    DOT = "dot"


@dataclass(frozen=True)
class SmilesToken:
    kind: TokenKind
    text: str
    position: int


# Two-character symbols first so "Cl" is not read as C + l.
_ORGANIC = ("Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I")
_AROMATIC = ("b", "c", "n", "o", "p", "s")
_BOND_CHARS = "-=#:/\\"

_BRACKET_RE = re.compile(
    r"\[(?P<isotope>\d+)?(?P<symbol>[A-Za-z][a-z]?)(?P<chiral>@{1,2})?"
    r"(?P<hcount>H\d*)?(?P<charge>\+\d+|-\d+|\++|-+)?\]"
)


def tokenize(smiles: str) -> list[SmilesToken]:
    """Split a SMILES string into tokens; concatenating token texts
    reconstructs the input exactly."""
    if not smiles:
        raise SmilesError("empty input", 0)
    tokens: list[SmilesToken] = []
    i = 0
    n = len(smiles)
    while i < n:
        c = smiles[i]
        if c == "[":
            end = smiles.find("]", i)
            if end < 0:
                raise SmilesError("unterminated bracket atom", i)
            tokens.append(SmilesToken(TokenKind.BRACKET_ATOM, smiles[i : end + 1], i))
            i = end + 1
        elif smiles.startswith(("Cl", "Br"), i):
            tokens.append(SmilesToken(TokenKind.ORGANIC_ATOM, smiles[i : i + 2], i))
            i += 2
        elif c in "BCNOPSFI" or c in _AROMATIC:
            tokens.append(SmilesToken(TokenKind.ORGANIC_ATOM, c, i))
            i += 1
        elif c in _BOND_CHARS:
            if c in "/\\":
                warnings.warn(
                    f"stereo bond marker {c!r} at offset {i} treated as a plain single bond",
                    stacklevel=2,
                )
            tokens.append(SmilesToken(TokenKind.BOND, c, i))
            i += 1
        elif c == "(":
            tokens.append(SmilesToken(TokenKind.BRANCH_OPEN, c, i))
            i += 1
        elif c == ")":
            tokens.append(SmilesToken(TokenKind.BRANCH_CLOSE, c, i))
            i += 1
        elif c.isdigit():
            tokens.append(SmilesToken(TokenKind.RING_CLOSURE, c, i))
            i += 1
        elif c == "%":
            if i + 2 >= n or not smiles[i + 1 : i + 3].isdigit():
                raise SmilesError("'%' ring closure needs two digits", i)
            tokens.append(SmilesToken(TokenKind.RING_CLOSURE, smiles[i : i + 3], i))
            i += 3
        elif c == ".":
            tokens.append(SmilesToken(TokenKind.DOT, c, i))
            i += 1
        else:
            raise SmilesError(f"unsupported character {c!r}", i)
    return tokens


@dataclass
class Atom:
    element: str
    aromatic: bool = False
    charge: int = 0
    hcount: int = 0


# Bond orders: 1, 2, 3 or AROMATIC_BOND for an explicit ':' bond.
AROMATIC_BOND = 4


@dataclass
class Bond:
    a: int
    b: int
    order: int = 1


@dataclass
class MolGraph:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    adjacency: list[list[int]] = field(default_factory=list)

    def add_atom(self, atom: Atom) -> int:
        self.atoms.append(atom)
        self.adjacency.append([])
        return len(self.atoms) - 1

    def add_bond(self, a: int, b: int, order: int, position: int) -> None:
        if a == b:
            raise SmilesError("bond endpoints must differ", position)
        key = (min(a, b), max(a, b))
        for bond in self.bonds:
            if (min(bond.a, bond.b), max(bond.a, bond.b)) == key:
                raise SmilesError("duplicate bond between the same atom pair", position)
        self.bonds.append(Bond(a, b, order))
        self.adjacency[a].append(b)
        self.adjacency[b].append(a)


_BOND_ORDER = {"-": 1, "=": 2, "#": 3, ":": AROMATIC_BOND, "/": 1, "\\": 1}


def _parse_bracket(text: str, position: int) -> Atom:
    m = _BRACKET_RE.fullmatch(text)
    if m is None:
        raise SmilesError(f"malformed bracket atom {text!r}", position)
    symbol = m.group("symbol")
    aromatic = symbol[0].islower()
    element = symbol.capitalize() if aromatic else symbol
    if m.group("chiral"):
        warnings.warn(
            f"chirality marker in {text!r} at offset {position} discarded",
            stacklevel=3,
        )
    h = m.group("hcount")
    hcount = 0
    if h:
        hcount = int(h[1:]) if len(h) > 1 else 1
    ch = m.group("charge")
    charge = 0
    if ch:
        if ch[0] in "+-" and len(ch) > 1 and ch[1:].isdigit():
            charge = int(ch[1:]) * (1 if ch[0] == "+" else -1)
        else:
            charge = len(ch) * (1 if ch[0] == "+" else -1)
    return Atom(element=element, aromatic=aromatic, charge=charge, hcount=hcount)


def parse(tokens: list[SmilesToken]) -> MolGraph:
    """Build a molecular graph from a token stream.

    Ring-closure digits must pair; branches must balance; bond tokens must
    be followed by an atom (or close a ring).
    """
    graph = MolGraph()
    prev_atom: Optional[int] = None
    pending_bond: Optional[int] = None
    pending_bond_pos = 0
    branch_stack: list[int] = []
    # ring number -> (atom index, bond order or None, position)
    open_rings: dict[int, tuple[int, Optional[int], int]] = {}

    for tok in tokens:
        if tok.kind in (TokenKind.ORGANIC_ATOM, TokenKind.BRACKET_ATOM):
            if tok.kind == TokenKind.ORGANIC_ATOM:
                aromatic = tok.text.islower()
                atom = Atom(element=tok.text.capitalize() if aromatic else tok.text,
                            aromatic=aromatic)
            else:
                atom = _parse_bracket(tok.text, tok.position)
            idx = graph.add_atom(atom)
            if prev_atom is not None:
                graph.add_bond(prev_atom, idx, pending_bond or 1, tok.position)
            pending_bond = None
            prev_atom = idx
        elif tok.kind == TokenKind.BOND:
            if prev_atom is None:
                raise SmilesError("bond token with no preceding atom", tok.position)
            if pending_bond is not None:
                raise SmilesError("two consecutive bond tokens", tok.position)
            pending_bond = _BOND_ORDER[tok.text]
            pending_bond_pos = tok.position
        elif tok.kind == TokenKind.RING_CLOSURE:
            if prev_atom is None:
                raise SmilesError("ring closure with no preceding atom", tok.position)
            num = int(tok.text[1:]) if tok.text.startswith("%") else int(tok.text)
            if num in open_rings:
                other, other_order, other_pos = open_rings.pop(num)
                order = 1
                if pending_bond is not None and other_order is not None:
                    if pending_bond != other_order:
                        raise SmilesError(
                            f"conflicting bond orders on ring closure {num}", tok.position
                        )
                    order = pending_bond
                elif pending_bond is not None:
                    order = pending_bond
                elif other_order is not None:
                    order = other_order
                graph.add_bond(other, prev_atom, order, tok.position)
            else:
                open_rings[num] = (prev_atom, pending_bond, tok.position)
            pending_bond = None
        elif tok.kind == TokenKind.BRANCH_OPEN:
            if prev_atom is None:
                raise SmilesError("branch opened before any atom", tok.position)
            if pending_bond is not None:
                raise SmilesError("bond token before branch open", tok.position)
            branch_stack.append(prev_atom)
        elif tok.kind == TokenKind.BRANCH_CLOSE:
            if pending_bond is not None:
                raise SmilesError("bond token with no following atom", pending_bond_pos)
            if not branch_stack:
                raise SmilesError("unmatched branch close", tok.position)
            prev_atom = branch_stack.pop()
        elif tok.kind == TokenKind.DOT:
            if pending_bond is not None:
                raise SmilesError("bond token with no following atom", pending_bond_pos)
            if branch_stack:
                raise SmilesError("dot inside an open branch", tok.position)
            prev_atom = None

    last = tokens[-1].position if tokens else 0
    if pending_bond is not None:
        raise SmilesError("bond token with no following atom", pending_bond_pos)
    if branch_stack:
        raise SmilesError("unclosed branch", last)
    if open_rings:
        num, (_, _, pos) = next(iter(open_rings.items()))
        raise SmilesError(f"unmatched ring closure {num}", pos)
    if not graph.atoms:
        raise SmilesError("no atoms in input", 0)
    return graph


def parse_smiles(smiles: str) -> MolGraph:
    """Tokenize and parse in one step."""
    return parse(tokenize(smiles))
