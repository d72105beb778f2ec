import warnings

import pytest
from hypothesis import given, strategies as st

from lipidscreen.chem import (
    AROMATIC_BOND,
    MolGraph,
    SmilesError,
    TokenKind,
    parse,
    parse_smiles,
    tokenize,
)


def kinds(smiles):
    return [t.kind for t in tokenize(smiles)]


class TestTokenize:
    def test_simple_chain(self):
        assert kinds("CCO") == [TokenKind.ORGANIC_ATOM] * 3

    def test_branch_with_bond(self):
        assert kinds("C(=O)O") == [
            TokenKind.ORGANIC_ATOM,
            TokenKind.BRANCH_OPEN,
            TokenKind.BOND,
            TokenKind.ORGANIC_ATOM,
            TokenKind.BRANCH_CLOSE,
            TokenKind.ORGANIC_ATOM,
        ]

    def test_empty_input(self):
        with pytest.raises(SmilesError) as exc:
            tokenize("")
        assert "empty" in str(exc.value)

    def test_two_char_atoms(self):
        toks = tokenize("ClCBr")
        assert [t.text for t in toks] == ["Cl", "C", "Br"]

    def test_percent_ring_closure(self):
        toks = tokenize("C%12CC%12")
        assert toks[1].kind == TokenKind.RING_CLOSURE
        assert toks[1].text == "%12"

    def test_bracket_atom_kept_whole(self):
        toks = tokenize("[NH4+]")
        assert toks[0].kind == TokenKind.BRACKET_ATOM
        assert toks[0].text == "[NH4+]"

    def test_unsupported_character_reports_offset(self):
        with pytest.raises(SmilesError) as exc:
            tokenize("CCX")
        assert exc.value.position == 2

    def test_stereo_bond_warns(self):
        with pytest.warns(UserWarning, match="stereo"):
            tokenize("F/C=C/F")

    def test_positions_strictly_increasing(self, corpus):
        for smi in corpus:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                toks = tokenize(smi)
            positions = [t.position for t in toks]
            assert positions == sorted(set(positions))
            assert all(t.text for t in toks)

    def test_round_trip_corpus(self, corpus):
        for smi in corpus:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                toks = tokenize(smi)
            assert "".join(t.text for t in toks) == smi


class TestParse:
    def test_chain(self):
        g = parse_smiles("CCO")
        assert len(g.atoms) == 3
        assert len(g.bonds) == 2
        assert all(b.order == 1 for b in g.bonds)

    def test_cyclopropane(self):
        g = parse_smiles("C1CC1")
        assert len(g.atoms) == 3
        assert len(g.bonds) == 3
        assert all(len(adj) == 2 for adj in g.adjacency)

    def test_bond_orders(self):
        g = parse_smiles("C=C")
        assert g.bonds[0].order == 2
        g = parse_smiles("C#N")
        assert g.bonds[0].order == 3
        g = parse_smiles("c:c")
        assert g.bonds[0].order == AROMATIC_BOND

    def test_aromatic_flag(self):
        g = parse_smiles("c1ccccc1")
        assert all(a.aromatic for a in g.atoms)
        assert all(a.element == "C" for a in g.atoms)

    def test_bracket_charge_and_h(self):
        g = parse_smiles("[NH4+]")
        atom = g.atoms[0]
        assert atom.element == "N"
        assert atom.charge == 1
        assert atom.hcount == 4
        g = parse_smiles("[O-]")
        assert g.atoms[0].charge == -1
        g = parse_smiles("[Fe+3]")
        assert g.atoms[0].charge == 3

    def test_chirality_discarded_with_warning(self):
        with pytest.warns(UserWarning, match="chirality"):
            g = parse_smiles("C[C@H](N)O")
        assert len(g.atoms) == 4

    def test_dot_disconnect(self):
        g = parse_smiles("CC.O")
        assert len(g.atoms) == 3
        assert len(g.bonds) == 1

    def test_branch_topology(self):
        g = parse_smiles("CC(C)O")
        # central atom has three neighbors
        assert sorted(len(adj) for adj in g.adjacency) == [1, 1, 1, 3]

    def test_ring_bond_order_at_either_end(self):
        g1 = parse_smiles("C=1CCCCC=1")
        g2 = parse_smiles("C=1CCCCC1")
        closure1 = [b for b in g1.bonds if {b.a, b.b} == {0, 5}][0]
        closure2 = [b for b in g2.bonds if {b.a, b.b} == {0, 5}][0]
        assert closure1.order == closure2.order == 2

    @pytest.mark.parametrize(
        "smiles,needle",
        [
            ("C1CC", "unmatched ring closure"),
            ("CC(", "unclosed branch"),
            ("CC(C", "unclosed branch"),
            ("CC=", "no following atom"),
            ("C=.C", "no following atom"),
            ("C=)", "no following atom"),
            ("=CC", "no preceding atom"),
            ("C)", "unmatched branch close"),
            ("C11", "endpoints must differ"),
            ("C1CC1C1CC1C11", "endpoints must differ"),
            ("C=1CCCCC-1", "conflicting bond orders"),
            ("C1CC1.1", "ring closure with no preceding atom"),
        ],
    )
    def test_malformed_inputs(self, smiles, needle):
        with pytest.raises(SmilesError) as exc:
            parse_smiles(smiles)
        assert needle in exc.value.message
        assert 0 <= exc.value.position <= len(smiles)

    def test_duplicate_ring_bond_rejected(self):
        with pytest.raises(SmilesError, match="duplicate bond"):
            parse_smiles("C12CC12")

    def test_invariants_hold_on_corpus(self, corpus):
        for smi in corpus:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                g = parse_smiles(smi)
            n = len(g.atoms)
            seen = set()
            for b in g.bonds:
                assert 0 <= b.a < n and 0 <= b.b < n and b.a != b.b
                key = (min(b.a, b.b), max(b.a, b.b))
                assert key not in seen
                seen.add(key)
            # adjacency consistent with bond list
            rebuilt = [[] for _ in range(n)]
            for b in g.bonds:
                rebuilt[b.a].append(b.b)
                rebuilt[b.b].append(b.a)
            assert [sorted(x) for x in rebuilt] == [sorted(x) for x in g.adjacency]


@given(st.text(min_size=1, max_size=30))
def test_parse_totality(text):
    """parse either returns a valid graph or a positioned error, never both."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g = parse_smiles(text)
    except SmilesError as exc:
        assert isinstance(exc.position, int)
        return
    assert isinstance(g, MolGraph)
    assert g.atoms
    for b in g.bonds:
        assert b.a != b.b
