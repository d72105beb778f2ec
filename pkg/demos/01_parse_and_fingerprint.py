"""Parse SMILES strings and compare circular fingerprints.

Shows: tokenization, positioned syntax errors, atom-order invariance,
and how structural edits flip fingerprint bits.
"""

from lipidscreen.chem import SmilesError, fingerprint_smiles, parse_smiles, tokenize

SMILES = "CCN(C)CC(=O)OCCCC"

print(f"input: {SMILES}")
tokens = tokenize(SMILES)
print(f"tokens ({len(tokens)}): " + " ".join(t.text for t in tokens))

graph = parse_smiles(SMILES)
print(f"graph: {len(graph.atoms)} atoms, {len(graph.bonds)} bonds")

fp = fingerprint_smiles(SMILES)
print(f"fingerprint: {fp.nbits} bits, {fp.popcount} set, radius {fp.radius}")

# The same molecule written from the other end maps to identical bits.
reversed_form = "CCCCOC(=O)CN(C)CC"
fp2 = fingerprint_smiles(reversed_form)
print(f"rewrite {reversed_form!r} identical: {(fp.bits == fp2.bits).all()}")

# A single-atom edit (ester -> thioester) changes the neighborhood hashes.
edited = SMILES.replace("OCCCC", "SCCCC")
fp3 = fingerprint_smiles(edited)
changed = int((fp.bits != fp3.bits).sum())
print(f"edit {edited!r} flips {changed} bits")

# Malformed input fails with the exact character offset.
try:
    parse_smiles("CCN(C)CC(=O")
except SmilesError as exc:
    print(f"malformed input rejected: {exc}")
