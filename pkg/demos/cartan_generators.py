"""so(n) generators read off from Hurwitz-type generating matrices.

Run: python3 demos/cartan_generators.py
"""
from hurwitzmaps.cartanweyl import (
    commutator_table,
    extract_generators,
    generating_matrices,
    ladder_relations,
    lie_closure_rank,
    so5_generators,
)

for n in (4, 8, 16):
    g = extract_generators(generating_matrices(n))
    print(f"so({n}): {len(g)} generators, rank {g.rank()}, Lie closure rank {lie_closure_rank(g)}")

table = commutator_table(so5_generators())
print("so(5) brackets with S1:")
for (a, b), entry in table.items():
    if a == "S1":
        terms = " + ".join(f"{c}*{k}" if c not in (1, -1) else ("-" if c == -1 else "") + k
                           for k, c in entry.coefficients.items()) or "0"
        print(f"  [S1, {b}] = {terms}")

print("ladder operators:")
for rel in ladder_relations():
    if rel["holds"]:
        print(f"  [{rel['cartan']}, {rel['ladder']}] = {rel['eigenvalue'].replace('+-', '-')} * {rel['ladder']}")
    else:
        print(f"  {rel['ladder']} is not an eigenvector of ad {rel['cartan']}")
