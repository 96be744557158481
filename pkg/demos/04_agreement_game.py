"""The agreement game behind a certificate, solved exactly and approximately."""

from fractions import Fraction

import numpy as np

from nipdef import generate
from nipdef.game import GameMatrix, SkolemTable, adaptive_pool, build_committee, build_pool, game_value
from nipdef.setsystem import TypeOverA

S = generate("intervals:n=6")
p = TypeOverA.of_bits(S, (0, 1, 1, 1, 0, 0))
table = SkolemTable(S)

# hypotheses are witnesses of p's signs on small column tuples
for N in (0, 1, 2):
    pool = build_pool(S, p, table, N)
    B = GameMatrix.agreement(p, pool)
    sol = game_value(B)
    print(f"N={N}: {len(pool):2d} hypotheses, game value {sol.value}")

# the library doubles N until the value reaches 2/3
N, pool, B, sol = adaptive_pool(S, p, table)
print("adaptive N =", N, "value", sol.value)
print(np.array(B.entries))

# the same game through multiplicative weights, with an exact gap certificate
approx = game_value(B, method="approx", tolerance=Fraction(1, 48))
print("approx lower bound", approx.value, "certified gap", approx.gap)

# compress the optimal mixture to a small committee with a strict majority everywhere
committee = build_committee(B, sol.nu, pool)
for row, count in committee.members.counts:
    print(f"  {count} x {''.join(map(str, S.rows[row]))}")
print("target  ", "".join(map(str, p.bits)))
