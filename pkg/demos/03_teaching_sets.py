"""Teaching sets: a few points on which one concept differs from all others."""

from nipdef import generate, isolate, t_budget, vc_dim
from nipdef.setsystem import dual
from nipdef.teaching import SignedTuple, isolate_under_constraint, k_budget, min_teaching_set, teaching_sequence

print("budgets t(n):", [t_budget(n) for n in range(6)])

for spec in ("thresholds:n=8", "intervals:n=8", "powerset:n=3", "halfplane-grid:w=3,h=3"):
    S = generate(spec)
    ts = isolate(S)
    best = min_teaching_set(S, ts.concept)
    print(f"{spec:24s} concept {''.join(map(str, S.rows[ts.concept]))} points {ts.points} "
          f"(minimum {len(best)}, budget {t_budget(vc_dim(S))})")

# peel a whole family, one concept at a time
S = generate("intervals:n=4")
for ts in teaching_sequence(S):
    print("  ", "".join(map(str, S.rows[ts.concept])), "taught by", ts.points)

# isolation inside a constraint: rows with bit 1 at column 2 and bit 0 at column 5
S = generate("intervals:n=8")
chi = SignedTuple(((2, 0), (5, 1)))
iso = isolate_under_constraint(S, chi)
print("constraint", chi.to_list(), "-> p0", "".join(map(str, iso.p0.bits)), "A0", iso.A0,
      "budget", iso.k_budget, "=", k_budget(vc_dim(dual(S)), len(chi)))
