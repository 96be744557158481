"""Shattering, VC dimension and the dual system on a few small families."""

import numpy as np

from nipdef import generate, vc_dim
from nipdef.setsystem import dual, sauer_shelah_bound, shattered_witness, shatters, trace_count

# thresholds: rows are {x < t}
T = generate("thresholds:n=6")
print(T)
print("vc(thresholds) =", vc_dim(T), "witness", shattered_witness(T))

# two points can never be split "right in, left out"
print("shatters {1, 3}?", shatters(T, [1, 3]))

# intervals pick up one more dimension
I = generate("intervals:n=8")
print("vc(intervals) =", vc_dim(I), " rows:", I.nrows)

# trace counts against the Sauer-Shelah polynomial, for growing prefixes
d = vc_dim(I)
counts = np.array([trace_count(I, range(k)) for k in range(1, 9)])
bounds = np.array([sauer_shelah_bound(k, d) for k in range(1, 9)])
print("traces:", counts)
print("bound: ", bounds)
assert (counts <= bounds).all()

# the dual swaps points and concepts
for spec in ("powerset:n=3", "intervals:n=6", "halfplane-grid:w=3,h=3"):
    S = generate(spec)
    print(f"{spec:24s} vc={vc_dim(S)}  dual vc={vc_dim(dual(S))}  (< {2 ** (vc_dim(S) + 1)})")
