"""Small multisets of points that see every row with the right frequency."""

from fractions import Fraction

from nipdef import Measure, approx_error, find_approximation, generate, min_approximation_size
from nipdef.approx import Multiset, deviations
from nipdef.setsystem import complement

I = generate("intervals:n=6")
mu = Measure.uniform(6)

# a hand-picked multiset and its worst row
Y = Multiset.from_indices([1, 4])
print("error of {1, 4}:", approx_error(I, mu, Y))

# the search returns a verified approximation, smallest first on small instances
for eps in ("1/2", "1/3", "1/4", "1/6"):
    Y = find_approximation(I, mu, Fraction(eps), 12)
    print(f"eps={eps:4s} Y={Y.elements()}  error={approx_error(I, mu, Y)}")

# minimum sizes stay flat as the universe grows
for n in (4, 8, 12):
    T = generate(f"thresholds:n={n}")
    print(f"thresholds n={n:2d}: minimum 1/4-approximation has size",
          min_approximation_size(T, Measure.uniform(n), Fraction(1, 4)))

# a skewed measure; the deviation of a row and of its complement match exactly
mu = Measure((Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32), Fraction(1, 32)))
Y = find_approximation(I, mu, Fraction(1, 5), 16)
d = deviations(I, mu, Y)
dc = deviations(complement(I), mu, Y)
print("Y =", Y.elements(), " max |dev| =", max(map(abs, d)), " complements agree:", [abs(x) for x in d] == [abs(x) for x in dc])
