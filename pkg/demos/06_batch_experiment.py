"""A batch run over the standard corpus, written as CSV."""

import sys

from nipdef.corpus import STANDARD_SPECS
from nipdef.experiment import run_experiment, write_csv

records = run_experiment(STANDARD_SPECS, seed=0, timing=True)
write_csv(records, sys.stdout)

print()
print("all pass:", all(r.verification == "pass" for r in records))
print("largest committee:", max(r.m for r in records), " largest K:", max(r.K for r in records))
print("total time: %.1f s" % (sum(r.runtime_ms for r in records) / 1000))
