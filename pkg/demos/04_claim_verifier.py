"""Run the whole-theory claim verifier over the generated corpus.

Run:  python3 demos/04_claim_verifier.py
"""

import collections

import amorphic as am

corpus = am.standard_corpus()
print(f"corpus: {len(corpus)} schemes")

tally = collections.Counter()
for name, scheme in corpus:
    report = am.verify_paper_claims(scheme)
    status = "FALSIFIED" if report.falsified else "ok"
    applicable = sum(1 for r in report.records if r.applicable)
    tally[status] += 1
    print(f"  {name:28s} {status:9s} ({applicable} claims applicable)")

print(f"totals: {dict(tally)}")

# the overlap-case analysis in detail for one amorphic scheme
scheme = dict(corpus)["net_n4_0-1-2-3-4"]
spec = am.spectral_decomposition(scheme)
triples = am.enumerate_fusing_tuples(scheme, 3)
labels = collections.Counter()
import itertools
for a, b in itertools.combinations(triples, 2):
    if len(set(a) & set(b)) == 2:
        labels[am.overlap_case(spec, a, b).label] += 1
print(f"net(4) overlap-case labels: {dict(labels)} "
      f"(surviving cases: {sorted(am.SURVIVING_CASES)})")
