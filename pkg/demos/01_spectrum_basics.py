"""Build a small scheme, validate it, and inspect its spectral data.

Run:  python3 demos/01_spectrum_basics.py
"""

import numpy as np

import amorphic as am

# the binary Hamming scheme H(3,2): vertices of the cube, classes by distance
scheme = am.gen_hamming_binary(3)
print(f"H(3,2): v={scheme.v}, d={scheme.d}, valencies={scheme.valencies}")

# intersection numbers are exact integers
p = scheme.intersection.p
print(f"p_11^2 = {p[1, 1, 2]} (common neighbors of a pair at distance 2)")

spec = am.spectral_decomposition(scheme)
print("first eigenmatrix P (row 0 = valencies):")
print(spec.P.astype(int))
print(f"multiplicities: {spec.multiplicities}")

# PQ = vI ties the two eigenmatrices together
resid = np.max(np.abs(spec.P @ spec.Q - scheme.v * np.eye(scheme.d + 1)))
print(f"max |PQ - vI| = {resid:.2e}")

# the minimal idempotents and the Krein parameters
basis = am.idempotents(scheme, spec)
K = am.krein_parameters(scheme, basis)
print(f"all Krein parameters nonnegative: {K.q.min() >= 0}")

# H(m,2) is formally self-dual up to reordering the idempotents
sigma = am.formal_duality_permutation(spec)
print(f"self-duality permutation: {sigma}")
