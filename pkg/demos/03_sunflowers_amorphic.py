"""Fusing hypergraphs, 3-sunflower cores, and amorphicity certificates.

Run:  python3 demos/03_sunflowers_amorphic.py
"""

import amorphic as am

# the net scheme on 16 points with all five parallel classes kept apart
scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
print(f"net(4) singletons: v={scheme.v}, d={scheme.d}")

H = am.build_fusing_hypergraph(scheme, 3)
print(f"fusing 3-hypergraph: {len(H.edges)} edges, complete = {H.is_complete()}")

cores = am.sunflower_cores(H)
print(f"3-sunflower cores: {[c.core for c in cores]}")

# two distinct cores already force amorphicity; the certificate is the
# canonical eigenmatrix form with integer parameters
verdict = am.is_amorphic(scheme)
cert = verdict.certificate
print(f"amorphic: {verdict.amorphic} (exhaustive oracle ran: {verdict.oracle_checked})")
print(f"canonical parameters: n = {cert.n}, t = {cert.t} ({cert.sign})")

# every nontrivial class is strongly regular of Latin square type
spec = am.spectral_decomposition(scheme)
for i in range(1, scheme.d + 1):
    info = am.srg_info(spec, i)
    print(f"class {i}: restricted eigenvalues {info.restricted}, latin = {info.latin}")

# contrast: H(3,2) has a path-shaped fusing graph and is not amorphic
h3 = am.gen_hamming_binary(3)
shape = am.graph_shape(am.build_fusing_hypergraph(h3, 2))
print(f"H(3,2) fusing graph: connected={shape.connected}, path={shape.is_path}")
print(f"H(3,2) amorphic: {am.is_amorphic(h3).amorphic}")
