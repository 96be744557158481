"""Certificates that define every type of a family, and one template for all of them."""

from nipdef import compress_type, decode, generate, make_template, verify_certificate
from nipdef.certificate import count_types_check
from nipdef.game import SkolemTable

S = generate("halfplane-grid:w=3,h=3")
print(S.nrows, "types over", S.ncols, "grid points")

table = SkolemTable(S)
certs = [compress_type(S, p, table=table) for p in S.types()]
print("committee sizes m:", sorted({c.m for c in certs}))
print("longest constraint:", max(c.k_max for c in certs))

# one certificate in detail
cert = certs[len(certs) // 2]
for chi, tr in zip(cert.members, cert.traces):
    print("  ", chi.to_list(), "->", "".join(map(str, tr)))
print("decodes to", "".join(map(str, decode(S, cert).bits)), "target", "".join(map(str, cert.info["type"])))
print(verify_certificate(S, cert))

# pad everything to one shape
template, padded = make_template(certs)
print("template", template.to_dict())
assert all(decode(S, a) == decode(S, b) for a, b in zip(certs, padded))
print(count_types_check(S, template.K))
