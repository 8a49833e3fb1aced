#!/usr/bin/env python3
"""Building, verifying, and tampering with certificates.

A certificate separates machine-checked steps (series reductions, break
conversions, group isomorphism checks) from named assumptions.  The
verifier re-executes every step from the parameter block and demands a
bit-exact match, so a single edited digit is caught at its step.
"""

from ramforge.errors import VerificationMismatchError
from ramforge.forge import (
    P3Parameters,
    build_p3_tower,
    derive_chat,
    derive_nonint,
    verify_certificate,
)

print("== the order-27 tower at (p, b, a) = (3, 1, 4) ==")
cert = build_p3_tower(P3Parameters.derive(3, 1, 4))
print(cert.render())

verify_certificate(cert.render())
print("verifier: OK")

print()
print("== tampering is caught at the edited step ==")
bad = cert.render().replace("out machine_break = 11", "out machine_break = 12")
try:
    verify_certificate(bad)
except VerificationMismatchError as exc:
    print("rejected:", exc.location)

print()
print("== composite targets ==")
big = derive_nonint("H", 3, 2, 1)
print("H(2,1) target: witness", big.witness, "inside", big.predicted)
a1d = derive_nonint("A1d", 3, 1, 1)
print("A(1,1) target: witness", a1d.witness, "inside", a1d.predicted)

print()
print("== a group with a tame complement ==")
chat = derive_chat("kind=H p=3 n=1 d=1", 2)
print("kind:", chat.kind, " witness:", chat.witness)
print("assumptions carried:")
for name in chat.assumptions:
    print("  -", name)
