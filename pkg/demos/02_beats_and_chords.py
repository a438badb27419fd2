"""
Beats, chords and certificates
==============================

A maximal critical trio is classified by a chain of structure tags. Each
impure step hands a smaller trio to the next level until a pure structure is
reached. The chain is written out as a certificate and re-checked by a
verifier that never calls the classifier.
"""

from kemperman import build_group, decompose, match_structures, parse_trio, verify_certificate
from kemperman.certify import parse, render

Z8 = build_group("Z8")
t = parse_trio("{0,1,5};{0,1,5};{4,1,5}", Z8)

# Every tag the trio admits, in search order.
for tag in match_structures(t):
    print(f"{tag.kind.value:13s} H={tag.H} R={tag.R}")

# The certificate picks the first tag at each level.
cert = decompose(t)
print("\nchain:", " -> ".join(k.value for k in cert.kinds))
for step in cert.steps:
    print("  universe", step.universe, "trio", step.trio)

# Documents are plain JSON; parsing and verification are separate steps.
text = render(cert)
print("\n" + text)
print("verifier:", verify_certificate(parse(text)))

# A prime-order example: two progressions with a common difference.
Z7 = build_group("Z7")
chord = parse_trio("{0,1};{0,1,2};{1,2,3}", Z7)
print("Z7 trio:", decompose(chord).kinds[0].value)
