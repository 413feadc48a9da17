#!/usr/bin/env python3
"""Accessibility is necessary for controllability, never sufficient.

The phase-flip channel makes the point sharply.  Its Lie closure is the
full gl(3) — the accessibility rank condition holds, and the reachable
sets have nonempty interior — yet the dynamics is unital and strictly
contracting, so no control strategy can ever restore a state that noise
has degraded.  Noncontrollability certificates turn those obstructions
into checkable facts.
"""
import numpy as np

from lindbladctl import (accessibility, closure, m_matrix,
                         noncontrollability_certificates, preset)

# First the closure computation itself, on the raw generators: the
# three rotations plus the phase-flip damping M12.

c = closure([m_matrix(k) for k in (1, 2, 3, 12)])
print(f"closure of {{M1, M2, M3, M12}}: dimension {c.dim}, "
      f"reached in {c.generations} bracket generations, "
      f"classified as {c.classification}")

# The same verdict through the high-level interface, for each preset.
# Only gl(n) and gl(n) x R^n closures give accessibility; the
# depolarizing channel commutes with every rotation and stays stuck at
# a four-dimensional closure.

print(f"\n{'channel':<20} {'dim':>3} {'classification':<22} accessible")
for name in ("depolarizing", "phase_flip", "bit_flip", "bit_phase_flip",
             "amplitude_damping"):
    acc = accessibility(preset(name, gamma=0.5))
    print(f"{name:<20} {acc.closure_dim:>3} {acc.classification:<22} "
          f"{acc.accessible}")

# Now the certificates.  For the phase flip, all three fire: the
# negative trace bounds det g(t) < 1 for t > 0, unitality nests the
# reachable sets inside shrinking balls, and any nonzero dissipation
# rules out exact controllability in fixed finite time.

for name in ("phase_flip", "amplitude_damping"):
    system = preset(name, gamma=0.5)
    certs = noncontrollability_certificates(system)
    print(f"\n== {name} ==")
    for cert in certs.certificates:
        status = "active" if cert.active else "inactive"
        print(f"  [{status:>8}] {cert.name}: {cert.statement}")
        if cert.value is not None:
            print(f"             value: {cert.value:.6g}")
    if certs.note:
        print(f"  note: {certs.note}")

# Amplitude damping escapes the unital certificate: its translation
# part relaxes every state toward a pure fixed state, so purity can be
# pumped back up and the closure of the reachable set grows to the full
# ball as t -> infinity.  It is still not controllable in any fixed
# finite time.

system = preset("amplitude_damping", gamma=0.5)
drift = system.drift.linear
print(f"\namplitude damping: eigenvalues of the drift linear part: "
      f"{np.round(np.linalg.eigvals(drift), 6)}")
