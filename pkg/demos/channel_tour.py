#!/usr/bin/env python3
"""Tour of the built-in two-level channels.

Each preset couples a qubit to one of the standard noise processes —
depolarizing, phase flip, bit flip, bit-phase flip, amplitude damping —
with full rotation controls.  This script prints, for each channel, the
GKS coefficient matrix, the assembled coherence-vector generator, and
the structural facts that drive the controllability analysis later on:
unitality, the trace of the linear part, and the drift fixed point.
"""
import numpy as np

from lindbladctl import (PRESET_NAMES, check_psd, fixed_point, is_unital,
                         m_matrix, preset, purity, split_trace)

for name in PRESET_NAMES:
    system = preset(name, gamma=0.5)
    d = system.dissipator
    print(f"== {name} (gamma = 0.5) ==")
    print("GKS matrix:")
    print(np.round(system.gks.entries, 12))
    psd = check_psd(system.gks)
    print(f"admissible (PSD): {psd.is_psd}, "
          f"min eigenvalue {psd.min_eigenvalue:.3g}"
          + (", on the PSD boundary" if psd.on_boundary else ""))
    print("linear part of the dissipative generator:")
    print(np.round(d.linear, 12))
    print(f"translation: {np.round(d.translation, 12)}")
    print(f"unital: {is_unital(d)}")
    alpha, _ = split_trace(d)
    print(f"isotropic contraction rate tr/n = {alpha:.4f}")
    fp = fixed_point(system.drift)
    if fp is None:
        print("fixed point: a whole subspace is stationary "
              "(singular linear part)")
    else:
        print(f"fixed point: rho = {np.round(fp.rho, 12)}, "
              f"purity {purity(fp):.6f}")
    print()

# The amplitude-damping generator decomposes exactly into three of the
# twelve tabulated elementary generators: two diagonal dampings and one
# pure translation.  The translation is what makes the channel
# non-unital and gives it a pure fixed state.

gamma = 0.5
ad = preset("amplitude_damping", gamma=gamma)
combo = 0.5 * gamma * (m_matrix(10).homogeneous + m_matrix(11).homogeneous
                       - m_matrix(5).homogeneous)
dev = np.max(np.abs(ad.dissipator.homogeneous - combo))
print(f"amplitude damping equals (gamma/2)(M10 + M11 - M5) to {dev:.3g}")

# By contrast the four unital channels have zero translation, so the
# maximally mixed state (the origin) is always stationary for them, and
# no control can ever increase the coherence-vector norm.
