"""Anatomy of the symmetric attack.

Builds the eavesdropping isometry for a qutrit protocol at a chosen
disturbance, then verifies every structural constraint numerically: column
orthonormality, equal disturbance on every basis state of both protocol
bases, vanishing cross-block scalar products, and the no-error/error overlap
values s and w.
"""

import numpy as np

from mub_eve import (
    AttackParams,
    build_eve_states,
    build_isometry,
    disturbance_per_state,
    error_set_partition,
    protocol_bases,
    scalar_product_profile,
    w_bar,
)

D = 0.1
params = AttackParams(dim=3, bases_count=2, disturbance=D, w=w_bar(3, D))
print(f"attack parameters: d=3, two bases, D={D}, w={params.w:.4f} -> s={params.s:.4f}")
(u, v), (r, q) = params.coeff_pairs()
print(f"state coefficients: u={u:.6f} v={v:.6f} (no-error block), r={r:.6f} q={q:.6f} (error blocks)")

print("\nerror-state blocks (receiver shift mod d):")
blocks = {}
for pair, m in error_set_partition(3).items():
    blocks.setdefault(m, []).append(pair)
for m in sorted(blocks):
    print(f"  block {m}: {sorted(blocks[m])}")

eve = build_eve_states(params)
profile = scalar_product_profile(eve)
print("\nmeasured scalar-product groups:")
print(f"  x={abs(profile.x):.2e} y={abs(profile.y):.2e} z={abs(profile.z):.2e} t={abs(profile.t):.2e} (all must vanish)")
print(f"  s={profile.s:.12f} (expected {params.s:.12f})")
print(f"  w={profile.w:.12f} (expected {params.w:.12f})")

iso = build_isometry(params)
print(f"\nisometry shape {iso.matrix.shape}, unitarity residual {iso.unitarity_residual():.2e}")
for basis in protocol_bases(3, 2):
    dist = disturbance_per_state(iso, basis)
    print(f"per-state disturbance in {basis.label:13s} basis: {np.array_str(dist, precision=12)}")
