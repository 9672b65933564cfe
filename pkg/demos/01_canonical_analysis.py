"""Canonical analysis of the bundled EU CO2 model, step by step.

Loads the fitted second-order model, decomposes its interaction
matrix, shifts to the stationary point, and reads off which variable
combinations push the predicted CO2 concentration up or down.

Run from the repository root:  python3 demos/01_canonical_analysis.py
"""

import numpy as np

import rsmcanon as rc

model = rc.load_bundled_eu_model()
print("Variables:", ", ".join(model.names))
print(f"Transformed response: ({model.response_label}) ** {model.exponent}")
print(f"Intercept (transformed scale): {model.intercept:g}")
print()

print("Interaction matrix B (absolute units):")
print(np.array2string(model.interaction.array, precision=4))
print()

# Eigenstructure: each eigenvalue weighs one canonical direction.
canon = rc.canonicalize(model)
print("Eigenvalues, descending |lambda|:")
for k, lam in enumerate(canon.lambdas, start=1):
    print(f"  lambda_{k} = {lam: .6e}   z{k} ~ {canon.axis_label(k)}")
print()

print(f"Stationary point kind: {canon.kind}")
for name, value in zip(canon.names, canon.center):
    print(f"  {name:>3} = {value:,.1f}")
print(f"  Y0 = {canon.y0:.6e} (transformed scale)")
print(f"  predicted level at the stationary point: "
      f"{rc.predict_response(model, canon.center):.2f} {model.response_label}")
print()

# The exponent is negative, so pushing the transformed response DOWN
# pushes the natural-units response UP. Negative-eigenvalue directions
# therefore raise CO2; positive ones lower it.
at_center = rc.predict_response(model, canon.center)
print("Direction of effect along each canonical axis (step of 500 units):")
for k in range(1, 5):
    moved = rc.predict_response(model, canon.center + 500.0 * canon.axes[:, k - 1])
    arrow = "raises" if moved > at_center else "lowers"
    print(f"  z{k} (lambda {'<' if canon.lambdas[k-1] < 0 else '>'} 0): "
          f"moving along it {arrow} CO2 by {abs(moved - at_center):.4f} ppmv")
print()

# Round trip between original and canonical coordinates.
x = canon.center + np.array([1000.0, -500.0, 20.0, 300.0])
z = rc.to_canonical(canon, x)
print("A sample point, in canonical coordinates:", np.round(z, 3))
print("Mapped back, max error:",
      np.abs(rc.from_canonical(canon, z) - x).max())
