"""The three surface families and the two polar-angle maps.

Surfaces are parametrized over (theta, phi); the Gauss-Legendre variable
t reaches theta either linearly or through theta = pi - arccos(t). Under
the cosine map a sphere has a perfectly uniform area element, which is
why it is the default.
"""
import math

import numpy as np

from layerr import LINEAR_MAP, Sphere, Spheroid, paper_blob

sphere = Sphere(1.0)
sphere_lin = Sphere(1.0, LINEAR_MAP)
spheroid = Spheroid(1.0, 3.0)
blob = paper_blob()

print("area element across the polar range (phi = 0):")
print(f"{'t':>6} {'sphere/cos':>12} {'sphere/lin':>12} {'spheroid':>12} {'blob':>12}")
for t in (-0.9, -0.5, 0.0, 0.5, 0.9):
    row = [s.area_element(t, 0.0) for s in (sphere, sphere_lin, spheroid, blob)]
    print(f"{t:6.2f} {row[0]:12.6f} {row[1]:12.6f} {row[2]:12.6f} {row[3]:12.6f}")

print("\ngrid anisotropy |d gamma/dt| / |d gamma/dphi| (phi = 0):")
for t in (-0.9, 0.0, 0.9):
    vals = [s.grid_anisotropy(t, 0.0) for s in (sphere, spheroid, blob)]
    print(f"  t={t:+.1f}: sphere {vals[0]:7.3f}  spheroid {vals[1]:7.3f}  blob {vals[2]:7.3f}")

# analytic continuation: one parameter may be complex
w = 1.0 + 0.3j
pos, d_theta, d_phi = spheroid.eval_sph(w, 0.5)
print("\nspheroid position at complex polar angle", w, ":")
print("  ", np.round(pos, 6))

# local polynomial surrogates back the root finding near the poles
surro = blob.taylor_surrogate(0.8, 1.2, q=4)
exact = np.real(blob.position(1.0, 1.2))
approx, _ = surro.eval_theta(1.0)
print("\nblob Taylor surrogate at offset 0.2 from its center:")
print("   exact   ", np.round(exact, 8))
print("   surrogate", np.round(np.real(approx), 8))
print("   max deviation", np.max(np.abs(np.real(approx) - exact)))
