"""Complex roots of the squared-distance function.

The imaginary part of the root pair closest to the real parameter
interval sets the exponential decay rate of the quadrature error. For
circles, azimuthal slices of surfaces of revolution, and polar slices of
spheres the roots have closed forms; everything else uses a complex
Newton iteration.
"""
import math

import numpy as np

from layerr import (
    Sphere,
    Spheroid,
    axisym_phi_root,
    circle_root,
    newton_root,
    paper_blob,
    sphere_theta_root,
    theta_line,
)

# circle in the plane: root offset grows with distance
print("circle radius 1, target on the x-axis:")
for xv in (1.2, 1.5, 2.0, 3.0):
    r = circle_root(1.0, np.array([xv, 0.0, 0.0]))
    print(f"  x={xv:.1f}: root {r.value:.6f}  lambda={r.lam:.4f}  |R^2|={r.residual:.1e}")

# sphere polar root on the axis: purely imaginary, log of the radius ratio
r = sphere_theta_root(1.0, 0.0, np.array([0.0, 0.0, 2.0]))
print(f"\nsphere polar root above the pole at |z|=2: {r.value:.6f} (ln 2 = {math.log(2):.6f})")
r = sphere_theta_root(1.0, 0.0, np.array([0.0, 0.0, 0.5]))
print(f"interior mirror at |z|=0.5 has the same offset: {r.value:.6f}")

# spheroid azimuthal root vs Newton on the analytic parametrization
sp = Spheroid(1.0, 3.0)
x = np.array([0.0, 2.0, 0.0])
ana = axisym_phi_root(sp, math.pi / 2, x)
print(f"\nspheroid azimuthal root (closed form): {ana.value:.10f}")

# the blob has no closed forms; Newton handles it
blob = paper_blob()
x = 1.3 * np.real(blob.position(1.1, 2.0))
newt = newton_root(theta_line(blob, 2.0), "theta", 2.0, x, complex(1.1, 0.1), 1.2, nearest=True)
print(f"blob polar root by Newton:             {newt.value:.10f}  |R^2|={newt.residual:.1e}")

# root trajectory along a polar sweep: the decay-driving quantity
print("\nimaginary part of the azimuthal root along the polar angle")
print("(sphere, target at distance 0.1 over the equator):")
x = np.array([1.1, 0.0, 0.0])
for theta in (1.0, 1.3, math.pi / 2, 1.9, 2.2):
    root = axisym_phi_root(Sphere(1.0), theta, x)
    print(f"  theta={theta:.2f}: Im ={root.value.imag:.4f}")
