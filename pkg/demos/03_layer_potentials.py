"""Evaluating layer potentials and measuring their quadrature error.

The harmonic single layer with unit density over a sphere has a known
closed form (constant inside, Coulomb-like outside), which makes a good
first check. The measured error compares the working grid against a
five-fold upsampled reference.
"""
import math

import numpy as np

from layerr import (
    Sphere,
    grid,
    harmonic_double,
    harmonic_single,
    measured_error,
    potential_quadrature,
    unit_density,
)

sphere = Sphere(1.0)
g = grid(30, 60)
single = harmonic_single()
sigma = unit_density()

print("harmonic single layer, unit density, sphere of radius 1:")
for zeta in (0.4, 0.8, 1.5, 2.0, 3.0):
    x = [0.0, zeta, 0.0]
    u = potential_quadrature(sphere, single, sigma, g, x)
    exact = 4 * math.pi if zeta < 1 else 4 * math.pi / zeta
    print(f"  |x|={zeta:.1f}: u={u:.12f}  closed form {exact:.12f}  dev {abs(u - exact):.1e}")

print("\nharmonic double layer identity (outward normal):")
for x, where in (([0.3, 0.2, -0.1], "inside"), ([1.6, 0.9, 0.4], "outside")):
    u = potential_quadrature(sphere, harmonic_double(), sigma, g, x)
    print(f"  {where:7s}: u={u:+.12f}  (4 pi = {4 * math.pi:.12f})")

print("\nmeasured quadrature error growing toward the surface:")
print(f"{'distance':>9} {'E_Q':>12}")
for d in (0.5, 0.3, 0.2, 0.1, 0.05):
    x = [1.0 + d, 0.0, 0.0]
    print(f"{d:9.2f} {measured_error(sphere, single, sigma, g, x):12.3e}")
