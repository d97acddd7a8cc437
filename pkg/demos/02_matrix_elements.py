# Closed-form potential elements against Gauss-Legendre quadrature of the
# defining integral. Odd-odd pairs carry the sign (-1)**(r//2 + s//2).
import numpy as np

from boxwell.basis import gauss_legendre, quadrature_x4_element
from boxwell.hamiltonian import potential_elements

g = 8 / np.pi**2  # lambda = m = hbar = a = 1
rule = gauss_legendre(128, 1.0)

print(" r  s      closed form        quadrature")
for r, s in [(0, 0), (0, 2), (1, 3), (2, 4), (3, 5), (5, 11), (1, 2)]:
    closed = potential_elements(r, s, g) if (r + s) % 2 == 0 else 0.0
    quad = g * quadrature_x4_element(r, s, 1.0, rule)
    print(f"{r:2d} {s:2d}  {closed:+.15f}  {quad:+.15f}")

idx = np.arange(31)
rr, ss = np.meshgrid(idx, idx, indexing="ij")
oracle = np.array([[quadrature_x4_element(r, s, 1.0, rule) for s in idx] for r in idx])
same = (rr + ss) % 2 == 0
err = np.abs(potential_elements(rr, ss, g) - g * oracle)[same]
print("max |closed - quadrature| over r, s <= 30:", err.max())
