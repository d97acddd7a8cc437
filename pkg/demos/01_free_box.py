# The unperturbed box: with no quartic term the matrix is diagonal and the
# levels are epsilon * (r + 1)**2.
import numpy as np

from boxwell import PhysicalParams, reduce, spectrum

p = PhysicalParams(mass=1.0, hbar=1.0, half_width=1.0, coupling=0.0)
rp = reduce(p)
print("energy unit epsilon =", rp.epsilon)
print("reduced coupling g  =", rp.g)

res = spectrum(64, rp, 10)
physical = res.eigenvalues * rp.epsilon
exact = rp.epsilon * (np.arange(10) + 1.0) ** 2
for r, (e, ex) in enumerate(zip(physical, exact)):
    print(f"r={r}  E={e:.12f}  epsilon*(r+1)^2={ex:.12f}")
print("Jacobi sweeps:", res.iterations)
