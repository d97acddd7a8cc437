# Convergence of the diagonalized levels as the basis grows. The variational
# bound makes each column non-increasing.
import numpy as np

from boxwell import ReducedParams, compare_table
from boxwell.analysis import truncation_convergence

rp = ReducedParams(g=8 / np.pi**2)
for r in (0, 5, 9):
    print(f"level {r}")
    for n, e in truncation_convergence(r, rp, [48, 64, 128, 256]):
        print(f"  n={n:3d}  E={e:.15f}")

table = compare_table(10, rp, 256)
print(" r   E_diag              E_RS2               |diff|")
for row in table.rows:
    print(f"{row.r:2d}  {row.e_diag:.15f}  {row.e_rs2:.15f}  {row.abs_diff_pert_diag:.3e}")
