# Perturbation theory to second order leaves an O(g**3) error. Fit the
# log-log slope of |E_RS2 - E_diag| against g.
from boxwell.analysis import residual_scaling_levels

grid = (0.02, 0.05, 0.1, 0.2)
for rep in residual_scaling_levels(range(6), grid, 256):
    cells = "  ".join(f"{x:.3e}" for x in rep.residuals)
    print(f"r={rep.r}  residuals {cells}  slope {rep.fitted_slope:.4f}")

# points below the diagonalization noise floor are excluded from the fit
rep = residual_scaling_levels([8], grid, 256)[0]
print("r=8 excluded:", rep.excluded, " slope:", rep.fitted_slope)
