# The second-order correction two ways: the closed polynomial in 1/(pi n)**2
# and the brute-force sum over intermediate states with a rigorous tail bound.
from boxwell.perturbation import e2_closed, e2_series

g = 8 / 3.141592653589793**2
print(" r        closed               series          tail bound   terms")
for r in range(10):
    res = e2_series(r, g, 2000)
    print(f"{r:2d}  {e2_closed(r, g):+.15e}  {res.value:+.15e}  {res.tail_bound:.1e}  {res.terms_used}")

# the s < r part pushes the level up, the s > r part pushes it down
res = e2_series(6, g)
print("r=6 lower sum", res.lower_sum, " upper sum", res.upper_sum)

# a relative 1e-6 change to one coefficient is far outside the agreement
co = [32 / 225, 1184 / 35, 10048 / 5, 44928.0, 278784.0]
co[2] *= 1 + 1e-6
print("mutated closed form, r=0:", e2_closed(0, g, co), " series:", e2_series(0, g).value)
