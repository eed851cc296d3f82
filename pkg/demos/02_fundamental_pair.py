"""Compare the computed fundamental pair against closed forms.

For constant coefficients the fundamental system is elementary:

    a = +1:  I1 = sin(x)/cos(x1)          I2 = cos(x) + tan(x1) sin(x)
    a = -1:  I1 = sinh(x)/cosh(x1)        I2 = cosh(x) - tanh(x1) sinh(x)

Both pairs satisfy the normalization I1(0) = 0, I1'(x1) = 1, I2(0) = 1,
I2'(x1) = 0. The table below shows the sup-norm error of the series build
halving-by-four as the grid is refined, the signature of the trapezoid
quadrature underneath.
"""

import math

import numpy as np

from bvpseries import SampledFn, contraction_ratio, fundamental_system, make_grid

x1 = 1.0


def closed_forms(sign, nodes):
    if sign > 0:
        i1 = np.sin(nodes) / math.cos(x1)
        i2 = np.cos(nodes) + math.tan(x1) * np.sin(nodes)
    else:
        i1 = np.sinh(nodes) / math.cosh(x1)
        i2 = np.cosh(nodes) - math.tanh(x1) * np.sinh(nodes)
    return i1, i2


for sign, label in ((1.0, "a = +1"), (-1.0, "a = -1")):
    print(label)
    print(f"  {'n':>6}  {'err I1':>12}  {'err I2':>12}  {'terms':>5}")
    prev = None
    for n in (256, 512, 1024, 2048, 4096):
        grid = make_grid(x1, n)
        a = SampledFn(grid, np.full(n + 1, sign))
        f = SampledFn(grid, np.zeros(n + 1))
        sol = fundamental_system(a, f, contraction_ratio(1.0, x1))
        want_i1, want_i2 = closed_forms(sign, grid.nodes)
        e1 = np.max(np.abs(sol.I1.values - want_i1))
        e2 = np.max(np.abs(sol.I2.values - want_i2))
        ratio = f"  (x{prev / e1:.2f})" if prev else ""
        print(f"  {n:6d}  {e1:12.3e}  {e2:12.3e}  {sol.terms_used['I1']:5d}{ratio}")
        prev = e1
    print()

print("endpoint identities at n = 4096")
grid = make_grid(x1, 4096)
a = SampledFn(grid, np.ones(4097))
f = SampledFn(grid, np.zeros(4097))
sol = fundamental_system(a, f, contraction_ratio(1.0, x1))
print(f"  I1(1) = {sol.I1.values[-1]:.12f}   tan(1) = {math.tan(1.0):.12f}")
print(f"  I2(1) = {sol.i2_at_x1:.12f}   1/cos(1) = {1.0 / math.cos(1.0):.12f}")
