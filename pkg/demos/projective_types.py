"""Projective symmetries that no linear map of the given generators realizes.

Run: python3 demos/projective_types.py
"""

from polysym.catalog import orthant
from polysym.cone import Cone, direct_sum, homogenize
from polysym.linsym import lin_group
from polysym.permgrp import Perm
from polysym.projsym import classify_n_plus_1, proj_group, proj_membership, rescaled_lin, witness_scaling

quad = homogenize([(0, 0), (4, 0), (3, 1), (1, 2)])
print("an irregular quadrilateral:")
print(f"  Lin order {lin_group(quad).order()}, Proj order {proj_group(quad).order()}")
m = proj_membership(quad, Perm((1, 2, 3, 0)))
print(f"  rotating the corners needs multipliers {[str(a) for a in m.multipliers]}")
b = witness_scaling(m)
print(f"  rescaling the generators by {[str(x) for x in b]} makes Lin as large as Proj: {rescaled_lin(quad, b).order()}")

square = Cone([(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)])
C = direct_sum(square, square, orthant(1))
rep = proj_group(C)
print("\ntwo squares and a lone ray, as one cone in R^7:")
print(f"  component ray sets {rep.extra['components']}")
print(f"  type multiplicities {rep.extra['multiplicities']}, group order {rep.order()} = 8^2 * 2 * 1")

print("\ncones in R^n with n+1 rays, up to projective maps")
for n in range(3, 8):
    classes = classify_n_plus_1(n)
    core = [c.signs for c in classes if not c.decomposable]
    print(f"  n={n}: {len(classes)} classes, indecomposable sign patterns {core}")
