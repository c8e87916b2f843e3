"""Which linear symmetries preserve the integer lattice?

Run: python3 demos/integral_lattice.py
"""

from polysym.catalog import cube_family, orthant
from polysym.cone import Cone
from polysym.linsym import (
    integral_subgroup_filter, integral_subgroup_intermediate, integral_subgroup_lattice_quotient,
    lin_group, realize_permutation,
)
from polysym.permgrp import Perm

skew = Cone([(1, 0), (0, 2)])
print(f"rays e1, 2e2: the swap is realized by {realize_permutation(skew, Perm((1, 0))).to_strings()}, which is not integral")

cases = {"orthant R^3": orthant(3), "rays e1, 2e2": skew, "cube P1": cube_family()["P1"], "cube P3": cube_family()["P3"]}
print(f"\n{'':14} {'Lin':>4} {'filter':>7} {'double-coset':>13} {'lattice':>8}  lattice index d")
for name, C in cases.items():
    lat = integral_subgroup_lattice_quotient(C)
    row = [lin_group(C).order(), integral_subgroup_filter(C).order(), integral_subgroup_intermediate(C).order(), lat.order()]
    print(f"{name:14} {row[0]:4} {row[1]:7} {row[2]:13} {row[3]:8}  {lat.extra['d']}")
