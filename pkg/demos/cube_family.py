"""Four cubes that look alike combinatorially but not linearly.

Run: python3 demos/cube_family.py
"""

from polysym.catalog import cube_family
from polysym.combsym import comb_equivalent, comb_group, comb_via_intermediate, lucky_sandwich
from polysym.linsym import lin_equivalent, lin_group
from polysym.projsym import proj_equivalent, proj_group

cubes = cube_family()

print("order of each symmetry group")
print(f"{'':4} {'Lin':>5} {'Proj':>5} {'Comb':>5}")
for name, C in cubes.items():
    print(f"{name:4} {lin_group(C).order():5} {proj_group(C).order():5} {comb_group(C).order():5}")

print("\nwhich cubes are equivalent to which")
for label, rel in [("linear", lin_equivalent), ("projective", proj_equivalent), ("combinatorial", comb_equivalent)]:
    classes = []
    for a in cubes:
        for cls in classes:
            if rel(cubes[cls[0]], cubes[a]) is not None:
                cls.append(a)
                break
        else:
            classes.append([a])
    print(f"  {label:14} {' | '.join(' '.join(c) for c in classes)}")

print("\nComb from below: the skeleton shortcut works only while Lin is already everything")
for name, C in cubes.items():
    lucky = lucky_sandwich(C)
    rep = comb_via_intermediate(C)
    print(f"  {name}: shortcut={'yes' if lucky else 'no '}  double-coset search used {rep.extra['oracle_calls']} oracle calls")
