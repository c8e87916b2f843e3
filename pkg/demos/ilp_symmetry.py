"""Variable permutations of integer programs, read from MPS or the native format.

Run: python3 demos/ilp_symmetry.py
"""

from pathlib import Path

from polysym.ilpsym import IlpInstance, coordinate_symmetries, parse_ilp, parse_mps_lite

data = Path(__file__).with_name("data")

knap = parse_mps_lite((data / "knapsack.mps").read_text())
print(f"knapsack.mps: {knap.n_vars} variables, {knap.n_rows} row, group order {coordinate_symmetries(knap).order()}")

blocks = parse_ilp((data / "two_block.ilp").read_text())
rep = coordinate_symmetries(blocks)
print(f"two_block.ilp: order {rep.order()}, generators {rep.generators}")
for g, rows in zip(rep.generators, rep.extra["witnesses"]):
    print(f"  {g!r} sends rows to {rows}")

skew = IlpInstance(blocks.rows, blocks.senses, blocks.rhs, [1, 1, 1, 2], blocks.integer)
print(f"raising one objective coefficient leaves order {coordinate_symmetries(skew).order()}")

scaled = IlpInstance([[1, 1, 0, 0], [0, 0, -2, -2]], ["L", "G"], [1, -2], [1, 1, 1, 1])
print(
    "a row written as -2x3 - 2x4 >= -2 hides the block swap: "
    f"order {coordinate_symmetries(scaled).order()} raw, {coordinate_symmetries(scaled, normalize=True).order()} normalized"
)
