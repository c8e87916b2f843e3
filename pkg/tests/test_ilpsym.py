import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polysym.errors import ParseError, UnsupportedFeature
from polysym.ilpsym import IlpInstance, coordinate_symmetries, format_ilp, parse_ilp, parse_mps_lite
from oracles import group_elements

KNAPSACK_MPS = """\
NAME          knap
OBJSENSE
    MAX
ROWS
 N  obj
 L  cap
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    x1        obj       1   cap       1
    x2        obj       1   cap       1
    MARKER                 'MARKER'                 'INTEND'
RHS
    rhs       cap       1
BOUNDS
 UP bnd       x1        1
 UP bnd       x2        1
ENDATA
"""


def brute_symmetries(I):
    """Variable permutations mapping the row multiset, objective and bounds onto themselves."""
    n = I.n_vars
    rows = sorted((s, b, r) for s, b, r in zip(I.senses, I.rhs, I.rows))
    data = [(I.objective[j], I.integer[j], I.lower[j], I.upper[j]) for j in range(n)]
    out = set()
    for s in itertools.permutations(range(n)):
        if any(data[s[j]] != data[j] for j in range(n)):
            continue
        moved = []
        for sense, b, r in rows:
            img = [0] * n
            for j in range(n):
                img[s[j]] = r[j]
            moved.append((sense, b, tuple(img)))
        if sorted(moved) == rows:
            out.add(s)
    return out


def knapsack(obj=(1, 1)):
    return IlpInstance([[1, 1]], ["L"], [1], obj, maximize=True)


TWO_BLOCK = IlpInstance([[1, 1, 0, 0], [0, 0, 1, 1]], ["L", "L"], [1, 1], [1, 1, 1, 1])


def test_small_instances():
    assert coordinate_symmetries(knapsack()).order() == 2
    assert coordinate_symmetries(knapsack((1, 2))).order() == 1
    rep = coordinate_symmetries(TWO_BLOCK)
    assert rep.order() == 8
    assert group_elements(rep.group) == brute_symmetries(TWO_BLOCK)


@pytest.mark.parametrize("reduction", ["puget", "intermediate", "superposition"])
def test_reductions_agree(reduction):
    assert coordinate_symmetries(TWO_BLOCK, reduction).order() == 8


def test_row_witnesses():
    rep = coordinate_symmetries(TWO_BLOCK)
    for g, rows in zip(rep.generators, rep.extra["witnesses"]):
        assert sorted(rows) == [0, 1]
        assert TWO_BLOCK.permuted_is_identical(g) == rows


def test_normalization_merges_scaled_rows():
    I = IlpInstance([[1, 1, 0, 0], [0, 0, -2, -2]], ["L", "G"], [1, -2], [1, 1, 1, 1])
    assert coordinate_symmetries(I).order() == 4
    assert coordinate_symmetries(I, normalize=True).order() == 8


def test_mps_knapsack():
    I = parse_mps_lite(KNAPSACK_MPS)
    assert (I.n_rows, I.n_vars) == (1, 2)
    assert I.maximize and I.integer == (True, True) and I.upper == (1, 1)
    assert coordinate_symmetries(I).order() == 2


def test_mps_unsupported_and_errors():
    with pytest.raises(UnsupportedFeature):
        parse_mps_lite(KNAPSACK_MPS.replace("BOUNDS", "RANGES\n    rng       cap       1\nBOUNDS"))
    with pytest.raises(ParseError) as e:
        parse_mps_lite(KNAPSACK_MPS.replace("cap       1\n    x2", "cap       2.x\n    x2"))
    assert e.value.line == 9


def test_mps_empty_columns():
    I = parse_mps_lite("NAME e\nROWS\n N obj\n L c1\nCOLUMNS\nRHS\nENDATA\n")
    assert I.n_vars == 0 and I.n_rows == 1
    assert coordinate_symmetries(I).order() == 1


def test_native_format_roundtrip():
    text = "ILP 2 4\nmax 1 1 1 1\n<= 1 1 1 0 0\n<= 1 0 0 1 1\nint 1 2 3 4\n"
    I = parse_ilp(text)
    assert format_ilp(I) == text
    assert coordinate_symmetries(I).order() == 8
    with pytest.raises(ParseError):
        parse_ilp("ILP 1 2\n1 1\n<< 1 1 1\n")


instances = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-1, 2), min_size=n, max_size=n), min_size=1, max_size=3),
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
        st.lists(st.booleans(), min_size=n, max_size=n),
    )
)


@settings(max_examples=60, deadline=None)
@given(instances, st.sampled_from(["puget", "intermediate", "superposition"]))
def test_matches_brute_force(data, reduction):
    rows, obj, ints = data
    I = IlpInstance(rows, ["L"] * len(rows), [1] * len(rows), obj, ints)
    assert group_elements(coordinate_symmetries(I, reduction).group) == brute_symmetries(I)
