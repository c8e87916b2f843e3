"""Small named instances used by the demos and the test-suite."""

from .cone import Cone, homogenize

_CUBES = {
    "P1": ([2, 2, 2, 2, -2, -2, -2, -2], [2, 2, -2, -2, 2, 2, -2, -2], [2, -2, 2, -2, 2, -2, 2, -2]),
    "P2": ([2, 2, 2, 2, -2, -2, -2, -2], [1, 1, -3, -3, 2, 2, -2, -2], [1, -3, 1, -3, 2, -2, 2, -2]),
    "P3": ([2, 2, 2, 2, -2, -2, -2, -2], [1, 1, -1, -1, 2, 2, -2, -2], [1, -1, 1, -1, 2, -2, 2, -2]),
    "P4": ([1, 2, 2, 3, -2, -2, -2, -2], [2, 2, -2, -2, 2, 2, -2, -2], [2, -2, 2, -2, 2, -2, 2, -2]),
}


def cube_vertices(name):
    """Vertices of one of the four combinatorial cubes ``P1``..``P4``."""
    rows = _CUBES[name]
    return [tuple(r[k] for r in rows) for k in range(8)]


def cube_family():
    """The four homogenized cubes as a dict ``name -> Cone``."""
    return {name: homogenize(cube_vertices(name)) for name in _CUBES}


def orthant(n):
    return Cone([[int(i == j) for j in range(n)] for i in range(n)])
