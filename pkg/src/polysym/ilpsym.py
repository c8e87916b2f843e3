"""Coordinate symmetries of integer linear programs.

Variables and constraint rows form a bipartite graph; the edge between
row ``i`` and variable ``j`` carries the coefficient ``a_ij`` (zero
coefficients are no edge).  Variables are colored by objective
coefficient, integrality and bounds, rows by sense and right-hand side.
Automorphisms restricted to the variables are the coordinate symmetries.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .cgraph import ColoredGraph, automorphisms
from .errors import ParseError, RealizationFailure, UnsupportedFeature
from .report import SymmetryReport

SENSES = ("L", "G", "E")
_SENSE_ALIASES = {"<=": "L", ">=": "G", "=": "E", "==": "E", "L": "L", "G": "G", "E": "E"}


@dataclass
class IlpInstance:
    """``opt c.x`` subject to ``rows[i] . x  (sense[i])  rhs[i]`` and variable bounds.

    ``upper[j] is None`` means no upper bound; ``lower[j] is None`` means
    minus infinity.
    """

    rows: list
    senses: list
    rhs: list
    objective: tuple
    integer: tuple = None
    lower: tuple = None
    upper: tuple = None
    var_names: list = None
    row_names: list = None
    maximize: bool = False
    name: str = ""
    objective_offset: Fraction = Fraction(0)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.objective)
        self.objective = tuple(Fraction(c) for c in self.objective)
        self.rows = [tuple(Fraction(a) for a in r) for r in self.rows]
        self.rhs = [Fraction(b) for b in self.rhs]
        self.senses = [_SENSE_ALIASES.get(s, s) for s in self.senses]
        if any(len(r) != n for r in self.rows):
            raise ValueError("every row needs one coefficient per variable")
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise ValueError("rows, senses and right-hand sides differ in length")
        if any(s not in SENSES for s in self.senses):
            raise ValueError(f"row senses must be among {SENSES}")
        self.integer = tuple(bool(x) for x in (self.integer or [False] * n))
        self.lower = tuple(None if x is None else Fraction(x) for x in (self.lower or [0] * n))
        self.upper = tuple(None if x is None else Fraction(x) for x in (self.upper or [None] * n))
        if not (len(self.integer) == len(self.lower) == len(self.upper) == n):
            raise ValueError("variable data of inconsistent length")
        self.var_names = list(self.var_names or [f"x{j + 1}" for j in range(n)])
        self.row_names = list(self.row_names or [f"r{i + 1}" for i in range(len(self.rows))])

    @property
    def n_vars(self):
        return len(self.objective)

    @property
    def n_rows(self):
        return len(self.rows)

    def variable_color(self, j):
        return ("var", self.objective[j], self.integer[j], self.lower[j], self.upper[j])

    def row_keys(self):
        return [(self.senses[i], self.rhs[i], self.rows[i]) for i in range(self.n_rows)]

    def normalized(self):
        """Rows rewritten as ``<=`` or ``=`` with primitive integer coefficients.

        ``>=`` rows are negated; equality rows get a positive first nonzero
        coefficient.  The feasible set is unchanged.
        """
        rows, senses, rhs = [], [], []
        for r, s, b in zip(self.rows, self.senses, self.rhs):
            r, b = list(r), b
            if s == "G":
                r, b, s = [-a for a in r], -b, "L"
            if s == "E":
                lead = next((a for a in r if a), b)
                if lead < 0:
                    r, b = [-a for a in r], -b
            den = lcm(*(x.denominator for x in r + [b]))
            ints = [int(x * den) for x in r + [b]]
            g = 0
            for x in ints:
                g = gcd(g, x)
            g = g or 1
            rows.append(tuple(Fraction(x, g) for x in ints[:-1]))
            rhs.append(Fraction(ints[-1], g))
            senses.append(s)
        return IlpInstance(
            rows, senses, rhs, self.objective, self.integer, self.lower, self.upper,
            self.var_names, self.row_names, self.maximize, self.name, self.objective_offset,
        )

    def permuted_is_identical(self, sigma):
        """Row permutation witnessing that the variable permutation ``sigma`` is a symmetry, or ``None``."""
        n = self.n_vars
        if any(self.variable_color(sigma[j]) != self.variable_color(j) for j in range(n)):
            return None
        where = {}
        for i, key in enumerate(self.row_keys()):
            where.setdefault(key, []).append(i)
        used = {k: 0 for k in where}
        images = []
        for s, b, r in self.row_keys():
            img = [Fraction(0)] * n
            for j in range(n):
                img[sigma[j]] = r[j]
            key = (s, b, tuple(img))
            if key not in where or used[key] >= len(where[key]):
                return None
            images.append(where[key][used[key]])
            used[key] += 1
        return images


def ilp_graph(I):
    """Bipartite graph: variables ``0..n-1`` then rows ``n..n+p-1``."""
    n, p = I.n_vars, I.n_rows
    colors = [I.variable_color(j) for j in range(n)] + [("row", I.senses[i], I.rhs[i]) for i in range(p)]
    edges = {}
    for i, r in enumerate(I.rows):
        for j, a in enumerate(r):
            if a:
                edges[(j, n + i)] = a
    return ColoredGraph(n + p, colors, edges, bipartition=(range(n), range(n, n + p)))


def coordinate_symmetries(I, reduction="puget", normalize=False):
    """Group of variable permutations that map the program onto itself."""
    if normalize:
        I = I.normalized()
    G = automorphisms(ilp_graph(I), reduction, restrict=I.n_vars)
    witnesses = []
    for g in G.generators:
        rows = I.permuted_is_identical(g)
        if rows is None:
            raise RealizationFailure(f"variable permutation {g!r} does not extend to the rows")
        witnesses.append(rows)
    return SymmetryReport("coordinate", G, extra={"witnesses": witnesses, "variables": I.var_names})


# MPS subset ----------------------------------------------------------------------

_SECTIONS = {"NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}
_UNSUPPORTED = {"RANGES", "SOS", "QUADOBJ", "QMATRIX", "QSECTION", "QCMATRIX", "CSECTION", "INDICATORS"}


def _is_header(line, tok, head):
    """Section keywords stand alone; NAME and OBJSENSE may carry a value in column 1."""
    if head not in _SECTIONS and head not in _UNSUPPORTED:
        return False
    if len(tok) == 1:
        return True
    return not line[0].isspace() and head in ("NAME", "OBJSENSE", "SOS")


def _number(tok, lineno):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError("invalid number", lineno, tok) from None


def parse_mps_lite(text):
    """Parse the supported MPS subset into an :class:`IlpInstance` (see README for the rules)."""
    name = ""
    section = None
    maximize = False
    obj_row = None
    row_order, row_sense = [], {}
    var_order, coeffs, integer = [], {}, {}
    rhs, offset = {}, Fraction(0)
    lower, upper = {}, {}
    in_int = False
    ended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("*"):
            continue
        tok = line.split()
        head = tok[0].upper()
        if _is_header(line, tok, head):
            if head in _UNSUPPORTED:
                raise UnsupportedFeature(f"section {head} is not supported", lineno, tok[0])
            if ended:
                raise ParseError("data after ENDATA", lineno, tok[0])
            section = head
            if head == "NAME":
                name = " ".join(tok[1:])
            elif head == "OBJSENSE" and len(tok) > 1:
                maximize = _objsense(tok[1], lineno)
            elif head == "ENDATA":
                ended = True
            continue
        if ended:
            raise ParseError("data after ENDATA", lineno, tok[0])
        if section == "OBJSENSE":
            maximize = _objsense(tok[0], lineno)
        elif section == "ROWS":
            if len(tok) != 2:
                raise ParseError("expected '<type> <name>'", lineno, tok[0])
            kind, rname = tok[0].upper(), tok[1]
            if kind == "N":
                if obj_row is None:
                    obj_row = rname
                else:
                    row_sense[rname] = "N"
                continue
            if kind not in SENSES:
                raise ParseError("row type must be N, L, G or E", lineno, tok[0])
            if rname in row_sense or rname == obj_row:
                raise ParseError("duplicate row", lineno, rname)
            row_order.append(rname)
            row_sense[rname] = kind
        elif section == "COLUMNS":
            if len(tok) >= 3 and tok[1].strip("'").upper() == "MARKER":
                mark = tok[2].strip("'").upper()
                if mark == "INTORG":
                    in_int = True
                elif mark == "INTEND":
                    in_int = False
                else:
                    raise ParseError("unknown marker", lineno, tok[2])
                continue
            if len(tok) not in (3, 5):
                raise ParseError("expected '<column> <row> <value> [<row> <value>]'", lineno, tok[-1])
            col = tok[0]
            if col not in coeffs:
                var_order.append(col)
                coeffs[col] = {}
                integer[col] = in_int
            for rname, val in zip(tok[1::2], tok[2::2]):
                if rname != obj_row and rname not in row_sense:
                    raise ParseError("unknown row", lineno, rname)
                coeffs[col][rname] = coeffs[col].get(rname, 0) + _number(val, lineno)
        elif section == "RHS":
            body = tok[1:] if len(tok) % 2 == 1 else tok
            if len(body) not in (2, 4):
                raise ParseError("expected '[<set>] <row> <value> [<row> <value>]'", lineno, tok[-1])
            for rname, val in zip(body[0::2], body[1::2]):
                v = _number(val, lineno)
                if rname == obj_row:
                    offset = -v
                elif rname in row_sense:
                    rhs[rname] = v
                else:
                    raise ParseError("unknown row", lineno, rname)
        elif section == "BOUNDS":
            kind = tok[0].upper()
            valued = kind not in ("FR", "MI", "PL", "BV")
            # the bound-set name is optional
            want = (3, 4) if valued else (2, 3)
            if len(tok) not in want:
                raise ParseError("expected '<type> [<set>] <column>" + (" <value>'" if valued else "'"), lineno, tok[-1])
            if valued:
                col, val = tok[-2], _number(tok[-1], lineno)
            else:
                col, val = tok[-1], None
            if col not in coeffs:
                raise ParseError("unknown column", lineno, col)
            if kind == "UP":
                upper[col] = val
                if val < 0 and lower.get(col, 0) == 0:
                    lower[col] = None
            elif kind == "LO":
                lower[col] = val
            elif kind == "FX":
                lower[col] = upper[col] = val
            elif kind == "FR":
                lower[col] = upper[col] = None
            elif kind == "MI":
                lower[col] = None
            elif kind == "PL":
                upper[col] = None
            elif kind == "BV":
                lower[col], upper[col], integer[col] = Fraction(0), Fraction(1), True
            elif kind == "LI":
                lower[col], integer[col] = val, True
            elif kind == "UI":
                upper[col], integer[col] = val, True
            else:
                raise ParseError("unknown bound type", lineno, tok[0])
        else:
            raise ParseError("data outside of a section", lineno, tok[0])
    if not ended:
        raise ParseError("missing ENDATA", None, None)
    if obj_row is None:
        raise ParseError("no objective (N) row", None, None)
    rows = [tuple(coeffs[c].get(r, Fraction(0)) for c in var_order) for r in row_order]
    return IlpInstance(
        rows,
        [row_sense[r] for r in row_order],
        [rhs.get(r, Fraction(0)) for r in row_order],
        tuple(coeffs[c].get(obj_row, Fraction(0)) for c in var_order),
        integer=tuple(integer[c] for c in var_order),
        lower=tuple(lower.get(c, Fraction(0)) for c in var_order),
        upper=tuple(upper.get(c) for c in var_order),
        var_names=var_order,
        row_names=row_order,
        maximize=maximize,
        name=name,
        objective_offset=offset,
    )


def _objsense(tok, lineno):
    t = tok.upper()
    if t in ("MAX", "MAXIMIZE"):
        return True
    if t in ("MIN", "MINIMIZE"):
        return False
    raise ParseError("objective sense must be MAX or MIN", lineno, tok)


# native format -------------------------------------------------------------------


def parse_ilp(text):
    """Parse ``ILP <rows> <cols>``, an objective line, then ``sense rhs c1 .. cn`` per row.

    The objective line may start with ``max`` or ``min`` (default ``min``).
    An optional final line ``int j1 j2 ..`` marks integer variables (1-based).
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body))
    if not lines or lines[0][1][0].upper() != "ILP" or len(lines[0][1]) != 3:
        lineno, tok = lines[0] if lines else (None, [None])
        raise ParseError("expected header 'ILP <rows> <cols>'", lineno, tok[0])
    lineno, head = lines[0]
    try:
        p, n = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError("row and column counts must be integers", lineno, head[1]) from None
    if len(lines) < 2 + p:
        raise ParseError(f"expected objective and {p} rows", lines[-1][0], None)
    lineno, obj = lines[1]
    maximize = False
    if obj[0].lower() in ("max", "min"):
        maximize = obj[0].lower() == "max"
        obj = obj[1:]
    if len(obj) != n:
        raise ParseError(f"objective needs {n} coefficients", lineno, obj[-1] if obj else None)
    objective = [_number(t, lineno) for t in obj]
    rows, senses, rhs = [], [], []
    for lineno, tok in lines[2:2 + p]:
        if len(tok) != n + 2:
            raise ParseError(f"row needs a sense, a right-hand side and {n} coefficients", lineno, tok[-1])
        s = _SENSE_ALIASES.get(tok[0].upper() if tok[0].isalpha() else tok[0])
        if s is None:
            raise ParseError("row sense must be <=, >= or =", lineno, tok[0])
        senses.append(s)
        rhs.append(_number(tok[1], lineno))
        rows.append([_number(t, lineno) for t in tok[2:]])
    integer = [False] * n
    for lineno, tok in lines[2 + p:]:
        if tok[0].lower() != "int":
            raise ParseError("unexpected trailing data", lineno, tok[0])
        for t in tok[1:]:
            if not t.isdigit() or not 1 <= int(t) <= n:
                raise ParseError("variable index out of range", lineno, t)
            integer[int(t) - 1] = True
    return IlpInstance(rows, senses, rhs, objective, integer=integer, maximize=maximize)


def format_ilp(I):
    sym = {"L": "<=", "G": ">=", "E": "="}
    out = [f"ILP {I.n_rows} {I.n_vars}", " ".join(["max" if I.maximize else "min"] + [str(c) for c in I.objective])]
    for r, s, b in zip(I.rows, I.senses, I.rhs):
        out.append(" ".join([sym[s], str(b)] + [str(a) for a in r]))
    ints = [str(j + 1) for j, f in enumerate(I.integer) if f]
    if ints:
        out.append("int " + " ".join(ints))
    return "\n".join(out) + "\n"
