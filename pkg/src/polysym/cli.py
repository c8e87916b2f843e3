"""Command-line front end: ``polysym <subcommand> [options] FILE...``.

Exit status is 0 on success, 2 on unreadable or malformed input, 3 when
a guard bound is exceeded and 1 for any other failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import combsym, ilpsym, linsym, projsym
from .cone import Cone, decompose, parse_cone, parse_facets, rays_from_facets, validate_facets
from .errors import ParseError, PolysymError, TooLarge
from .exactlin import RatMatrix
from .permgrp import DEFAULT_ENUMERATION_BOUND, DEFAULT_INDEX_BOUND

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3

SUBCOMMANDS = ("lin", "proj", "comb", "skel", "zint", "centralizer", "ilp", "decompose", "equiv", "classify")


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    facets: str = None
    k: int = 2
    method: str = "lattice"
    relation: str = "lin"
    matrices: str = None
    n: int = None
    reduction: str = "puget"
    normalize: bool = False
    fmt: str = "json"
    max_rays: int = 64
    max_elements: int = DEFAULT_ENUMERATION_BOUND
    max_index: int = DEFAULT_INDEX_BOUND
    max_faces: int = combsym.DEFAULT_FACE_BOUND
    max_orbit: int = linsym.DEFAULT_ORBIT_BOUND

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.subcommand == "skel" and self.k < 1:
            raise ValueError("--k must be at least 1")
        want = {"equiv": (2,), "classify": (0,), "comb": (0, 1) if self.facets else (1,)}.get(self.subcommand, (1,))
        if len(self.inputs) not in want:
            raise ValueError(f"{self.subcommand} takes {' or '.join(map(str, want))} input file(s)")
        if self.subcommand == "classify" and (self.n is None or self.n < 2):
            raise ValueError("classify needs n >= 2")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_cone(path, cfg):
    try:
        return parse_cone(_read(path), max_rays=cfg.max_rays)
    except ParseError as e:
        raise ParseError(f"{path}: {e.args[0]}") from None


def _load_comb_cone(cfg):
    normals = parse_facets(_read(cfg.facets)) if cfg.facets else None
    if not cfg.inputs:
        return rays_from_facets(normals, max_rays=cfg.max_rays)
    C = _load_cone(cfg.inputs[0], cfg)
    if normals is not None:
        sets = validate_facets(C, normals)
        C = Cone(C.generators, facets=sets, check=False, max_rays=cfg.max_rays)
    return C


def parse_matrices(text):
    """One or more ``MATRIX <n>`` blocks, each followed by ``n`` rows."""
    mats = []
    lines = [(i, l.split("#", 1)[0].split()) for i, l in enumerate(text.splitlines(), 1)]
    lines = [(i, t) for i, t in lines if t]
    pos = 0
    while pos < len(lines):
        lineno, tok = lines[pos]
        if tok[0].upper() != "MATRIX" or len(tok) != 2 or not tok[1].isdigit():
            raise ParseError("expected 'MATRIX <n>'", lineno, tok[0])
        n = int(tok[1])
        block = lines[pos + 1: pos + 1 + n]
        if len(block) != n or any(len(t) != n for _, t in block):
            raise ParseError(f"matrix needs {n} rows of {n} entries", lineno, tok[0])
        try:
            mats.append(RatMatrix([t for _, t in block]))
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad matrix entry", lineno, tok[0]) from None
        pos += n + 1
    return mats


def _load_ilp(path):
    text = _read(path)
    first = next((l.split() for l in text.splitlines() if l.split() and not l.lstrip().startswith(("*", "#"))), [""])
    if first[0].upper() == "ILP":
        return ilpsym.parse_ilp(text)
    return ilpsym.parse_mps_lite(text)


def run(cfg, out=None):
    """Execute one configuration; returns the exit status."""
    out = out or sys.stdout
    try:
        result = _dispatch(cfg)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as e:
        print(f"guard bound exceeded: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (PolysymError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.fmt == "json":
        data = result.to_dict() if hasattr(result, "to_dict") else result
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        out.write((result.to_text() if hasattr(result, "to_text") else _dict_text(result)) + "\n")
    return EXIT_OK


def _dict_text(d):
    lines = []
    for k, v in d.items():
        lines.append(f"{k}: {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def _dispatch(cfg):
    sub = cfg.subcommand
    if sub == "classify":
        classes = projsym.classify_n_plus_1(cfg.n)
        return {
            "kind": "classify",
            "n": cfg.n,
            "total": len(classes),
            "non_decomposable": sum(not c.decomposable for c in classes),
            "classes": [
                {"core_dim": c.core_dim, "signs": list(c.signs), "generators": [[str(x) for x in g] for g in c.cone.generators]}
                for c in classes
            ],
        }
    if sub == "ilp":
        I = _load_ilp(cfg.inputs[0])
        return ilpsym.coordinate_symmetries(I, cfg.reduction, cfg.normalize)
    if sub == "comb":
        return combsym.comb_group(_load_comb_cone(cfg), cfg.max_faces)
    if sub == "equiv":
        A, B = (_load_cone(p, cfg) for p in cfg.inputs)
        if cfg.relation == "lin":
            hit = linsym.lin_equivalent(A, B)
            witness = None if hit is None else {"bijection": list(hit[0]), "matrix": hit[1].to_strings()}
        elif cfg.relation == "proj":
            hit = projsym.proj_equivalent(A, B, cfg.max_elements)
            witness = None if hit is None else {"bijection": list(hit[0]), "matrix": hit[1].to_strings()}
        else:
            hit = combsym.comb_equivalent(A, B)
            witness = None if hit is None else {"bijection": list(hit)}
        return {
            "kind": "equiv",
            "relation": cfg.relation,
            "equivalent": hit is not None,
            "result": "equivalent" if hit is not None else "not equivalent",
            "witnesses": witness,
        }
    C = _load_cone(cfg.inputs[0], cfg)
    if sub == "lin":
        return linsym.lin_group(C)
    if sub == "proj":
        return projsym.proj_group(C, cfg.max_index)
    if sub == "skel":
        return combsym.skel_group(C, cfg.k, cfg.max_faces)
    if sub == "zint":
        if cfg.method == "filter":
            return linsym.integral_subgroup_filter(C, cfg.max_elements)
        if cfg.method == "intermediate":
            return linsym.integral_subgroup_intermediate(C, max_index=cfg.max_index)
        return linsym.integral_subgroup_lattice_quotient(C, max_orbit=cfg.max_orbit)
    if sub == "centralizer":
        mats = parse_matrices(_read(cfg.matrices)) if cfg.matrices else []
        return linsym.centralizer_group(C, mats)
    if sub == "decompose":
        D = decompose(C)
        return {
            "kind": "decompose",
            "degree": C.p,
            "components": [list(c.rays) for c in D.components],
            "basis": list(D.basis),
        }
    raise ValueError(f"unknown subcommand {sub!r}")


def build_parser():
    ap = argparse.ArgumentParser(prog="polysym", description="Symmetry groups of polyhedral cones and ILPs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--max-rays", type=int, default=64, help="facet enumeration guard")
    common.add_argument("--max-elements", type=int, default=DEFAULT_ENUMERATION_BOUND, help="element enumeration guard")
    common.add_argument("--max-index", type=int, default=DEFAULT_INDEX_BOUND, help="coset index guard")
    common.add_argument("--max-faces", type=int, default=combsym.DEFAULT_FACE_BOUND, help="face count guard")
    common.add_argument("--max-orbit", type=int, default=linsym.DEFAULT_ORBIT_BOUND, help="lattice orbit guard")
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name, help_ in [
        ("lin", "linear symmetry group of the generators"),
        ("proj", "projective symmetry group"),
        ("decompose", "split into non-decomposable components"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input")
    sp = sub.add_parser("comb", parents=[common], help="combinatorial symmetry group")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--facets", help="FACETS file; validated against the generators when both are given")
    sp = sub.add_parser("skel", parents=[common], help="skeleton group Skel_k")
    sp.add_argument("input")
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("zint", parents=[common], help="integral linear symmetries")
    sp.add_argument("input")
    sp.add_argument("--method", choices=("filter", "intermediate", "lattice"), default="lattice")
    sp = sub.add_parser("centralizer", parents=[common], help="linear symmetries commuting with given matrices")
    sp.add_argument("input")
    sp.add_argument("--matrices", help="file of 'MATRIX n' blocks")
    sp = sub.add_parser("ilp", parents=[common], help="coordinate symmetries of an ILP (MPS or ILP format)")
    sp.add_argument("input")
    sp.add_argument("--reduction", choices=("puget", "intermediate", "superposition"), default="puget")
    sp.add_argument("--normalize", action="store_true", help="normalize rows before comparing")
    sp = sub.add_parser("equiv", parents=[common], help="equivalence of two cones")
    sp.add_argument("inputs", nargs=2)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--lin", dest="relation", action="store_const", const="lin")
    g.add_argument("--proj", dest="relation", action="store_const", const="proj")
    g.add_argument("--comb", dest="relation", action="store_const", const="comb")
    sp.set_defaults(relation="lin")
    sp = sub.add_parser("classify", parents=[common], help="projective classes of cones with n+1 rays")
    sp.add_argument("n", type=int)
    return ap


def config_from_args(ns):
    inputs = list(getattr(ns, "inputs", None) or ([ns.input] if getattr(ns, "input", None) else []))
    return RunConfig(
        subcommand=ns.subcommand,
        inputs=inputs,
        facets=getattr(ns, "facets", None),
        k=getattr(ns, "k", None) or (2 if ns.subcommand != "skel" else 0),
        method=getattr(ns, "method", "lattice"),
        relation=getattr(ns, "relation", "lin"),
        matrices=getattr(ns, "matrices", None),
        n=getattr(ns, "n", None),
        reduction=getattr(ns, "reduction", "puget"),
        normalize=getattr(ns, "normalize", False),
        fmt=ns.fmt,
        max_rays=ns.max_rays,
        max_elements=ns.max_elements,
        max_index=ns.max_index,
        max_faces=ns.max_faces,
        max_orbit=ns.max_orbit,
    )


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
