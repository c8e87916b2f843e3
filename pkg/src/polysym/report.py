"""Result record shared by the symmetry computations."""

import json
from dataclasses import dataclass, field

from .permgrp import PermGroup


@dataclass
class SymmetryReport:
    """A permutation group of generators together with how it was obtained.

    ``matrices`` maps generator permutations to realizing matrices when the
    group kind has them (lin, integral, centralizer, proj).
    """

    kind: str
    group: PermGroup
    matrices: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def degree(self):
        return self.group.degree

    @property
    def generators(self):
        return list(self.group.generators)

    def order(self):
        return self.group.order()

    def __contains__(self, sigma):
        return self.group.contains(sigma)

    def to_dict(self):
        gens = self.generators
        out = {
            "kind": self.kind,
            "degree": self.degree,
            "order": str(self.order()),
            "generators": [list(g) for g in gens],
        }
        if self.matrices:
            out["matrices"] = [self.matrices[g].to_strings() for g in gens if g in self.matrices]
        rest = {}
        for k, v in sorted(self.extra.items()):
            if k in ("components", "witnesses"):
                out[k] = _plain(v)
            else:
                rest[k] = _plain(v)
        if rest:
            out["extra"] = rest
        return out

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    def to_text(self):
        lines = [f"kind: {self.kind}", f"degree: {self.degree}", f"order: {self.order()}", "generators:"]
        gens = self.generators
        lines += [f"  {g!r}" for g in gens] or ["  (identity)"]
        for g in gens:
            if g in self.matrices:
                lines.append(f"matrix for {g!r}:")
                lines += ["  " + " ".join(r) for r in self.matrices[g].to_strings()]
        for k, v in sorted(self.extra.items()):
            lines.append(f"{k}: {json.dumps(_plain(v), sort_keys=True)}")
        return "\n".join(lines)

    def __repr__(self):
        return f"SymmetryReport({self.kind}, degree={self.degree}, order={self.order()})"


def _plain(v):
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "to_strings"):
        return v.to_strings()
    return str(v)
