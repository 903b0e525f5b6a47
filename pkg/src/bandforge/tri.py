"""Reader and writer for the plain-text ideal triangulation format.

The format is whitespace-tokenized with a fixed field order:

    name
    solution_type  volume_hint
    orientability
    CS_flag [cs_value]
    cusp_count fake_cusp_count
    one line per cusp:  topology  filling_m  filling_l
    tet_count
    per tetrahedron: 4 neighbor indices, 4 gluing permutations as digit
    strings, 4 vertex cusp indices, 4 rows of 16 peripheral-curve
    integers (curves meridian/longitude x sheets 0/1, columns vertex*4 +
    face), and the shape hint as two reals.

Exactly 4 + 4 + 4 + 64 + 2 tokens per tetrahedron.  Parsing is strict and
every diagnostic carries the offending line number.  Serialization
reproduces the token stream exactly (token-level, not byte-level,
round-trip identity).

Only orientable manifolds with torus cusps are accepted; a filling of
(0, 0) means the cusp is complete, anything else must be an integral
coprime pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

__all__ = [
    "TriParseError", "CuspInfo", "Tetrahedron", "Triangulation",
    "parse_triangulation", "serialize_triangulation", "validate",
    "combinatorial_isomorphic",
]


class TriParseError(ValueError):
    """Malformed triangulation text; .line holds the 1-based source line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CuspInfo:
    topology: str          # "torus" (the only accepted value)
    filling_m: float
    filling_l: float

    def is_complete(self) -> bool:
        return self.filling_m == 0.0 and self.filling_l == 0.0

    def filling_ints(self) -> tuple:
        return (int(round(self.filling_m)), int(round(self.filling_l)))


@dataclass(frozen=True)
class Tetrahedron:
    neighbors: tuple       # 4 tet indices
    gluings: tuple         # 4 permutations of {0,1,2,3} as 4-tuples
    vertex_cusp: tuple     # 4 cusp indices
    peripheral: tuple      # 4 rows x 16 ints
    shape_hint: complex


@dataclass(frozen=True)
class Triangulation:
    name: str
    solution_type: str
    volume_hint: float
    orientability: str
    cs_flag: str
    cs_value: float | None
    cusp_count: int
    fake_cusp_count: int
    cusps: tuple
    tet_count: int
    tets: tuple


class _TokenReader:
    def __init__(self, text):
        self.tokens = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            for tok in line.split():
                self.tokens.append((tok, lineno))
        self.pos = 0

    @property
    def line(self):
        idx = min(self.pos, len(self.tokens) - 1)
        return self.tokens[idx][1] if self.tokens else None

    def next(self, what):
        if self.pos >= len(self.tokens):
            last = self.tokens[-1][1] if self.tokens else None
            raise TriParseError(f"unexpected end of input while reading {what}", last)
        tok, _ = self.tokens[self.pos]
        self.pos += 1
        return tok

    def next_int(self, what):
        tok = self.next(what)
        try:
            return int(tok)
        except ValueError:
            raise TriParseError(f"expected integer for {what}, got {tok!r}",
                                self.tokens[self.pos - 1][1]) from None

    def next_float(self, what):
        tok = self.next(what)
        try:
            return float(tok)
        except ValueError:
            raise TriParseError(f"expected real for {what}, got {tok!r}",
                                self.tokens[self.pos - 1][1]) from None


def _parse_permutation(tok, line):
    if len(tok) != 4 or sorted(tok) != ["0", "1", "2", "3"]:
        raise TriParseError(f"malformed gluing permutation {tok!r}", line)
    return tuple(int(ch) for ch in tok)


def parse_triangulation(text: str) -> Triangulation:
    """Parse and validate; raises TriParseError with line context on failure."""
    rd = _TokenReader(text)
    if not rd.tokens:
        raise TriParseError("missing header")
    name = rd.next("name")
    solution_type = rd.next("solution type")
    volume_hint = rd.next_float("volume hint")
    orientability = rd.next("orientability")
    if orientability != "oriented_manifold":
        raise TriParseError(
            f"unsupported orientability {orientability!r} "
            "(only oriented_manifold is accepted)", rd.line)
    cs_flag = rd.next("CS flag")
    if cs_flag not in ("CS_known", "CS_unknown"):
        raise TriParseError(f"unrecognized CS flag {cs_flag!r}", rd.line)
    cs_value = rd.next_float("CS value") if cs_flag == "CS_known" else None
    cusp_count = rd.next_int("cusp count")
    fake_cusp_count = rd.next_int("second cusp count")
    if cusp_count < 1:
        raise TriParseError("cusp count must be positive", rd.line)

    cusps = []
    for c in range(cusp_count):
        topo = rd.next(f"cusp {c} topology")
        topo_line = rd.tokens[rd.pos - 1][1]
        if topo == "Klein":
            raise TriParseError(f"cusp {c}: Klein bottle cusps are not supported",
                                topo_line)
        if topo != "torus":
            raise TriParseError(f"cusp {c}: unknown topology {topo!r}", topo_line)
        m = rd.next_float(f"cusp {c} filling m")
        l = rd.next_float(f"cusp {c} filling l")
        if (m, l) != (0.0, 0.0):
            mi, li = int(round(m)), int(round(l))
            if abs(m - mi) > 1e-9 or abs(l - li) > 1e-9:
                raise TriParseError(
                    f"cusp {c}: filling ({m}, {l}) is not integral", topo_line)
            if gcd(abs(mi), abs(li)) != 1:
                raise TriParseError(
                    f"cusp {c}: filling ({mi}, {li}) is not coprime", topo_line)
        cusps.append(CuspInfo(topo, m + 0.0, l + 0.0))  # normalize -0.0

    tet_count = rd.next_int("tetrahedron count")
    if tet_count < 1:
        raise TriParseError("tetrahedron count must be positive", rd.line)
    tets = []
    for t in range(tet_count):
        nbr = []
        for f in range(4):
            v = rd.next_int(f"tet {t} neighbor {f}")
            if not 0 <= v < tet_count:
                raise TriParseError(
                    f"tet {t} face {f}: neighbor index {v} out of range "
                    f"[0, {tet_count})", rd.tokens[rd.pos - 1][1])
            nbr.append(v)
        glu = []
        for f in range(4):
            tok = rd.next(f"tet {t} gluing {f}")
            glu.append(_parse_permutation(tok, rd.tokens[rd.pos - 1][1]))
        vc = tuple(rd.next_int(f"tet {t} vertex {v} cusp") for v in range(4))
        rows = tuple(
            tuple(rd.next_int(f"tet {t} peripheral row {r}") for _ in range(16))
            for r in range(4))
        sre = rd.next_float(f"tet {t} shape re")
        sim = rd.next_float(f"tet {t} shape im")
        tets.append(Tetrahedron(tuple(nbr), tuple(glu), vc, rows,
                                complex(sre, sim)))
    if rd.pos != len(rd.tokens):
        raise TriParseError(
            f"trailing tokens after tetrahedron {tet_count - 1} "
            f"({len(rd.tokens) - rd.pos} extra)", rd.tokens[rd.pos][1])

    tri = Triangulation(name, solution_type, volume_hint, orientability,
                        cs_flag, cs_value, cusp_count, fake_cusp_count,
                        tuple(cusps), tet_count, tuple(tets))
    problems = validate(tri)
    if problems:
        raise TriParseError("; ".join(problems))
    return tri


def validate(tri: Triangulation) -> list:
    """Invariant check; returns a list of diagnostics, empty when clean."""
    out = []
    if tri.tet_count != len(tri.tets):
        out.append(f"tet_count {tri.tet_count} != {len(tri.tets)} tetrahedra")
    if tri.cusp_count != len(tri.cusps):
        out.append(f"cusp_count {tri.cusp_count} != {len(tri.cusps)} cusps")
    if tri.fake_cusp_count != 0:
        out.append(f"second header count {tri.fake_cusp_count} is nonzero "
                   "(uninterpreted; only 0 is supported)")
    n = len(tri.tets)
    for t, tet in enumerate(tri.tets):
        for f in range(4):
            t2 = tet.neighbors[f]
            if not 0 <= t2 < n:
                out.append(f"tet {t} face {f}: neighbor {t2} out of range")
                continue
            sigma = tet.gluings[f]
            if sorted(sigma) != [0, 1, 2, 3]:
                out.append(f"tet {t} face {f}: gluing {sigma} is not a permutation")
                continue
            # coherent orientation forces orientation-reversing face maps
            if _permutation_sign(sigma) != -1:
                out.append(f"tet {t} face {f}: gluing {sigma} is an even "
                           "permutation (orientation not coherent)")
            back = tri.tets[t2]
            f2 = sigma[f]
            if back.neighbors[f2] != t or _compose(back.gluings[f2], sigma) != (0, 1, 2, 3):
                out.append(f"tet {t} face {f}: face pairing with tet {t2} "
                           f"face {f2} is not involutive")
        for v in range(4):
            c = tet.vertex_cusp[v]
            if not 0 <= c < len(tri.cusps):
                out.append(f"tet {t} vertex {v}: cusp index {c} out of range "
                           f"[0, {len(tri.cusps)})")
        for r in (1, 3):
            if any(tet.peripheral[r]):
                out.append(f"tet {t}: peripheral sheet row {r} is nonzero "
                           "(unexpected for an oriented manifold)")
    return out


def _compose(a, b):
    # (a o b)[i] = a[b[i]]
    return tuple(a[b[i]] for i in range(4))


def _permutation_sign(p):
    inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _invert(p):
    inv = [0] * 4
    for i in range(4):
        inv[p[i]] = i
    return tuple(inv)


def serialize_triangulation(tri: Triangulation) -> str:
    """Emit the format; round-trips through parse_triangulation token-exactly."""
    lines = [tri.name]
    lines.append(f"{tri.solution_type}  {tri.volume_hint:.8f}")
    lines.append(tri.orientability)
    if tri.cs_value is None:
        lines.append(tri.cs_flag)
    else:
        lines.append(f"{tri.cs_flag}  {tri.cs_value:.16f}")
    lines.append("")
    lines.append(f"{tri.cusp_count} {tri.fake_cusp_count}")
    for cusp in tri.cusps:
        lines.append(f"    {cusp.topology} {cusp.filling_m:16.12f} "
                     f"{cusp.filling_l:16.12f}")
    lines.append("")
    lines.append(str(tri.tet_count))
    for i, tet in enumerate(tri.tets):
        if i:
            lines.append("")
        lines.append("".join(f"{v:4d} " for v in tet.neighbors))
        lines.append(" " + " ".join("".join(str(d) for d in g) for g in tet.gluings))
        lines.append("".join(f"{c:4d} " for c in tet.vertex_cusp))
        for row in tet.peripheral:
            lines.append("".join(f"{x:3d}" for x in row))
        lines.append(f"{tet.shape_hint.real:16.12f} {tet.shape_hint.imag:16.12f}")
    return "\n".join(lines) + "\n"


def combinatorial_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """Gluing-preserving bijection test.

    Anchors tetrahedron 0 of a to every (tetrahedron, vertex permutation)
    of b and propagates across faces; succeeds iff some anchor extends to
    a full bijection.
    """
    if len(a.tets) != len(b.tets):
        return False
    n = len(a.tets)
    for t0 in range(n):
        for sigma0 in itertools.permutations(range(4)):
            if _extends(a, b, t0, sigma0, n):
                return True
    return False


def _extends(a, b, t0, sigma0, n):
    mapping = {0: (t0, sigma0)}
    used = {t0: 0}
    stack = [0]
    while stack:
        t = stack.pop()
        bt, sigma = mapping[t]
        for f in range(4):
            t2 = a.tets[t].neighbors[f]
            tau = a.tets[t].gluings[f]
            bt2 = b.tets[bt].neighbors[sigma[f]]
            tau_b = b.tets[bt].gluings[sigma[f]]
            sigma2 = _compose(_compose(tau_b, sigma), _invert(tau))
            if t2 in mapping:
                if mapping[t2] != (bt2, sigma2):
                    return False
            elif bt2 in used:
                return False
            else:
                mapping[t2] = (bt2, sigma2)
                used[bt2] = t2
                stack.append(t2)
    return len(mapping) == n
