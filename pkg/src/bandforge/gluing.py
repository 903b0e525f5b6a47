"""Edge/cusp gluing equations of an ideal triangulation and their Newton solver.

Shape parameter conventions, for positively oriented tetrahedra:

    z   on the edge pairs (01) and (23)
    z'  = 1/(1 - z)   on (02) and (13)
    z'' = 1 - 1/z     on (03) and (12)

With Im z > 0 the principal logarithms satisfy

    log z'  = -log(1 - z)
    log z'' =  log(1 - z) - log z + i*pi

so every equation row folds into integer vectors A (coefficients of
log z_j), B (coefficients of log(1 - z_j)) and an integer branch offset k
on i*pi, with right-hand side c*i*pi:

    sum_j A_j log z_j + sum_j B_j log(1 - z_j) + k*i*pi = c*i*pi.

Edge rows have c = 2 (total dihedral angle 2*pi); the branch offset k is
the number of z'' incidences of the edge class.  Cusp rows encode the
log-derivative of the peripheral holonomy: c = 0 for a complete cusp
(meridian row) and c = 2 for a filled cusp (the filling curve bounds a
disk, so its holonomy is a full rotation).  Peripheral-curve corner
contributions are assembled with the fixed orientation convention below
(POS_TURNS together with HOLONOMY_SIGN); the convention is pinned by the
requirement that both shipped fixtures have residual < 1e-8 at their
stored shape hints, and is frozen by the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .tri import Triangulation

__all__ = [
    "EdgeClass", "GluingRow", "GluingSystem", "NewtonResult",
    "SolveError", "SingularJacobianError", "DivergenceError",
    "HalfPlaneExitError",
    "edge_classes", "build_equations", "residual", "newton_solve",
    "select_square_rows",
]

# parameter type of an unordered vertex pair: 0 -> z, 1 -> z', 2 -> z''
PAIR_TYPE = {
    (0, 1): 0, (2, 3): 0,
    (0, 2): 1, (1, 3): 1,
    (0, 3): 2, (1, 2): 2,
}

_EDGE_PAIRS = tuple(PAIR_TYPE)


def _perm_parity(p):
    inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
    return inv % 2


def _positive_turns():
    """Ordered face pairs (a, b) around each vertex v with positive turning.

    A peripheral strand entering a cusp triangle through the side in face
    a and leaving through the side in face b wraps the corner at the edge
    {v, w}, w = 6-v-a-b.  For a positively oriented tetrahedron the turn
    is counterclockwise exactly when the permutation (v, w, a, b) is odd.
    """
    table = {}
    for v in range(4):
        pairs = []
        for a in range(4):
            for b in range(4):
                if len({v, a, b}) == 3:
                    w = 6 - v - a - b
                    if _perm_parity((v, w, a, b)) == 1:
                        pairs.append((a, b, w))
        assert len(pairs) == 3
        table[v] = tuple(pairs)
    return table


POS_TURNS = _positive_turns()

# Global sign of all peripheral holonomy rows.  The opposite choice sends
# every filled-cusp row to -2*pi*i and fails the fixture residual oracle.
HOLONOMY_SIGN = +1


class SolveError(RuntimeError):
    pass


class SingularJacobianError(SolveError):
    pass


class DivergenceError(SolveError):
    pass


class HalfPlaneExitError(SolveError):
    pass


@dataclass(frozen=True)
class EdgeClass:
    """One identified edge: orbit of (tet, vertex pair, parameter type)."""

    orbit: tuple

    def __len__(self):
        return len(self.orbit)


@dataclass(frozen=True)
class GluingRow:
    kind: str              # "edge" | "cusp_complete" | "cusp_filled"
    A: tuple               # int coefficients of log z_j
    B: tuple               # int coefficients of log(1 - z_j)
    k: int                 # branch offset on i*pi
    c: int                 # RHS multiplier: RHS = c*i*pi
    cusp: Optional[int] = None
    filling: Optional[tuple] = None


@dataclass(frozen=True)
class GluingSystem:
    name: str
    tet_count: int
    rows: tuple

    @property
    def edge_rows(self):
        return tuple(r for r in self.rows if r.kind == "edge")

    @property
    def cusp_rows(self):
        return tuple(r for r in self.rows if r.kind != "edge")


def edge_classes(tri: Triangulation) -> list:
    """Partition the 6T tetrahedron edges into identification classes."""
    n = len(tri.tets)
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for t in range(n):
        for e in _EDGE_PAIRS:
            parent[(t, e)] = (t, e)
    for t in range(n):
        for f in range(4):
            sigma = tri.tets[t].gluings[f]
            t2 = tri.tets[t].neighbors[f]
            for e in _EDGE_PAIRS:
                if f not in e:
                    img = tuple(sorted((sigma[e[0]], sigma[e[1]])))
                    ra, rb = find((t, e)), find((t2, img))
                    if ra != rb:
                        parent[ra] = rb
    orbits = {}
    for key in parent:
        orbits.setdefault(find(key), []).append(key)
    classes = []
    for members in orbits.values():
        members.sort()
        orbit = tuple((t, e, PAIR_TYPE[e]) for t, e in members)
        classes.append(EdgeClass(orbit))
    classes.sort(key=lambda c: c.orbit[0][:2])
    total = sum(len(c) for c in classes)
    assert total == 6 * n
    return classes


def _flow(x, y):
    """Net strands passing from the side counted by x to the side counted by y."""
    if x > 0 and y < 0:
        return min(x, -y)
    if x < 0 and y > 0:
        return -min(-x, y)
    return 0


def _accumulate(A, B, t, ptype, mult):
    """Fold mult * log(parameter of type ptype at tet t) into A, B, k terms."""
    if ptype == 0:
        A[t] += mult
        return 0
    if ptype == 1:
        B[t] -= mult
        return 0
    A[t] -= mult
    B[t] += mult
    return mult


def build_equations(tri: Triangulation) -> GluingSystem:
    """One row per edge class, then one row per cusp (complete or filled)."""
    n = len(tri.tets)
    rows = []
    for cls in edge_classes(tri):
        A = [0] * n
        B = [0] * n
        k = 0
        for t, _e, ptype in cls.orbit:
            k += _accumulate(A, B, t, ptype, 1)
        rows.append(GluingRow("edge", tuple(A), tuple(B), k, 2))

    # peripheral holonomy rows: H[cusp][curve] as (A, B, k) integer triples
    ncusp = len(tri.cusps)
    hol = [[([0] * n, [0] * n, [0]) for _ in range(2)] for _ in range(ncusp)]
    for t, tet in enumerate(tri.tets):
        for v in range(4):
            cusp = tet.vertex_cusp[v]
            for curve in (0, 1):
                # both sheets; sheet 1 is zero for oriented manifolds
                coeff = [tet.peripheral[2 * curve][4 * v + f]
                         + tet.peripheral[2 * curve + 1][4 * v + f]
                         for f in range(4)]
                A, B, k = hol[cusp][curve]
                for a, b, w in POS_TURNS[v]:
                    mult = HOLONOMY_SIGN * _flow(coeff[a], coeff[b])
                    if mult:
                        ptype = PAIR_TYPE[tuple(sorted((v, w)))]
                        k[0] += _accumulate(A, B, t, ptype, mult)

    for cusp, info in enumerate(tri.cusps):
        if info.topology != "torus":
            raise ValueError(f"cusp {cusp}: only torus cusps are supported")
        (mA, mB, mk), (lA, lB, lk) = hol[cusp]
        if info.is_complete():
            rows.append(GluingRow("cusp_complete", tuple(mA), tuple(mB),
                                  mk[0], 0, cusp=cusp))
        else:
            m, l = info.filling_ints()
            if abs(info.filling_m - m) > 1e-9 or abs(info.filling_l - l) > 1e-9:
                raise ValueError(f"cusp {cusp}: non-integral filling")
            A = tuple(m * x + l * y for x, y in zip(mA, lA))
            B = tuple(m * x + l * y for x, y in zip(mB, lB))
            rows.append(GluingRow("cusp_filled", A, B, m * mk[0] + l * lk[0],
                                  2, cusp=cusp, filling=(m, l)))
    return GluingSystem(tri.name, n, tuple(rows))


def _logs(shapes):
    us, ws = [], []
    for j, z in enumerate(shapes):
        if z == 0 or z == 1:
            raise ValueError(f"shape {j} = {z} is degenerate")
        us.append(cmath.log(z))
        ws.append(cmath.log(1 - z))
    return us, ws


def row_value(row: GluingRow, us, ws) -> complex:
    """Left-hand side minus right-hand side of one equation row."""
    v = complex(0.0)
    for a, u in zip(row.A, us):
        if a:
            v += a * u
    for b, w in zip(row.B, ws):
        if b:
            v += b * w
    return v + complex(0.0, (row.k - row.c) * math.pi)


def residual(sys: GluingSystem, shapes) -> list:
    """Per-row defect |sum A log z + sum B log(1-z) + (k - c) i pi|."""
    us, ws = _logs(shapes)
    return [abs(row_value(row, us, ws)) for row in sys.rows]


def system_matrices(sys: GluingSystem, row_indices=None):
    """Integer coefficient matrices (A, B) and offsets (k - c) for rows."""
    rows = sys.rows if row_indices is None else [sys.rows[i] for i in row_indices]
    MA = np.array([r.A for r in rows], dtype=float)
    MB = np.array([r.B for r in rows], dtype=float)
    off = np.array([r.k - r.c for r in rows], dtype=float)
    return MA, MB, off


def select_square_rows(sys: GluingSystem, shapes) -> list:
    """Indices of a square independent subsystem at the given shapes.

    All cusp rows are kept; edge rows are added greedily by largest
    orthogonal complement norm of their Jacobian row (modified
    Gram-Schmidt, ties broken by lowest row index).  The full edge block
    is rank deficient: the rows of each fixture sum to the zero equation.
    """
    z = np.asarray(shapes, dtype=complex)
    n = sys.tet_count
    MA, MB, _ = system_matrices(sys)
    jac = MA + MB * (-z / (1 - z))[None, :]
    cusp_idx = [i for i, r in enumerate(sys.rows) if r.kind != "edge"]
    edge_idx = [i for i, r in enumerate(sys.rows) if r.kind == "edge"]

    scale = max(np.linalg.norm(jac[i]) for i in range(len(sys.rows)))
    tol = 1e-9 * scale
    basis = []

    def ortho_norm(vec):
        v = vec.astype(complex)
        for q in basis:
            v = v - np.vdot(q, v) * q
        return v, np.linalg.norm(v)

    selected = []
    for i in cusp_idx:
        v, nv = ortho_norm(jac[i])
        if nv < tol:
            raise SingularJacobianError(
                f"cusp row {i} is dependent on the previous rows")
        basis.append(v / nv)
        selected.append(i)
    remaining = list(edge_idx)
    while len(selected) < n:
        best, best_norm, best_vec = None, tol, None
        for i in remaining:
            v, nv = ortho_norm(jac[i])
            if nv > best_norm:
                best, best_norm, best_vec = i, nv, v
        if best is None:
            raise SingularJacobianError(
                f"system rank {len(selected)} < {n}: cannot select a square subsystem")
        basis.append(best_vec / best_norm)
        selected.append(best)
        remaining.remove(best)
    return sorted(selected)


@dataclass(frozen=True)
class NewtonResult:
    shapes: tuple          # solved shape parameters, one per tetrahedron
    iterations: int
    residual_max: float


def newton_solve(sys: GluingSystem, initial, tol: float = 1e-12,
                 max_iter: int = 50) -> NewtonResult:
    """Newton iteration in log-shape coordinates on a square subsystem.

    Iterates u_j = log z_j, requiring Im u_j in (0, pi), i.e. shapes stay
    in the upper half-plane; the branch offsets recorded in the rows are
    constant along such a path.  Stops when the selected rows' residual
    drops below tol, then checks the residual of the full system.
    """
    z0 = np.asarray(initial, dtype=complex)
    if len(z0) != sys.tet_count:
        raise ValueError(f"expected {sys.tet_count} shapes, got {len(z0)}")
    if np.any(z0.imag <= 0):
        raise HalfPlaneExitError("initial shapes must have Im z > 0")
    rows = select_square_rows(sys, z0)
    MA, MB, off = system_matrices(sys, rows)
    rhs_off = 1j * math.pi * off

    u = np.log(z0)
    iterations = 0
    for _ in range(max_iter + 1):
        z = np.exp(u)
        w = np.log(1 - z)
        f = MA @ u + MB @ w + rhs_off
        res = float(np.max(np.abs(f)))
        if not np.isfinite(res):
            raise DivergenceError("iteration produced a non-finite residual")
        if res < tol:
            full = residual(sys, list(z))
            full_max = float(max(full))
            if full_max > max(tol, 10 * res + 1e-13):
                raise DivergenceError(
                    f"square subsystem converged (residual {res:.3e}) but the "
                    f"full system does not ({full_max:.3e}); inconsistent rows")
            return NewtonResult(tuple(complex(v) for v in z),
                                iterations, full_max)
        if iterations >= max_iter:
            break
        jac = MA + MB * (-z / (1 - z))[None, :]
        try:
            step = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobianError(f"Jacobian solve failed: {exc}") from None
        u = u - step
        iterations += 1
        if np.any(u.imag <= 0) or np.any(u.imag >= math.pi):
            raise HalfPlaneExitError(
                f"iterate {iterations} left the upper half-plane")
    raise DivergenceError(f"no convergence to {tol:g} in {max_iter} iterations")
