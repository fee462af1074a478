"""A sphere of three-dimensional subspaces W(r,s,t) of so(6).

The subspaces are spanned by D_i = r A_i + s B_i + t C_i where A, B, C come
from realifying a distinguished basis of 3 x 3 complex matrices.  All inner
products on so(6) are (P, Q) = -tr(PQ)/6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .carnot import DataTriple, build_solvmanifold, einstein_conditions, so_basis, so_inner
from .curvature import sectional

__all__ = [
    "FamilyPoint",
    "tau",
    "basis_ABC",
    "W_of",
    "induced_triple",
    "centralizer_in_so6",
    "angle_to_centralizer",
    "bracket_angle",
    "bracket_angle_closed_form",
    "negative_curvature_margin",
    "family_grid",
    "family_report",
]


def tau(z):
    """Realify a complex 3 x 3 matrix: X + iY -> [[X, Y], [-Y, X]] (multiplicative)."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    return np.block([[x, y], [-y, x]])


_S32 = math.sqrt(1.5)
_X1 = _S32 * np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=float)
_X2 = _S32 * np.array([[0, 0, -1], [0, 0, 0], [1, 0, 0]], dtype=float)
_X3 = _S32 * np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)


def basis_ABC(signs=None):
    """Three orthonormal triples A_i, B_i, C_i in so(6).

    A_i = tau(X_i), B_i = tau(i|X_i|), C_i = tau(i sqrt(3) e_ii); `signs`
    optionally flips individual B_i.  Identities used elsewhere:
    sum A_i^2 = sum B_i^2 = sum C_i^2 = -3 Id and A_i B_i + B_i A_i = 0.
    """
    if signs is None:
        signs = (1, 1, 1)
    xs = (_X1, _X2, _X3)
    a = np.array([tau(x) for x in xs])
    b = np.array([sg * tau(1j * np.abs(x)) for sg, x in zip(signs, xs)])
    c = np.array(
        [tau(1j * math.sqrt(3.0) * np.diag(np.eye(3)[i])) for i in range(3)]
    )
    return a, b, c


def W_of(r, s, t, signs=None):
    """Spanning matrices D_i = r A_i + s B_i + t C_i.

    (r, s, t) is renormalized to the unit sphere, where the D_i are
    orthonormal under -(1/6) tr.
    """
    nrm = math.sqrt(r * r + s * s + t * t)
    if nrm <= 1e-12:
        raise ValueError("need (r, s, t) != 0")
    r, s, t = r / nrm, s / nrm, t / nrm
    a, b, c = basis_ABC(signs)
    return r * a + s * b + t * c


def induced_triple(r, s, t, signs=None):
    return DataTriple(r=6, s=3, j_mats=W_of(r, s, t, signs))


def _coords(mats, basis):
    mats = np.asarray(mats, dtype=float)
    if mats.ndim == 2:
        mats = mats[None]
    return np.array([[so_inner(m, b) for b in basis] for m in mats])


def _orthonormal_rows(coords, tol=1e-12):
    gram = coords @ coords.T
    vals, vecs = np.linalg.eigh(gram)
    keep = vals > tol
    return (vecs[:, keep] / np.sqrt(vals[keep])).T @ coords


def centralizer_in_so6(mats, tol=1e-10):
    """(dimension, basis matrices) of {P in so(6): [P, D_i] = 0 for all i}."""
    basis = so_basis(6)
    rows = []
    for d in mats:
        block = np.einsum("uij,jk->uik", basis, d) - np.einsum("ij,ujk->uik", d, basis)
        rows.append(block.reshape(basis.shape[0], -1))
    stacked = np.concatenate(rows, axis=1)
    u, sing, _ = np.linalg.svd(stacked, full_matrices=True)
    null = sing <= tol * max(1.0, float(sing[0]) if sing.size else 1.0)
    nullity = int(np.sum(null)) + (basis.shape[0] - len(sing))
    if nullity == 0:
        return 0, np.zeros((0, 6, 6))
    vecs = u[:, basis.shape[0] - nullity:]
    return nullity, np.einsum("uc,uij->cij", vecs, basis)


def _principal_cos(mats_a, mats_b):
    """Largest cosine of a principal angle between the two spans."""
    basis = so_basis(6)
    ca = _orthonormal_rows(_coords(mats_a, basis))
    cb = _orthonormal_rows(_coords(mats_b, basis))
    if ca.shape[0] == 0 or cb.shape[0] == 0:
        return float("nan")
    sing = np.linalg.svd(ca @ cb.T, compute_uv=False)
    return float(min(sing[0], 1.0))


def angle_to_centralizer(r, s, t, signs=None):
    """cos of the angle between W(r,s,t) and its centralizer in so(6) (equals |t|)."""
    w = W_of(r, s, t, signs)
    _, cz = centralizer_in_so6(w)
    return _principal_cos(cz, w)


def bracket_angle(r, s, t, signs=None):
    """cos of the angle between span[W, W] and W; NaN when the brackets vanish."""
    w = W_of(r, s, t, signs)
    brs = []
    for i in range(3):
        for j in range(i + 1, 3):
            brs.append(w[i] @ w[j] - w[j] @ w[i])
    brs = np.array(brs)
    if np.max(np.abs(brs)) <= 1e-13:
        return float("nan")
    return _principal_cos(brs, w)


def bracket_angle_closed_form(r, s, t):
    """Closed form |r| sqrt((r^2+s^2) / (r^2+s^2+4t^2 + 4 min(e2 c))).

    Here c = t^2 + sqrt(2) s t and the minimum of e2 c is over the range
    e2 = xy+yz+zx in [-1/2, 1] on the unit sphere, so the last term is
    -2c when c >= 0 and +4c when c < 0 (attained at e2 = 1).
    """
    num = r * r + s * s
    if num <= 1e-30:
        return float("nan")
    if abs(r) <= 1e-30:
        return 0.0
    c = t * t + math.sqrt(2.0) * s * t
    den = r * r + s * s + 4 * t * t + (4 * c if c < 0 else -2 * c)
    return abs(r) * math.sqrt(num / den)


# --- curvature scan ---------------------------------------------------------


def _margin(triple, x, z, y, w):
    jz_x = triple.j_of(z) @ x
    jw_y = triple.j_of(w) @ y
    jz_y = triple.j_of(z) @ y
    jw_x = triple.j_of(w) @ x
    t1 = (0.5 * (x @ x) + z @ z) * (0.5 * (y @ y) + w @ w)
    t2 = float(jz_x @ jw_y)
    mix = jz_y + jw_x
    return t1 + t2 - 0.25 * float(mix @ mix)


def _project_pair(raw, r, s):
    """Map 2(r+s) free parameters onto the constraint set x _|_ y, z _|_ w,
    |x|^2+|z|^2 = |y|^2+|w|^2 = 1."""
    x, y = raw[0:r], raw[r:2 * r]
    z, w = raw[2 * r:2 * r + s], raw[2 * r + s:]
    nx = x @ x
    if nx > 1e-16:
        y = y - (y @ x) / nx * x
    nz = z @ z
    if nz > 1e-16:
        w = w - (w @ z) / nz * z
    n1 = math.sqrt(x @ x + z @ z)
    n2 = math.sqrt(y @ y + w @ w)
    if n1 < 1e-6 or n2 < 1e-6:
        return None
    return x / n1, z / n1, y / n2, w / n2


def negative_curvature_margin(triple, samples=10000, descents=100, seed=0):
    """Estimate the minimum of the curvature margin over admissible 4-tuples.

    margin = (|x|^2/2 + |z|^2)(|y|^2/2 + |w|^2) + <j(z)x, j(w)y>
             - |j(z)y + j(w)x|^2 / 4
    with x _|_ y in R^r, z _|_ w in R^s, unit mixed norms.  A positive
    minimum certifies negative sectional curvature of the extension.
    """
    from scipy.optimize import minimize

    rng = np.random.default_rng(seed)
    r, s = triple.r, triple.s
    dim = 2 * (r + s)

    def objective(raw):
        parts = _project_pair(raw, r, s)
        if parts is None:
            return 10.0
        return _margin(triple, *parts)

    best = math.inf
    best_raw = None
    for _ in range(samples):
        raw = rng.standard_normal(dim)
        v = objective(raw)
        if v < best:
            best, best_raw = v, raw
    starts = [rng.standard_normal(dim) for _ in range(descents)]
    if best_raw is not None and starts:
        starts[0] = best_raw
    for raw in starts:
        res = minimize(objective, raw, method="L-BFGS-B")
        if res.fun < best:
            best = float(res.fun)
    return best


# --- report grid ------------------------------------------------------------


def family_grid(n_lat=7, n_az=24):
    """Deterministic grid on the hemisphere t >= 0 (half equator: s >= 0 at t = 0)."""
    pts = []
    for i in range(n_lat):
        phi = 0.5 * math.pi * i / (n_lat - 1)
        t = math.sin(phi)
        c = math.cos(phi)
        if i == n_lat - 1:
            pts.append((0.0, 0.0, 1.0))
            break
        m = max(1, round(n_az * c))
        for k in range(m):
            if i == 0:
                psi = math.pi * k / m
            else:
                psi = 2.0 * math.pi * k / m
            pts.append((c * math.cos(psi), c * math.sin(psi), t))
    return pts


@dataclass
class FamilyPoint:
    r: float
    s: float
    t: float
    einstein_residual: float
    cos_angle_centralizer: float
    cos_angle_bracket: float
    min_sectional: float
    max_sectional: float


def family_report(points=None, samples=200, seed=0, signs=None):
    """Scan the family: Einstein residuals, the two angle invariants, and the
    range of sampled sectional curvatures of the attached solvable extension."""
    if points is None:
        points = family_grid()
    rng = np.random.default_rng(seed)
    rows = []
    for (r, s, t) in points:
        triple = induced_triple(r, s, t, signs)
        res = einstein_conditions(triple).max_residual
        cos_c = angle_to_centralizer(r, s, t, signs)
        cos_b = bracket_angle(r, s, t, signs)
        alg = build_solvmanifold(triple)
        kmin, kmax = math.inf, -math.inf
        for _ in range(samples):
            x = rng.standard_normal(alg.dim)
            y = rng.standard_normal(alg.dim)
            try:
                k = sectional(alg, x, y)
            except ValueError:
                continue
            kmin = min(kmin, k)
            kmax = max(kmax, k)
        rows.append(
            FamilyPoint(
                r=r, s=s, t=t,
                einstein_residual=res,
                cos_angle_centralizer=cos_c,
                cos_angle_bracket=cos_b,
                min_sectional=kmin,
                max_sectional=kmax,
            )
        )
    return rows
