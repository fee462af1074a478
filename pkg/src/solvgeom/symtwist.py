"""Iwasawa-type solvable algebras of classical symmetric spaces and their
sign twists.

Each builder returns a RootDecoratedAlgebra: the metric algebra a + n with an
orthonormal basis grouped by restricted root, integer root tuples in
omega-coordinates, and enough per-vector metadata to express the twists.

A twist flips the sign of c[i][j][k] when basis vectors i and j both carry
parity 1 (vectors in a always carry parity 0).  When the parity assignment is
closed (parity(k) = parity(i) xor parity(j) on every nonzero constant), the
twisted algebra is the real span of the even vectors and sqrt(-1) times the
odd vectors inside the complexification, hence again a Lie algebra, and the
twist is an exact involution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import MetricLieAlgebra, from_sparse
from .curvature import einstein_verdict

__all__ = [
    "RootDecoratedAlgebra",
    "TwistAssignment",
    "TwistClosureReport",
    "PreservationReport",
    "twist_closure_check",
    "twist",
    "einstein_preservation_check",
    "restricted_height_twist",
    "enumerate_twists",
    "wa_twist",
    "paper_twist_so_nH",
    "paper_twist_sl_nH",
    "type_iv_twist",
    "build_so_pq",
    "build_su_pq",
    "build_sp_pq",
    "build_so_nH",
    "build_sl_nH",
    "build_type_iv_sl",
    "build_sl_nR",
    "positive_curvature_witness",
    "bracket_table",
]


@dataclass
class RootDecoratedAlgebra:
    base: MetricLieAlgebra
    tag: str
    simple_roots: tuple          # base of the positive root system, omega-coords
    meta: tuple                  # per-index dict: name, root, col, group
    params: dict = field(default_factory=dict)

    def root_of(self, i):
        return self.base.roots[i]

    @property
    def dim(self):
        return self.base.dim

    @property
    def labels(self):
        return self.base.labels

    @property
    def a_indices(self):
        return self.base.a_indices

    @property
    def n_indices(self):
        return self.base.n_indices


@dataclass
class TwistAssignment:
    parities: tuple   # one 0/1 per basis index; 0 on a
    tag: str = ""


# --- generic assembly from matrices -----------------------------------------


def _flat(m):
    m = np.asarray(m, dtype=complex)
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _assemble(tag, a_mats, a_names, n_mats, n_names, n_roots, n_cols, n_groups,
              simple_roots, params, tol=1e-10):
    """Orthonormality is asserted, structure constants are computed by exact
    expansion of matrix commutators, and the root decoration is validated
    against the actual ad(a) eigenvalues."""
    mats = list(a_mats) + list(n_mats)
    la, dim = len(a_mats), len(a_mats) + len(n_mats)
    names = tuple(a_names) + tuple(n_names)

    basis_flat = np.stack([_flat(m) for m in mats])        # (dim, 2 s^2)
    # in every family the shipped inner product is a block-constant multiple of
    # the Frobenius form, so orthonormality of the basis reduces to the flat
    # gram being diagonal with the norms the builders already fixed
    gmat = basis_flat @ basis_flat.T
    if float(np.max(np.abs(gmat - np.diag(np.diag(gmat))))) > 1e-10:
        raise ValueError(f"{tag}: basis is not orthogonal")

    entries = []
    pinv = np.linalg.pinv(basis_flat.T)
    for i in range(dim):
        for j in range(i + 1, dim):
            com = mats[i] @ mats[j] - mats[j] @ mats[i]
            target = _flat(com)
            coeff = pinv @ target
            resid = float(np.max(np.abs(basis_flat.T @ coeff - target)))
            if resid > tol:
                raise ValueError(
                    f"{tag}: [{names[i]}, {names[j]}] leaves the span (residual {resid:.2e})"
                )
            for k in range(dim):
                if abs(coeff[k]) > 1e-12:
                    entries.append((i, j, k, float(coeff[k])))

    roots = tuple([None] * la) + tuple(tuple(r) for r in n_roots)
    alg = from_sparse(
        dim,
        entries,
        gram=np.eye(dim),
        labels=names,
        a_indices=tuple(range(la)),
        n_indices=tuple(range(la, dim)),
        roots=roots,
    )

    # ad(a) must act diagonally on the n-basis, linearly in the root tuples
    root_mat = np.array([list(r) for r in n_roots], dtype=float)  # (nn, rank)
    for ai in range(la):
        adm = np.einsum("ijk,i->kj", alg.c, alg.basis_vector(ai))
        block = adm[la:, la:]
        off = block - np.diag(np.diag(block))
        if float(np.max(np.abs(off))) > tol:
            raise ValueError(f"{tag}: ad({names[ai]}) is not diagonal on n")
        lam = np.diag(block)
        kappa, res, *_ = np.linalg.lstsq(root_mat, lam, rcond=None)
        if float(np.max(np.abs(root_mat @ kappa - lam))) > 1e-8:
            raise ValueError(f"{tag}: root labels disagree with ad({names[ai]}) spectrum")

    meta = tuple(
        {"name": names[i], "root": roots[i],
         "col": (n_cols[i - la] if i >= la else None),
         "group": (n_groups[i - la] if i >= la else "a")}
        for i in range(dim)
    )
    return RootDecoratedAlgebra(
        base=alg, tag=tag, simple_roots=tuple(tuple(s) for s in simple_roots),
        meta=meta, params=dict(params),
    )


def _orthonormalize_rows(vectors):
    """Modified Gram-Schmidt on rows of a real matrix."""
    v = np.array(vectors, dtype=float)
    for i in range(v.shape[0]):
        for j in range(i):
            v[i] -= (v[i] @ v[j]) * v[j]
        v[i] /= np.linalg.norm(v[i])
    return v


# --- sign twists -------------------------------------------------------------


@dataclass
class TwistClosureReport:
    ok: bool
    monomial: bool
    violations: tuple


def twist_closure_check(rda, assignment, tol=1e-12):
    """Parity closure: parity(k) = parity(i) + parity(j) mod 2 on every nonzero
    structure constant.  Also reports whether every basis bracket is a scalar
    multiple of a single basis vector."""
    alg = rda.base
    par = assignment.parities
    if len(par) != alg.dim:
        raise ValueError("parity assignment has wrong length")
    if any(par[i] for i in alg.a_indices):
        raise ValueError("parities must vanish on a")
    violations = []
    monomial = True
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            nz = np.flatnonzero(np.abs(alg.c[i, j, :]) > tol)
            if len(nz) > 1:
                monomial = False
            for k in nz:
                if (par[i] + par[j] + par[int(k)]) % 2 != 0:
                    violations.append((i, j, int(k)))
    return TwistClosureReport(ok=not violations, monomial=monomial,
                              violations=tuple(violations))


def twist(rda, assignment):
    """Flip signs of brackets between odd basis vectors; exact involution."""
    rep = twist_closure_check(rda, assignment)
    if not rep.ok:
        i, j, k = rep.violations[0]
        raise ValueError(
            f"twist is not closed: constant ({rda.labels[i]},{rda.labels[j]})->"
            f"{rda.labels[k]} violates parity"
        )
    alg = rda.base
    par = np.asarray(assignment.parities)
    sign = np.where(np.outer(par, par) == 1, -1.0, 1.0)
    c = alg.c * sign[:, :, None]
    labels = tuple(
        (lab[:-1] if lab.endswith("'") else lab + "'") if par[i] else lab
        for i, lab in enumerate(alg.labels)
    )
    new = MetricLieAlgebra(
        c=c, gram=alg.gram.copy(), labels=labels,
        a_indices=alg.a_indices, n_indices=alg.n_indices, roots=alg.roots,
    )
    meta = tuple(
        dict(m, name=labels[i]) for i, m in enumerate(rda.meta)
    )
    suffix = f" twisted[{assignment.tag}]" if assignment.tag else " twisted"
    tag = rda.tag[:-len(suffix)] if rda.tag.endswith(suffix) else rda.tag + suffix
    return RootDecoratedAlgebra(
        base=new, tag=tag, simple_roots=rda.simple_roots, meta=meta,
        params=dict(rda.params),
    )


@dataclass
class PreservationReport:
    before: object
    after: object
    lambda_drift: float

    @property
    def ok(self):
        return self.before.is_einstein and self.after.is_einstein


def einstein_preservation_check(rda, assignment, tol=1e-10):
    """Einstein verdicts before and after twisting, with the drift of the
    Einstein constant."""
    before = einstein_verdict(rda.base, tol=tol)
    after = einstein_verdict(twist(rda, assignment).base, tol=tol)
    return PreservationReport(
        before=before, after=after, lambda_drift=abs(before.lam - after.lam)
    )


def _expand_in_base(root, simple_roots):
    """Integer coordinates of a root in the base; raises if not integral."""
    a = np.array(simple_roots, dtype=float).T
    b = np.array(root, dtype=float)
    coeff, res, *_ = np.linalg.lstsq(a, b, rcond=None)
    if float(np.max(np.abs(a @ coeff - b))) > 1e-9:
        raise ValueError(f"root {root} is not in the span of the base")
    ints = np.rint(coeff).astype(int)
    if float(np.max(np.abs(coeff - ints))) > 1e-9:
        raise ValueError(f"root {root} has non-integer base coordinates {coeff}")
    return ints


def restricted_height_twist(rda, subset):
    """Parity = (sum of base-coordinates over the subset) mod 2.

    Constant on root spaces; always closed.  These twists give algebras
    isometric to the untwisted one.
    """
    subset = tuple(sorted(set(subset)))
    k = len(rda.simple_roots)
    if any(not 0 <= s < k for s in subset):
        raise ValueError(f"subset must contain base indices 0..{k-1}")
    parities = [0] * rda.dim
    for i in rda.n_indices:
        coords = _expand_in_base(rda.root_of(i), rda.simple_roots)
        parities[i] = int(sum(coords[s] for s in subset)) % 2
    return TwistAssignment(parities=tuple(parities), tag="rh:" + ",".join(map(str, subset)))


def enumerate_twists(rda, tol=1e-12, max_solutions=4096):
    """All closed parity assignments, by GF(2) elimination of the closure system."""
    alg = rda.base
    n_idx = list(alg.n_indices)
    pos = {v: t for t, v in enumerate(n_idx)}
    nn = len(n_idx)
    rows = set()
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            for k in np.flatnonzero(np.abs(alg.c[i, j, :]) > tol):
                mask = 0
                for v in (i, j, int(k)):
                    if v in pos:
                        mask ^= 1 << pos[v]
                if mask:
                    rows.add(mask)
    # forward elimination into an xor basis, then full reduction so each pivot
    # bit appears in exactly one row (the remaining support is free bits only)
    basis = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    changed = True
    while changed:
        changed = False
        for t in range(len(basis)):
            piv = basis[t].bit_length() - 1
            for u in range(len(basis)):
                if u != t and (basis[u] >> piv) & 1:
                    basis[u] ^= basis[t]
                    changed = True
    pivots = {b.bit_length() - 1 for b in basis}
    free = [t for t in range(nn) if t not in pivots]
    if 2 ** len(free) > max_solutions:
        raise ValueError(f"twist solution space too large (2^{len(free)})")
    sols = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        x = 0
        for t, v in zip(free, bits):
            if v:
                x ^= 1 << t
        for b in basis:
            piv = b.bit_length() - 1
            if bin(b & x).count("1") % 2 == 1:
                x ^= 1 << piv
        parities = [0] * alg.dim
        for t in range(nn):
            if (x >> t) & 1:
                parities[n_idx[t]] = 1
        sols.append(TwistAssignment(parities=tuple(parities), tag=f"bits:{x:#x}"))
    return sols


def wa_twist(rda, a):
    """Parity 1 on the omega_k vectors whose column exceeds a (needs 1 <= a < m)."""
    if rda.params.get("family") not in ("so_pq", "su_pq", "sp_pq"):
        raise ValueError("column twists apply to the Grassmannian families only")
    m = rda.params.get("m")
    if m is None or m < 2:
        raise ValueError("this algebra has no column split to twist (need m >= 2)")
    if not 1 <= a < m:
        raise ValueError(f"need 1 <= a < m = {m}")
    parities = [0] * rda.dim
    for i in rda.n_indices:
        col = rda.meta[i]["col"]
        if col is not None and col > a:
            parities[i] = 1
    return TwistAssignment(parities=tuple(parities), tag=f"wa:{a}")


def positive_curvature_witness(twisted):
    """Unit pair (x, y) with [x, y] = 0 and K(x, y) > 0 in a twisted algebra.

    Each family's pair mixes an untwisted and a twisted basis vector from
    adjacent root spaces; the input must already carry the appropriate twist
    (primed labels).  Raises ValueError when no standard pair applies.
    """
    labels = list(twisted.labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def unit(*terms):
        v = np.zeros(twisted.dim)
        for lab, coeff in terms:
            if lab not in index:
                raise ValueError(f"no basis vector {lab!r}; wrong or missing twist")
            v[index[lab]] = coeff
        return v / np.linalg.norm(v)

    fam = twisted.params.get("family")
    if fam in ("so_pq", "su_pq", "sp_pq"):
        if twisted.params.get("p", 0) < 2:
            raise ValueError("the column-twist pair needs p >= 2")
        plain = sorted(
            c for c in range(1, twisted.params["m"] + 1) if f"w1c{c}" in index
        )
        primed = sorted(
            c for c in range(1, twisted.params["m"] + 1) if f"w1c{c}'" in index
        )
        if not plain or not primed or max(plain) >= min(primed):
            raise ValueError("need a column split: plain columns then twisted ones")
        i, j = max(plain), min(primed)
        x = unit((f"w1c{i}", 1.0), (f"w1c{j}'", 1.0))
        y = unit((f"w2c{i}", 1.0), (f"w2c{j}'", 1.0))
        return x, y
    if fam == "so_nH":
        if twisted.params.get("m", 0) < 3:
            raise ValueError("the minus-family pair needs m >= 3")
        x = unit(("A-_12", 1.0), ("B-_12'", 1.0))
        y = unit(("C-_23'", 1.0), ("D-_23", 1.0))
        return x, y
    if fam == "sl_nH":
        if twisted.params.get("n", 0) < 3:
            raise ValueError("the two-step pair needs n >= 3")
        x = unit(("A_12'", 1.0), ("B_12", 1.0))
        y = unit(("C_23'", 1.0), ("D_23", 1.0))
        return x, y
    if fam == "type_iv":
        if twisted.params.get("n", 0) < 3:
            raise ValueError("the two-step pair needs n >= 3")
        x = unit(("X_12", 1.0), ("JX_12'", 1.0))
        y = unit(("X_23", 1.0), ("JX_23'", -1.0))
        return x, y
    raise ValueError(f"no standard positive-curvature pair for family {fam!r}")


def _group_twist(rda, groups, tag):
    parities = [0] * rda.dim
    for i in rda.n_indices:
        if rda.meta[i]["group"] in groups:
            parities[i] = 1
    return TwistAssignment(parities=tuple(parities), tag=tag)


def paper_twist_so_nH(rda):
    """Even: odd vectors are B-, C-, A+, D+, G.  Odd n: X, Z, B+, C+, B-, C-."""
    if rda.params.get("family") != "so_nH":
        raise ValueError("paper_twist_so_nH expects a so(n,H) build")
    if rda.params["n"] % 2 == 0:
        groups = {"B-", "C-", "A+", "D+", "G"}
    else:
        groups = {"X", "Z", "B+", "C+", "B-", "C-"}
    return _group_twist(rda, groups, "paper")


def paper_twist_sl_nH(rda):
    """Odd vectors are A_jk and C_jk for all j < k."""
    if rda.params.get("family") != "sl_nH":
        raise ValueError("paper_twist_sl_nH expects a sl(n,H) build")
    return _group_twist(rda, {"A", "C"}, "paper")


def type_iv_twist(rda):
    """Odd vectors are the J-rotated root vectors."""
    if rda.params.get("family") != "type_iv":
        raise ValueError("type_iv_twist expects a type-IV build")
    return _group_twist(rda, {"JX"}, "paper")


# --- Grassmannian families so(p,q), su(p,q), sp(p,q) -------------------------
#
# Block form with sizes (p, p, m), m = q - p:
#     [[A, B, C], [B*, D, E], [C*, -E*, F]],   A* = -A, D* = -D, F* = -F,
# where * is conjugate transpose over the base field.  a = {B real diagonal}.
# Quaternionic matrices are embedded as 2N x 2N complex matrices via
# X + Yj -> [[X, Y], [-conj(Y), conj(X)]].

_UNITS = {
    "R": ((1.0, 0.0),),
    "C": ((1.0, 0.0), (1j, 0.0)),
    "H": ((1.0, 0.0), (1j, 0.0), (0.0, 1.0), (0.0, 1j)),
}
_UNIT_SUFFIX = ("", "i", "j", "k")


def _qconj(u):
    return (np.conj(u[0]), -u[1])


def _qblocks(size, entries):
    """Quaternionic matrix as a complex pair (X, Y) from {(r, c): unit} data."""
    x = np.zeros((size, size), dtype=complex)
    y = np.zeros((size, size), dtype=complex)
    for (r, c), (a, b) in entries.items():
        x[r, c] += a
        y[r, c] += b
    return x, y


def _materialize(field_, size, entries):
    x, y = _qblocks(size, entries)
    if field_ == "R":
        if np.max(np.abs(y)) > 0 or np.max(np.abs(x.imag)) > 0:
            raise ValueError("non-real entry in a real build")
        return x.real
    if field_ == "C":
        if np.max(np.abs(y)) > 0:
            raise ValueError("quaternionic entry in a complex build")
        return x
    return np.block([[x, y], [-np.conj(y), np.conj(x)]])


def _grassmannian_membership(field_, p, m, mat, tol=1e-12):
    n = 2 * p + m
    q = np.diag([-1.0] * p + [1.0] * p + [1.0] * m)
    if field_ == "H":
        q = np.kron(np.eye(2), q)
    defect = mat @ q + q @ np.conj(mat).T
    if float(np.max(np.abs(defect))) > tol:
        raise ValueError("matrix fails the defining relation of the family")
    if field_ == "C":
        if abs(np.trace(mat)) > tol:
            raise ValueError("matrix is not traceless")


def _build_grassmannian(field_, p, q):
    if q < p or p < 1:
        raise ValueError("need 1 <= p <= q")
    m = q - p
    size = 2 * p + m
    units = _UNITS[field_]
    d = len(units)
    fam = {"R": "so_pq", "C": "su_pq", "H": "sp_pq"}[field_]
    tag = {"R": f"so({p},{q})", "C": f"su({p},{q})", "H": f"sp({p},{q})"}[field_]

    def emb(entries):
        mat = _materialize(field_, size, entries)
        _grassmannian_membership(field_, p, m, mat)
        return mat

    one = (1.0, 0.0)

    a_mats, a_names = [], []
    for k in range(p):
        h = emb({(k, p + k): one, (p + k, k): one})
        a_mats.append(h / math.sqrt(_norm_a(h)))
        a_names.append(f"a{k+1}")

    n_mats, n_names, n_roots, n_cols, n_groups = [], [], [], [], []

    def push(mat, name, root, col, group):
        mat = mat / math.sqrt(_norm_n(mat))
        n_mats.append(mat)
        n_names.append(name)
        n_roots.append(root)
        n_cols.append(col)
        n_groups.append(group)

    ids = np.eye(p, dtype=int)
    # omega_k vectors: C = E = u e_k e_c^T
    for k in range(p):
        for c in range(m):
            for ui, u in enumerate(units):
                ub = _qconj(u)
                ent = {
                    (k, 2 * p + c): u, (p + k, 2 * p + c): u,
                    (2 * p + c, k): ub, (2 * p + c, p + k): (-ub[0], -ub[1]),
                }
                push(emb(ent), f"w{k+1}c{c+1}{_UNIT_SUFFIX[ui]}",
                     tuple(ids[k]), c + 1, "W")
    # omega_j - omega_i and omega_j + omega_i, i < j
    for i in range(p):
        for j in range(i + 1, p):
            for ui, u in enumerate(units):
                ub = _qconj(u)
                mu = (-u[0], -u[1])
                mub = (-ub[0], -ub[1])
                ent_m = {
                    (j, i): u, (i, j): mub,                 # A = u e_ji - u* e_ij
                    (j, p + i): u, (i, p + j): ub,          # B = u e_ji + u* e_ij
                    (p + j, i): u, (p + i, j): ub,          # B* block
                    (p + j, p + i): u, (p + i, p + j): mub,  # D = A
                }
                push(emb(ent_m), f"m{j+1}{i+1}{_UNIT_SUFFIX[ui]}",
                     tuple(ids[j] - ids[i]), None, "M")
                ent_p = {
                    (j, i): u, (i, j): mub,
                    (j, p + i): mu, (i, p + j): ub,         # B = -u e_ji + u* e_ij
                    (p + j, i): u, (p + i, j): mub,
                    (p + j, p + i): mu, (p + i, p + j): ub,  # D = -A
                }
                push(emb(ent_p), f"p{j+1}{i+1}{_UNIT_SUFFIX[ui]}",
                     tuple(ids[j] + ids[i]), None, "P")
    # 2 omega_k, imaginary units only
    for k in range(p):
        for ui, u in enumerate(units[1:], start=1):
            mu = (-u[0], -u[1])
            mub = (-_qconj(u)[0], -_qconj(u)[1])
            ent = {
                (k, k): u, (k, p + k): mu,
                (p + k, k): mub, (p + k, p + k): mu,
            }
            push(emb(ent), f"d{k+1}{_UNIT_SUFFIX[ui]}", tuple(2 * ids[k]), None, "D2")

    expected = d * p * (p - 1) + d * m * p + (d - 1) * p
    if len(n_mats) != expected:
        raise ValueError(f"{tag}: expected dim n = {expected}, built {len(n_mats)}")

    if m == 0:
        simple = [tuple(ids[k] - ids[k - 1]) for k in range(1, p)]
        simple.append(tuple(ids[0] + ids[1]) if field_ == "R" else tuple(2 * ids[0]))
    else:
        simple = [tuple(ids[0])] + [tuple(ids[k] - ids[k - 1]) for k in range(1, p)]

    return _assemble(
        tag, a_mats, a_names, n_mats, n_names, n_roots, n_cols, n_groups,
        simple_roots=simple,
        params={"family": fam, "p": p, "q": q, "m": m, "field": field_},
    )


def _norm_a(mat):
    return float(np.real(np.trace(mat @ mat)))


def _norm_n(mat):
    return 0.5 * float(np.real(np.trace(mat @ np.conj(mat).T)))


def build_so_pq(p, q):
    """Iwasawa algebra of the real hyperbolic Grassmannian family."""
    return _build_grassmannian("R", p, q)


def build_su_pq(p, q):
    return _build_grassmannian("C", p, q)


def build_sp_pq(p, q):
    return _build_grassmannian("H", p, q)


# --- so(n, H) ----------------------------------------------------------------


def _skew_unit(i, j, size):
    m = np.zeros((size, size), dtype=complex)
    m[i - 1, j - 1] += 1.0
    m[j - 1, i - 1] -= 1.0
    return m


def _so_nH_membership(n, mat, tol=1e-12):
    x = mat[:n, :n]
    y = mat[:n, n:]
    if float(np.max(np.abs(mat[n:, n:] - np.conj(x)))) > tol:
        raise ValueError("lower-right block is not conj(X)")
    if float(np.max(np.abs(mat[n:, :n] + np.conj(y)))) > tol:
        raise ValueError("lower-left block is not -conj(Y)")
    if float(np.max(np.abs(x + x.T))) > tol:
        raise ValueError("X block is not skew")
    if float(np.max(np.abs(y - np.conj(y).T))) > tol:
        raise ValueError("Y block is not Hermitian")


def build_so_nH(n):
    """Iwasawa algebra of the quaternion-skew family inside gl(2n, C).

    All listed basis vectors share Frobenius norm sqrt(2); the shipped inner
    product is half the real trace form, making the basis orthonormal.
    """
    if n < 4:
        raise ValueError("need n >= 4 for a rank >= 2 algebra")
    m = n // 2
    size = 2 * n
    E = lambda i, j: _skew_unit(i, j, size)

    a_mats, a_names = [], []
    for j in range(1, m + 1):
        h = (1j / math.sqrt(2)) * (E(2 * j - 1, 2 * j) - E(n + 2 * j - 1, n + 2 * j))
        a_mats.append(h)
        a_names.append(f"a{j}")

    n_mats, n_names, n_roots, n_groups = [], [], [], []
    ids = np.eye(m, dtype=int)

    def push(mat, name, root, group):
        _so_nH_membership(n, mat)
        # the listed vectors share Re tr(X Y*)/2 norm-square 2, as do the a
        # vectors under Re tr(XY); the shipped metric is that form halved,
        # making the basis exactly orthonormal
        nrm = _norm_n(mat)
        if abs(nrm - 2.0) > 1e-12:
            raise ValueError(f"{name}: expected common norm, got {nrm}")
        n_mats.append(mat)
        n_names.append(name)
        n_roots.append(root)
        n_groups.append(group)

    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            for s, pm in ((1.0, "+"), (-1.0, "-")):
                a_ = 0.5 * (
                    E(2 * j - 1, 2 * k - 1) - s * E(2 * j, 2 * k)
                    + E(n + 2 * j - 1, n + 2 * k - 1) - s * E(n + 2 * j, n + 2 * k)
                ) + 0.5j * (
                    -s * E(2 * j - 1, 2 * k) - E(2 * j, 2 * k - 1)
                    + s * E(n + 2 * j - 1, n + 2 * k) + E(n + 2 * j, n + 2 * k - 1)
                )
                b_ = 0.5 * (
                    E(2 * j - 1, 2 * k) + s * E(2 * j, 2 * k - 1)
                    + E(n + 2 * j - 1, n + 2 * k) + s * E(n + 2 * j, n + 2 * k - 1)
                ) + 0.5j * (
                    s * E(2 * j - 1, 2 * k - 1) - E(2 * j, 2 * k)
                    - s * E(n + 2 * j - 1, n + 2 * k - 1) + E(n + 2 * j, n + 2 * k)
                )
                c_ = 0.5 * (
                    E(2 * j - 1, n + 2 * k) - s * E(2 * j, n + 2 * k - 1)
                    - s * E(2 * k - 1, n + 2 * j) + E(2 * k, n + 2 * j - 1)
                ) + 0.5j * (
                    -s * E(2 * j - 1, n + 2 * k - 1) - E(2 * j, n + 2 * k)
                    + s * E(2 * k - 1, n + 2 * j - 1) + E(2 * k, n + 2 * j)
                )
                d_ = 0.5 * (
                    E(2 * j - 1, n + 2 * k - 1) + E(2 * k - 1, n + 2 * j - 1)
                    + s * E(2 * j, n + 2 * k) + s * E(2 * k, n + 2 * j)
                ) + 0.5j * (
                    s * E(2 * j - 1, n + 2 * k) - E(2 * j, n + 2 * k - 1)
                    + E(2 * k - 1, n + 2 * j) - s * E(2 * k, n + 2 * j - 1)
                )
                root = tuple(ids[j - 1] + int(s) * ids[k - 1])
                for mat, letter in ((a_, "A"), (b_, "B"), (c_, "C"), (d_, "D")):
                    push(mat, f"{letter}{pm}_{j}{k}", root, f"{letter}{pm}")
    for k in range(1, m + 1):
        g = (1 / math.sqrt(2)) * (
            E(2 * k - 1, n + 2 * k - 1) + E(2 * k, n + 2 * k)
        ) + (1j / math.sqrt(2)) * (E(2 * k - 1, n + 2 * k) - E(2 * k, n + 2 * k - 1))
        push(g, f"G_{k}", tuple(2 * ids[k - 1]), "G")
    if n % 2 == 1:
        for k in range(1, m + 1):
            xk = (1 / math.sqrt(2)) * (
                (E(2 * k, n) + E(n + 2 * k, 2 * n))
                + 1j * (E(2 * k - 1, n) - E(n + 2 * k - 1, 2 * n))
            )
            yk = (1 / math.sqrt(2)) * (
                (E(2 * k - 1, n) + E(n + 2 * k - 1, 2 * n))
                - 1j * (E(2 * k, n) - E(n + 2 * k, 2 * n))
            )
            zk = (1 / math.sqrt(2)) * (
                (E(2 * k, 2 * n) + E(n, n + 2 * k))
                + 1j * (E(2 * k - 1, 2 * n) - E(n, n + 2 * k - 1))
            )
            wk = (1 / math.sqrt(2)) * (
                (E(2 * k - 1, 2 * n) + E(n, n + 2 * k - 1))
                - 1j * (E(2 * k, 2 * n) - E(n, n + 2 * k))
            )
            root = tuple(ids[k - 1])
            for mat, letter in ((xk, "X"), (yk, "Y"), (zk, "Z"), (wk, "W")):
                push(mat, f"{letter}_{k}", root, letter)

    if n % 2 == 0:
        simple = [tuple(ids[k] - ids[k + 1]) for k in range(m - 1)]
        simple.append(tuple(2 * ids[m - 1]))
    else:
        simple = [tuple(ids[k] - ids[k + 1]) for k in range(m - 1)]
        simple.append(tuple(ids[m - 1]))

    return _assemble(
        f"so({n},H)", a_mats, a_names, n_mats, n_names, n_roots,
        [None] * len(n_mats), n_groups, simple_roots=simple,
        params={"family": "so_nH", "n": n, "m": m},
    )


# --- sl(n, H) ----------------------------------------------------------------


def _sl_nH_membership(n, mat, tol=1e-12):
    x = mat[:n, :n]
    y = mat[n:, :n]
    if float(np.max(np.abs(mat[n:, n:] - np.conj(x)))) > tol:
        raise ValueError("lower-right block is not conj(X)")
    if float(np.max(np.abs(mat[:n, n:] + np.conj(y)))) > tol:
        raise ValueError("upper-right block is not -conj(Y)")
    if abs(np.real(np.trace(x))) > tol:
        raise ValueError("tr(X + conj X) != 0")


def build_sl_nH(n):
    """Iwasawa algebra of the quaternion special-linear family in gl(2n, C)."""
    if n < 2:
        raise ValueError("need n >= 2")
    size = 2 * n

    def F(i, j):
        m = np.zeros((size, size), dtype=complex)
        m[i - 1, j - 1] = 1.0
        return m

    diag_basis = _orthonormalize_rows(
        [np.eye(n)[l] - np.eye(n)[l + 1] for l in range(n - 1)]
    )
    a_mats, a_names = [], []
    for l, v in enumerate(diag_basis):
        h = np.zeros((size, size), dtype=complex)
        h[:n, :n] = np.diag(v)
        h[n:, n:] = np.diag(v)
        a_mats.append(h)
        a_names.append(f"a{l+1}")

    n_mats, n_names, n_roots, n_groups = [], [], [], []
    ids = np.eye(n, dtype=int)
    s2 = math.sqrt(2)
    for j in range(1, n):
        for k in range(j + 1, n + 1):
            vecs = (
                ("A", 1j * s2 * (F(j, k) - F(n + j, n + k))),
                ("B", 1j * s2 * (F(j, n + k) + F(n + j, k))),
                ("C", s2 * (F(j, n + k) - F(n + j, k))),
                ("D", s2 * (F(j, k) + F(n + j, n + k))),
            )
            for letter, mat in vecs:
                _sl_nH_membership(n, mat)
                # common norm-square 2 across a and n, metric halved as for
                # the quaternion-skew family
                nrm = _norm_n(mat)
                if abs(nrm - 2.0) > 1e-12:
                    raise ValueError(f"{letter}_{j}{k}: expected common norm")
                n_mats.append(mat)
                n_names.append(f"{letter}_{j}{k}")
                n_roots.append(tuple(ids[j - 1] - ids[k - 1]))
                n_groups.append(letter)

    simple = [tuple(ids[j] - ids[j + 1]) for j in range(n - 1)]
    return _assemble(
        f"sl({n},H)", a_mats, a_names, n_mats, n_names, n_roots,
        [None] * len(n_mats), n_groups, simple_roots=simple,
        params={"family": "sl_nH", "n": n},
    )


# --- type IV (complex simple algebras viewed as real) -------------------------


def build_type_iv_sl(n):
    """Iwasawa algebra of sl(n, C) viewed as a real algebra.

    Root spaces are two-dimensional, spanned by X_jk and its rotation
    JX_jk = i X_jk; the inner product is Re tr on a and Re tr(X Y*)/2 on n.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    diag_basis = _orthonormalize_rows(
        [np.eye(n)[l] - np.eye(n)[l + 1] for l in range(n - 1)]
    )
    # a-norm is Re tr(XY); rescale rows so diag matrices are unit
    a_mats = [np.diag(v).astype(complex) for v in diag_basis]
    a_names = [f"a{l+1}" for l in range(n - 1)]

    n_mats, n_names, n_roots, n_groups = [], [], [], []
    ids = np.eye(n, dtype=int)
    s2 = math.sqrt(2)
    for j in range(1, n):
        for k in range(j + 1, n + 1):
            e = np.zeros((n, n), dtype=complex)
            e[j - 1, k - 1] = 1.0
            for mat, prefix in ((s2 * e, "X"), (1j * s2 * e, "JX")):
                if abs(_norm_n(mat) - 1.0) > 1e-12:
                    raise ValueError("root vector is not unit")
                n_mats.append(mat)
                n_names.append(f"{prefix}_{j}{k}")
                n_roots.append(tuple(ids[j - 1] - ids[k - 1]))
                n_groups.append(prefix)

    simple = [tuple(ids[j] - ids[j + 1]) for j in range(n - 1)]
    return _assemble(
        f"sl({n},C) real", a_mats, a_names, n_mats, n_names, n_roots,
        [None] * len(n_mats), n_groups, simple_roots=simple,
        params={"family": "type_iv", "n": n},
    )


def build_sl_nR(n):
    """Iwasawa algebra of the normal real form sl(n, R): one-dimensional root
    spaces, so every closed twist is a restricted-height twist."""
    if n < 2:
        raise ValueError("need n >= 2")
    diag_basis = _orthonormalize_rows(
        [np.eye(n)[l] - np.eye(n)[l + 1] for l in range(n - 1)]
    )
    a_mats = [np.diag(v).astype(complex) for l, v in enumerate(diag_basis)]
    a_names = [f"a{l+1}" for l in range(n - 1)]

    n_mats, n_names, n_roots, n_groups = [], [], [], []
    ids = np.eye(n, dtype=int)
    s2 = math.sqrt(2)
    for j in range(1, n):
        for k in range(j + 1, n + 1):
            e = np.zeros((n, n), dtype=complex)
            e[j - 1, k - 1] = 1.0
            n_mats.append(s2 * e)
            n_names.append(f"E_{j}{k}")
            n_roots.append(tuple(ids[j - 1] - ids[k - 1]))
            n_groups.append("E")

    simple = [tuple(ids[j] - ids[j + 1]) for j in range(n - 1)]
    return _assemble(
        f"sl({n},R)", a_mats, a_names, n_mats, n_names, n_roots,
        [None] * len(n_mats), n_groups, simple_roots=simple,
        params={"family": "sl_nR", "n": n},
    )


# --- bracket tables -----------------------------------------------------------

_SNAP = ((0.0, ""), (1.0, "{}"), (-1.0, "-{}"),
         (math.sqrt(2), "r2 {}"), (-math.sqrt(2), "-r2 {}"))


def _render_cell(coeff, label):
    for val, fmt in _SNAP:
        if abs(coeff - val) <= 1e-9:
            return fmt.format(label)
    raise ValueError(f"coefficient {coeff} is not in the snap set")


def bracket_table(rda):
    """Full bracket grid over the n-basis as TSV: rows Y, columns X, cell [X, Y].

    Cells are rendered with coefficients snapped to 0, +-1, +-sqrt(2).
    """
    alg = rda.base
    n_idx = list(alg.n_indices)
    labels = [alg.labels[i] for i in n_idx]
    lines = ["\t".join([""] + labels)]
    for yi in n_idx:
        row = [alg.labels[yi]]
        for xi in n_idx:
            vec = alg.c[xi, yi, :]
            nz = np.flatnonzero(np.abs(vec) > 1e-9)
            if len(nz) == 0:
                row.append("")
            elif len(nz) == 1:
                k = int(nz[0])
                row.append(_render_cell(float(vec[k]), alg.labels[k]))
            else:
                raise ValueError(
                    f"[{alg.labels[xi]}, {alg.labels[yi]}] is not a basis monomial"
                )
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
