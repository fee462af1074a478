"""The sphere of 3-dimensional subspaces W(r,s,t) of so(6): algebraic
identities of the spanning basis, the two angle invariants, and the
negative-curvature margin."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvgeom.carnot import build_solvmanifold, einstein_conditions, so_inner
from solvgeom.curvature import einstein_verdict, sectional
from solvgeom.so6family import (
    W_of,
    angle_to_centralizer,
    basis_ABC,
    bracket_angle,
    bracket_angle_closed_form,
    centralizer_in_so6,
    family_grid,
    family_report,
    induced_triple,
    negative_curvature_margin,
    tau,
)
from solvgeom.so6family import _margin, _project_pair

from conftest import SEED


def sphere_point(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def test_tau_is_multiplicative_and_real():
    rng = np.random.default_rng(0)
    for _ in range(10):
        z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        w = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.allclose(tau(z @ w), tau(z) @ tau(w), atol=1e-12)
        assert np.allclose(tau(z) + tau(w), tau(z + w), atol=1e-13)
    assert np.allclose(tau(np.eye(3)), np.eye(6), atol=1e-15)


def test_tau_sends_skew_hermitian_to_skew():
    rng = np.random.default_rng(1)
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    sk = m - m.conj().T
    t = tau(sk)
    assert np.allclose(t, -t.T, atol=1e-13)


def test_basis_families_orthonormal():
    a, b, c = basis_ABC()
    nine = np.concatenate([a, b, c])
    gram = np.array([[so_inner(x, y) for y in nine] for x in nine])
    assert np.allclose(gram, np.eye(9), atol=1e-12)


def test_basis_sum_of_squares():
    a, b, c = basis_ABC()
    for fam in (a, b, c):
        ss = np.einsum("aij,ajk->ik", fam, fam)
        assert np.allclose(ss, -3.0 * np.eye(6), atol=1e-12)


def test_basis_anticommutation():
    a, b, c = basis_ABC()
    for i in range(3):
        anti = a[i] @ b[i] + b[i] @ a[i]
        assert np.allclose(anti, 0.0, atol=1e-12)


def test_sign_flips_preserve_identities():
    a, b, c = basis_ABC(signs=(1, -1, 1))
    ss = np.einsum("aij,ajk->ik", b, b)
    assert np.allclose(ss, -3.0 * np.eye(6), atol=1e-12)
    for i in range(3):
        assert np.allclose(a[i] @ b[i] + b[i] @ a[i], 0.0, atol=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_every_sphere_point_is_uniform(seed):
    rng = np.random.default_rng(seed)
    r, s, t = sphere_point(rng)
    w = W_of(r, s, t)
    ss = np.einsum("aij,ajk->ik", w, w)
    assert np.max(np.abs(ss + 3.0 * np.eye(6))) <= 1e-10
    cond = einstein_conditions(induced_triple(r, s, t))
    assert cond.max_residual <= 1e-10


def test_reference_point_is_einstein():
    alg = build_solvmanifold(induced_triple(1.0, 0.0, 0.0))
    v = einstein_verdict(alg)
    assert v.is_einstein
    assert abs(v.lam + 4.5) <= 1e-12  # -(r + 4 s)/4 with r = 6, s = 3


def test_w_of_renormalizes_and_rejects_zero():
    assert np.allclose(W_of(2.0, 0.0, 0.0), W_of(1.0, 0.0, 0.0))
    assert np.allclose(W_of(-3.0, 3.0, 3.0), W_of(*(np.ones(3) * [-1, 1, 1] / np.sqrt(3))))
    with pytest.raises(ValueError):
        W_of(0.0, 0.0, 0.0)


def test_angle_to_centralizer_equals_abs_t():
    rng = np.random.default_rng(2)
    for _ in range(15):
        r, s, t = sphere_point(rng)
        assert abs(angle_to_centralizer(r, s, t) - abs(t)) <= 1e-9
    assert abs(angle_to_centralizer(1.0, 0.0, 0.0)) <= 1e-9
    assert abs(angle_to_centralizer(0.0, 0.0, 1.0) - 1.0) <= 1e-9


def test_centralizer_dimension_generic_and_pole():
    rng = np.random.default_rng(3)
    for _ in range(10):
        r, s, t = sphere_point(rng)
        if max(abs(r), abs(s)) <= 1e-6:
            continue
        dim, _ = centralizer_in_so6(W_of(r, s, t))
        assert dim == 1
    dim, _ = centralizer_in_so6(W_of(0.0, 0.0, 1.0))
    assert dim == 3


def test_centralizer_dimension_on_switch_locus():
    # t^2 = (r^2 + s^2)/2 on the unit sphere forces t^2 = 1/3
    rng = np.random.default_rng(4)
    for _ in range(5):
        psi = rng.uniform(0, 2 * math.pi)
        r = math.sqrt(2.0 / 3.0) * math.cos(psi)
        s = math.sqrt(2.0 / 3.0) * math.sin(psi)
        t = 1.0 / math.sqrt(3.0)
        dim, _ = centralizer_in_so6(W_of(r, s, t))
        assert dim == 1


def test_centralizer_elements_commute():
    rng = np.random.default_rng(5)
    r, s, t = sphere_point(rng)
    w = W_of(r, s, t)
    _, cz = centralizer_in_so6(w)
    for p in cz:
        for d in w:
            assert np.max(np.abs(p @ d - d @ p)) <= 1e-9


def test_bracket_angle_matches_closed_form():
    rng = np.random.default_rng(6)
    for _ in range(20):
        r, s, t = sphere_point(rng)
        closed = bracket_angle_closed_form(r, s, t)
        numeric = bracket_angle(r, s, t)
        assert abs(closed - numeric) <= 1e-6


def test_bracket_angle_special_loci():
    # r = 0: brackets orthogonal to W
    assert bracket_angle_closed_form(0.0, 1.0, 0.0) == 0.0
    assert abs(bracket_angle(0.0, 1.0, 0.0)) <= 1e-9
    # r = s = 0: the span is abelian, the angle is undefined
    assert math.isnan(bracket_angle_closed_form(0.0, 0.0, 1.0))
    assert math.isnan(bracket_angle(0.0, 0.0, 1.0))
    # t = 0, s = 0: W is a subalgebra, cos = 1
    assert abs(bracket_angle_closed_form(1.0, 0.0, 0.0) - 1.0) <= 1e-12
    assert abs(bracket_angle(1.0, 0.0, 0.0) - 1.0) <= 1e-9


def test_cyclic_bracket_inner_products():
    # <[D_i, D_j], D_k> = -sqrt(3) r (r^2 + s^2) / sqrt(2), the same value for
    # all cyclic (i, j, k)
    rng = np.random.default_rng(10)
    for _ in range(8):
        r, s, t = sphere_point(rng)
        w = W_of(r, s, t)
        expect = -math.sqrt(3.0) * r * (r * r + s * s) / math.sqrt(2.0)
        for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            br = w[i] @ w[j] - w[j] @ w[i]
            assert abs(so_inner(br, w[k]) - expect) <= 1e-10


def test_commutator_expansions_in_the_nine_basis():
    # the three brackets expand over {A_i, B_i} with coefficients proportional
    # to (r^2 +- s^2)/sqrt(2), sqrt(2) r s and t-linear mixing terms; one global
    # factor of -sqrt(3) relative to the unnormalized cyclic so(3) convention
    rng = np.random.default_rng(12)
    k = -math.sqrt(3.0)
    for _ in range(5):
        r, s, t = sphere_point(rng)
        a, b, _ = basis_ABC()
        d = W_of(r, s, t)
        plus = (r * r + s * s) / math.sqrt(2.0)
        minus = (r * r - s * s) / math.sqrt(2.0)
        expect_12 = k * (plus * a[2] + t * (r * (b[1] - b[0]) + s * (a[0] - a[1])))
        expect_31 = k * (
            minus * a[1]
            + math.sqrt(2.0) * r * s * b[1]
            + t * (-r * (b[0] + b[2]) + s * (a[0] + a[2]))
        )
        expect_23 = k * (plus * a[0] + t * (r * (b[1] - b[2]) + s * (a[2] - a[1])))
        assert np.max(np.abs(d[0] @ d[1] - d[1] @ d[0] - expect_12)) <= 1e-12
        assert np.max(np.abs(d[2] @ d[0] - d[0] @ d[2] - expect_31)) <= 1e-12
        assert np.max(np.abs(d[1] @ d[2] - d[2] @ d[1] - expect_23)) <= 1e-12


def test_bracket_angle_single_branch_domain():
    # where t^2 + sqrt(2) s t >= 0 the two closed-form branches coincide
    rng = np.random.default_rng(11)
    count = 0
    while count < 10:
        r, s, t = sphere_point(rng)
        c = t * t + math.sqrt(2.0) * s * t
        if c < 0 or abs(r) < 1e-3:
            continue
        count += 1
        one_branch = abs(r) * math.sqrt(
            (r * r + s * s) / (r * r + s * s + 4 * t * t - 2 * abs(c))
        )
        assert abs(bracket_angle_closed_form(r, s, t) - one_branch) <= 1e-12
        assert abs(bracket_angle(r, s, t) - one_branch) <= 1e-6


def test_margin_degenerate_plane():
    triple = induced_triple(1.0, 0.0, 0.0)
    rng = np.random.default_rng(7)
    for _ in range(5):
        x, y = rng.standard_normal((2, 6))
        z = np.zeros(3)
        m = _margin(triple, x, z, y, z)
        assert abs(m - 0.25 * (x @ x) * (y @ y)) <= 1e-12


def test_margin_equals_negated_sectional_plus_bracket_term():
    # margin(x,z,y,w) = -K(u,v) - 3/4 |[u,v]|^2 for the admissible embedding
    rng = np.random.default_rng(8)
    triple = induced_triple(0.6, 0.48, math.sqrt(1 - 0.6**2 - 0.48**2))
    alg = build_solvmanifold(triple)
    r, s = triple.r, triple.s
    for _ in range(8):
        parts = _project_pair(rng.standard_normal(2 * (r + s)), r, s)
        assert parts is not None
        x, z, y, w = parts
        u = np.zeros(alg.dim)
        v = np.zeros(alg.dim)
        u[1:1 + r], u[1 + r:] = x, z
        v[1:1 + r], v[1 + r:] = y, w
        k = sectional(alg, u, v)
        br = alg.bracket(u, v)
        expect = -k - 0.75 * alg.inner(br, br)
        assert abs(_margin(triple, x, z, y, w) - expect) <= 1e-10


def test_project_pair_satisfies_constraints():
    rng = np.random.default_rng(9)
    for _ in range(20):
        parts = _project_pair(rng.standard_normal(18), 6, 3)
        if parts is None:
            continue
        x, z, y, w = parts
        assert abs(x @ x + z @ z - 1.0) <= 1e-12
        assert abs(y @ y + w @ w - 1.0) <= 1e-12
        assert abs(x @ y) <= 1e-9
        assert abs(z @ w) <= 1e-9


def test_margin_positive_at_reference_point():
    triple = induced_triple(1.0, 0.0, 0.0)
    m = negative_curvature_margin(triple, samples=1500, descents=12, seed=SEED)
    assert m > 0.05
    assert abs(m - 3.0 / 28.0) <= 2e-3


def test_margin_negative_at_pole():
    triple = induced_triple(0.0, 0.0, 1.0)
    m = negative_curvature_margin(triple, samples=800, descents=8, seed=SEED)
    assert m < -0.2


def test_family_grid_shape():
    pts = family_grid()
    assert pts[-1] == (0.0, 0.0, 1.0)
    assert sum(1 for p in pts if p == (0.0, 0.0, 1.0)) == 1
    for (r, s, t) in pts:
        assert abs(r * r + s * s + t * t - 1.0) <= 1e-12
        assert t >= 0.0
    # equator keeps only half the azimuths (s >= 0 up to roundoff)
    equator = [p for p in pts if p[2] == 0.0]
    assert all(p[1] >= -1e-12 for p in equator)


def test_family_report_rows():
    pts = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.6, 0.0, 0.8)]
    rows = family_report(points=pts, samples=40, seed=SEED)
    assert len(rows) == 3
    for row in rows:
        assert row.einstein_residual <= 1e-9
        assert abs(row.cos_angle_centralizer - abs(row.t)) <= 1e-9
        assert row.min_sectional <= row.max_sectional
    assert rows[0].max_sectional < 0.0  # reference point has K < 0
