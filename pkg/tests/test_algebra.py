"""Core tensor machinery: construction, validation, Iwasawa checks, serialization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvgeom.algebra import (
    MetricLieAlgebra,
    ad_matrix,
    bracket,
    deserialize,
    from_sparse,
    iwasawa_check,
    killing_form,
    metric_adjoint,
    orthonormal_frame,
    serialize,
    validate,
)
from solvgeom.carnot import build_solvmanifold, complex_hyperbolic_triple


def so3():
    return from_sparse(3, [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])


def heisenberg():
    return from_sparse(3, [(0, 1, 2, 1.0)])


def test_from_sparse_antisymmetry_exact():
    alg = so3()
    assert np.array_equal(alg.c, -np.transpose(alg.c, (1, 0, 2)))


def test_from_sparse_rejects_bad_entries():
    with pytest.raises(ValueError):
        from_sparse(3, [(1, 1, 0, 1.0)])
    with pytest.raises(ValueError):
        from_sparse(3, [(2, 1, 0, 1.0)])
    with pytest.raises(ValueError):
        from_sparse(3, [(0, 1, 3, 1.0)])


def test_shape_checks():
    with pytest.raises(ValueError):
        MetricLieAlgebra(c=np.zeros((2, 2, 3)), gram=np.eye(2))
    with pytest.raises(ValueError):
        MetricLieAlgebra(c=np.zeros((2, 2, 2)), gram=np.eye(3))


def test_bracket_matches_ad_matrix():
    alg = so3()
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = rng.standard_normal(3)
        y = rng.standard_normal(3)
        assert np.allclose(ad_matrix(alg, x) @ y, bracket(alg, x, y), atol=1e-14)


def test_bracket_so3_cross_product():
    alg = so3()
    e0, e1, e2 = np.eye(3)
    assert np.allclose(bracket(alg, e0, e1), e2)
    assert np.allclose(bracket(alg, e1, e2), e0)
    assert np.allclose(bracket(alg, e2, e0), e1)


def test_bracket_rejects_wrong_length():
    alg = so3()
    with pytest.raises(ValueError):
        bracket(alg, np.ones(4), np.ones(3))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_bracket_antisymmetric_bilinear(seed):
    alg = so3()
    rng = np.random.default_rng(seed)
    x, y, z = rng.standard_normal((3, 3))
    a = float(rng.standard_normal())
    assert np.allclose(bracket(alg, x, y), -bracket(alg, y, x), atol=1e-13)
    assert np.allclose(
        bracket(alg, a * x + z, y),
        a * bracket(alg, x, y) + bracket(alg, z, y),
        atol=1e-12,
    )


def test_killing_form_so3():
    # standard so(3) basis: B = -2 Id
    assert np.allclose(killing_form(so3()), -2.0 * np.eye(3), atol=1e-14)


def test_killing_form_symmetric_on_lie_algebra():
    alg = build_solvmanifold(complex_hyperbolic_triple(3))
    b = killing_form(alg)
    assert np.allclose(b, b.T, atol=1e-12)


def test_validate_good_algebras():
    for alg in (so3(), heisenberg()):
        rep = validate(alg)
        assert rep.ok
        assert rep.jacobi_residual <= 1e-10
        assert rep.antisym_residual == 0.0
        assert rep.gram_min_eig > 0


def test_validate_flags_jacobi_violation():
    # so(3) plus a spurious [e0,e1] component along e0 breaks Jacobi by 0.1
    alg = from_sparse(
        3, [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0), (0, 1, 0, 0.1)]
    )
    rep = validate(alg)
    assert not rep.ok
    assert rep.jacobi_residual > 1e-3


def test_indefinite_metric_rejected_at_construction():
    gram = np.diag([1.0, -1.0, 1.0])
    with pytest.raises(ValueError):
        MetricLieAlgebra(c=np.zeros((3, 3, 3)), gram=gram)


def test_orthonormal_frame_property():
    rng = np.random.default_rng(1)
    for _ in range(5):
        m = rng.standard_normal((5, 5))
        gram = m @ m.T + 5.0 * np.eye(5)
        f = orthonormal_frame(gram)
        assert np.allclose(f.T @ gram @ f, np.eye(5), atol=1e-10)


def test_orthonormal_frame_rejects_indefinite():
    with pytest.raises(ValueError):
        orthonormal_frame(np.diag([1.0, 0.0]))


def test_metric_adjoint_property():
    rng = np.random.default_rng(2)
    m = rng.standard_normal((4, 4))
    g = rng.standard_normal((4, 4))
    gram = g @ g.T + 4.0 * np.eye(4)
    alg = MetricLieAlgebra(c=np.zeros((4, 4, 4)), gram=gram)
    ms = metric_adjoint(alg, m)
    for _ in range(5):
        x, y = rng.standard_normal((2, 4))
        assert abs(alg.inner(m @ x, y) - alg.inner(x, ms @ y)) <= 1e-10


def test_cached_frame_transports_structure_constants():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((3, 3))
    gram = g @ g.T + 3.0 * np.eye(3)
    alg = MetricLieAlgebra(c=so3().c, gram=gram)
    # c_frame must reproduce brackets of the frame vectors in frame coordinates
    for a in range(3):
        for b in range(3):
            br = bracket(alg, alg.frame[:, a], alg.frame[:, b])
            back = alg.frame @ alg.c_frame[a, b, :]
            assert np.allclose(br, back, atol=1e-10)


def test_iwasawa_check_on_hyperbolic_build():
    alg = build_solvmanifold(complex_hyperbolic_triple(2))
    rep = iwasawa_check(alg)
    assert rep.cond_i and rep.cond_ii and rep.cond_iii
    assert rep.abelian_residual == 0.0
    assert rep.symmetry_residual <= 1e-12
    assert rep.min_positive_eig > 0.4  # spectrum is {1/2, 1}
    assert abs(alg.norm(rep.witness) - 1.0) <= 1e-12


def test_iwasawa_check_requires_decoration():
    with pytest.raises(ValueError):
        iwasawa_check(so3())


def test_iwasawa_check_rejects_non_ideal():
    alg = from_sparse(2, [(0, 1, 0, 1.0)], a_indices=(0,), n_indices=(1,))
    with pytest.raises(ValueError):
        iwasawa_check(alg)


def test_iwasawa_check_rejects_bad_partition():
    alg = from_sparse(3, [(0, 1, 2, 1.0)], a_indices=(0,), n_indices=(1,))
    with pytest.raises(ValueError):
        iwasawa_check(alg)


def test_iwasawa_nonsymmetric_ad_fails_cond_ii():
    # [A, X] = X + Y, [A, Y] = Y: ad(A)|n is a Jordan block, not symmetric
    alg = from_sparse(
        3,
        [(0, 1, 1, 1.0), (0, 1, 2, 1.0), (0, 2, 2, 1.0)],
        a_indices=(0,),
        n_indices=(1, 2),
    )
    rep = iwasawa_check(alg)
    assert not rep.cond_ii
    assert rep.symmetry_residual > 0.1


def test_serialize_round_trip_identity_gram():
    alg = build_solvmanifold(complex_hyperbolic_triple(2))
    back = deserialize(serialize(alg))
    assert np.array_equal(back.c, alg.c)
    assert np.array_equal(back.gram, alg.gram)
    assert back.labels == alg.labels
    assert back.a_indices == alg.a_indices
    assert back.n_indices == alg.n_indices


def test_serialize_round_trip_general_gram():
    rng = np.random.default_rng(4)
    g = rng.standard_normal((3, 3))
    gram = g @ g.T + 3.0 * np.eye(3)
    alg = MetricLieAlgebra(c=so3().c, gram=gram)
    back = deserialize(serialize(alg))
    assert np.array_equal(back.c, alg.c)
    assert np.array_equal(back.gram, alg.gram)


@given(
    st.lists(
        st.tuples(
            st.integers(0, 3),
            st.integers(0, 4),
            st.integers(0, 4),
            st.floats(-8, 8, allow_nan=False, width=32),
        ),
        max_size=8,
    )
)
@settings(max_examples=40, deadline=None)
def test_serialize_round_trip_random_tensors(rows):
    entries = [(i, j, k, v) for (i, j, k, v) in rows if i < j and v != 0.0]
    alg = from_sparse(5, entries)
    back = deserialize(serialize(alg))
    assert np.array_equal(back.c, alg.c)


def test_deserialize_rejects_malformed():
    with pytest.raises(ValueError):
        deserialize("this is not json")
    with pytest.raises(ValueError):
        deserialize("[1, 2, 3]")
    with pytest.raises(ValueError):
        deserialize('{"labels": []}')
    with pytest.raises(ValueError):
        deserialize('{"dim": 0}')


def test_deserialize_rejects_bad_structure_rows():
    with pytest.raises(ValueError):
        deserialize('{"dim": 2, "structure": [[1, 0, 0, 1.0]]}')
    with pytest.raises(ValueError):
        deserialize('{"dim": 2, "structure": [[0, 1, 0, NaN]]}')


def test_deserialize_rejects_indefinite_gram():
    doc = '{"dim": 2, "gram": [1.0, 0.0, 0.0, -1.0], "structure": []}'
    with pytest.raises(ValueError):
        deserialize(doc)


def test_serialize_is_deterministic():
    alg = build_solvmanifold(complex_hyperbolic_triple(3))
    assert serialize(alg) == serialize(alg)


def test_inner_norm_and_basis_vector():
    alg = so3()
    v = alg.basis_vector(1)
    assert v.tolist() == [0.0, 1.0, 0.0]
    assert alg.inner(v, v) == 1.0
    assert alg.norm(2.0 * v) == 2.0
    assert math.isclose(alg.norm(np.array([3.0, 4.0, 0.0])), 5.0)
