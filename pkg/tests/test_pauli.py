"""Bit-mask Pauli algebra against a dense Kronecker-product oracle."""

import functools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinladder.pauli import DENSE_SITE_CAP, PauliString, basis_state

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense_oracle(p: PauliString) -> np.ndarray:
    """Independent dense form: phase times site-local X^x Z^z factors."""
    factors = []
    for k in range(p.n_sites):
        x = bool(p.x_mask >> k & 1)
        z = bool(p.z_mask >> k & 1)
        factors.append((X if x else I2) @ (Z if z else I2))
    # site 0 is the least significant bit, so it sits rightmost in the kron
    full = functools.reduce(np.kron, reversed(factors)) if factors else I2
    return p.phase * full


def strings(max_sites=5):
    def build(n, x, z, phase_index):
        return PauliString(
            n, x_mask=x % (1 << n), z_mask=z % (1 << n), phase=1j**phase_index
        )

    return st.builds(
        build,
        st.integers(1, max_sites),
        st.integers(0, (1 << max_sites) - 1),
        st.integers(0, (1 << max_sites) - 1),
        st.integers(0, 3),
    )


def pairs(max_sites=5):
    def build(n, x1, z1, p1, x2, z2, p2):
        mask = (1 << n) - 1
        return (
            PauliString(n, x_mask=x1 & mask, z_mask=z1 & mask, phase=1j**p1),
            PauliString(n, x_mask=x2 & mask, z_mask=z2 & mask, phase=1j**p2),
        )

    big = st.integers(0, (1 << max_sites) - 1)
    return st.builds(
        build, st.integers(1, max_sites), big, big, st.integers(0, 3),
        big, big, st.integers(0, 3),
    )


@given(strings())
@settings(max_examples=60, deadline=None)
def test_to_matrix_matches_oracle(p):
    np.testing.assert_allclose(p.to_matrix(), dense_oracle(p), atol=0)


@given(pairs())
@settings(max_examples=60, deadline=None)
def test_product_matches_dense(pair):
    left, right = pair
    product = left * right
    expected = dense_oracle(left) @ dense_oracle(right)
    np.testing.assert_allclose(product.to_matrix(), expected, atol=0)


@given(pairs())
@settings(max_examples=60, deadline=None)
def test_commutes_with_matches_dense(pair):
    left, right = pair
    a, b = dense_oracle(left), dense_oracle(right)
    dense_commutes = np.array_equal(a @ b, b @ a)
    assert left.commutes_with(right) == dense_commutes


@given(strings())
@settings(max_examples=60, deadline=None)
def test_adjoint_and_hermiticity(p):
    np.testing.assert_allclose(p.adjoint().to_matrix(), dense_oracle(p).conj().T, atol=0)
    dense_hermitian = np.array_equal(dense_oracle(p), dense_oracle(p).conj().T)
    assert p.is_hermitian == dense_hermitian


@given(strings(), st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_apply_matches_matvec(p, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**p.n_sites) + 1j * rng.normal(size=2**p.n_sites)
    np.testing.assert_allclose(p.apply(v), dense_oracle(p) @ v, atol=1e-15)


def test_single_site_factories():
    n = 3
    for kind, mat in (("x", X), ("y", Y), ("z", Z)):
        p = PauliString.single(n, 1, kind)
        expected = functools.reduce(np.kron, [I2, mat, I2])
        np.testing.assert_allclose(p.to_matrix(), expected, atol=0)
        assert p.weight == 1
        assert p.is_hermitian


def test_identity_and_squares():
    ident = PauliString(4, x_mask=0, z_mask=0)
    assert ident.weight == 0
    y = PauliString.single(4, 2, "y")
    sq = y * y
    assert sq.x_mask == 0 and sq.z_mask == 0 and sq.phase == 1


def test_mismatched_sizes_rejected():
    with pytest.raises(ValueError):
        PauliString.single(2, 0, "x") * PauliString.single(3, 0, "x")


def test_phase_validation():
    with pytest.raises(ValueError):
        PauliString(2, x_mask=1, z_mask=0, phase=0.5)


def test_dense_cap():
    big = PauliString(DENSE_SITE_CAP + 1, x_mask=1, z_mask=0)
    with pytest.raises(Exception):
        big.to_matrix()


def test_basis_state():
    v = basis_state(3, index=5)
    assert v.shape == (8,)
    assert v[5] == 1 and np.count_nonzero(v) == 1
