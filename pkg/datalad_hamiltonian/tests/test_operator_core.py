# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test operators, Pauli tables and time-dependent Hamiltonians"""

import numpy as np
from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_false,
    assert_raises,
    assert_true,
    eq_,
)

from ..exceptions import OperatorError
from ..operator_core import (
    Operator,
    PauliTable,
    StaticHamiltonian,
    TimeDependentOperator,
    boson_ops,
    commutator,
    embed,
    identity,
    kron,
    matrix_exp,
    pauli_decompose,
    projector,
    sigma_minus,
    sigma_plus,
    sigma_x,
    sigma_y,
    sigma_z,
)


def test_operator_validation():
    assert_raises(OperatorError, Operator, np.zeros((2, 3)), (2,))
    assert_raises(OperatorError, Operator, np.zeros((4, 4)), (2, 3))
    assert_raises(OperatorError, Operator, [[np.nan, 0], [0, 0]], (2,))
    assert_raises(OperatorError, Operator, [[0, 1], [0, 0]], (2,), True)
    op = Operator([[1, 2j], [-2j, 3]], (2,), True)
    assert_true(op.is_hermitian())
    # immutable
    assert_raises(ValueError, op.data.__setitem__, (0, 0), 5)


def test_arithmetic_checks_dims():
    a = identity((2, 2))
    b = identity(4)
    assert_raises(OperatorError, a.__add__, b)
    assert_raises(OperatorError, a.__matmul__, b)
    eq_((a + a).dims, (2, 2))
    assert_true((2. * a).hermitian)
    assert_false((2j * a).hermitian)


def test_conventions():
    # sigma+ raises |0> to |1>, sigma_z is +1 on the excited state
    ground = np.array([1., 0.])
    assert_allclose(sigma_plus().data @ ground, [0., 1.])
    assert_allclose(np.diag(sigma_z().data), [-1., 1.])
    assert_allclose(
        commutator(sigma_plus(), sigma_minus()).data, sigma_z().data)
    assert_allclose(
        (sigma_plus() + sigma_minus()).data, sigma_x().data)
    # sigma_y = i (sigma- - sigma+) in this convention
    assert_allclose(
        (1j * (sigma_minus() - sigma_plus())).data, sigma_y().data)


def test_embed_and_kron():
    dims = (2, 3)
    a, a_dag, n = boson_ops(3)
    embedded = embed(n, 1, dims)
    eq_(embedded.dims, dims)
    assert_allclose(embedded.data, kron(identity(2), n).data)
    assert_raises(OperatorError, embed, n, 0, dims)
    assert_raises(OperatorError, embed, n, 2, dims)
    assert_allclose((a_dag @ a).data, n.data)


def test_projector_and_boson_limits():
    assert_raises(OperatorError, projector, 3, 3)
    assert_raises(OperatorError, boson_ops, 1)
    assert_allclose(projector(1, 3).data, np.diag([0., 1., 0.]))


def test_matrix_exp_is_unitary():
    h = (0.3 * kron(sigma_x(), sigma_z()) + 0.1 * kron(sigma_y(), identity(2))).as_hermitian()
    u = matrix_exp(h, -1j * 7.).data
    assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


def test_pauli_table_round_trip():
    rng = np.random.default_rng(7)
    coefficients = rng.normal(size=(4, 4))
    table = PauliTable(coefficients)
    decomposed = pauli_decompose(table.reconstruct())
    assert_allclose(decomposed.coefficients, coefficients, atol=1e-12)
    eq_(table['xz'], coefficients[1, 3])
    eq_(set(table.single_qubit()), {'xI', 'yI', 'zI', 'Ix', 'Iy', 'Iz'})
    restored = PauliTable.from_dict(table.to_dict())
    eq_(restored.max_abs_difference(table), 0.)


def test_pauli_table_two_body():
    block = np.arange(9.).reshape(3, 3)
    table = PauliTable.from_two_body(block)
    assert_allclose(table.two_body(), block)
    eq_(table['II'], 0.)
    other = table + PauliTable.from_dict({'Iz': 1.})
    eq_(other.max_abs_difference(table, two_body_only=True), 0.)
    eq_(other.max_abs_difference(table), 1.)
    assert_raises(OperatorError, PauliTable.from_dict, {'xq': 1.})


def test_pauli_decompose_rejects():
    assert_raises(OperatorError, pauli_decompose, identity(2))
    assert_raises(
        OperatorError, pauli_decompose, kron(sigma_plus(), identity(2)))


def test_time_dependent_operator():
    h = TimeDependentOperator(
        sigma_z(),
        [(sigma_x(), lambda t: np.cos(2. * t))],
        max_frequency=2.)
    samples = h.sample(np.array([0., np.pi / 4]))
    eq_(samples.shape, (2, 2, 2))
    assert_allclose(samples[0], (sigma_z() + sigma_x()).data)
    assert_allclose(samples[1], sigma_z().data, atol=1e-15)
    assert_true(h.at(0.3).is_hermitian())
    eq_(h.max_frequency, 2.)
    static = StaticHamiltonian(sigma_x())
    eq_(static.max_frequency, 0.)
    assert_allclose(static.sample(np.zeros(3))[2], sigma_x().data)
    # driven terms must state how fast they oscillate
    assert_raises(
        OperatorError, TimeDependentOperator,
        sigma_z(), [(sigma_x(), lambda t: np.cos(2. * t))])
    assert_raises(
        OperatorError, TimeDependentOperator,
        sigma_z(), [(sigma_x(), lambda t: np.cos(2. * t))], max_frequency=-2.)
    eq_(TimeDependentOperator(sigma_z()).max_frequency, 0.)
