# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test the universal coupler against its closed-form coupling table"""

from math import pi

import numpy as np
from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_greater,
    assert_raises,
    assert_true,
    eq_,
    slow,
)

from ..coupler import (
    channel_names,
    channel_params,
    coupler_model,
    effective_dynamics_fidelity,
    numerical_cab,
    target_coefficient,
)
from ..device_model import QubitSpec
from ..drive_synth import UniversalDriveParams
from ..exceptions import OperatorError
from ..operator_core import PauliTable
from ..rwa_engine import analytic_cab
from . import (
    ALPHA_EJ,
    coupler_qubits,
)


AMPLITUDE = 0.05

# (channel, phases) pairs covering every block of the coupling table
CHANNEL_SETTINGS = [
    ('f_zz', {}),
    ('f_xy0', {}),
    ('f_xy0', {'chi1': pi / 2}),
    ('f_xy2', {}),
    ('f_xy2', {'chi1': pi / 2}),
    ('f_xz', {}),
    ('f_xz', {'psi1': pi / 2}),
    ('f_zx', {}),
    ('f_zx', {'psi2': pi / 2}),
]


def _analytic(p, alpha_ej=ALPHA_EJ):
    q1, q2 = coupler_qubits()
    return analytic_cab(p, q1.phase_coeffs, q2.phase_coeffs, alpha_ej)


def _check_channel(method, channel, phases):
    q1, q2 = coupler_qubits()
    p = channel_params(channel, AMPLITUDE, **phases)
    numeric, effective = numerical_cab(p, q1, q2, ALPHA_EJ, method=method)
    assert_true(effective.is_hermitian())
    assert_allclose(
        numeric.two_body(), _analytic(p).two_body(), rtol=0.03, atol=1e-4)


def test_channel_tables_average():
    for channel, phases in CHANNEL_SETTINGS:
        _check_channel('average', channel, phases)


def test_channel_tables_floquet():
    for channel, phases in CHANNEL_SETTINGS:
        _check_channel('floquet', channel, phases)


def test_zz_and_hopping_values():
    q1, q2 = coupler_qubits()
    table, _ = numerical_cab(channel_params('f_zz', AMPLITUDE), q1, q2, ALPHA_EJ)
    assert_allclose(table['zz'], -0.001, rtol=0.03)
    table, _ = numerical_cab(channel_params('f_xy0', AMPLITUDE), q1, q2, ALPHA_EJ)
    assert_allclose(table['xx'], -ALPHA_EJ * AMPLITUDE / 2, rtol=0.03)
    assert_allclose(table['yy'], -ALPHA_EJ * AMPLITUDE / 2, rtol=0.03)
    assert_allclose(table['xy'], 0., atol=1e-5)


def _check_halving(channel, ratio, rtol):
    q1, q2 = coupler_qubits()
    p = channel_params(channel, 2 * AMPLITUDE)
    label, _ = target_coefficient(_analytic(p))
    strong, _ = numerical_cab(p, q1, q2, ALPHA_EJ)
    weak, _ = numerical_cab(channel_params(channel, AMPLITUDE), q1, q2, ALPHA_EJ)
    assert_allclose(weak[label] / strong[label], ratio, rtol=rtol)


def test_leading_order_scaling():
    for channel in ('f_zz', 'f_xy0', 'f_xy2'):
        _check_halving(channel, 0.5, 0.02)
    for channel in ('f_xz', 'f_zx'):
        _check_halving(channel, 0.25, 0.05)


def test_model_period_and_warnings():
    q1, q2 = coupler_qubits()
    model = coupler_model(channel_params('f_xy0', AMPLITUDE), q1, q2, ALPHA_EJ)
    assert_allclose(model.period, 8 * pi)
    eq_(model.warnings, ())
    eq_(model.framed.dims, (2, 2))
    # a drive energy close to the qubit gap is reported
    loud = coupler_model(
        UniversalDriveParams(f_zz=0.3), q1, q2, 0.2)
    eq_(len(loud.warnings), 1)


def test_numerical_cab_rejects():
    q1, q2 = coupler_qubits()
    p = channel_params('f_zz', AMPLITUDE)
    assert_raises(OperatorError, numerical_cab, p, q1, q2, ALPHA_EJ, method='exact')
    assert_raises(
        OperatorError, numerical_cab, p, QubitSpec(1., levels=3), q2, ALPHA_EJ)


def test_target_coefficient():
    label, value = target_coefficient(
        PauliTable.from_dict({'xy': 0.2, 'zz': -0.5, 'zI': 3.}))
    eq_(label, 'zz')
    eq_(value, -0.5)
    eq_(channel_names(), ['f_zz', 'f_xy0', 'f_xy2', 'f_xz', 'f_zx'])


def test_fidelity_needs_coupling():
    q1, q2 = coupler_qubits()
    assert_raises(
        OperatorError, effective_dynamics_fidelity,
        UniversalDriveParams(), q1, q2, ALPHA_EJ)


def _infidelity(channel, amplitude, alpha_ej):
    q1, q2 = coupler_qubits()
    report = effective_dynamics_fidelity(
        channel_params(channel, amplitude), q1, q2, alpha_ej, order=2)
    assert_allclose(
        abs(report.target_coefficient) * report.duration, pi / 2)
    return 1. - report.fidelity


def _check_effective_dynamics(channel):
    strong = _infidelity(channel, AMPLITUDE, ALPHA_EJ)
    assert_greater(0.01, strong)
    weak = _infidelity(channel, AMPLITUDE / 2, ALPHA_EJ / 2)
    assert_greater(strong, 2.5 * weak)


@slow
def test_effective_dynamics_fidelity():
    for channel in ('f_zz', 'f_xy0'):
        _check_effective_dynamics(channel)


def test_fidelity_report_record():
    q1, q2 = coupler_qubits()
    # a short window keeps this cheap
    report = effective_dynamics_fidelity(
        channel_params('f_zz', AMPLITUDE), q1, q2, ALPHA_EJ, duration=8 * pi)
    eq_(report.target_label, 'zz')
    eq_(report.order, 1)
    record = report.to_dict()
    eq_(sorted(record),
        ['duration', 'fidelity', 'order', 'target_coefficient', 'target_label'])
    assert_greater(report.fidelity, 0.99)
    assert_true(np.isfinite(record['fidelity']))
