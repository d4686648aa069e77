# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test drive parameter calibration"""

from dataclasses import replace

import numpy as np
from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_false,
    assert_greater,
    assert_in,
    assert_raises,
    assert_true,
    eq_,
    slow,
)

from ..calibration import (
    calibrate,
    numerical_oracle,
    params_to_vector,
    random_target,
    random_targets,
    refine,
    synthesize_seed,
    target_from_dict,
    vector_to_params,
)
from ..device_model import PhaseCoeffs
from ..drive_synth import UniversalDriveParams
from ..exceptions import InfeasibleTargetError
from ..rwa_engine import analytic_cab
from . import (
    ALPHA_EJ,
    coupler_qubits,
)


def _analytic_oracle():
    q1, q2 = coupler_qubits()

    def oracle(p):
        return analytic_cab(p, q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    return oracle


def test_seed_inverts_closed_form():
    q1, q2 = coupler_qubits()
    oracle = _analytic_oracle()
    for target in random_targets(5, ALPHA_EJ, seed=3):
        seed = synthesize_seed(target, q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
        assert_allclose(
            oracle(seed).two_body(), target.two_body(), atol=1e-15)


def test_single_channel_seeds():
    q1, q2 = coupler_qubits()
    seed = synthesize_seed(
        target_from_dict({'zz': -1e-3}), q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    assert_allclose(seed.f_zz, 0.05)
    eq_((seed.f_xy0, seed.f_xy2, seed.f_xz, seed.f_zx), (0., 0., 0., 0.))
    # negative xz needs psi1 = pi
    seed = synthesize_seed(
        target_from_dict({'xz': -2e-4}), q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    assert_allclose(seed.f_xz, 0.1)
    assert_allclose(abs(seed.psi1), np.pi)


def test_infeasible_targets():
    q1, q2 = coupler_qubits()
    with assert_raises(InfeasibleTargetError) as cm:
        synthesize_seed(
            target_from_dict({'zz': 0.5 * ALPHA_EJ}),
            q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    assert_in('f_zz', str(cm.value))
    assert_raises(
        InfeasibleTargetError, synthesize_seed,
        target_from_dict({'xx': 0.5 * ALPHA_EJ, 'yy': 0.5 * ALPHA_EJ}),
        q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    # without a cos(phi) slope there is no zz matrix element
    flat = PhaseCoeffs(s=1., c0=0., c=0.)
    with assert_raises(InfeasibleTargetError) as cm:
        synthesize_seed(target_from_dict({'zz': 1e-4}), flat, flat, ALPHA_EJ)
    assert_in('zz', str(cm.value))
    assert_raises(InfeasibleTargetError, target_from_dict, {'xq': 1.})
    assert_raises(InfeasibleTargetError, target_from_dict, {'x': 1.})


def test_vector_coordinates():
    p = UniversalDriveParams(
        f_zz=-0.1, f_xy0=0.05, f_xy2=0.02, f_xz=0.1, f_zx=0.2,
        chi1=0.3, chi2=-0.1, psi1=1., psi2=-2.)
    x = params_to_vector(p)
    eq_(x.shape, (9,))
    restored = vector_to_params(x)
    for name in ('f_zz', 'f_xy0', 'f_xy2', 'f_xz', 'f_zx', 'chi1', 'chi2', 'psi1', 'psi2'):
        assert_allclose(getattr(restored, name), getattr(p, name), atol=1e-15)


def test_random_targets():
    targets = random_targets(4, ALPHA_EJ, seed=0)
    eq_(len(targets), 4)
    for target in targets:
        block = np.abs(target.two_body())
        assert_greater(block.min(), 0.02 * ALPHA_EJ * (1 - 1e-12))
        assert_greater(0.05 * ALPHA_EJ * (1 + 1e-12), block.max())
        eq_(target.single_qubit(), {label: 0. for label in target.single_qubit()})
    # reproducible
    assert_allclose(
        random_targets(1, ALPHA_EJ, seed=0)[0].two_body(), targets[0].two_body())
    rng = np.random.default_rng(1)
    narrow = random_target(rng, ALPHA_EJ, low=0.01, high=0.011)
    assert_greater(0.011 * ALPHA_EJ * (1 + 1e-12), np.abs(narrow.two_body()).max())


def test_refine_against_closed_form():
    q1, q2 = coupler_qubits()
    oracle = _analytic_oracle()
    target = random_targets(1, ALPHA_EJ, seed=5)[0]
    exact = synthesize_seed(target, q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    seed = replace(
        exact, f_zz=exact.f_zz + 0.01, f_xy0=exact.f_xy0 * 0.9, psi1=exact.psi1 + 0.2)
    result = refine(seed, target, oracle, ALPHA_EJ, max_iterations=20, tolerance=1e-6)
    assert_true(result.converged)
    assert_greater(1e-6 * ALPHA_EJ, result.residual)
    assert_greater(result.history[0], result.history[-1])
    eq_(len(result.history), result.iterations + 1)
    record = result.to_record()
    eq_(sorted(record), [
        'achieved', 'converged', 'history', 'iterations', 'params',
        'residual', 'seed', 'single_qubit', 'target'])
    # the closed form seed needs no iteration
    direct = calibrate(target, q1, q2, ALPHA_EJ, oracle=oracle)
    eq_(direct.iterations, 0)
    assert_true(direct.converged)


def test_refine_reports_failure():
    q1, q2 = coupler_qubits()
    oracle = _analytic_oracle()
    target = random_targets(1, ALPHA_EJ, seed=5)[0]
    seed = UniversalDriveParams()
    result = refine(seed, target, oracle, ALPHA_EJ, max_iterations=0)
    assert_false(result.converged)
    eq_(result.iterations, 0)
    eq_(result.params, seed)


def test_numerical_oracle_matches_seed():
    q1, q2 = coupler_qubits()
    target = target_from_dict({'zz': -1e-3, 'xx': 5e-4, 'yy': 5e-4})
    seed = synthesize_seed(target, q1.phase_coeffs, q2.phase_coeffs, ALPHA_EJ)
    achieved = numerical_oracle(q1, q2, ALPHA_EJ)(seed)
    assert_allclose(achieved.two_body(), target.two_body(), atol=5e-3 * ALPHA_EJ)


@slow
def test_calibration_round_trip():
    q1, q2 = coupler_qubits()
    oracle = numerical_oracle(q1, q2, ALPHA_EJ)
    for target in random_targets(20, ALPHA_EJ, seed=0):
        result = calibrate(
            target, q1, q2, ALPHA_EJ, oracle=oracle,
            max_iterations=50, tolerance=1e-3)
        assert_true(result.converged)
        assert_greater(1e-3 * ALPHA_EJ, result.residual)
        assert_greater(51, result.iterations)
