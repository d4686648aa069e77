# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test device records and Hamiltonian builders"""

from math import pi

import numpy as np
from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_greater,
    assert_raises,
    assert_true,
    eq_,
)

from ..device_model import (
    CapacitiveCouplerSpec,
    JunctionCouplerSpec,
    PhaseCoeffs,
    QubitSpec,
    ResonatorSpec,
    derive_phase_coefficients,
    dispersive_hamiltonian,
    junction_hamiltonian,
    junction_hamiltonian_td,
    level_energies,
    phase_operators,
    transmon_spectrum,
    two_qubit_gaps,
    universal_drive_elements,
    validate_scales,
)
from ..drive_synth import (
    DriveSignal,
    UniversalDriveParams,
    universal_signal,
)
from ..exceptions import (
    ConvergenceError,
    OperatorError,
    UnphysicalParameterError,
)
from ..operator_core import (
    identity,
    kron,
    sigma_x,
    sigma_z,
)
from . import coupler_qubits


def test_record_validation():
    assert_raises(UnphysicalParameterError, PhaseCoeffs, s=0.)
    assert_raises(UnphysicalParameterError, PhaseCoeffs, q2=2.)
    assert_raises(UnphysicalParameterError, QubitSpec, -1.)
    assert_raises(UnphysicalParameterError, QubitSpec, 1., levels=7)
    assert_raises(UnphysicalParameterError, ResonatorSpec, 1., dim=1)
    assert_raises(UnphysicalParameterError, CapacitiveCouplerSpec, 0.)
    assert_raises(
        UnphysicalParameterError, JunctionCouplerSpec, 0., DriveSignal(0., 1.))


def test_number_basis_coefficients():
    coeffs = PhaseCoeffs(c0=0.7, c=0.3)
    assert_allclose(coeffs.c0_number, 0.4)
    assert_allclose(coeffs.c_number, 0.6)
    sin_phi, cos_phi = phase_operators(QubitSpec(1., phase_coeffs=coeffs))
    assert_allclose(np.diag(cos_phi.data), [0.4, 1.0])
    assert_allclose(sin_phi.data, sigma_x().data)
    _, cos3 = phase_operators(QubitSpec(1., levels=3, phase_coeffs=coeffs))
    assert_allclose(np.diag(cos3.data), [0.4, 1.0, 1.6])
    assert_raises(
        OperatorError, phase_operators, QubitSpec(1., levels=4))


def test_level_energies():
    energies = level_energies(1., 0.2, 0.9, 4)
    assert_allclose(energies, [0., 1., 1.8, 2.1])
    assert_allclose(QubitSpec(1., levels=3, alpha2=0.2).energies(), [0., 1., 1.8])


def test_static_junction_coupling():
    # at constant flux pi/2 only the odd term survives: -alpha_ej (S1 C2 - C1 S2)
    q1, q2 = coupler_qubits()
    coupler = JunctionCouplerSpec(0.02, DriveSignal(pi / 2, 1.))
    h = junction_hamiltonian(q1, q2, coupler, 0.)
    expected = (
        0.5 * kron(sigma_z(), identity(2))
        + 0.375 * kron(identity(2), sigma_z())
        - 0.02 * (kron(sigma_x(), sigma_z()) - kron(sigma_z(), sigma_x())))
    assert_allclose(h.data, expected.data, atol=1e-15)
    td = junction_hamiltonian_td(
        q1, q2, JunctionCouplerSpec(
            0.02, universal_signal(UniversalDriveParams(f_xy0=0.05), 1., 0.75)))
    eq_(td.dims, (2, 2))
    assert_allclose(td.max_frequency, 0.25)
    assert_true(td.at(3.).is_hermitian())


def test_dispersive_hamiltonian():
    q = QubitSpec(1., levels=3, alpha2=0.2)
    h = dispersive_hamiltonian(q, ResonatorSpec(1.5, dim=4), CapacitiveCouplerSpec(0.05))
    eq_(h.dims, (3, 4))
    # |1,0> <-> |0,1> exchange
    assert_allclose(h.data[1 * 4 + 0, 0 * 4 + 1], 0.05)
    assert_allclose(h.data[2 * 4 + 0, 2 * 4 + 0], 1.8)
    assert_raises(
        OperatorError, dispersive_hamiltonian, QubitSpec(1.),
        ResonatorSpec(1.5), CapacitiveCouplerSpec(0.05))


def test_transmon_spectrum():
    spectrum = transmon_spectrum(50., 1., levels=4)
    # asymptotic transmon values: omega ~ sqrt(8 ej ec) - ec, alpha ~ ec
    assert_allclose(spectrum.omega, np.sqrt(8 * 50.) - 1., rtol=0.02)
    assert_allclose(spectrum.alpha, 1., rtol=0.2)
    assert_greater(spectrum.beta, 0.)
    assert_raises(UnphysicalParameterError, transmon_spectrum, 5., 1.)
    assert_raises(ConvergenceError, transmon_spectrum, 50., 1., 4, 2)
    coeffs = derive_phase_coefficients(50., 1.)
    assert_greater(coeffs.s1, 0.)
    assert_greater(coeffs.s2, coeffs.s1)
    # <1|cos|1> < <0|cos|0>
    assert_greater(0., coeffs.c)


def test_validate_scales():
    p = UniversalDriveParams(f_zz=0.3, f_xy0=0.01)
    gaps = two_qubit_gaps(1., 0.75)
    eq_(min(gaps.values()), 0.25)
    elements = universal_drive_elements(p, 0.2)
    eq_(sorted(elements), ['alpha_ej*f_xy0', 'alpha_ej*f_zz'])
    warnings = validate_scales(elements, gaps)
    eq_(len(warnings), 1)
    assert_true('f_zz' in warnings[0])
    eq_(validate_scales(universal_drive_elements(p, 0.02), gaps), [])
    eq_(validate_scales(elements, {}), [])
