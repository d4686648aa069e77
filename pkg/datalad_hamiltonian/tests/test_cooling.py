# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test shadow-qubit cooling"""

from dataclasses import replace

from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_greater,
    assert_in,
    assert_raises,
    eq_,
    slow,
)

from ..cooling import (
    CoolingSpec,
    cooling_row,
    effective_excitation,
    effective_temperature,
    find_heating_crossover,
    induced_decay_rate,
    simulate_cooling,
    temperature_for_occupation,
    thermal_rates,
)
from ..exceptions import (
    ConvergenceError,
    UnphysicalParameterError,
)


def _spec(**kwargs):
    values = dict(
        omega=1., omega_s=5., g=0.01, gamma_s=0.02, kappa=1e-4,
        temperature=temperature_for_occupation(1., 0.05))
    values.update(kwargs)
    return CoolingSpec(**values)


def test_rates_and_temperatures():
    temperature = temperature_for_occupation(1., 0.05)
    gamma_plus, gamma_minus, n_th = thermal_rates(1e-4, 1., temperature)
    assert_allclose(n_th, 0.05)
    assert_allclose((gamma_plus, gamma_minus), (5e-6, 1.05e-4))
    assert_allclose(effective_temperature(1., 0.05), temperature)
    eq_(effective_temperature(1., 0.), 0.)
    assert_raises(UnphysicalParameterError, effective_temperature, 1., 1.)
    assert_raises(UnphysicalParameterError, temperature_for_occupation, 1., 1.)
    assert_raises(UnphysicalParameterError, thermal_rates, 1e-4, 1., 0.)
    # critically damped pair: 2 g = gamma_s
    assert_allclose(induced_decay_rate(0.01, 0.02), 0.01)
    eq_(induced_decay_rate(0., 0.), 0.)


def test_spec_validation():
    assert_raises(UnphysicalParameterError, _spec, omega_s=0.5)
    assert_raises(UnphysicalParameterError, _spec, kappa=0.)
    assert_raises(UnphysicalParameterError, _spec, g=-0.01)
    assert_raises(UnphysicalParameterError, _spec, coupling_kind='zz')
    eq_(_spec().validity_warnings(), [])
    warnings = _spec(g=0.2).validity_warnings()
    eq_(len(warnings), 1)
    assert_in('omega', warnings[0])


def test_exchange_cooling_matches_closed_form():
    spec = _spec()
    analytic, _ = effective_excitation(spec)
    expected = 1e-4 * 0.05 / (1e-4 * 1.05 + 4e-4 * 0.02 / (4e-4 + 4e-4))
    assert_allclose(analytic, expected)
    steady = simulate_cooling(spec)
    assert_allclose(steady.rho_plus, analytic, rtol=0.15)
    assert_greater(steady.suppression, 50.)
    assert_greater(steady.t_eff, 0.)
    assert_greater(spec.temperature, steady.t_eff)
    assert_greater(0.01, steady.shadow_excitation)


def test_uncoupled_primary_is_thermal():
    spec = _spec(g=0.)
    steady = simulate_cooling(spec)
    assert_allclose(steady.rho_plus, steady.rho_plus_thermal, rtol=0.01)
    analytic, _ = effective_excitation(spec)
    assert_allclose(analytic, steady.rho_plus_thermal, rtol=1e-12)


def test_cooling_row():
    row = cooling_row(_spec())
    eq_(sorted(row), [
        'rho_plus_analytic', 'rho_plus_lindblad', 'rho_plus_thermal',
        't_eff_analytic', 't_eff_lindblad'])
    assert_allclose(row['rho_plus_lindblad'], row['rho_plus_analytic'], rtol=0.15)


def test_xx_coupling_adds_heating():
    exchange = _spec(g=0.05)
    xx = replace(exchange, coupling_kind='xx')
    rho_exchange, _ = effective_excitation(exchange)
    rho_xx, _ = effective_excitation(xx)
    assert_allclose(
        rho_xx - rho_exchange,
        0.05 ** 2 * 0.02 / 4 / (1e-4 * 1.05 + induced_decay_rate(0.05, 0.02)))


def test_crossover_needs_sign_change():
    # both ends of a hot bracket are cooled by the xx coupling
    with assert_raises(ConvergenceError):
        find_heating_crossover(_spec(g=0.05), t_low=0.5, t_high=1.)


@slow
def test_heating_crossover():
    result = find_heating_crossover(_spec(g=0.05))
    assert_greater(result.temperature, 0.05)
    assert_greater(1., result.temperature)
    # below the crossover xx heats while exchange still cools
    assert_greater(result.rho_xx, result.rho_thermal)
    assert_greater(result.rho_thermal, result.rho_exchange)
    eq_(sorted(result.to_dict()), [
        'rho_exchange', 'rho_thermal', 'rho_xx', 'temperature',
        'witness_temperature'])
