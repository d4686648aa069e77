# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Dissipative cooling of a primary qubit through a lossy shadow qubit

A frequency converting coupling of strength g makes a primary qubit at
omega and a shadow qubit at omega_s resonant in the rotating frame. The
shadow relaxes quickly at rate gamma_s and drains the primary
excitations. An ``xx`` coupling instead of the pure exchange also
creates pairs of excitations and can heat the primary qubit.

The lattice of identical, uncoupled primary/shadow pairs is a product of
pairs, so a single pair is simulated.
"""

import logging
from dataclasses import dataclass, replace
from math import exp, log
from typing import (
    Dict,
    List,
    Tuple,
)

import numpy as np

from .dynamics import (
    DensityMatrix,
    JumpOperator,
    steady_state,
)
from .exceptions import (
    ConvergenceError,
    UnphysicalParameterError,
)
from .operator_core import (
    Operator,
    embed,
    kron,
    projector,
    sigma_minus,
    sigma_plus,
    sigma_x,
    sigma_z,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.cooling')

COUPLING_KINDS = ('exchange', 'xx')
WEAK_COUPLING_RATIO = 0.1
SHADOW_FREEZE_RATIO = 20.


def thermal_rates(kappa: float,
                  omega: float,
                  temperature: float) -> Tuple[float, float, float]:
    """(gamma_plus, gamma_minus, n_th) of a qubit in a thermal bath

    ``n_th = exp(-omega / T)`` is the Boltzmann factor,
    ``gamma_minus = (1 + n_th) kappa`` and ``gamma_plus = n_th kappa``.
    """
    if temperature <= 0:
        raise UnphysicalParameterError(
            'temperature must be positive, got {!r}'.format(temperature))
    n_th = exp(-omega / temperature)
    return n_th * kappa, (1 + n_th) * kappa, n_th


def temperature_for_occupation(omega: float, n_th: float) -> float:
    """Temperature with Boltzmann factor ``n_th`` at frequency ``omega``"""
    if not 0 < n_th < 1:
        raise UnphysicalParameterError(
            'thermal factor must be in (0, 1), got {!r}'.format(n_th))
    return omega / -log(n_th)


def induced_decay_rate(g: float, gamma_s: float) -> float:
    """Extra primary decay through the shadow, 4 g^2 G / (4 g^2 + G^2)"""
    if g < 0 or gamma_s < 0:
        raise UnphysicalParameterError('coupling and shadow rate must be >= 0')
    denominator = 4 * g ** 2 + gamma_s ** 2
    return 4 * g ** 2 * gamma_s / denominator if denominator else 0.


@dataclass(frozen=True)
class CoolingSpec:
    omega: float
    omega_s: float
    g: float
    gamma_s: float
    kappa: float
    temperature: float
    coupling_kind: str = 'exchange'

    def __post_init__(self):
        if self.coupling_kind not in COUPLING_KINDS:
            raise UnphysicalParameterError(
                'coupling_kind must be one of {}, got {!r}'.format(
                    COUPLING_KINDS, self.coupling_kind))
        if self.delta <= 0:
            raise UnphysicalParameterError(
                'shadow must be above the primary qubit (delta = {!r})'.format(
                    self.delta))
        if self.gamma_s <= 0 or self.kappa <= 0:
            raise UnphysicalParameterError('gamma_s and kappa must be positive')
        if self.temperature <= 0:
            raise UnphysicalParameterError('temperature must be positive')
        if self.g < 0:
            raise UnphysicalParameterError('coupling must be nonnegative')

    @property
    def delta(self) -> float:
        return self.omega_s - self.omega

    @property
    def n_th(self) -> float:
        return exp(-self.omega / self.temperature)

    @property
    def shadow_n_th(self) -> float:
        ratio = self.omega_s / self.temperature
        return 0. if ratio > SHADOW_FREEZE_RATIO else exp(-ratio)

    def validity_warnings(self) -> List[str]:
        warnings = []
        for name, scale in (('omega', self.omega), ('delta', self.delta)):
            if self.g > WEAK_COUPLING_RATIO * scale:
                message = 'g = {:.4g} is not small against {} = {:.4g}'.format(
                    self.g, name, scale)
                lgr.warning(message)
                warnings.append(message)
        return warnings


def effective_temperature(omega: float, rho_plus: float) -> float:
    """T_eff with exp(-omega / T_eff) = rho_plus"""
    if rho_plus >= 1:
        raise UnphysicalParameterError(
            'excitation ratio {!r} >= 1 has no effective temperature'.format(
                rho_plus))
    if rho_plus <= 0:
        return 0.
    return omega / -log(rho_plus)


def effective_excitation(spec: CoolingSpec) -> Tuple[float, float]:
    """Closed-form (rho_plus, T_eff) for the spec's coupling kind"""
    induced = induced_decay_rate(spec.g, spec.gamma_s)
    numerator = spec.kappa * spec.n_th
    if spec.coupling_kind == 'xx':
        numerator += spec.g ** 2 * spec.gamma_s / (4 * spec.omega ** 2)
    rho_plus = numerator / (spec.kappa * (1 + spec.n_th) + induced)
    return rho_plus, effective_temperature(spec.omega, rho_plus)


def pair_hamiltonian(spec: CoolingSpec) -> Operator:
    """Rotating-frame Hamiltonian of one primary (first) / shadow pair"""
    dims = (2, 2)
    diagonal = (spec.omega / 2) * (
        embed(sigma_z(), 0, dims) + embed(sigma_z(), 1, dims))
    if spec.coupling_kind == 'exchange':
        exchange = kron(sigma_plus(), sigma_minus())
        coupling = exchange + exchange.dag()
    else:
        coupling = kron(sigma_x(), sigma_x())
    return (diagonal + spec.g * coupling).as_hermitian()


def pair_jumps(spec: CoolingSpec) -> List[JumpOperator]:
    dims = (2, 2)
    gamma_plus, gamma_minus, _ = thermal_rates(
        spec.kappa, spec.omega, spec.temperature)
    shadow_n = spec.shadow_n_th
    return [
        JumpOperator(embed(sigma_minus(), 0, dims), gamma_minus),
        JumpOperator(embed(sigma_plus(), 0, dims), gamma_plus),
        JumpOperator(embed(sigma_minus(), 1, dims), spec.gamma_s * (1 + shadow_n)),
        JumpOperator(embed(sigma_plus(), 1, dims), spec.gamma_s * shadow_n),
    ]


@dataclass(frozen=True, eq=False)
class CoolingSteadyState:
    """Primary excitation ratio rho_11 / rho_00 of the pair steady state"""
    rho_plus: float
    t_eff: float
    rho_plus_thermal: float
    shadow_excitation: float
    state: DensityMatrix

    @property
    def suppression(self) -> float:
        return self.rho_plus_thermal / self.rho_plus if self.rho_plus else float('inf')


def simulate_cooling(spec: CoolingSpec) -> CoolingSteadyState:
    """Lindblad steady state of one primary/shadow pair"""
    state = steady_state(pair_hamiltonian(spec), pair_jumps(spec))
    excited = state.expectation(embed(projector(1, 2), 0, (2, 2)))
    primary = excited / (1 - excited)
    shadow = state.expectation(embed(projector(1, 2), 1, (2, 2)))
    gamma_plus, gamma_minus, _ = thermal_rates(
        spec.kappa, spec.omega, spec.temperature)
    return CoolingSteadyState(
        rho_plus=primary,
        t_eff=effective_temperature(spec.omega, primary),
        rho_plus_thermal=gamma_plus / gamma_minus,
        shadow_excitation=shadow,
        state=state)


def cooling_row(spec: CoolingSpec) -> Dict[str, float]:
    """Closed form and Lindblad results side by side"""
    rho_analytic, t_analytic = effective_excitation(spec)
    simulated = simulate_cooling(spec)
    return dict(
        rho_plus_analytic=rho_analytic,
        rho_plus_lindblad=simulated.rho_plus,
        t_eff_analytic=t_analytic,
        t_eff_lindblad=simulated.t_eff,
        rho_plus_thermal=simulated.rho_plus_thermal,
    )


@dataclass(frozen=True)
class CrossoverResult:
    """Temperature below which the xx coupling heats the primary qubit"""
    temperature: float
    witness_temperature: float
    rho_xx: float
    rho_exchange: float
    rho_thermal: float

    def to_dict(self) -> Dict[str, float]:
        return dict(
            temperature=self.temperature,
            witness_temperature=self.witness_temperature,
            rho_xx=self.rho_xx,
            rho_exchange=self.rho_exchange,
            rho_thermal=self.rho_thermal,
        )


def _heating_margin(spec: CoolingSpec, temperature: float) -> float:
    at = replace(spec, temperature=temperature, coupling_kind='xx')
    simulated = simulate_cooling(at)
    return simulated.rho_plus - simulated.rho_plus_thermal


def find_heating_crossover(spec: CoolingSpec,
                           t_low: float = 0.05,
                           t_high: float = 1.0,
                           rtol: float = 1e-4,
                           max_iterations: int = 60) -> CrossoverResult:
    """Bisect for the temperature where the xx steady state turns hotter

    ``spec.temperature`` and ``spec.coupling_kind`` are ignored. The
    returned witness lies at 0.8 times the crossover, where the xx
    steady state is hotter and the exchange steady state colder than
    thermal.

    Raises
    ------
    ConvergenceError
      If the xx heating margin does not change sign on the bracket.
    """
    low_margin = _heating_margin(spec, t_low)
    high_margin = _heating_margin(spec, t_high)
    if not (low_margin > 0 > high_margin):
        raise ConvergenceError(
            'no heating crossover in [{}, {}] (margins {:.3g}, {:.3g})'.format(
                t_low, t_high, low_margin, high_margin))
    for _ in range(max_iterations):
        middle = (t_low + t_high) / 2
        if _heating_margin(spec, middle) > 0:
            t_low = middle
        else:
            t_high = middle
        if t_high - t_low < rtol * t_high:
            break
    crossover = (t_low + t_high) / 2
    witness = 0.8 * crossover
    xx = simulate_cooling(replace(spec, temperature=witness, coupling_kind='xx'))
    exchange = simulate_cooling(
        replace(spec, temperature=witness, coupling_kind='exchange'))
    lgr.info(
        'xx heating crossover at T = %.6g (witness %.6g: xx %.4g, exchange '
        '%.4g, thermal %.4g)', crossover, witness, xx.rho_plus,
        exchange.rho_plus, xx.rho_plus_thermal)
    return CrossoverResult(
        temperature=crossover,
        witness_temperature=witness,
        rho_xx=xx.rho_plus,
        rho_exchange=exchange.rho_plus,
        rho_thermal=xx.rho_plus_thermal)
