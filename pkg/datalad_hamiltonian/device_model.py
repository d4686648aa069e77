# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Device parameter records and lab-frame Hamiltonians

Natural units are used throughout (hbar = k_B = 1), all frequencies are
angular frequencies.
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import (
    Dict,
    List,
    Tuple,
)

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .drive_synth import (
    DriveSignal,
    UniversalDriveParams,
)
from .exceptions import (
    ConvergenceError,
    OperatorError,
    UnphysicalParameterError,
)
from .operator_core import (
    Operator,
    TimeDependentOperator,
    boson_ops,
    embed,
    identity,
    sigma_x,
    sigma_z,
    transition,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.device_model')

CUTOFF_TOLERANCE = 1e-8


@dataclass(frozen=True)
class PhaseCoeffs:
    """Matrix elements of sin(phi) and cos(phi) in the qubit eigenbasis

    Two-level usage: ``sin(phi) = s sigma_x`` and
    ``cos(phi) = c0 + c sigma_z``. Three-level usage: ``s1``, ``s2`` are
    the 0-1 and 1-2 elements of sin(phi), ``c2`` the 0-2 element of
    cos(phi), ``q2`` the ratio of the 1-2 and 0-1 charge elements.
    """
    s: float = 1.
    c0: float = 0.
    c: float = 0.
    s1: float = 1.
    s2: float = sqrt(2)
    c2: float = 0.
    q2: float = sqrt(2)

    def __post_init__(self):
        for name in ('s', 's1', 's2'):
            if getattr(self, name) <= 0:
                raise UnphysicalParameterError(
                    '{} must be positive, got {!r}'.format(
                        name, getattr(self, name)))
        if not 1. <= self.q2 <= sqrt(2) * 1.2:
            raise UnphysicalParameterError(
                'q2 = {!r} outside [1, {:.4f}]'.format(self.q2, sqrt(2) * 1.2))

    @property
    def c0_number(self) -> float:
        """cos(phi) offset in the number basis, ``c0 - c``"""
        return self.c0 - self.c

    @property
    def c_number(self) -> float:
        """cos(phi) slope in the number basis, ``2 c``"""
        return 2 * self.c


@dataclass(frozen=True)
class QubitSpec:
    omega: float
    levels: int = 2
    alpha2: float = 0.
    beta3: float = 0.
    phase_coeffs: PhaseCoeffs = field(default_factory=PhaseCoeffs)

    def __post_init__(self):
        if not 2 <= self.levels <= 6:
            raise UnphysicalParameterError(
                'levels must be in [2, 6], got {}'.format(self.levels))
        if self.omega <= 0:
            raise UnphysicalParameterError(
                'qubit frequency must be positive, got {!r}'.format(self.omega))

    def energies(self) -> np.ndarray:
        """E(n) with E(2) = 2 omega - alpha2 and E(3) = 3 omega - beta3"""
        return level_energies(self.omega, self.alpha2, self.beta3, self.levels)


def level_energies(omega: float,
                   alpha: float,
                   beta: float,
                   levels: int) -> np.ndarray:
    n = np.arange(levels, dtype=float)
    return (omega * n
            - alpha * n * (n - 1) / 2
            - (beta - 3 * alpha) * n * (n - 1) * (n - 2) / 6)


@dataclass(frozen=True)
class ResonatorSpec:
    omega_r: float
    dim: int = 10

    def __post_init__(self):
        if self.dim < 2:
            raise UnphysicalParameterError('resonator dim must be >= 2')


@dataclass(frozen=True)
class JunctionCouplerSpec:
    alpha_ej: float
    signal: DriveSignal

    def __post_init__(self):
        if self.alpha_ej <= 0:
            raise UnphysicalParameterError(
                'coupler junction energy must be positive, got {!r}'.format(
                    self.alpha_ej))


@dataclass(frozen=True)
class CapacitiveCouplerSpec:
    g: float

    def __post_init__(self):
        if self.g <= 0:
            raise UnphysicalParameterError(
                'capacitive coupling must be positive, got {!r}'.format(self.g))


def phase_operators(q: QubitSpec) -> Tuple[Operator, Operator]:
    """(sin(phi), cos(phi)) on the qubit space"""
    pc = q.phase_coeffs
    if q.levels == 2:
        sin_phi = pc.s * sigma_x()
        cos_phi = pc.c0 * identity(2) + pc.c * sigma_z()
        return sin_phi.as_hermitian(), cos_phi.as_hermitian()
    if q.levels == 3:
        sin_phi = (
            pc.s1 * (transition(0, 1, 3) + transition(1, 0, 3))
            + pc.s2 * (transition(1, 2, 3) + transition(2, 1, 3)))
        cos_phi = Operator(
            np.diag(pc.c0_number + pc.c_number * np.arange(3.)), (3,)) \
            + pc.c2 * (transition(2, 0, 3) + transition(0, 2, 3))
        return sin_phi.as_hermitian(), cos_phi.as_hermitian()
    raise OperatorError(
        'phase operators for {} levels are not defined here'.format(q.levels))


def qubit_diagonal(q: QubitSpec) -> Operator:
    """Bare qubit energy: (omega/2) sigma_z for two levels, E(n) otherwise"""
    if q.levels == 2:
        return (q.omega / 2) * sigma_z()
    return Operator(np.diag(q.energies()), (q.levels,), True)


def junction_hamiltonian_td(q1: QubitSpec,
                            q2: QubitSpec,
                            c: JunctionCouplerSpec) -> TimeDependentOperator:
    """Two qubits coupled by a flux-biased junction, as a function of time

    ``H(t) = H_1 + H_2 - alpha_ej [(C1 C2 + S1 S2) cos F(t)
    + (S1 C2 - C1 S2) sin F(t)]``
    """
    return junction_pair_hamiltonian(
        qubit_diagonal(q1), phase_operators(q1),
        qubit_diagonal(q2), phase_operators(q2), c)


def harmonic_phase_operators(levels: int,
                             s: float = 1.,
                             c0: float = 0.,
                             c: float = 0.) -> Tuple[Operator, Operator]:
    """(sin(phi), cos(phi)) = (s (a + a^dagger), c0 + c n) on ``levels`` states"""
    a, a_dag, n = boson_ops(levels)
    sin_phi = s * (a + a_dag)
    cos_phi = c0 * identity(levels) + c * n
    return sin_phi.as_hermitian(), cos_phi.as_hermitian()


def junction_pair_hamiltonian(diagonal1: Operator,
                              phase1: Tuple[Operator, Operator],
                              diagonal2: Operator,
                              phase2: Tuple[Operator, Operator],
                              c: JunctionCouplerSpec) -> TimeDependentOperator:
    """Junction coupled pair from single-site energies and (sin, cos) operators"""
    dims = (diagonal1.dim, diagonal2.dim)
    sin1, cos1 = (embed(op, 0, dims) for op in phase1)
    sin2, cos2 = (embed(op, 1, dims) for op in phase2)
    static = embed(diagonal1, 0, dims) + embed(diagonal2, 1, dims)
    even = (cos1 @ cos2 + sin1 @ sin2).as_hermitian()
    odd = (sin1 @ cos2 - cos1 @ sin2).as_hermitian()
    signal = c.signal
    alpha_ej = c.alpha_ej
    return TimeDependentOperator(
        static,
        [
            (even, lambda t: -alpha_ej * np.cos(signal.evaluate(t))),
            (odd, lambda t: -alpha_ej * np.sin(signal.evaluate(t))),
        ],
        max_frequency=signal.max_frequency)


def junction_hamiltonian(q1: QubitSpec,
                         q2: QubitSpec,
                         c: JunctionCouplerSpec,
                         t: float) -> Operator:
    return junction_hamiltonian_td(q1, q2, c).at(t)


def dispersive_hamiltonian(q: QubitSpec,
                           r: ResonatorSpec,
                           c: CapacitiveCouplerSpec) -> Operator:
    """Three-level transmon capacitively coupled to a resonator

    dims are (3, r.dim), qubit first.
    """
    if q.levels != 3:
        raise OperatorError(
            'dispersive model needs a three-level qubit, got {}'.format(q.levels))
    dims = (3, r.dim)
    a_t, ad_t, n_t = boson_ops(3)
    a_r, ad_r, n_r = boson_ops(r.dim)
    qubit = q.omega * n_t - (q.alpha2 / 2) * (ad_t @ ad_t @ a_t @ a_t)
    hamiltonian = (
        embed(qubit, 0, dims)
        + r.omega_r * embed(n_r, 1, dims)
        + c.g * (embed(ad_t, 0, dims) @ embed(a_r, 1, dims)
                 + embed(a_t, 0, dims) @ embed(ad_r, 1, dims)))
    return hamiltonian.as_hermitian()


@dataclass(frozen=True, eq=False)
class TransmonSpectrum:
    """Lowest levels of a Cooper-pair box and its phase matrix elements

    Matrix elements are taken between real eigenvectors; even states are
    positive at charge 0, odd states positive at charge +1.
    """
    energies: np.ndarray
    sin_phi: np.ndarray
    cos_phi: np.ndarray
    charge: np.ndarray

    @property
    def omega(self) -> float:
        return float(self.energies[1])

    @property
    def alpha(self) -> float:
        return float(2 * self.energies[1] - self.energies[2])

    @property
    def beta(self) -> float:
        if len(self.energies) < 4:
            raise OperatorError('beta needs at least four levels')
        return float(3 * self.energies[1] - self.energies[3])


def _charge_basis_spectrum(ej: float, ec: float, levels: int, cutoff: int):
    charges = np.arange(-cutoff, cutoff + 1, dtype=float)
    diagonal = 4 * ec * charges ** 2
    off_diagonal = np.full(2 * cutoff, -ej / 2)
    energies, vectors = eigh_tridiagonal(
        diagonal, off_diagonal,
        select='i', select_range=(0, levels - 1))
    zero = cutoff
    for k in range(levels):
        anchor = zero if k % 2 == 0 else zero + 1
        if vectors[anchor, k] < 0:
            vectors[:, k] = -vectors[:, k]
    shift = np.eye(2 * cutoff + 1, k=-1)
    # exp(i phi) |n> = |n + 1>
    exp_phi = vectors.T @ shift @ vectors
    sin_phi = (exp_phi - exp_phi.T) / 2j
    cos_phi = (exp_phi + exp_phi.T) / 2
    charge = vectors.T @ np.diag(charges) @ vectors
    return TransmonSpectrum(
        energies=energies - energies[0],
        sin_phi=sin_phi,
        cos_phi=cos_phi,
        charge=charge)


def transmon_spectrum(ej: float,
                      ec: float,
                      levels: int = 4,
                      cutoff: int = 30) -> TransmonSpectrum:
    """Diagonalize 4 ec n^2 - ej cos(phi) in a truncated charge basis

    The truncation is verified by doubling ``cutoff``.

    Raises
    ------
    UnphysicalParameterError
      Outside the transmon regime ej/ec >= 10.
    ConvergenceError
      If the doubled cutoff changes the spectrum by more than 1e-8.
    """
    if ec <= 0 or ej / ec < 10:
        raise UnphysicalParameterError(
            'ej/ec = {!r} is outside the transmon regime (>= 10)'.format(
                ej / ec if ec > 0 else float('inf')))
    coarse = _charge_basis_spectrum(ej, ec, levels, cutoff)
    fine = _charge_basis_spectrum(ej, ec, levels, 2 * cutoff)
    deviation = max(
        np.max(np.abs(coarse.energies - fine.energies)) / ej,
        np.max(np.abs(coarse.sin_phi - fine.sin_phi)),
        np.max(np.abs(coarse.cos_phi - fine.cos_phi)))
    if deviation > CUTOFF_TOLERANCE:
        raise ConvergenceError(
            'charge cutoff {} not converged (deviation {:.3g})'.format(
                cutoff, deviation))
    return coarse


def derive_phase_coefficients(ej: float,
                              ec: float,
                              levels: int = 3,
                              cutoff: int = 30) -> PhaseCoeffs:
    """PhaseCoeffs of a transmon from its junction and charging energies"""
    spectrum = transmon_spectrum(ej, ec, max(levels, 3), cutoff)
    s1 = abs(spectrum.sin_phi[1, 0])
    s2 = abs(spectrum.sin_phi[2, 1])
    d0 = spectrum.cos_phi[0, 0].real
    d1 = spectrum.cos_phi[1, 1].real
    q2 = abs(spectrum.charge[2, 1] / spectrum.charge[1, 0])
    coeffs = PhaseCoeffs(
        s=s1,
        c0=(d0 + d1) / 2,
        c=(d1 - d0) / 2,
        s1=s1,
        s2=s2,
        c2=spectrum.cos_phi[2, 0].real,
        q2=q2)
    lgr.debug('derived %s from ej=%r ec=%r', coeffs, ej, ec)
    return coeffs


def two_qubit_gaps(omega1: float, omega2: float) -> Dict[str, float]:
    """Frequency scales the coupler matrix elements must stay below"""
    return {
        'omega1/2': omega1 / 2,
        'omega2/2': omega2 / 2,
        '|omega1-omega2|': abs(omega1 - omega2),
        'omega1+omega2': omega1 + omega2,
    }


def universal_drive_elements(p: UniversalDriveParams,
                             alpha_ej: float) -> Dict[str, float]:
    """Effective matrix element of every active universal drive channel"""
    return {
        'alpha_ej*{}'.format(name): alpha_ej * abs(getattr(p, name))
        for name in ('f_zz', 'f_xy0', 'f_xy2', 'f_xz', 'f_zx')
        if getattr(p, name)
    }


def validate_scales(elements: Dict[str, float],
                    gaps: Dict[str, float],
                    ratio: float = 0.1) -> List[str]:
    """Report matrix elements that are not small against the frequency gaps

    Parameters
    ----------
    elements : dict
      Named effective matrix elements.
    gaps : dict
      Named frequency gaps.
    ratio : float
      An element is flagged if it exceeds ``ratio`` times the smallest
      gap.

    Returns
    -------
    list of str
      One warning per flagged element, naming the limiting gap. Warnings
      are also logged, never raised.
    """
    if not gaps:
        return []
    gap_name, gap = min(gaps.items(), key=lambda item: abs(item[1]))
    warnings = []
    for name, value in sorted(elements.items()):
        if abs(value) > ratio * abs(gap):
            message = (
                '{} = {:.4g} exceeds {} x {} = {:.4g}; the rotating-wave '
                'picture may not hold'.format(
                    name, abs(value), ratio, gap_name, ratio * abs(gap)))
            lgr.warning(message)
            warnings.append(message)
    return warnings
