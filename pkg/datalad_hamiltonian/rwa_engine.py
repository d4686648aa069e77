# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Rotating frames and effective Hamiltonians of periodic drives

Three routes lead from a periodic rotating-frame Hamiltonian to a static
effective one:

- ``time_average``: the rotating-wave result, the time average over one
  exact period.
- ``floquet_effective``: (i/T) log of the one-period propagator.
- ``high_frequency_expansion``: the average plus the leading
  commutator correction of the Fourier harmonics, with the kick operator
  describing the micromotion.

``analytic_cab`` is the closed-form coupling table of the universal
coupler that the numerical routes are compared against.
"""

import logging
from dataclasses import dataclass
from math import ceil, pi
from typing import (
    Dict,
    Optional,
    Tuple,
)

import numpy as np
from scipy.linalg import schur

from datalad.log import log_progress

from .config import get_setting
from .drive_synth import UniversalDriveParams
from .dynamics import propagate
from .device_model import PhaseCoeffs
from .exceptions import (
    ConvergenceError,
    FloquetBranchError,
    FrameError,
    OperatorError,
)
from .operator_core import (
    HERMITIAN_TOLERANCE,
    Operator,
    PauliTable,
    TimeDependentHamiltonian,
    identity,
    kron,
    matrix_exp,
    pauli_decompose,
    sigma_minus,
    sigma_plus,
    sigma_x,
    sigma_y,
    sigma_z,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.rwa_engine')

BRANCH_MARGIN = 1e-6


@dataclass(frozen=True, eq=False)
class RotatingFrame:
    """Frame U(t) = exp(i t sum_j omega_j G_j) of commuting generators

    Parameters
    ----------
    generators : sequence of (Operator, float)
      Hermitian, mutually commuting generators with their angular
      frequencies.
    """
    generators: Tuple[Tuple[Operator, float], ...]

    def __post_init__(self):
        generators = tuple((op, float(omega)) for op, omega in self.generators)
        if not generators:
            raise FrameError('a rotating frame needs at least one generator')
        dims = generators[0][0].dims
        for index, (op, _) in enumerate(generators):
            if op.dims != dims:
                raise FrameError('frame generators act on different spaces')
            if not op.is_hermitian():
                raise FrameError(
                    'frame generator {} is not Hermitian'.format(index))
            for other, _ in generators[:index]:
                deviation = np.max(np.abs(op.data @ other.data - other.data @ op.data))
                if deviation > HERMITIAN_TOLERANCE:
                    raise FrameError(
                        'frame generators do not commute '
                        '(deviation {:.3g})'.format(deviation))
        object.__setattr__(self, 'generators', generators)
        total = sum(omega * op.data for op, omega in generators)
        if np.count_nonzero(total - np.diag(np.diag(total))) == 0:
            values = np.real(np.diag(total)).copy()
            basis = None
        else:
            values, basis = np.linalg.eigh((total + total.conj().T) / 2)
        object.__setattr__(self, '_values', values)
        object.__setattr__(self, '_basis', basis)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.generators[0][0].dims

    @property
    def generator(self) -> Operator:
        """sum_j omega_j G_j"""
        return Operator(
            sum(omega * op.data for op, omega in self.generators),
            self.dims, True)

    @property
    def is_diagonal(self) -> bool:
        return self._basis is None

    @property
    def max_bohr_frequency(self) -> float:
        return float(np.max(self._values) - np.min(self._values))

    def unitary(self, t: float) -> Operator:
        phases = np.exp(1j * self._values * t)
        if self._basis is None:
            return Operator(np.diag(phases), self.dims)
        return Operator(
            (self._basis * phases) @ self._basis.conj().T, self.dims)

    def inverse(self) -> 'RotatingFrame':
        return RotatingFrame(
            tuple((op, -omega) for op, omega in self.generators))

    def transform(self, samples: np.ndarray, times: np.ndarray) -> np.ndarray:
        """U H U^dagger - K for stacked samples of H"""
        difference = self._values[:, None] - self._values[None, :]
        phases = np.exp(1j * times[:, None, None] * difference[None, :, :])
        if self._basis is None:
            result = samples * phases
            index = np.arange(len(self._values))
            result[:, index, index] -= self._values
            return result
        basis = self._basis
        rotated = basis.conj().T @ samples @ basis
        rotated = rotated * phases
        index = np.arange(len(self._values))
        rotated[:, index, index] -= self._values
        return basis @ rotated @ basis.conj().T


class FramedHamiltonian(TimeDependentHamiltonian):
    """A time-dependent Hamiltonian seen from a rotating frame"""
    def __init__(self, hamiltonian: TimeDependentHamiltonian, frame: RotatingFrame):
        if tuple(hamiltonian.dims) != frame.dims:
            raise FrameError(
                'frame dims {} do not match Hamiltonian dims {}'.format(
                    frame.dims, hamiltonian.dims))
        self.hamiltonian = hamiltonian
        self.frame = frame
        self.dims = frame.dims

    @property
    def max_frequency(self) -> float:
        return self.hamiltonian.max_frequency + self.frame.max_bohr_frequency

    def sample(self, times: np.ndarray) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        return self.frame.transform(self.hamiltonian.sample(times), times)


def to_rotating_frame(hamiltonian: TimeDependentHamiltonian,
                      frame: RotatingFrame) -> FramedHamiltonian:
    """H'(t) = U(t) H(t) U(t)^dagger - sum_j omega_j G_j"""
    return FramedHamiltonian(hamiltonian, frame)


def _chunked_sum(hamiltonian: TimeDependentHamiltonian,
                 times: np.ndarray,
                 chunk_size: int) -> np.ndarray:
    total = np.zeros((hamiltonian.dim, hamiltonian.dim), dtype=complex)
    for start in range(0, len(times), chunk_size):
        total += hamiltonian.sample(times[start:start + chunk_size]).sum(axis=0)
    return total


def initial_samples(period: float, max_frequency: float, minimum: int = 64) -> int:
    """Even sample count with 64 samples per period of the fastest tone"""
    per_tone = 64 * int(ceil(period * max_frequency / (2 * pi)))
    count = max(minimum, per_tone)
    return count + count % 2


def time_average(hamiltonian: TimeDependentHamiltonian,
                 period: float,
                 n_samples: Optional[int] = None,
                 tol: Optional[float] = None,
                 max_samples: Optional[int] = None,
                 chunk_size: Optional[int] = None) -> Operator:
    """(1/T) int_0^T H(t) dt by composite Simpson quadrature

    The number of intervals is doubled, reusing all previous samples,
    until successive estimates agree within ``tol`` (max-norm).

    Parameters
    ----------
    hamiltonian : TimeDependentHamiltonian
    period : float
      Exact common period of ``hamiltonian``.
    n_samples : int, optional
      Initial number of intervals; by default 64 per period of the
      fastest frequency.
    tol, max_samples, chunk_size : optional
      Override the ``datalad.hamiltonian`` configuration.

    Raises
    ------
    ConvergenceError
      If the tolerance is not reached within ``max_samples`` intervals.
    """
    tol = get_setting('average-tolerance', tol)
    max_samples = get_setting('average-max-samples', max_samples)
    chunk_size = get_setting('chunk-size', chunk_size)
    if period <= 0:
        raise OperatorError('averaging period must be positive')
    count = initial_samples(period, hamiltonian.max_frequency)
    if n_samples is not None:
        count = max(count, int(n_samples) + int(n_samples) % 2)

    step = period / count
    grid = np.arange(count + 1) * step
    ends = _chunked_sum(hamiltonian, grid[[0, -1]], chunk_size)
    odd = _chunked_sum(hamiltonian, grid[1:-1:2], chunk_size)
    even = _chunked_sum(hamiltonian, grid[2:-1:2], chunk_size)
    estimate = step / 3 * (ends + 4 * odd + 2 * even) / period

    pid = 'hamiltonian_average_{}'.format(id(hamiltonian))
    log_progress(
        lgr.debug, pid,
        'Averaging over period %.6g', period,
        label='Time average', unit=' refinements')
    try:
        while True:
            if 2 * count > max_samples:
                raise ConvergenceError(
                    'time average not converged to {:.3g} with {} '
                    'samples'.format(tol, count))
            midpoints = grid[:-1] + step / 2
            even = even + odd
            odd = _chunked_sum(hamiltonian, midpoints, chunk_size)
            count *= 2
            step /= 2
            grid = np.arange(count + 1) * step
            refined = step / 3 * (ends + 4 * odd + 2 * even) / period
            change = float(np.max(np.abs(refined - estimate)))
            estimate = refined
            log_progress(
                lgr.debug, pid,
                'Refined to %i samples, change %.3g', count, change,
                update=1, increment=True)
            if change < tol:
                break
    finally:
        log_progress(lgr.debug, pid, 'Finished time average')
    return Operator(
        (estimate + estimate.conj().T) / 2,
        tuple(hamiltonian.dims), True)


def _principal_logarithm(unitary: np.ndarray, period: float) -> np.ndarray:
    triangular, basis = schur(unitary, output='complex')
    phases = np.angle(np.diag(triangular))
    if np.any(np.abs(phases) > pi - BRANCH_MARGIN):
        raise FloquetBranchError(
            'quasienergy phase {:.8f} within {} of the branch cut; '
            'the effective Hamiltonian is not unique for period '
            '{:.6g}'.format(float(np.max(np.abs(phases))), BRANCH_MARGIN, period))
    result = (basis * (-phases / period)) @ basis.conj().T
    return (result + result.conj().T) / 2


def floquet_effective(hamiltonian: TimeDependentHamiltonian,
                      period: float,
                      dt: Optional[float] = None,
                      method: str = 'magnus4',
                      tol: Optional[float] = None) -> Operator:
    """Effective Hamiltonian (i/T) log U(T) of a periodic Hamiltonian

    Eigenphases of the one-period propagator are taken in (-pi, pi].

    Raises
    ------
    FloquetBranchError
      If an eigenphase lies within 1e-6 of +-pi.
    """
    unitary = propagate(hamiltonian, 0., period, dt=dt, method=method, tol=tol)
    return Operator(
        _principal_logarithm(unitary.data, period),
        tuple(hamiltonian.dims), True)


@dataclass(frozen=True, eq=False)
class HighFrequencyExpansion:
    """Fourier-harmonic effective Hamiltonian with its micromotion

    The propagator from 0 to t is approximated by
    ``exp(-i K(t)) exp(-i h_eff t) exp(i K(0))``.
    """
    h_eff: Operator
    harmonics: Dict[int, np.ndarray]
    omega: float
    order: int

    def kick(self, t: float) -> Operator:
        """K(t) = sum_{m != 0} H_m exp(i m omega t) / (i m omega)"""
        data = np.zeros(self.h_eff.data.shape, dtype=complex)
        if self.order >= 2:
            for m, harmonic in self.harmonics.items():
                if m:
                    data += harmonic * np.exp(1j * m * self.omega * t) / (1j * m * self.omega)
        return Operator((data + data.conj().T) / 2, self.h_eff.dims, True)

    def propagator(self, t: float) -> Operator:
        return (matrix_exp(self.kick(t), -1j)
                @ matrix_exp(self.h_eff, -1j * t)
                @ matrix_exp(self.kick(0.), 1j))


def high_frequency_expansion(hamiltonian: TimeDependentHamiltonian,
                             period: float,
                             order: int = 2,
                             n_samples: Optional[int] = None,
                             cutoff: float = 1e-12) -> HighFrequencyExpansion:
    """Effective Hamiltonian to second order in the inverse drive frequency

    ``h_eff = H_0 + sum_{m > 0} [H_m, H_-m] / (m omega)`` with harmonics
    ``H_m`` of ``H(t) = sum_m H_m exp(i m omega t)``, omega = 2 pi / T.
    ``order=1`` returns the plain time average.
    """
    if order not in (1, 2):
        raise OperatorError('expansion order must be 1 or 2, got {}'.format(order))
    count = initial_samples(period, hamiltonian.max_frequency, minimum=128)
    if n_samples is not None:
        count = max(count, int(n_samples))
    count = 1 << int(ceil(np.log2(count)))
    times = np.arange(count) * (period / count)
    samples = hamiltonian.sample(times)
    spectrum = np.fft.fft(samples, axis=0) / count
    omega = 2 * pi / period
    harmonics = {}
    for m in range(-(count // 2) + 1, count // 2):
        harmonic = spectrum[m % count]
        if m == 0 or np.max(np.abs(harmonic)) > cutoff:
            harmonics[m] = harmonic
    edge = np.max(np.abs(spectrum[count // 2]))
    if edge > 1e3 * cutoff:
        lgr.warning(
            'Fourier series not resolved with %i samples (edge harmonic %.3g)',
            count, edge)
    effective = harmonics[0].copy()
    if order == 2:
        for m, harmonic in harmonics.items():
            if m > 0 and -m in harmonics:
                partner = harmonics[-m]
                effective += (harmonic @ partner - partner @ harmonic) / (m * omega)
    return HighFrequencyExpansion(
        h_eff=Operator(
            (effective + effective.conj().T) / 2,
            tuple(hamiltonian.dims), True),
        harmonics=harmonics,
        omega=omega,
        order=order)


def _phase_axis(angle: float) -> Operator:
    return np.cos(angle) * sigma_x() + np.sin(angle) * sigma_y()


def analytic_cab(p: UniversalDriveParams,
                 q1: PhaseCoeffs,
                 q2: PhaseCoeffs,
                 alpha_ej: float) -> PauliTable:
    """Closed-form rotating-frame coupling table of the universal coupler

    Includes the sin(phi) amplitudes ``s`` of both qubits and the
    single-qubit terms generated by the cos(phi) offsets.
    """
    z1 = q1.c0 * identity(2) + q1.c * sigma_z()
    z2 = q2.c0 * identity(2) + q2.c * sigma_z()
    chi_minus = p.chi1 - p.chi2
    chi_plus = p.chi1 + p.chi2
    hopping = np.exp(-1j * chi_minus) * kron(sigma_plus(), sigma_minus())
    pump = np.exp(-1j * chi_plus) * kron(sigma_plus(), sigma_plus())
    hamiltonian = (
        -alpha_ej * p.f_zz * kron(z1, z2)
        - alpha_ej * q1.s * q2.s * p.f_xy0 * (hopping + hopping.dag())
        - alpha_ej * q1.s * q2.s * p.f_xy2 * (pump + pump.dag())
        + alpha_ej * p.f_xz ** 2 * q1.s * kron(_phase_axis(p.psi1), z2)
        - alpha_ej * p.f_zx ** 2 * q2.s * kron(z1, _phase_axis(p.psi2)))
    return pauli_decompose(hamiltonian.as_hermitian())


def extract_cab(h_eff: Operator) -> PauliTable:
    """Coupling table of a numerically obtained two-qubit Hamiltonian"""
    if h_eff.dims != (2, 2):
        raise OperatorError(
            'coupling extraction needs a two-qubit operator, got dims {}'.format(
                h_eff.dims))
    return pauli_decompose(h_eff)


def rotation(theta: float) -> np.ndarray:
    """2D rotation acting on the (x, y) labels of a coupling block"""
    return np.array([[np.cos(theta), -np.sin(theta)],
                     [np.sin(theta), np.cos(theta)]])


def xy_block(table: PauliTable) -> np.ndarray:
    return np.array(table.coefficients[1:3, 1:3])


def hopping_phase(h_eff: Operator) -> float:
    """Phase of the |01> <-> |10> element, arg(-<01|H|10>)"""
    return float(np.angle(-h_eff.data[1, 2]))

