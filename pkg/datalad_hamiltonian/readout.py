# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Arbitrary-axis dispersive readout of a flux-driven transmon

The transmon (three levels) couples to a resonator through
``g (a_T^dagger a_R + h.c.)``. Flux tones on the transmon at
omega_R + omega_T, omega_R - omega_T and omega_R turn the dressed
qubit-resonator matrix elements of cos(phi) and sin(phi) into the
rotating-frame Hamiltonian ``Lambda (h . sigma) (a' + a'^dagger)``.

Dressed states use the gauge ``a' = -a_R``, i.e. bare states carry the
sign ``(-1)^n`` of their photon number. In this gauge the first order
dressed amplitudes take the familiar form
``|0,n> - (g / Delta) sqrt(n) |1,n-1>``.
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import (
    Dict,
    List,
    Optional,
    Tuple,
)

import numpy as np
from scipy.optimize import linear_sum_assignment

from .device_model import (
    CapacitiveCouplerSpec,
    PhaseCoeffs,
    QubitSpec,
    ResonatorSpec,
    dispersive_hamiltonian,
    phase_operators,
)
from .dynamics import propagate_states
from .exceptions import (
    ReadoutTruncationError,
    UnphysicalParameterError,
)
from .operator_core import (
    Operator,
    TimeDependentOperator,
    boson_ops,
    embed,
    identity,
    kron,
    sigma_x,
    sigma_y,
    sigma_z,
)
from .rwa_engine import (
    RotatingFrame,
    to_rotating_frame,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.readout')

PERTURBATIVE_LIMIT = 0.3
MIN_SIMULATION_DIM = 8


def _check_detunings(g: float, delta: float, qubit_delta: float) -> List[str]:
    if delta == 0 or delta + qubit_delta == 0:
        raise UnphysicalParameterError(
            'resonant qubit and resonator (delta = {!r}, delta + '
            'qubit_delta = {!r})'.format(delta, delta + qubit_delta))
    warnings = []
    for name, detuning in (('delta', delta), ('delta + qubit_delta', delta + qubit_delta)):
        if abs(g / detuning) > PERTURBATIVE_LIMIT:
            message = 'g / ({}) = {:.3g} outside the dispersive regime'.format(
                name, g / detuning)
            lgr.warning(message)
            warnings.append(message)
    return warnings


@dataclass(frozen=True)
class DressedAmplitudes:
    """First order amplitudes of the dressed states with n photons

    Keys are bare labels ``(qubit_level, photons)``; the states are not
    normalized.
    """
    ground: Dict[Tuple[int, int], float]
    excited: Dict[Tuple[int, int], float]


def dressed_states(g: float,
                   delta: float,
                   qubit_delta: float,
                   q2: float,
                   n: int) -> DressedAmplitudes:
    """Dressed |0,n> and |1,n> to lowest order in g / delta

    Parameters
    ----------
    g : float
      Qubit-resonator coupling.
    delta : float
      Detuning omega_R - omega_T.
    qubit_delta : float
      Transmon anharmonicity.
    q2 : float
      Enhancement of the 1-2 charge matrix element.
    n : int
      Photon number.
    """
    _check_detunings(g, delta, qubit_delta)
    ground = {(0, n): 1.}
    if n > 0:
        ground[(1, n - 1)] = -(g / delta) * sqrt(n)
    excited = {(1, n): 1., (0, n + 1): (g / delta) * sqrt(n + 1)}
    if n > 0:
        excited[(2, n - 1)] = -(q2 * g / (delta + qubit_delta)) * sqrt(n)
    return DressedAmplitudes(ground=ground, excited=excited)


@dataclass(frozen=True)
class DressedMatrixElements:
    """Flux operator elements between dressed states

    cos_down: <1,n-1|cos|0,n>, cos_up: <1,n+1|cos|0,n>,
    sin_ground: <0,n+1|sin|0,n>, sin_excited: <1,n+1|sin|1,n>
    """
    cos_down: float
    cos_up: float
    sin_ground: float
    sin_excited: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.cos_down, self.cos_up, self.sin_ground, self.sin_excited


def dressed_matrix_elements(q: PhaseCoeffs,
                            g: float,
                            delta: float,
                            qubit_delta: float,
                            n: int) -> DressedMatrixElements:
    """The four driven dressed matrix elements to first order in g

    The 0-1 element of cos(phi) is set by the number-basis slope
    ``c_number = 2 c``, the constant part of cos(phi) drops out.
    """
    _check_detunings(g, delta, qubit_delta)
    bose = sqrt(n + 1)
    upper = delta + qubit_delta
    return DressedMatrixElements(
        cos_down=-q.c_number * g * sqrt(n) / delta,
        cos_up=-q.q2 * g * q.c2 * bose / upper,
        sin_ground=-q.s1 * g * bose / delta,
        sin_excited=-q.q2 * q.s2 * g * bose / upper + q.s1 * g * bose / delta)


@dataclass(frozen=True, eq=False)
class ExactDressedBasis:
    """Eigenvectors of the static qubit-resonator Hamiltonian

    ``vectors[(q, n)]`` is the eigenvector adiabatically connected to the
    bare state |q, n>, with a positive bare component.
    """
    dims: Tuple[int, int]
    vectors: Dict[Tuple[int, int], np.ndarray]
    energies: Dict[Tuple[int, int], float]

    def sandwich(self, op: Operator, bra: Tuple[int, int], ket: Tuple[int, int]) -> float:
        """Element in the photon parity gauge"""
        value = self.vectors[bra].conj() @ op.data @ self.vectors[ket]
        return float(np.real(value)) * (-1) ** (bra[1] + ket[1])


def exact_dressed_states(hamiltonian: Operator) -> ExactDressedBasis:
    """Label the eigenvectors of a (qubit, resonator) Hamiltonian by bare states"""
    levels, photons = hamiltonian.dims
    energies, vectors = np.linalg.eigh(hamiltonian.data)
    rows, columns = linear_sum_assignment(-np.abs(vectors) ** 2)
    labelled = {}
    labelled_energies = {}
    for bare, eigen in zip(rows, columns):
        label = (int(bare // photons), int(bare % photons))
        vector = vectors[:, eigen].copy()
        component = vector[bare]
        vector *= np.conj(component) / abs(component)
        labelled[label] = vector
        labelled_energies[label] = float(energies[eigen])
    return ExactDressedBasis(
        dims=(levels, photons), vectors=labelled, energies=labelled_energies)


def exact_matrix_elements(q: QubitSpec,
                          r: ResonatorSpec,
                          c: CapacitiveCouplerSpec,
                          n: int) -> DressedMatrixElements:
    """The four dressed matrix elements by exact diagonalization"""
    if n + 2 >= r.dim:
        raise ReadoutTruncationError(
            'photon number {} too close to the truncation {}'.format(n, r.dim))
    basis = exact_dressed_states(dispersive_hamiltonian(q, r, c))
    dims = (3, r.dim)
    sin_phi, cos_phi = (embed(op, 0, dims) for op in phase_operators(q))
    return DressedMatrixElements(
        cos_down=basis.sandwich(cos_phi, (1, n - 1), (0, n)) if n > 0 else 0.,
        cos_up=basis.sandwich(cos_phi, (1, n + 1), (0, n)),
        sin_ground=basis.sandwich(sin_phi, (0, n + 1), (0, n)),
        sin_excited=basis.sandwich(sin_phi, (1, n + 1), (1, n)))


@dataclass(frozen=True)
class ReadoutHamiltonian:
    """``lambda_ (h . sigma) X + spin_independent X + conjugate_residual
    (h_perp . sigma) P`` with ``X = a' + a'^dagger``,
    ``P = i (a'^dagger - a')`` and ``h_perp = (-sin chi, cos chi, 0)``
    """
    lambda_: float
    h: Tuple[float, float, float]
    spin_independent: float
    conjugate_residual: float = 0.
    chi: float = 0.
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lambda_ < 0:
            raise UnphysicalParameterError('lambda must be nonnegative')
        norm = float(np.linalg.norm(self.h))
        if abs(norm - 1) > 1e-12:
            raise UnphysicalParameterError(
                'measurement axis must be a unit vector, norm {!r}'.format(norm))

    @property
    def conjugate_axis(self) -> Tuple[float, float, float]:
        return (-np.sin(self.chi), np.cos(self.chi), 0.)

    def matrix(self, dim: int, cancelled: bool = False) -> Operator:
        """Operator on (qubit, resonator) with resonator truncation ``dim``"""
        a, a_dag, _ = boson_ops(dim)
        gauge_x = -(a + a_dag)
        gauge_p = -1j * (a_dag - a)
        paulis = (sigma_x(), sigma_y(), sigma_z())
        axis = sum(
            (component * op for component, op in zip(self.h, paulis)),
            0. * identity(2))
        conjugate = sum(
            (component * op for component, op in zip(self.conjugate_axis, paulis)),
            0. * identity(2))
        result = self.lambda_ * kron(axis, gauge_x) \
            + self.conjugate_residual * kron(conjugate, gauge_p)
        if not cancelled:
            result = result + self.spin_independent * kron(identity(2), gauge_x)
        return result.as_hermitian()


def effective_readout_hamiltonian(f1: float,
                                  f2: float,
                                  f3: float,
                                  chi: float,
                                  q: PhaseCoeffs,
                                  g: float,
                                  delta: float,
                                  qubit_delta: float) -> ReadoutHamiltonian:
    """Rotating-frame readout Hamiltonian produced by the flux drive

    The f2 tone at omega_R - omega_T drives
    ``A (e^{-i chi} sigma+ a' + h.c.)``, the f1 tone at omega_R + omega_T
    drives ``B (e^{-i chi} sigma+ a'^dagger + h.c.)``. Their symmetric part
    sets the x-y component of the measurement axis, the antisymmetric
    part couples to the conjugate quadrature. The f3 tone gives the z
    component and the spin independent displacement.

    Raises
    ------
    UnphysicalParameterError
      If the drive defines no measurement axis (lambda = 0).
    """
    warnings = _check_detunings(g, delta, qubit_delta)
    upper = delta + qubit_delta
    hopping = -q.c_number * f2 * g / delta
    pumping = -q.q2 * g * q.c2 * f1 / upper
    z_part = -(g * f3 / 2) * (q.q2 * q.s2 / upper - 2 * q.s1 / delta)
    spin_independent = -(g * f3 / 2) * q.q2 * q.s2 / upper
    in_plane = (hopping + pumping) / 2
    vector = np.array([in_plane * np.cos(chi), in_plane * np.sin(chi), z_part])
    scale = float(np.linalg.norm(vector))
    if scale == 0:
        raise UnphysicalParameterError(
            'readout drive defines no measurement axis (lambda = 0)')
    return ReadoutHamiltonian(
        lambda_=scale,
        h=tuple(float(v) for v in vector / scale),
        spin_independent=spin_independent,
        conjugate_residual=(pumping - hopping) / 2,
        chi=chi,
        warnings=tuple(warnings))


def axis_state(h: Tuple[float, float, float]) -> np.ndarray:
    """Qubit state (|0>, |1> amplitudes) with Bloch vector ``h``"""
    theta = np.arccos(np.clip(h[2], -1., 1.))
    azimuth = np.arctan2(h[1], h[0])
    return np.array([np.sin(theta / 2) * np.exp(1j * azimuth), np.cos(theta / 2)])


@dataclass(frozen=True, eq=False)
class ReadoutTrajectory:
    label: str
    times: np.ndarray
    quadrature: np.ndarray
    qubit_z_dressed: np.ndarray
    resonator_n: np.ndarray
    eigenstate_population: np.ndarray

    @property
    def slope(self) -> float:
        return float(np.polyfit(self.times, self.quadrature, 1)[0])


@dataclass(frozen=True, eq=False)
class ReadoutSimulation:
    effective: ReadoutHamiltonian
    voltage: float
    trajectories: Dict[str, ReadoutTrajectory]

    @property
    def discrimination(self) -> float:
        """Quadrature slope difference between the +h and -h preparations"""
        return self.trajectories['+h'].slope - self.trajectories['-h'].slope

    @property
    def predicted_discrimination(self) -> float:
        return 4 * self.effective.lambda_

    @property
    def qnd_deviation(self) -> float:
        return float(max(
            np.max(1 - trajectory.eigenstate_population)
            for trajectory in self.trajectories.values()))


def readout_lab_hamiltonian(q: QubitSpec,
                            r: ResonatorSpec,
                            c: CapacitiveCouplerSpec,
                            f1: float,
                            f2: float,
                            f3: float,
                            chi: float,
                            voltage: float = 0.,
                            static_shift: float = 0.,
                            omega_drive: Optional[float] = None) -> TimeDependentOperator:
    """Dispersive Hamiltonian plus the flux and voltage drives"""
    dims = (3, r.dim)
    sin_phi, cos_phi = (embed(op, 0, dims) for op in phase_operators(q))
    a_r, ad_r, _ = boson_ops(r.dim)
    quadrature = embed(a_r + ad_r, 1, dims)
    omega_t = q.omega if omega_drive is None else omega_drive
    total = r.omega_r + omega_t
    delta = r.omega_r - omega_t
    omega_r = r.omega_r
    static = dispersive_hamiltonian(q, r, c)
    if static_shift:
        static = (static + static_shift * cos_phi).as_hermitian()
    terms = [
        (cos_phi, lambda t: 2 * f1 * np.cos(total * t + chi)
                            + 2 * f2 * np.cos(delta * t - chi)),
        (sin_phi, lambda t: 2 * f3 * np.cos(omega_r * t)),
    ]
    if voltage:
        terms.append(
            (quadrature.as_hermitian(), lambda t: 2 * voltage * np.cos(omega_r * t)))
    return TimeDependentOperator(
        static, terms, max_frequency=max(total, abs(delta), omega_r))


def simulate_readout(q: QubitSpec,
                     r: ResonatorSpec,
                     c: CapacitiveCouplerSpec,
                     f1: float,
                     f2: float,
                     f3: float,
                     chi: float,
                     duration: float,
                     n_samples: int = 61,
                     cancel_spin_independent: bool = True,
                     static_shift: float = 0.,
                     dt: Optional[float] = None) -> ReadoutSimulation:
    """Full driven qubit-resonator dynamics for both measurement eigenstates

    The qubit starts in the dressed eigenstate of ``h . sigma`` (or its
    opposite) with the resonator in its dressed vacuum. The quadrature
    ``<i (a^dagger - a)>`` is evaluated in the frame rotating at omega_T
    (qubit) and omega_R (resonator); for a +h preparation it grows with
    slope ``2 lambda``.

    A static shift of cos(phi) moves the qubit frequency by
    ``static_shift * 2 c``; the drive tones and the frame follow the
    shifted frequency.

    Raises
    ------
    ReadoutTruncationError
      If the mean photon number exceeds ``dim - 2``.
    """
    if r.dim < MIN_SIMULATION_DIM:
        raise ReadoutTruncationError(
            'readout simulation needs resonator dim >= {}, got {}'.format(
                MIN_SIMULATION_DIM, r.dim))
    pc = q.phase_coeffs
    omega_t = q.omega + static_shift * pc.c_number
    delta = r.omega_r - omega_t
    effective = effective_readout_hamiltonian(
        f1, f2, f3, chi, pc, c.g, delta, q.alpha2)
    voltage = effective.spin_independent if cancel_spin_independent else 0.
    hamiltonian = readout_lab_hamiltonian(
        q, r, c, f1, f2, f3, chi,
        voltage=voltage, static_shift=static_shift, omega_drive=omega_t)

    dims = (3, r.dim)
    _, _, n_t = boson_ops(3)
    a_r, ad_r, n_r = boson_ops(r.dim)
    frame = RotatingFrame((
        (embed(n_t, 0, dims), omega_t),
        (embed(n_r, 1, dims), r.omega_r),
    ))
    framed = to_rotating_frame(hamiltonian, frame)
    basis = exact_dressed_states(hamiltonian.static)
    quadrature_op = embed(1j * (ad_r - a_r), 1, dims).data
    number_op = embed(n_r, 1, dims).data
    frame_energies = {
        (level, photons): level * omega_t + photons * r.omega_r
        for level in range(2) for photons in range(r.dim)
    }

    times = np.linspace(0., duration, n_samples)
    trajectories = {}
    for label, axis in (('+h', effective.h), ('-h', tuple(-x for x in effective.h))):
        qubit = axis_state(axis)
        psi0 = qubit[0] * basis.vectors[(0, 0)] + qubit[1] * basis.vectors[(1, 0)]
        states = propagate_states(framed, psi0, times, dt=dt)
        quadrature = np.real(np.einsum('ti,ij,tj->t', states.conj(), quadrature_op, states))
        photons = np.real(np.einsum('ti,ij,tj->t', states.conj(), number_op, states))
        if np.max(photons) > r.dim - 2:
            raise ReadoutTruncationError(
                'resonator population {:.3g} breaches truncation {}'.format(
                    np.max(photons), r.dim))
        z_values = []
        populations = []
        for time, state in zip(times, states):
            lab = np.exp(-1j * np.real(np.diag(frame.generator.data)) * time) * state
            amplitudes = {
                label_: np.vdot(vector, lab) * np.exp(1j * frame_energies[label_] * time)
                for label_, vector in basis.vectors.items()
                if label_[0] < 2
            }
            rho00 = sum(abs(v) ** 2 for k, v in amplitudes.items() if k[0] == 0)
            rho11 = sum(abs(v) ** 2 for k, v in amplitudes.items() if k[0] == 1)
            rho10 = sum(
                amplitudes[(1, n)] * np.conj(amplitudes[(0, n)])
                for n in range(r.dim) if (1, n) in amplitudes and (0, n) in amplitudes)
            bloch = np.array([2 * rho10.real, -2 * rho10.imag, rho11 - rho00])
            z_values.append(rho11 - rho00)
            populations.append(0.5 * (rho00 + rho11 + np.dot(axis, bloch)))
        trajectories[label] = ReadoutTrajectory(
            label=label,
            times=times,
            quadrature=quadrature,
            qubit_z_dressed=np.array(z_values),
            resonator_n=photons,
            eigenstate_population=np.array(populations))
        lgr.info(
            'readout %s: quadrature slope %.4g (predicted %.4g)',
            label, trajectories[label].slope,
            (2 if label == '+h' else -2) * effective.lambda_)
    return ReadoutSimulation(
        effective=effective, voltage=voltage, trajectories=trajectories)


def readout_trajectory_rows(simulation: ReadoutSimulation):
    """CSV columns and rows of both trajectories"""
    columns = ['state', 't', 'quadrature', 'qubit_z_dressed', 'resonator_n']
    rows = []
    for label in ('+h', '-h'):
        trajectory = simulation.trajectories[label]
        for index, time in enumerate(trajectory.times):
            rows.append([
                label,
                float(time),
                float(trajectory.quadrature[index]),
                float(trajectory.qubit_z_dressed[index]),
                float(trajectory.resonator_n[index]),
            ])
    return columns, rows
