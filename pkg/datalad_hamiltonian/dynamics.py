# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Time-ordered propagation and Lindblad master equation dynamics

Density matrices are vectorized row-major, so that
``vec(A rho B) = (A kron B^T) vec(rho)``.
"""

import logging
from dataclasses import dataclass
from math import ceil, pi, sqrt
from typing import (
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from datalad.log import log_progress

from .config import get_setting
from .exceptions import (
    ConvergenceError,
    DegenerateSteadyStateError,
    OperatorError,
    PositivityError,
)
from .operator_core import (
    Operator,
    TimeDependentHamiltonian,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.dynamics')

STEPS_PER_CYCLE = 40
MAX_HALVINGS = 14
HERMITIAN_DENSITY_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-8
POSITIVITY_TOLERANCE = 1e-8
EVOLUTION_POSITIVITY_TOLERANCE = 1e-6
STEADY_STATE_GAP = 1e-8
# RK4 steps are limited to this fraction of 1 / ||L||
RK4_STEP_FRACTION = 0.1

# commutator-free fourth order Magnus nodes and weights
_CF4_NODES = (0.5 - sqrt(3) / 6, 0.5 + sqrt(3) / 6)
_CF4_WEIGHTS = ((3 - 2 * sqrt(3)) / 12, (3 + 2 * sqrt(3)) / 12)


def _exponentials(generators: np.ndarray, step: float) -> np.ndarray:
    """exp(-i step G) for a stack of Hermitian G"""
    values, vectors = np.linalg.eigh(generators)
    phases = np.exp(-1j * step * values)
    return (vectors * phases[:, None, :]) @ np.conj(np.swapaxes(vectors, 1, 2))


def _ordered_product(factors: np.ndarray) -> np.ndarray:
    """factors[-1] @ ... @ factors[0], reduced pairwise"""
    while len(factors) > 1:
        if len(factors) % 2:
            tail = factors[-1:]
            factors = np.concatenate(
                [factors[1:-1:2] @ factors[0:-1:2], tail])
        else:
            factors = factors[1::2] @ factors[0::2]
    return factors[0]


def _step_generators(hamiltonian: TimeDependentHamiltonian,
                     starts: np.ndarray,
                     step: float,
                     method: str) -> np.ndarray:
    if method == 'midpoint':
        return hamiltonian.sample(starts + step / 2)
    if method == 'magnus4':
        first = hamiltonian.sample(starts + _CF4_NODES[0] * step)
        second = hamiltonian.sample(starts + _CF4_NODES[1] * step)
        a1, a2 = _CF4_WEIGHTS
        generators = np.empty(
            (2 * len(starts),) + first.shape[1:], dtype=complex)
        # earlier exponential first in time order
        generators[0::2] = a2 * first + a1 * second
        generators[1::2] = a1 * first + a2 * second
        return generators
    raise OperatorError('unknown propagation method {!r}'.format(method))


def _fixed_step_propagator(hamiltonian: TimeDependentHamiltonian,
                           t0: float,
                           steps: int,
                           step: float,
                           method: str,
                           chunk_size: int) -> np.ndarray:
    dim = hamiltonian.dim
    unitary = np.eye(dim, dtype=complex)
    for first in range(0, steps, chunk_size):
        count = min(chunk_size, steps - first)
        starts = t0 + (first + np.arange(count)) * step
        generators = _step_generators(hamiltonian, starts, step, method)
        generators = (generators + np.conj(np.swapaxes(generators, 1, 2))) / 2
        # the two magnus4 exponentials per step use the full step length
        unitary = _ordered_product(_exponentials(generators, step)) @ unitary
    return unitary


def max_step(hamiltonian: TimeDependentHamiltonian) -> Optional[float]:
    """Largest step resolving the fastest drive cycle with 40 steps"""
    frequency = hamiltonian.max_frequency
    if frequency <= 0:
        return None
    return 2 * pi / (STEPS_PER_CYCLE * frequency)


def propagate(hamiltonian: TimeDependentHamiltonian,
              t0: float,
              t1: float,
              dt: Optional[float] = None,
              method: str = 'midpoint',
              tol: Optional[float] = None,
              chunk_size: Optional[int] = None) -> Operator:
    """Time-ordered propagator U(t1, t0)

    Products of exact exponentials are accumulated; the step is halved
    until two successive propagators agree within ``tol`` (max-norm).

    Parameters
    ----------
    hamiltonian : TimeDependentHamiltonian
    t0, t1 : float
    dt : float, optional
      Initial step; clipped to 1/40 of the fastest drive cycle.
    method : {'midpoint', 'magnus4'}
      Second order exponential midpoint rule or the fourth order
      commutator-free Magnus integrator.
    tol, chunk_size : optional
      Override the ``datalad.hamiltonian`` configuration.

    Raises
    ------
    ConvergenceError
      If step halving does not reach ``tol``.
    """
    tol = get_setting('propagate-tolerance', tol)
    chunk_size = get_setting('chunk-size', chunk_size)
    duration = t1 - t0
    if duration == 0:
        return Operator(np.eye(hamiltonian.dim), tuple(hamiltonian.dims))
    if duration < 0:
        raise OperatorError('backward propagation is not supported')
    limit = max_step(hamiltonian)
    if limit is None:
        # constant Hamiltonian, one exact exponential
        data = _fixed_step_propagator(hamiltonian, t0, 1, duration, 'midpoint', 1)
        return Operator(data, tuple(hamiltonian.dims))
    step = limit if dt is None else min(dt, limit)
    steps = int(ceil(duration / step))

    pid = 'hamiltonian_propagate_{}'.format(id(hamiltonian))
    log_progress(
        lgr.debug, pid,
        'Propagating over %.6g with %s steps', duration, method,
        label='Propagation', unit=' halvings', total=MAX_HALVINGS)
    try:
        current = _fixed_step_propagator(
            hamiltonian, t0, steps, duration / steps, method, chunk_size)
        for _ in range(MAX_HALVINGS):
            steps *= 2
            refined = _fixed_step_propagator(
                hamiltonian, t0, steps, duration / steps, method, chunk_size)
            change = float(np.max(np.abs(refined - current)))
            current = refined
            log_progress(
                lgr.debug, pid,
                '%i steps, change %.3g', steps, change,
                update=1, increment=True)
            if change < tol:
                return Operator(current, tuple(hamiltonian.dims))
    finally:
        log_progress(lgr.debug, pid, 'Finished propagation')
    raise ConvergenceError(
        'propagation not converged to {:.3g} after {} halvings'.format(
            tol, MAX_HALVINGS))


def propagate_periodic(hamiltonian: TimeDependentHamiltonian,
                       period: float,
                       t: float,
                       dt: Optional[float] = None,
                       method: str = 'midpoint',
                       tol: Optional[float] = None) -> Operator:
    """U(t, 0) of a T-periodic Hamiltonian as U(r) U(T)^n, t = n T + r"""
    cycles = int(t // period)
    remainder = t - cycles * period
    one_period = propagate(hamiltonian, 0., period, dt=dt, method=method, tol=tol)
    rest = propagate(hamiltonian, 0., remainder, dt=dt, method=method, tol=tol)
    return Operator(
        rest.data @ np.linalg.matrix_power(one_period.data, cycles),
        tuple(hamiltonian.dims))


def propagate_states(hamiltonian: TimeDependentHamiltonian,
                     psi0: np.ndarray,
                     times: Sequence[float],
                     dt: Optional[float] = None,
                     method: str = 'magnus4',
                     chunk_size: Optional[int] = None) -> np.ndarray:
    """State vectors at increasing ``times``, starting at ``times[0]``

    Fixed step integration; every interval between sample times is
    divided into equal steps no longer than ``dt``.
    """
    chunk_size = get_setting('chunk-size', chunk_size)
    times = np.asarray(times, dtype=float)
    limit = max_step(hamiltonian)
    step = dt if limit is None else min(dt or limit, limit)
    state = np.asarray(psi0, dtype=complex)
    states = [state]
    for start, stop in zip(times[:-1], times[1:]):
        if stop <= start:
            raise OperatorError('sample times must be increasing')
        steps = 1 if step is None else int(ceil((stop - start) / step))
        unitary = _fixed_step_propagator(
            hamiltonian, start, steps, (stop - start) / steps, method, chunk_size)
        state = unitary @ state
        states.append(state)
    return np.array(states)


def process_fidelity(u: Operator,
                     v: Operator,
                     subspace: Optional[Sequence[int]] = None) -> float:
    """|Tr(U^dagger V)| / d, optionally restricted to basis ``subspace``"""
    if u.dims != v.dims:
        raise OperatorError(
            'cannot compare processes on dims {} and {}'.format(u.dims, v.dims))
    a, b = u.data, v.data
    if subspace is not None:
        index = np.asarray(subspace)
        a = a[np.ix_(index, index)]
        b = b[np.ix_(index, index)]
    return float(min(1., abs(np.trace(a.conj().T @ b)) / a.shape[0]))


@dataclass(frozen=True, eq=False)
class JumpOperator:
    op: Operator
    rate: float

    def __post_init__(self):
        if self.rate < 0:
            raise OperatorError(
                'jump rate must be nonnegative, got {!r}'.format(self.rate))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit trace state; positivity is checked by the solvers"""
    data: np.ndarray
    dims: Tuple[int, ...]

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if data.shape != (int(np.prod(dims)),) * 2:
            raise OperatorError(
                'density matrix shape {} does not match dims {}'.format(
                    data.shape, dims))
        if np.max(np.abs(data - data.conj().T)) > HERMITIAN_DENSITY_TOLERANCE:
            raise OperatorError('density matrix is not Hermitian')
        if abs(np.trace(data) - 1) > TRACE_TOLERANCE:
            raise OperatorError(
                'density matrix trace {} differs from 1'.format(
                    np.trace(data).real))
        data.setflags(write=False)
        object.__setattr__(self, 'data', data)
        object.__setattr__(self, 'dims', dims)

    @classmethod
    def from_state(cls, psi: np.ndarray, dims: Sequence[int]) -> 'DensityMatrix':
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), tuple(dims))

    @classmethod
    def basis_state(cls, index: int, dims: Sequence[int]) -> 'DensityMatrix':
        psi = np.zeros(int(np.prod(dims)))
        psi[index] = 1.
        return cls.from_state(psi, dims)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh(self.data)))

    def expectation(self, op: Operator) -> float:
        return float(np.real(np.trace(self.data @ op.data)))

    def population(self, index: int) -> float:
        return float(self.data[index, index].real)


def liouvillian(hamiltonian: Operator, jumps: Sequence[JumpOperator]) -> np.ndarray:
    """Row-major superoperator of -i[H, rho] + sum_k D[L_k] rho"""
    dim = hamiltonian.dim
    eye = np.eye(dim)
    h = hamiltonian.data
    generator = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for jump in jumps:
        if jump.op.dims != hamiltonian.dims:
            raise OperatorError('jump operator dims differ from Hamiltonian dims')
        if not jump.rate:
            continue
        l_op = jump.op.data
        ldl = l_op.conj().T @ l_op
        generator += jump.rate * (
            np.kron(l_op, l_op.conj())
            - 0.5 * np.kron(ldl, eye)
            - 0.5 * np.kron(eye, ldl.T))
    return generator


def _rk4_step_matrix(generator: np.ndarray, step: float) -> np.ndarray:
    # RK4 of a linear ODE is the fourth order Taylor polynomial
    scaled = step * generator
    result = np.eye(len(generator), dtype=complex)
    term = np.eye(len(generator), dtype=complex)
    for k in range(1, 5):
        term = term @ scaled / k
        result = result + term
    return result


def _stable_step(generator: np.ndarray, dt: Optional[float], t: float) -> float:
    norm = np.linalg.norm(generator, 2)
    limit = RK4_STEP_FRACTION / norm if norm > 0 else t
    return limit if dt is None else min(dt, limit)


def _checked_state(vector: np.ndarray,
                   dims: Tuple[int, ...],
                   elapsed: float) -> DensityMatrix:
    dim = int(np.prod(dims))
    data = vector.reshape(dim, dim)
    drift = abs(np.trace(data) - 1)
    if drift > 1e-8 * max(elapsed, 1.):
        raise ConvergenceError(
            'Lindblad trace drift {:.3g} over time {:.6g}'.format(drift, elapsed))
    # symmetrize roundoff, the trace is left untouched
    data = (data + data.conj().T) / 2
    state = DensityMatrix(data, dims)
    minimum = state.min_eigenvalue
    if minimum < -EVOLUTION_POSITIVITY_TOLERANCE:
        raise PositivityError(
            'density matrix eigenvalue {:.3g} after time {:.6g}'.format(
                minimum, elapsed))
    return state


def lindblad_evolve(hamiltonian: Operator,
                    jumps: Sequence[JumpOperator],
                    rho0: DensityMatrix,
                    t: float,
                    dt: Optional[float] = None) -> DensityMatrix:
    """Integrate the Lindblad equation with classical fourth order Runge-Kutta

    Raises
    ------
    ConvergenceError
      If the trace drifts by more than 1e-8 per unit time.
    PositivityError
      If an eigenvalue drops below -1e-6.
    """
    series = lindblad_series(hamiltonian, jumps, rho0, [0., t], dt=dt)
    return series.states[-1]


@dataclass(frozen=True, eq=False)
class LindbladSeries:
    times: np.ndarray
    states: List[DensityMatrix]
    observables: Dict[str, np.ndarray]

    def rows(self) -> Tuple[List[str], List[List[float]]]:
        """CSV columns and rows: t and one column per observable"""
        names = sorted(self.observables)
        columns = ['t'] + names
        rows = [
            [float(time)] + [float(self.observables[name][index]) for name in names]
            for index, time in enumerate(self.times)
        ]
        return columns, rows


def lindblad_series(hamiltonian: Operator,
                    jumps: Sequence[JumpOperator],
                    rho0: DensityMatrix,
                    times: Sequence[float],
                    dt: Optional[float] = None,
                    observables: Optional[Dict[str, Operator]] = None) -> LindbladSeries:
    """Lindblad evolution sampled at increasing ``times`` (from times[0])"""
    if rho0.dims != hamiltonian.dims:
        raise OperatorError('initial state dims differ from Hamiltonian dims')
    observables = observables or {}
    times = np.asarray(times, dtype=float)
    generator = liouvillian(hamiltonian, jumps)
    step_limit = _stable_step(generator, dt, float(times[-1] - times[0]) or 1.)
    vector = rho0.data.reshape(-1).copy()
    states = [rho0]
    for start, stop in zip(times[:-1], times[1:]):
        if stop < start:
            raise OperatorError('sample times must be increasing')
        if stop == start:
            states.append(states[-1])
            continue
        steps = int(ceil((stop - start) / step_limit))
        propagator = _rk4_step_matrix(generator, (stop - start) / steps)
        for _ in range(steps):
            vector = propagator @ vector
        states.append(_checked_state(vector, rho0.dims, stop - times[0]))
    values = {
        name: np.array([state.expectation(op) for state in states])
        for name, op in observables.items()
    }
    return LindbladSeries(times, states, values)


def steady_state(hamiltonian: Operator,
                 jumps: Sequence[JumpOperator]) -> DensityMatrix:
    """Null vector of the Liouvillian, Hermitized and trace normalized

    Raises
    ------
    DegenerateSteadyStateError
      If the second smallest singular value is below 1e-8.
    PositivityError
      If the result has an eigenvalue below -1e-8.
    """
    generator = liouvillian(hamiltonian, jumps)
    _, singular, right = np.linalg.svd(generator)
    if singular[-2] <= STEADY_STATE_GAP:
        raise DegenerateSteadyStateError(
            'Liouvillian null space is degenerate (second smallest singular '
            'value {:.3g})'.format(singular[-2]))
    dim = hamiltonian.dim
    data = right[-1].conj().reshape(dim, dim)
    data = data / np.trace(data)
    data = (data + data.conj().T) / 2
    residual = float(np.max(np.abs(generator @ data.reshape(-1))))
    if residual > 1e-8:
        raise ConvergenceError(
            'steady state residual {:.3g} exceeds 1e-8'.format(residual))
    state = DensityMatrix(data, hamiltonian.dims)
    minimum = state.min_eigenvalue
    if minimum < -POSITIVITY_TOLERANCE:
        raise PositivityError(
            'steady state eigenvalue {:.3g} is negative'.format(minimum))
    return state


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho.data - sigma.data))))
