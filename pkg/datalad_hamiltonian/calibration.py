# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Drive parameters for a target two-qubit coupling table

A closed-form seed inverts the leading order coupling table; a damped
Gauss-Newton refinement then matches the numerically averaged
Hamiltonian. The (x, y) x (x, y) block is spanned by the hopping
channel ``u = f_xy0 exp(i (chi1 - chi2))`` and the pump channel
``v = f_xy2 exp(i (chi1 + chi2))``; the mixed blocks by
``f_xz^2 exp(i psi1)`` and ``f_zx^2 exp(i psi2)``.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import (
    Callable,
    Dict,
    List,
    Optional,
    Tuple,
)

import numpy as np
from datalad.log import log_progress

from .coupler import numerical_cab
from .device_model import (
    PhaseCoeffs,
    QubitSpec,
)
from .drive_synth import (
    MAX_AMPLITUDE,
    UniversalDriveParams,
)
from .exceptions import (
    InfeasibleTargetError,
    SignalError,
)
from .operator_core import PauliTable


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.calibration')

Oracle = Callable[[UniversalDriveParams], PauliTable]

ARMIJO = 1e-4
MIN_DAMPING = 1. / 64


def _checked_amplitude(name: str, value: float) -> float:
    if value > MAX_AMPLITUDE * (1 + 1e-12):
        raise InfeasibleTargetError(
            'target needs {} = {:.4g} above the amplitude limit {}'.format(
                name, value, MAX_AMPLITUDE))
    return min(value, MAX_AMPLITUDE)


def _ratio(name: str, value: complex, divisor: float) -> complex:
    if divisor == 0:
        if value != 0:
            raise InfeasibleTargetError(
                'target has a {} component but the device gives it no '
                'matrix element'.format(name))
        return 0j
    return value / divisor


def synthesize_seed(target: PauliTable,
                    q1: PhaseCoeffs,
                    q2: PhaseCoeffs,
                    alpha_ej: float) -> UniversalDriveParams:
    """Invert the closed-form coupling table on its two-body entries

    Raises
    ------
    InfeasibleTargetError
      If an amplitude above the drive limit is needed, or a component the
      device cannot produce is requested.
    """
    hopping_scale = -alpha_ej * q1.s * q2.s / 2
    xx, xy, yx, yy = target['xx'], target['xy'], target['yx'], target['yy']
    u = _ratio('hopping', complex(xx + yy, yx - xy), 2 * hopping_scale)
    v = _ratio('pump', complex(xx - yy, yx + xy), 2 * hopping_scale)
    w1 = _ratio(
        'xz', complex(target['xz'], target['yz']), alpha_ej * q1.s * q2.c)
    w2 = _ratio(
        'zx', -complex(target['zx'], target['zy']), alpha_ej * q2.s * q1.c)
    f_zz = _ratio('zz', target['zz'], -alpha_ej * q1.c * q2.c).real
    chi_minus = float(np.angle(u))
    chi_plus = float(np.angle(v))
    if abs(f_zz) > MAX_AMPLITUDE * (1 + 1e-12):
        raise InfeasibleTargetError(
            'target needs f_zz = {:.4g} beyond +-{}'.format(f_zz, MAX_AMPLITUDE))
    return UniversalDriveParams(
        f_zz=float(np.clip(f_zz, -MAX_AMPLITUDE, MAX_AMPLITUDE)),
        f_xy0=_checked_amplitude('f_xy0', abs(u)),
        f_xy2=_checked_amplitude('f_xy2', abs(v)),
        f_xz=_checked_amplitude('f_xz', float(np.sqrt(abs(w1)))),
        f_zx=_checked_amplitude('f_zx', float(np.sqrt(abs(w2)))),
        chi1=(chi_plus + chi_minus) / 2,
        chi2=(chi_plus - chi_minus) / 2,
        psi1=float(np.angle(w1)),
        psi2=float(np.angle(w2)),
    )


def params_to_vector(p: UniversalDriveParams) -> np.ndarray:
    """Smooth coordinates of the nine knobs

    ``[f_zz, Re u, Im u, Re v, Im v, Re z1, Im z1, Re z2, Im z2]`` with
    ``z1 = f_xz exp(i psi1 / 2)`` and ``z2 = f_zx exp(i psi2 / 2)``.
    """
    u = p.f_xy0 * np.exp(1j * (p.chi1 - p.chi2))
    v = p.f_xy2 * np.exp(1j * (p.chi1 + p.chi2))
    z1 = p.f_xz * np.exp(0.5j * p.psi1)
    z2 = p.f_zx * np.exp(0.5j * p.psi2)
    return np.array([
        p.f_zz, u.real, u.imag, v.real, v.imag, z1.real, z1.imag, z2.real, z2.imag])


def vector_to_params(x: np.ndarray) -> UniversalDriveParams:
    """Inverse of ``params_to_vector``

    Raises
    ------
    SignalError
      If the vector leaves the amplitude limits.
    """
    u = complex(x[1], x[2])
    v = complex(x[3], x[4])
    z1 = complex(x[5], x[6])
    z2 = complex(x[7], x[8])
    chi_minus = float(np.angle(u))
    chi_plus = float(np.angle(v))
    return UniversalDriveParams(
        f_zz=float(x[0]),
        f_xy0=abs(u),
        f_xy2=abs(v),
        f_xz=abs(z1),
        f_zx=abs(z2),
        chi1=(chi_plus + chi_minus) / 2,
        chi2=(chi_plus - chi_minus) / 2,
        psi1=2 * float(np.angle(z1)),
        psi2=2 * float(np.angle(z2)),
    )


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    """Refined drive parameters with the oracle's verdict

    ``residual`` is the max-norm two-body coefficient error of the
    oracle table; ``history`` holds the residual of every accepted
    iterate, starting with the seed.
    """
    params: UniversalDriveParams
    achieved: PauliTable
    residual: float
    iterations: int
    converged: bool
    seed: UniversalDriveParams
    target: PauliTable
    history: Tuple[float, ...] = field(default=())

    @property
    def single_qubit(self) -> Dict[str, float]:
        """Single-qubit terms produced alongside the target"""
        return self.achieved.single_qubit()

    def to_record(self) -> Dict:
        return dict(
            params=self.params.to_dict(),
            seed=self.seed.to_dict(),
            target=self.target.to_dict(),
            achieved=self.achieved.to_dict(),
            single_qubit=self.single_qubit,
            residual=self.residual,
            iterations=self.iterations,
            converged=self.converged,
            history=list(self.history),
        )


def _residual_vector(oracle: Oracle,
                     target: PauliTable,
                     alpha_ej: float,
                     x: np.ndarray) -> Tuple[np.ndarray, PauliTable]:
    achieved = oracle(vector_to_params(x))
    difference = achieved.two_body() - target.two_body()
    return difference.ravel() / alpha_ej, achieved


def _jacobian(oracle: Oracle,
              target: PauliTable,
              alpha_ej: float,
              x: np.ndarray,
              step: float,
              jobs: int) -> np.ndarray:
    """Central differences, one column per coordinate"""
    def column(index):
        shift = np.zeros_like(x)
        shift[index] = step
        forward, _ = _residual_vector(oracle, target, alpha_ej, x + shift)
        backward, _ = _residual_vector(oracle, target, alpha_ej, x - shift)
        return (forward - backward) / (2 * step)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            columns = list(executor.map(column, range(len(x))))
    else:
        columns = [column(index) for index in range(len(x))]
    return np.array(columns).T


def refine(seed: UniversalDriveParams,
           target: PauliTable,
           oracle: Oracle,
           alpha_ej: float,
           max_iterations: int = 50,
           tolerance: float = 1e-4,
           step: float = 1e-4,
           jobs: int = 1) -> CalibrationResult:
    """Damped Gauss-Newton on the nine drive knobs against ``oracle``

    A step is accepted when it satisfies the Armijo condition on the
    squared residual and does not increase the max-norm residual; the
    damping is halved down to 1/64 otherwise. Iteration stops once the
    max-norm residual is below ``tolerance * alpha_ej``. Without
    convergence the best iterate is returned with ``converged=False``.

    Parameters
    ----------
    oracle : callable
      Maps UniversalDriveParams to the achieved PauliTable.
    jobs : int
      Threads evaluating Jacobian columns.
    """
    x = params_to_vector(seed)
    residual, achieved = _residual_vector(oracle, target, alpha_ej, x)
    history = [float(np.max(np.abs(residual))) * alpha_ej]
    iterations = 0
    pid = 'hamiltonian_calibration_{}'.format(id(target))
    log_progress(
        lgr.info, pid,
        'Refining drive parameters', label='Calibration',
        unit=' iterations', total=max_iterations)
    try:
        while history[-1] >= tolerance * alpha_ej and iterations < max_iterations:
            jacobian = _jacobian(oracle, target, alpha_ej, x, step, jobs)
            direction = np.linalg.lstsq(jacobian, -residual, rcond=None)[0]
            objective = residual @ residual
            slope = 2 * residual @ (jacobian @ direction)
            damping = 1.
            accepted = None
            while damping >= MIN_DAMPING:
                candidate = x + damping * direction
                try:
                    trial, trial_table = _residual_vector(
                        oracle, target, alpha_ej, candidate)
                except SignalError:
                    damping /= 2
                    continue
                armijo = trial @ trial <= objective + ARMIJO * damping * slope
                if armijo and np.max(np.abs(trial)) <= np.max(np.abs(residual)):
                    accepted = candidate, trial, trial_table
                    break
                damping /= 2
            iterations += 1
            if accepted is None:
                lgr.debug('no acceptable step at iteration %i', iterations)
                break
            x, residual, achieved = accepted
            history.append(float(np.max(np.abs(residual))) * alpha_ej)
            log_progress(
                lgr.info, pid,
                'iteration %i, residual %.3g', iterations, history[-1],
                update=1, increment=True)
    finally:
        log_progress(lgr.info, pid, 'Finished calibration')
    converged = history[-1] < tolerance * alpha_ej
    if not converged:
        lgr.warning(
            'calibration stopped after %i iterations at residual %.3g',
            iterations, history[-1])
    return CalibrationResult(
        params=vector_to_params(x),
        achieved=achieved,
        residual=history[-1],
        iterations=iterations,
        converged=converged,
        seed=seed,
        target=target,
        history=tuple(history))


def numerical_oracle(q1: QubitSpec,
                     q2: QubitSpec,
                     alpha_ej: float,
                     method: str = 'average') -> Oracle:
    """Coupling table of the averaged rotating-frame Hamiltonian"""
    def oracle(p: UniversalDriveParams) -> PauliTable:
        return numerical_cab(p, q1, q2, alpha_ej, method=method)[0]
    return oracle


def calibrate(target: PauliTable,
              q1: QubitSpec,
              q2: QubitSpec,
              alpha_ej: float,
              oracle: Optional[Oracle] = None,
              **kwargs) -> CalibrationResult:
    """Seed and refine drive parameters for ``target``"""
    seed = synthesize_seed(target, q1.phase_coeffs, q2.phase_coeffs, alpha_ej)
    if oracle is None:
        oracle = numerical_oracle(q1, q2, alpha_ej)
    return refine(seed, target, oracle, alpha_ej, **kwargs)


def random_target(rng: np.random.Generator,
                  alpha_ej: float,
                  low: float = 0.02,
                  high: float = 0.05) -> PauliTable:
    """Two-body target with magnitudes in [low, high] * alpha_ej, random signs"""
    magnitudes = rng.uniform(low, high, size=(3, 3)) * alpha_ej
    signs = rng.choice([-1., 1.], size=(3, 3))
    return PauliTable.from_two_body(magnitudes * signs)


def target_from_dict(values: Dict[str, float]) -> PauliTable:
    """Two-body target from labels such as ``{'xx': 1e-3, 'zz': -2e-4}``"""
    block = np.zeros((3, 3))
    for label, value in values.items():
        if len(label) != 2 or any(axis not in 'xyz' for axis in label):
            raise InfeasibleTargetError(
                'target labels are two of x, y, z, got {!r}'.format(label))
        block['xyz'.index(label[0]), 'xyz'.index(label[1])] = float(value)
    return PauliTable.from_two_body(block)


def random_targets(count: int,
                   alpha_ej: float,
                   seed: int = 0,
                   **kwargs) -> List[PauliTable]:
    rng = np.random.default_rng(seed)
    return [random_target(rng, alpha_ej, **kwargs) for _ in range(count)]
