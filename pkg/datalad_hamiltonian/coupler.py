# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Universal two-qubit coupler: from drive parameters to coupling tables"""

import logging
from dataclasses import dataclass
from math import pi
from typing import (
    List,
    Optional,
    Tuple,
)

import numpy as np

from .device_model import (
    JunctionCouplerSpec,
    QubitSpec,
    junction_hamiltonian_td,
    two_qubit_gaps,
    universal_drive_elements,
    validate_scales,
)
from .drive_synth import (
    DriveSignal,
    UniversalDriveParams,
    commensurate_period,
    snap_frequency,
    universal_signal,
)
from .dynamics import (
    process_fidelity,
    propagate_periodic,
)
from .exceptions import OperatorError
from .operator_core import (
    Operator,
    PauliTable,
    TimeDependentOperator,
    embed,
    matrix_exp,
    sigma_z,
)
from .rwa_engine import (
    FramedHamiltonian,
    RotatingFrame,
    analytic_cab,
    extract_cab,
    floquet_effective,
    high_frequency_expansion,
    time_average,
    to_rotating_frame,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.coupler')

METHODS = ('average', 'floquet', 'hfe')


def _check_two_level(q1: QubitSpec, q2: QubitSpec):
    if q1.levels != 2 or q2.levels != 2:
        raise OperatorError('the universal coupler is modelled with two-level qubits')


def universal_hamiltonian(p: UniversalDriveParams,
                          q1: QubitSpec,
                          q2: QubitSpec,
                          alpha_ej: float,
                          base_freq: Optional[float] = None
                          ) -> Tuple[TimeDependentOperator, DriveSignal]:
    """Lab-frame Hamiltonian of two qubits and the universal flux signal"""
    _check_two_level(q1, q2)
    signal = universal_signal(p, q1.omega, q2.omega, base_freq)
    coupler = JunctionCouplerSpec(alpha_ej, signal)
    return junction_hamiltonian_td(q1, q2, coupler), signal


def universal_frame(q1: QubitSpec, q2: QubitSpec) -> RotatingFrame:
    """Frame rotating with both qubits, exp(i (w1 Z1 + w2 Z2) t / 2)"""
    dims = (2, 2)
    return RotatingFrame((
        (0.5 * embed(sigma_z(), 0, dims), q1.omega),
        (0.5 * embed(sigma_z(), 1, dims), q2.omega),
    ))


def universal_period(signal: DriveSignal, q1: QubitSpec, q2: QubitSpec) -> float:
    """Common period of the drive tones and the frame rotation"""
    ratios = [tone.ratio for tone in signal.tones]
    ratios += [
        snap_frequency(q.omega, signal.base_freq) for q in (q1, q2)
    ]
    return commensurate_period(signal.base_freq, ratios)


@dataclass(frozen=True, eq=False)
class CouplerModel:
    """Rotating-frame Hamiltonian of a driven coupler and its period"""
    framed: FramedHamiltonian
    period: float
    signal: DriveSignal
    warnings: Tuple[str, ...]


def coupler_model(p: UniversalDriveParams,
                  q1: QubitSpec,
                  q2: QubitSpec,
                  alpha_ej: float,
                  base_freq: Optional[float] = None) -> CouplerModel:
    hamiltonian, signal = universal_hamiltonian(p, q1, q2, alpha_ej, base_freq)
    warnings = validate_scales(
        universal_drive_elements(p, alpha_ej),
        two_qubit_gaps(q1.omega, q2.omega))
    return CouplerModel(
        framed=to_rotating_frame(hamiltonian, universal_frame(q1, q2)),
        period=universal_period(signal, q1, q2),
        signal=signal,
        warnings=tuple(warnings))


def numerical_cab(p: UniversalDriveParams,
                  q1: QubitSpec,
                  q2: QubitSpec,
                  alpha_ej: float,
                  method: str = 'average',
                  **kwargs) -> Tuple[PauliTable, Operator]:
    """Coupling table extracted from the numerically averaged Hamiltonian

    Parameters
    ----------
    method : {'average', 'floquet', 'hfe'}
      Time average, Floquet logarithm or second order high frequency
      expansion of the rotating-frame Hamiltonian.
    **kwargs
      Passed to the respective engine.

    Returns
    -------
    PauliTable, Operator
      The table and the effective Hamiltonian it was extracted from.
    """
    model = coupler_model(p, q1, q2, alpha_ej)
    if method == 'average':
        effective = time_average(model.framed, model.period, **kwargs)
    elif method == 'floquet':
        effective = floquet_effective(model.framed, model.period, **kwargs)
    elif method == 'hfe':
        effective = high_frequency_expansion(
            model.framed, model.period, **kwargs).h_eff
    else:
        raise OperatorError(
            'unknown extraction method {!r}, use one of {}'.format(method, METHODS))
    return extract_cab(effective), effective


def target_coefficient(table: PauliTable) -> Tuple[str, float]:
    """Largest two-body coupling of a table with its label"""
    block = table.two_body()
    a, b = np.unravel_index(np.argmax(np.abs(block)), block.shape)
    label = 'xyz'[a] + 'xyz'[b]
    return label, float(block[a, b])


@dataclass(frozen=True)
class FidelityReport:
    fidelity: float
    duration: float
    target_label: str
    target_coefficient: float
    order: int
    warnings: Tuple[str, ...]

    def to_dict(self):
        return dict(
            fidelity=self.fidelity,
            duration=self.duration,
            target_label=self.target_label,
            target_coefficient=self.target_coefficient,
            order=self.order,
        )


def effective_dynamics_fidelity(p: UniversalDriveParams,
                                q1: QubitSpec,
                                q2: QubitSpec,
                                alpha_ej: float,
                                duration: Optional[float] = None,
                                order: int = 1,
                                dt: Optional[float] = None) -> FidelityReport:
    """Compare full driven dynamics with the effective Hamiltonian

    The full propagator is computed in the qubit rotating frame, where
    the frame transformation is exact. By default the duration is
    ``pi / (2 |c|)`` for the largest two-body coefficient ``c`` of the
    closed-form table.

    Parameters
    ----------
    order : {1, 2}
      1 compares against exp(-i H_avg t); 2 uses the second order high
      frequency expansion including the micromotion kicks.
    """
    model = coupler_model(p, q1, q2, alpha_ej)
    label, coefficient = target_coefficient(
        analytic_cab(p, q1.phase_coeffs, q2.phase_coeffs, alpha_ej))
    if duration is None:
        if coefficient == 0:
            raise OperatorError('no two-body coupling to time the comparison on')
        duration = pi / (2 * abs(coefficient))
    full = propagate_periodic(
        model.framed, model.period, duration, dt=dt, method='magnus4')
    if order == 1:
        effective = matrix_exp(
            time_average(model.framed, model.period), -1j * duration)
    else:
        effective = high_frequency_expansion(
            model.framed, model.period, order=2).propagator(duration)
    fidelity = process_fidelity(full, effective)
    lgr.info(
        'effective dynamics fidelity %.6f over t=%.6g (target %s = %.4g, '
        'order %i)', fidelity, duration, label, coefficient, order)
    return FidelityReport(
        fidelity=fidelity,
        duration=duration,
        target_label=label,
        target_coefficient=coefficient,
        order=order,
        warnings=model.warnings)


def channel_params(channel: str, amplitude: float, **phases) -> UniversalDriveParams:
    """Parameters with a single active drive channel

    ``channel`` is one of ``f_zz``, ``f_xy0``, ``f_xy2``, ``f_xz``, ``f_zx``.
    """
    values = dict(phases)
    values[channel] = amplitude
    return UniversalDriveParams(**values)


def channel_names() -> List[str]:
    return ['f_zz', 'f_xy0', 'f_xy2', 'f_xz', 'f_zx']
