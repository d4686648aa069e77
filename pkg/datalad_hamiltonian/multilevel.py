# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Cancelling the two-photon nonlinearity of a pair of driven transmons

Each site is a truncated anharmonic oscillator with levels
``0, omega, 2 omega - alpha, 3 omega - beta``. A flux tone per
hopping process (|01>-|10> at delta, |11>-|20> at delta + alpha1,
|02>-|11> at delta - alpha2 and the k3 pair at delta +- (alpha1 - alpha2))
makes every hop below three photons resonant in the frame that also
absorbs the two-photon shifts. What remains is a linear hopping model
with three-body terms ``-beta_i |3><3|``.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import (
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from .device_model import (
    JunctionCouplerSpec,
    harmonic_phase_operators,
    junction_pair_hamiltonian,
    level_energies,
    validate_scales,
)
from .drive_synth import (
    DriveSignal,
    commensurate_period,
    multilevel_signal,
    snap_frequency,
)
from .dynamics import (
    process_fidelity,
    propagate_periodic,
)
from .exceptions import (
    OperatorError,
    UnphysicalParameterError,
)
from .operator_core import (
    Operator,
    StaticHamiltonian,
    TimeDependentOperator,
    boson_ops,
    embed,
    matrix_exp,
    projector,
)
from .rwa_engine import (
    FramedHamiltonian,
    RotatingFrame,
    floquet_effective,
    high_frequency_expansion,
    time_average,
    to_rotating_frame,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.multilevel')

METHODS = ('average', 'floquet', 'hfe')


@dataclass(frozen=True)
class MultilevelSpec:
    """Two transmons with ``levels`` states each and the flux drive

    ``beta1``, ``beta2`` are the three-photon nonlinearities, the level
    |3> of site i sits at ``3 omega_i - beta_i``.
    ``detuning1`` and ``detuning2`` move the k1 and k2 tones off their
    resonances.
    """
    omega1: float
    omega2: float
    alpha1: float
    alpha2: float
    alpha_ej: float
    beta1: float = 0.
    beta2: float = 0.
    levels: int = 4
    k0: float = 0.
    k1: float = 0.
    k2: float = 0.
    k3: float = 0.
    s: float = 1.
    c0: float = 0.
    c: float = 0.
    detuning1: float = 0.
    detuning2: float = 0.

    def __post_init__(self):
        if self.levels not in (3, 4):
            raise UnphysicalParameterError(
                'the multilevel model needs 3 or 4 levels, got {}'.format(
                    self.levels))
        if self.delta == 0:
            raise UnphysicalParameterError('the two sites must be detuned')
        if self.alpha_ej <= 0:
            raise UnphysicalParameterError(
                'coupler junction energy must be positive, got {!r}'.format(
                    self.alpha_ej))

    @property
    def delta(self) -> float:
        return self.omega2 - self.omega1

    @property
    def alpha12(self) -> float:
        return self.alpha1 - self.alpha2

    @property
    def frame_alpha1(self) -> float:
        return self.alpha1 + self.detuning1

    @property
    def frame_alpha2(self) -> float:
        return self.alpha2 - self.detuning2

    def index(self, n1: int, n2: int) -> int:
        return n1 * self.levels + n2

    def label(self, index: int) -> str:
        return '{}{}'.format(*divmod(index, self.levels))


def multilevel_signal_for(spec: MultilevelSpec,
                          base_freq: Optional[float] = None) -> DriveSignal:
    return multilevel_signal(
        spec.k0, spec.k1, spec.k2, spec.k3,
        spec.delta, spec.alpha1, spec.alpha2,
        base_freq=base_freq,
        detuning1=spec.detuning1,
        detuning2=spec.detuning2)


def multilevel_hamiltonian(spec: MultilevelSpec,
                           base_freq: Optional[float] = None
                           ) -> Tuple[TimeDependentOperator, DriveSignal]:
    """Lab-frame Hamiltonian of the driven pair and its flux signal"""
    signal = multilevel_signal_for(spec, base_freq)
    phase = harmonic_phase_operators(spec.levels, spec.s, spec.c0, spec.c)
    diagonals = [
        Operator(
            np.diag(level_energies(omega, alpha, beta, spec.levels)),
            (spec.levels,), True)
        for omega, alpha, beta in (
            (spec.omega1, spec.alpha1, spec.beta1),
            (spec.omega2, spec.alpha2, spec.beta2))
    ]
    hamiltonian = junction_pair_hamiltonian(
        diagonals[0], phase, diagonals[1], phase,
        JunctionCouplerSpec(spec.alpha_ej, signal))
    return hamiltonian, signal


def multilevel_frame(spec: MultilevelSpec, include_common: bool = False) -> RotatingFrame:
    """Frame absorbing the detuning and both two-photon shifts

    Generators are n2 at delta and |2><2| of site i at -alpha_i (shifted
    by the tone detunings). With ``include_common`` the frame also rotates the
    total number at omega1, which removes every fast phase.
    """
    dims = (spec.levels, spec.levels)
    _, _, number = boson_ops(spec.levels)
    doubly = projector(2, spec.levels)
    generators = [
        (embed(number, 1, dims), spec.delta),
        (embed(doubly, 0, dims), -spec.frame_alpha1),
        (embed(doubly, 1, dims), -spec.frame_alpha2),
    ]
    if include_common:
        total = embed(number, 0, dims) + embed(number, 1, dims)
        generators.insert(0, (total.as_hermitian(), spec.omega1))
    return RotatingFrame(tuple(generators))


def total_number(spec: MultilevelSpec) -> Operator:
    dims = (spec.levels, spec.levels)
    _, _, number = boson_ops(spec.levels)
    return (embed(number, 0, dims) + embed(number, 1, dims)).as_hermitian()


def transformed_diagonal(spec: MultilevelSpec) -> np.ndarray:
    """Diagonal of the undriven Hamiltonian in the multilevel frame"""
    hamiltonian, _ = multilevel_hamiltonian(spec)
    framed = to_rotating_frame(
        StaticHamiltonian(hamiltonian.static), multilevel_frame(spec))
    return np.real(np.diag(framed.sample(np.array([0.]))[0]))


def target_diagonal(spec: MultilevelSpec) -> np.ndarray:
    """omega1 (n1 + n2) - beta1 |3><3|_1 - beta2 |3><3|_2"""
    dims = (spec.levels, spec.levels)
    target = spec.omega1 * total_number(spec)
    if spec.levels > 3:
        triples = projector(3, spec.levels)
        target = (target
                  - spec.beta1 * embed(triples, 0, dims)
                  - spec.beta2 * embed(triples, 1, dims))
    return np.real(np.diag(target.data))


def tone_gaps(spec: MultilevelSpec) -> dict:
    """Smallest separations between drive tones and from zero frequency"""
    frequencies = {
        'delta': abs(spec.delta),
        'delta+alpha1': abs(spec.delta + spec.alpha1),
        'delta-alpha2': abs(spec.delta - spec.alpha2),
        'delta+alpha12': abs(spec.delta + spec.alpha12),
        'delta-alpha12': abs(spec.delta - spec.alpha12),
    }
    gaps = dict(frequencies)
    for (name_a, a), (name_b, b) in combinations(sorted(frequencies.items()), 2):
        gaps['|{} - {}|'.format(name_a, name_b)] = abs(a - b)
    return gaps


@dataclass(frozen=True, eq=False)
class MultilevelModel:
    framed: FramedHamiltonian
    period: float
    signal: DriveSignal
    warnings: Tuple[str, ...]


def multilevel_model(spec: MultilevelSpec) -> MultilevelModel:
    """Driven pair in the fully rotating frame with its common period"""
    hamiltonian, signal = multilevel_hamiltonian(spec)
    frame = multilevel_frame(spec, include_common=True)
    base_freq = signal.base_freq
    ratios = [tone.ratio for tone in signal.tones]
    ratios += [
        snap_frequency(abs(omega), base_freq)
        for _, omega in frame.generators if omega
    ]
    period = commensurate_period(base_freq, ratios)
    if period is None:
        raise UnphysicalParameterError('the multilevel model has no time dependence')
    warnings = validate_scales(
        {'alpha_ej*s^2': spec.alpha_ej * spec.s ** 2}, tone_gaps(spec))
    return MultilevelModel(
        framed=to_rotating_frame(hamiltonian, frame),
        period=period,
        signal=signal,
        warnings=tuple(warnings))


def effective_multilevel_hamiltonian(spec: MultilevelSpec,
                                     method: str = 'average',
                                     model: Optional[MultilevelModel] = None,
                                     **kwargs) -> Operator:
    """Effective Hamiltonian of the driven pair in the multilevel frame

    The drive is averaged in the fully rotating frame; the common
    rotation ``omega1 (n1 + n2)`` is added back afterwards.

    Parameters
    ----------
    method : {'average', 'floquet', 'hfe'}
      Time average, Floquet logarithm or second order high frequency
      expansion.
    model : MultilevelModel, optional
      Reuse a model built by ``multilevel_model``.
    **kwargs
      Passed to the averaging engine.
    """
    model = multilevel_model(spec) if model is None else model
    if method == 'average':
        effective = time_average(model.framed, model.period, **kwargs)
    elif method == 'floquet':
        effective = floquet_effective(model.framed, model.period, **kwargs)
    elif method == 'hfe':
        effective = high_frequency_expansion(
            model.framed, model.period, **kwargs).h_eff
    else:
        raise OperatorError(
            'unknown averaging method {!r}, use one of {}'.format(method, METHODS))
    lgr.debug(
        'multilevel effective Hamiltonian (%s) over period %.6g', method, model.period)
    return (effective + spec.omega1 * total_number(spec)).as_hermitian()


class NonlinearitySuppression(NamedTuple):
    residual_alpha1: float
    residual_alpha2: float
    ratio_to_bare: float


def residual_alphas(h_eff: Operator, levels: int) -> Tuple[float, float]:
    """2 E(1) - E(2) per site, from the diagonal of ``h_eff``"""
    diagonal = np.real(np.diag(h_eff.data))

    def energy(n1, n2):
        return diagonal[n1 * levels + n2] - diagonal[0]

    return (2 * energy(1, 0) - energy(2, 0),
            2 * energy(0, 1) - energy(0, 2))


def nonlinearity_suppression(spec: MultilevelSpec,
                             h_eff: Optional[Operator] = None,
                             **kwargs) -> NonlinearitySuppression:
    """Residual two-photon nonlinearities and their ratio to the bare values"""
    if h_eff is None:
        h_eff = effective_multilevel_hamiltonian(spec, **kwargs)
    residual1, residual2 = residual_alphas(h_eff, spec.levels)
    ratios = []
    for residual, bare in ((residual1, spec.alpha1), (residual2, spec.alpha2)):
        if bare:
            ratios.append(abs(residual) / abs(bare))
        else:
            ratios.append(0. if residual == 0 else float('inf'))
    return NonlinearitySuppression(residual1, residual2, max(ratios))


def hopping_ratio(h_eff: Operator, levels: int) -> float:
    """|<11|H|02>| / |<01|H|10>|, sqrt(2) for a linear hopping model"""
    data = h_eff.data
    single = abs(data[0 * levels + 1, 1 * levels + 0])
    if single == 0:
        raise UnphysicalParameterError('no single-excitation hopping in H_eff')
    return float(abs(data[1 * levels + 1, 0 * levels + 2]) / single)


def number_conservation_error(h_eff: Operator, spec: MultilevelSpec) -> float:
    number = total_number(spec).data
    return float(np.max(np.abs(h_eff.data @ number - number @ h_eff.data)))


def low_excitation_subspace(levels: int, max_excitations: int = 2) -> List[int]:
    return [
        n1 * levels + n2
        for n1 in range(levels) for n2 in range(levels)
        if n1 + n2 <= max_excitations
    ]


@dataclass(frozen=True)
class MultilevelFidelity:
    fidelity: float
    duration: float
    periods: int
    subspace: Tuple[str, ...]

    def to_dict(self):
        return dict(
            fidelity=self.fidelity,
            duration=self.duration,
            periods=self.periods,
            subspace=list(self.subspace),
        )


def multilevel_fidelity(spec: MultilevelSpec,
                        periods: int = 10,
                        subspace: Optional[Sequence[int]] = None,
                        dt: Optional[float] = None) -> MultilevelFidelity:
    """Full driven dynamics against exp(-i H_eff t) on few-excitation states

    Both propagators are taken in the fully rotating frame, over an
    integer number of drive periods.
    """
    model = multilevel_model(spec)
    if subspace is None:
        subspace = low_excitation_subspace(spec.levels)
    duration = periods * model.period
    full = propagate_periodic(
        model.framed, model.period, duration, dt=dt, method='magnus4')
    averaged = time_average(model.framed, model.period)
    effective = matrix_exp(averaged, -1j * duration)
    fidelity = process_fidelity(full, effective, subspace)
    lgr.info(
        'multilevel fidelity %.6f over %i periods (t = %.6g)',
        fidelity, periods, duration)
    return MultilevelFidelity(
        fidelity=fidelity,
        duration=duration,
        periods=periods,
        subspace=tuple(spec.label(index) for index in subspace))


def matrix_element_rows(h_eff: Operator,
                        levels: int,
                        threshold: float = 0.):
    """(bra, ket, re, im) rows of the upper triangle of ``h_eff``"""
    columns = ['bra', 'ket', 're', 'im']
    rows = []
    dim = h_eff.dim
    for bra in range(dim):
        for ket in range(bra, dim):
            value = h_eff.data[bra, ket]
            if abs(value) > threshold:
                rows.append([
                    '{}{}'.format(*divmod(bra, levels)),
                    '{}{}'.format(*divmod(ket, levels)),
                    float(value.real),
                    float(value.imag),
                ])
    return columns, rows
