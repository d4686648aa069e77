# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""
Check the numerical invariants of the Hamiltonian engineering engines
"""
import logging
import time
from dataclasses import dataclass
from math import sqrt
from typing import (
    Callable,
    Dict,
    List,
    Optional,
)

import numpy as np
from datalad.dochelpers import exc_str
from datalad.distribution.dataset import datasetmethod
from datalad.interface.base import (
    Interface,
    build_doc,
    eval_results,
)
from datalad.support.constraints import (
    EnsureNone,
    EnsureStr,
)
from datalad.support.param import Parameter

from .cooling import (
    CoolingSpec,
    cooling_row,
    pair_hamiltonian,
    pair_jumps,
    temperature_for_occupation,
)
from .coupler import (
    coupler_model,
    numerical_cab,
)
from .device_model import (
    CapacitiveCouplerSpec,
    PhaseCoeffs,
    QubitSpec,
    ResonatorSpec,
)
from .drive_synth import UniversalDriveParams
from .dynamics import (
    DensityMatrix,
    lindblad_series,
    propagate,
    steady_state,
)
from .exceptions import HamiltonianError
from .multilevel import (
    MultilevelSpec,
    multilevel_model,
)
from .operator_core import hermiticity_error
from .readout import (
    dressed_matrix_elements,
    exact_matrix_elements,
)
from .rwa_engine import (
    analytic_cab,
    to_rotating_frame,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.selfcheck')

SEED = 20210611


@dataclass(frozen=True)
class Invariant:
    name: str
    tolerance: float
    measure: Callable[[np.random.Generator], float]
    description: str


def _coupler():
    q1 = QubitSpec(1.0, phase_coeffs=PhaseCoeffs(s=1., c0=0., c=1.))
    q2 = QubitSpec(0.75, phase_coeffs=PhaseCoeffs(s=1., c0=0., c=1.))
    return UniversalDriveParams(f_zz=0.05, f_xy0=0.05), q1, q2, 0.02


def _multilevel():
    return MultilevelSpec(
        omega1=1., omega2=1.5, alpha1=0.2, alpha2=0.25, alpha_ej=0.025,
        k0=0.1, k1=0.1, k2=0.1)


def _cooling():
    return CoolingSpec(
        omega=1., omega_s=5., g=0.01, gamma_s=0.02, kappa=1e-4,
        temperature=temperature_for_occupation(1., 0.05))


def unitarity(rng: np.random.Generator) -> float:
    """max |U^dagger U - 1| of a driven coupler propagator"""
    p, q1, q2, alpha_ej = _coupler()
    model = coupler_model(p, q1, q2, alpha_ej)
    t = float(rng.uniform(0.5, 1.)) * model.period
    u = propagate(model.framed, 0., t, method='magnus4').data
    return float(np.max(np.abs(u.conj().T @ u - np.eye(len(u)))))


def hermiticity(rng: np.random.Generator) -> float:
    """Rotating-frame Hamiltonians sampled at random times"""
    p, q1, q2, alpha_ej = _coupler()
    coupler = coupler_model(p, q1, q2, alpha_ej)
    multilevel = multilevel_model(_multilevel())
    deviation = 0.
    for model in (coupler, multilevel):
        times = rng.uniform(0., model.period, size=16)
        deviation = max(
            deviation,
            max(hermiticity_error(sample) for sample in model.framed.sample(times)))
    return deviation


def trace_drift(rng: np.random.Generator) -> float:
    """Trace drift per unit time of a Lindblad evolution"""
    spec = _cooling()
    hamiltonian = pair_hamiltonian(spec)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    duration = 50.
    series = lindblad_series(
        hamiltonian, pair_jumps(spec), DensityMatrix.from_state(psi, (2, 2)),
        [0., duration])
    return abs(np.trace(series.states[-1].data) - 1) / duration


def positivity(rng: np.random.Generator) -> float:
    """Most negative eigenvalue of a steady state, as a positive number"""
    spec = _cooling()
    state = steady_state(pair_hamiltonian(spec), pair_jumps(spec))
    return max(0., -state.min_eigenvalue)


def frame_round_trip(rng: np.random.Generator) -> float:
    """Entering and leaving a rotating frame restores H(t)"""
    p, q1, q2, alpha_ej = _coupler()
    model = coupler_model(p, q1, q2, alpha_ej)
    frame = model.framed.frame
    restored = to_rotating_frame(model.framed, frame.inverse())
    times = rng.uniform(0., 100., size=16)
    return float(np.max(np.abs(
        restored.sample(times) - model.framed.hamiltonian.sample(times))))


def coupler_oracle(rng: np.random.Generator) -> float:
    """Relative deviation of the averaged zz coupling from closed form"""
    _, q1, q2, alpha_ej = _coupler()
    p = UniversalDriveParams(f_zz=0.05)
    analytic = analytic_cab(p, q1.phase_coeffs, q2.phase_coeffs, alpha_ej)
    numeric, _ = numerical_cab(p, q1, q2, alpha_ej)
    expected = analytic['zz']
    return abs(numeric['zz'] - expected) / abs(expected)


def readout_oracle(rng: np.random.Generator) -> float:
    """Dressed matrix elements against exact diagonalization at g/delta=0.1"""
    pc = PhaseCoeffs(c0=0.3, c=-0.1, s1=1., s2=sqrt(2), c2=0.05, q2=sqrt(2))
    qubit = QubitSpec(1., levels=3, alpha2=0.2, phase_coeffs=pc)
    resonator = ResonatorSpec(1.5, dim=10)
    coupling = CapacitiveCouplerSpec(0.05)
    perturbative = dressed_matrix_elements(
        pc, coupling.g, resonator.omega_r - qubit.omega, qubit.alpha2, 1)
    exact = exact_matrix_elements(qubit, resonator, coupling, 1)
    return max(
        abs(a - b) / abs(b)
        for a, b in zip(perturbative.as_tuple(), exact.as_tuple()))


def cooling_oracle(rng: np.random.Generator) -> float:
    """Closed-form primary excitation against the Lindblad steady state"""
    row = cooling_row(_cooling())
    return abs(row['rho_plus_analytic'] - row['rho_plus_lindblad']) \
        / row['rho_plus_lindblad']


INVARIANTS = (
    Invariant('unitarity', 1e-8, unitarity, 'propagator unitarity'),
    Invariant('hermiticity', 1e-12, hermiticity, 'rotating-frame Hermiticity'),
    Invariant('trace-drift', 1e-8, trace_drift, 'Lindblad trace drift per unit time'),
    Invariant('positivity', 1e-8, positivity, 'steady-state positivity'),
    Invariant('frame-round-trip', 1e-10, frame_round_trip, 'frame round trip'),
    Invariant('coupler-oracle', 0.03, coupler_oracle, 'averaged zz coupling vs closed form'),
    Invariant('readout-oracle', 0.03, readout_oracle, 'dressed elements vs exact'),
    Invariant('cooling-oracle', 0.15, cooling_oracle, 'cooling closed form vs Lindblad'),
)


def invariant_names() -> List[str]:
    return [invariant.name for invariant in INVARIANTS]


def parse_tolerances(specs: Optional[List[str]]) -> Dict[str, float]:
    """Map ``NAME=VALUE`` overrides to floats

    Raises
    ------
    ValueError
      On malformed specs or unknown invariant names.
    """
    overrides = {}
    for spec in specs or []:
        name, sep, value = spec.partition('=')
        if not sep:
            raise ValueError('tolerance override {!r} is not NAME=VALUE'.format(spec))
        if name not in invariant_names():
            raise ValueError('unknown invariant {!r}, use one of {}'.format(
                name, ', '.join(invariant_names())))
        overrides[name] = float(value)
    return overrides


def check_invariant(invariant: Invariant, tolerance: float) -> Dict:
    """Evaluate one invariant with a fresh fixed-seed generator"""
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    try:
        value = float(invariant.measure(rng))
    except HamiltonianError as e:
        return dict(
            status='error',
            value=None,
            duration=time.perf_counter() - start,
            message=('%s raised: %s', invariant.name, exc_str(e)))
    passed = value <= tolerance
    return dict(
        status='ok' if passed else 'error',
        value=value,
        duration=time.perf_counter() - start,
        message=(
            '%s: %.3g %s %.3g', invariant.description, value,
            '<=' if passed else '>', tolerance))


@build_doc
class HamiltonianSelfcheck(Interface):
    """Check the numerical invariants of the engines.

    Every invariant is measured at a small fixed configuration with a
    fixed random seed and compared against its tolerance: propagator
    unitarity, Hermiticity of rotating-frame Hamiltonians, the trace
    drift of Lindblad evolution, positivity of steady states, the
    rotating-frame round trip and three cross-checks of closed forms
    against numerical oracles (coupler, readout, cooling).

    One result is reported per invariant, with status "ok" or "error".

    Examples:

      Run all checks::

        % datalad hamiltonian-selfcheck

      Tighten the unitarity tolerance::

        % datalad hamiltonian-selfcheck --tolerance unitarity=1e-12
    """
    result_renderer = 'tailored'

    _params_ = dict(
        tolerance=Parameter(
            args=("--tolerance",),
            metavar="NAME=VALUE",
            action='append',
            doc="""override the tolerance of the named invariant. Can be
            given multiple times.""",
            constraints=EnsureStr() | EnsureNone()))

    @staticmethod
    @datasetmethod(name='hamiltonian_selfcheck')
    @eval_results
    def __call__(tolerance=None):

        res_kwargs = dict(action='hamiltonian_selfcheck', logger=lgr)
        if isinstance(tolerance, str):
            tolerance = [tolerance]
        try:
            overrides = parse_tolerances(tolerance)
        except ValueError as e:
            yield dict(
                **res_kwargs,
                path='tolerance',
                status='impossible',
                message=exc_str(e))
            return

        for invariant in INVARIANTS:
            limit = overrides.get(invariant.name, invariant.tolerance)
            lgr.debug('checking %s against %g', invariant.name, limit)
            yield dict(
                **res_kwargs,
                path=invariant.name,
                invariant=invariant.name,
                tolerance=limit,
                **check_invariant(invariant, limit))

    @staticmethod
    def custom_result_renderer(res, **kwargs):
        from datalad.ui import ui
        if res.get('action') != 'hamiltonian_selfcheck' or 'invariant' not in res:
            return
        value = res.get('value')
        ui.message('{:<18} {:<6} {} (tolerance {:.3g}, {:.2f}s)'.format(
            res['invariant'],
            res['status'],
            'n/a' if value is None else '{:.3g}'.format(value),
            res['tolerance'],
            res['duration']))
