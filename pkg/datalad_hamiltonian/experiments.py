# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Experiment runners behind ``hamiltonian-run``

Every runner takes a configuration document and returns an
``ExperimentOutcome``: the payload of the JSON result document, a CSV
series and a flat summary row used for sweeps.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import (
    Callable,
    Dict,
    List,
    Sequence,
    Tuple,
)

import numpy as np
from datalad.log import log_progress

from .calibration import (
    calibrate,
    numerical_oracle,
    random_target,
    target_from_dict,
)
from .cooling import (
    COUPLING_KINDS,
    CoolingSpec,
    cooling_row,
    find_heating_crossover,
    simulate_cooling,
    temperature_for_occupation,
)
from .coupler import (
    METHODS,
    effective_dynamics_fidelity,
    numerical_cab,
)
from .device_model import (
    CapacitiveCouplerSpec,
    PhaseCoeffs,
    QubitSpec,
    ResonatorSpec,
    two_qubit_gaps,
    universal_drive_elements,
    validate_scales,
)
from .drive_synth import (
    SplitTransmonDriveParams,
    UniversalDriveParams,
    readout_flux_signal,
    universal_signal,
)
from .exceptions import (
    ConfigError,
    OperatorError,
    SignalError,
    UnphysicalParameterError,
)
from .multilevel import (
    MultilevelSpec,
    effective_multilevel_hamiltonian,
    hopping_ratio,
    matrix_element_rows,
    multilevel_fidelity,
    multilevel_model,
    nonlinearity_suppression,
    number_conservation_error,
    target_diagonal,
    transformed_diagonal,
)
from .readout import (
    dressed_matrix_elements,
    exact_matrix_elements,
    readout_trajectory_rows,
    simulate_readout,
)
from .rwa_engine import analytic_cab
from .schema import (
    ExperimentConfig,
    FieldReader,
)
from .utils import config_hash
from .version import __version__


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.experiments')

PHASE_COEFF_FIELDS = ('s', 'c0', 'c', 's1', 's2', 'c2', 'q2')
UNIVERSAL_FIELDS = (
    'f_zz', 'f_xy0', 'f_xy2', 'f_xz', 'f_zx', 'chi1', 'chi2', 'psi1', 'psi2')


@dataclass(frozen=True)
class ExperimentOutcome:
    payload: Dict
    columns: List[str]
    rows: List[List]
    summary: Dict[str, float]
    warnings: Tuple[str, ...] = field(default=())


def _build(path: str, factory: Callable, **kwargs):
    """Construct a record, reporting parameter errors at ``path``"""
    try:
        return factory(**kwargs)
    except (UnphysicalParameterError, SignalError, OperatorError) as e:
        raise ConfigError(path, str(e))


def phase_coeffs_from(reader: FieldReader) -> PhaseCoeffs:
    section = reader.section('phase_coeffs', required=False)
    section.unknown(PHASE_COEFF_FIELDS)
    values = {name: section.number(name) for name in PHASE_COEFF_FIELDS if section.has(name)}
    return _build(section.prefix, PhaseCoeffs, **values)


def qubit_from(reader: FieldReader, levels: int = 2) -> QubitSpec:
    reader.unknown(('omega', 'levels', 'alpha2', 'beta3', 'phase_coeffs'))
    return _build(
        reader.prefix, QubitSpec,
        omega=reader.number('omega', positive=True),
        levels=reader.integer('levels', levels, minimum=2),
        alpha2=reader.number('alpha2', 0.),
        beta3=reader.number('beta3', 0.),
        phase_coeffs=phase_coeffs_from(reader))


def universal_params_from(reader: FieldReader) -> UniversalDriveParams:
    reader.unknown(UNIVERSAL_FIELDS)
    values = {name: reader.number(name) for name in UNIVERSAL_FIELDS if reader.has(name)}
    return _build(reader.prefix, UniversalDriveParams, **values)


def two_qubit_device(document: Dict) -> Tuple[QubitSpec, QubitSpec, float]:
    device = FieldReader(document).section('device')
    device.unknown(('qubit1', 'qubit2', 'alpha_ej'))
    return (
        qubit_from(device.section('qubit1')),
        qubit_from(device.section('qubit2')),
        device.number('alpha_ej', positive=True))


def _coupler_warnings(p, q1, q2, alpha_ej) -> Tuple[str, ...]:
    return tuple(validate_scales(
        universal_drive_elements(p, alpha_ej), two_qubit_gaps(q1.omega, q2.omega)))


def run_extract(document: Dict) -> ExperimentOutcome:
    """Closed-form and numerical coupling tables of the universal coupler"""
    q1, q2, alpha_ej = two_qubit_device(document)
    reader = FieldReader(document)
    p = universal_params_from(reader.section('drive', required=False))
    options = reader.section('options', required=False)
    options.unknown(('method',))
    method = options.choice('method', METHODS, 'average')
    warnings = _coupler_warnings(p, q1, q2, alpha_ej)

    analytic = analytic_cab(p, q1.phase_coeffs, q2.phase_coeffs, alpha_ej)
    numeric, _ = numerical_cab(p, q1, q2, alpha_ej, method=method)
    signal = universal_signal(p, q1.omega, q2.omega)
    two_body_difference = numeric.max_abs_difference(analytic, two_body_only=True)
    analytic_values = analytic.to_dict()
    numeric_values = numeric.to_dict()
    labels = sorted(analytic_values)
    summary = {
        'c_' + label: numeric_values[label]
        for label in labels if 'I' not in label
    }
    summary['max_two_body_difference'] = two_body_difference
    return ExperimentOutcome(
        payload=dict(
            method=method,
            params=p.to_dict(),
            signal=signal.to_record(),
            analytic=analytic_values,
            numeric=numeric_values,
            max_two_body_difference=two_body_difference,
        ),
        columns=['label', 'analytic', 'numeric'],
        rows=[[label, analytic_values[label], numeric_values[label]] for label in labels],
        summary=summary,
        warnings=warnings)


def run_evolve(document: Dict) -> ExperimentOutcome:
    """Full driven propagation against the effective Hamiltonian"""
    q1, q2, alpha_ej = two_qubit_device(document)
    reader = FieldReader(document)
    p = universal_params_from(reader.section('drive', required=False))
    options = reader.section('options', required=False)
    options.unknown(('duration', 'order', 'dt'))
    duration = options.number('duration', positive=True) \
        if options.has('duration') else None
    order = options.integer('order', 1)
    if order not in (1, 2):
        raise ConfigError('options.order', 'must be 1 or 2')
    dt = options.number('dt', positive=True) if options.has('dt') else None
    report = effective_dynamics_fidelity(
        p, q1, q2, alpha_ej, duration=duration, order=order, dt=dt)
    summary = dict(
        fidelity=report.fidelity,
        duration=report.duration,
        target_coefficient=report.target_coefficient)
    return ExperimentOutcome(
        payload=dict(params=p.to_dict(), **report.to_dict()),
        columns=sorted(summary),
        rows=[[summary[name] for name in sorted(summary)]],
        summary=summary,
        warnings=report.warnings)


def run_calibrate(document: Dict) -> ExperimentOutcome:
    """Drive parameters realizing a target coupling table"""
    q1, q2, alpha_ej = two_qubit_device(document)
    reader = FieldReader(document)
    target_reader = reader.section('target')
    if target_reader.has('random_seed'):
        target_reader.unknown(('random_seed', 'low', 'high'))
        rng = np.random.default_rng(target_reader.integer('random_seed', minimum=0))
        target = random_target(
            rng, alpha_ej,
            low=target_reader.number('low', 0.02, minimum=0.),
            high=target_reader.number('high', 0.05, minimum=0.))
    else:
        target_reader.unknown([a + b for a in 'xyz' for b in 'xyz'])
        target = target_from_dict(
            {name: target_reader.number(name) for name in target_reader.document})
    options = reader.section('options', required=False)
    options.unknown(('max_iterations', 'tolerance', 'jobs', 'method'))
    result = calibrate(
        target, q1, q2, alpha_ej,
        oracle=numerical_oracle(
            q1, q2, alpha_ej, method=options.choice('method', METHODS, 'average')),
        max_iterations=options.integer('max_iterations', 50, minimum=0),
        tolerance=options.number('tolerance', 1e-4, positive=True),
        jobs=options.integer('jobs', 1, minimum=1))
    warnings = _coupler_warnings(result.params, q1, q2, alpha_ej)
    if not result.converged:
        warnings += ('calibration did not converge, residual {:.3g}'.format(
            result.residual),)
    return ExperimentOutcome(
        payload=result.to_record(),
        columns=['iteration', 'residual'],
        rows=[[index, value] for index, value in enumerate(result.history)],
        summary=dict(
            residual=result.residual,
            iterations=result.iterations,
            converged=int(result.converged)),
        warnings=warnings)


def cooling_spec_from(document: Dict) -> CoolingSpec:
    device = FieldReader(document).section('device')
    device.unknown((
        'omega', 'omega_s', 'g', 'gamma_s', 'kappa', 'temperature', 'n_th',
        'coupling_kind'))
    omega = device.number('omega', 1., positive=True)
    if device.has('temperature') == device.has('n_th'):
        raise ConfigError('device.temperature', 'give exactly one of temperature and n_th')
    if device.has('temperature'):
        temperature = device.number('temperature', positive=True)
    else:
        temperature = _build(
            'device.n_th', temperature_for_occupation,
            omega=omega, n_th=device.number('n_th', positive=True))
    return _build(
        'device', CoolingSpec,
        omega=omega,
        omega_s=device.number('omega_s', positive=True),
        g=device.number('g', minimum=0.),
        gamma_s=device.number('gamma_s', positive=True),
        kappa=device.number('kappa', positive=True),
        temperature=temperature,
        coupling_kind=device.choice('coupling_kind', COUPLING_KINDS, 'exchange'))


def run_cool(document: Dict) -> ExperimentOutcome:
    """Steady-state cooling of a primary qubit by its shadow"""
    spec = cooling_spec_from(document)
    options = FieldReader(document).section('options', required=False)
    options.unknown(('crossover', 't_low', 't_high'))
    warnings = tuple(spec.validity_warnings())
    row = dict(g=spec.g, temperature=spec.temperature)
    row.update(cooling_row(spec))
    steady = simulate_cooling(spec)
    payload = dict(
        coupling_kind=spec.coupling_kind,
        suppression=steady.suppression,
        shadow_excitation=steady.shadow_excitation,
        **row)
    if options.flag('crossover'):
        payload['crossover'] = find_heating_crossover(
            spec,
            t_low=options.number('t_low', 0.05, positive=True),
            t_high=options.number('t_high', 1.0, positive=True)).to_dict()
    columns = [
        'g', 'temperature', 'rho_plus_analytic', 'rho_plus_lindblad',
        't_eff_analytic', 't_eff_lindblad', 'rho_plus_thermal']
    return ExperimentOutcome(
        payload=payload,
        columns=columns,
        rows=[[row[name] for name in columns]],
        summary=row,
        warnings=warnings)


def run_readout(document: Dict) -> ExperimentOutcome:
    """Arbitrary-axis readout: dressed elements and driven trajectories"""
    reader = FieldReader(document)
    device = reader.section('device')
    device.unknown(('qubit', 'resonator', 'g'))
    qubit = qubit_from(device.section('qubit'), levels=3)
    if qubit.levels != 3:
        raise ConfigError('device.qubit.levels', 'readout needs a three-level qubit')
    resonator_reader = device.section('resonator')
    resonator_reader.unknown(('omega_r', 'dim'))
    resonator = _build(
        'device.resonator', ResonatorSpec,
        omega_r=resonator_reader.number('omega_r', positive=True),
        dim=resonator_reader.integer('dim', 10, minimum=2))
    coupling = _build(
        'device.g', CapacitiveCouplerSpec, g=device.number('g', positive=True))

    drive = reader.section('drive')
    if drive.has('split_transmon'):
        drive.unknown(('split_transmon',))
        split = drive.section('split_transmon')
        split.unknown(('ej1', 'ej2', 'k1', 'k2', 'k3', 'chi'))
        params = _build(
            'drive.split_transmon', SplitTransmonDriveParams,
            ej1=split.number('ej1', positive=True),
            ej2=split.number('ej2', positive=True),
            **{name: split.number(name, 0.) for name in ('k1', 'k2', 'k3', 'chi')})
        flux = _build(
            'drive.split_transmon', readout_flux_signal,
            p=params, omega_r=resonator.omega_r, omega_t=qubit.omega)
        f1, f2, f3, chi, static_shift = (
            flux.f1, flux.f2, flux.f3, flux.chi, flux.static_shift)
    else:
        drive.unknown(('f1', 'f2', 'f3', 'chi', 'static_shift'))
        f1, f2, f3, chi, static_shift = (
            drive.number(name, 0.) for name in ('f1', 'f2', 'f3', 'chi', 'static_shift'))

    options = reader.section('options', required=False)
    options.unknown(('duration', 'n_samples', 'cancel_spin_independent', 'photons'))
    photons = options.integer('photons', 1, minimum=0)
    simulation = _build(
        'drive', simulate_readout,
        q=qubit, r=resonator, c=coupling,
        f1=f1, f2=f2, f3=f3, chi=chi,
        duration=options.number('duration', 60., positive=True),
        n_samples=options.integer('n_samples', 61, minimum=3),
        cancel_spin_independent=options.flag('cancel_spin_independent', True),
        static_shift=static_shift)
    effective = simulation.effective
    delta = resonator.omega_r - qubit.omega
    perturbative = dressed_matrix_elements(
        qubit.phase_coeffs, coupling.g, delta, qubit.alpha2, photons)
    exact = exact_matrix_elements(qubit, resonator, coupling, photons)
    predicted = simulation.predicted_discrimination
    summary = dict(
        lambda_=effective.lambda_,
        discrimination=simulation.discrimination,
        predicted_discrimination=predicted,
        qnd_deviation=simulation.qnd_deviation)
    columns, rows = readout_trajectory_rows(simulation)
    names = ('cos_down', 'cos_up', 'sin_ground', 'sin_excited')
    return ExperimentOutcome(
        payload=dict(
            drive=dict(f1=f1, f2=f2, f3=f3, chi=chi, static_shift=static_shift),
            effective=dict(
                lambda_=effective.lambda_,
                h=list(effective.h),
                spin_independent=effective.spin_independent,
                conjugate_residual=effective.conjugate_residual),
            voltage=simulation.voltage,
            discrimination=simulation.discrimination,
            predicted_discrimination=predicted,
            qnd_deviation=simulation.qnd_deviation,
            matrix_elements=dict(
                photons=photons,
                perturbative=dict(zip(names, perturbative.as_tuple())),
                exact=dict(zip(names, exact.as_tuple()))),
        ),
        columns=columns,
        rows=rows,
        summary=summary,
        warnings=effective.warnings)


MULTILEVEL_DEVICE_FIELDS = (
    'omega1', 'omega2', 'alpha1', 'alpha2', 'beta1', 'beta2', 'levels',
    'alpha_ej', 's', 'c0', 'c')
MULTILEVEL_DRIVE_FIELDS = ('k0', 'k1', 'k2', 'k3', 'detuning1', 'detuning2')


def multilevel_spec_from(document: Dict) -> MultilevelSpec:
    reader = FieldReader(document)
    device = reader.section('device')
    device.unknown(MULTILEVEL_DEVICE_FIELDS)
    drive = reader.section('drive', required=False)
    drive.unknown(MULTILEVEL_DRIVE_FIELDS)
    values = dict(
        omega1=device.number('omega1', positive=True),
        omega2=device.number('omega2', positive=True),
        alpha1=device.number('alpha1'),
        alpha2=device.number('alpha2'),
        alpha_ej=device.number('alpha_ej', positive=True),
        beta1=device.number('beta1', 0.),
        beta2=device.number('beta2', 0.),
        levels=device.integer('levels', 4, minimum=3, maximum=4),
        s=device.number('s', 1., positive=True),
        c0=device.number('c0', 0.),
        c=device.number('c', 0.),
    )
    values.update({name: drive.number(name, 0.) for name in MULTILEVEL_DRIVE_FIELDS})
    return _build('device', MultilevelSpec, **values)


def run_multilevel(document: Dict) -> ExperimentOutcome:
    """Nonlinearity cancellation of a driven transmon pair"""
    spec = multilevel_spec_from(document)
    options = FieldReader(document).section('options', required=False)
    options.unknown(('method', 'fidelity', 'periods', 'threshold'))
    method = options.choice('method', ('average', 'floquet', 'hfe'), 'average')
    model = _build('drive', multilevel_model, spec=spec)
    h_eff = effective_multilevel_hamiltonian(spec, method=method, model=model)
    suppression = nonlinearity_suppression(spec, h_eff)
    payload = dict(
        method=method,
        period=model.period,
        residual_alpha1=suppression.residual_alpha1,
        residual_alpha2=suppression.residual_alpha2,
        ratio_to_bare=suppression.ratio_to_bare,
        number_conservation_error=number_conservation_error(h_eff, spec),
    )
    summary = dict(
        residual_alpha1=suppression.residual_alpha1,
        residual_alpha2=suppression.residual_alpha2,
        ratio_to_bare=suppression.ratio_to_bare)
    try:
        ratio = hopping_ratio(h_eff, spec.levels)
        payload['hopping_ratio'] = ratio
        summary['hopping_ratio'] = ratio
    except UnphysicalParameterError:
        payload['hopping_ratio'] = None
    if not (spec.detuning1 or spec.detuning2):
        payload['diagonal_error'] = float(np.max(np.abs(
            transformed_diagonal(spec) - target_diagonal(spec))))
    if options.flag('fidelity'):
        report = multilevel_fidelity(spec, periods=options.integer('periods', 10, minimum=1))
        payload['fidelity'] = report.to_dict()
        summary['fidelity'] = report.fidelity
    columns, rows = matrix_element_rows(
        h_eff, spec.levels, threshold=options.number('threshold', 1e-12, minimum=0.))
    return ExperimentOutcome(
        payload=payload,
        columns=columns,
        rows=rows,
        summary=summary,
        warnings=model.warnings)


RUNNERS = {
    'extract': run_extract,
    'evolve': run_evolve,
    'calibrate': run_calibrate,
    'cool': run_cool,
    'readout': run_readout,
    'multilevel': run_multilevel,
}


@dataclass(frozen=True)
class ExperimentReport:
    """Result document and CSV series of one configuration"""
    document: Dict
    columns: List[str]
    rows: List[List]


def _merge_warnings(outcomes: Sequence[ExperimentOutcome]) -> List[str]:
    merged = []
    for outcome in outcomes:
        for warning in outcome.warnings:
            if warning not in merged:
                merged.append(warning)
    return merged


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    """Execute a validated configuration, sweeping if requested

    Sweep points run concurrently on up to ``jobs`` threads; results are
    ordered by sweep index.
    """
    runner = RUNNERS[config.kind]
    header = dict(
        kind=config.kind,
        config_hash=config_hash(config.document),
        version=__version__)
    if config.sweep is None:
        outcome = runner(config.document)
        document = dict(header, warnings=list(outcome.warnings), result=outcome.payload)
        return ExperimentReport(document, outcome.columns, outcome.rows)

    points = config.sweep.documents(config.document)
    pid = 'hamiltonian_sweep_{}'.format(header['config_hash'][:12])
    log_progress(
        lgr.info, pid,
        'Sweeping %s over %i values', config.sweep.path, len(points),
        label='Sweep', unit=' points', total=len(points))

    def run_point(point):
        outcome = runner(point)
        log_progress(
            lgr.info, pid, 'finished sweep point', update=1, increment=True)
        return outcome

    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                outcomes = list(executor.map(run_point, points))
        else:
            outcomes = [run_point(point) for point in points]
    finally:
        log_progress(lgr.info, pid, 'Finished sweep')

    names = sorted({name for outcome in outcomes for name in outcome.summary})
    path = str(config.sweep.path)
    rows = [
        [index, value] + [outcome.summary.get(name) for name in names]
        for index, (value, outcome) in enumerate(zip(config.sweep.values, outcomes))
    ]
    document = dict(
        header,
        warnings=_merge_warnings(outcomes),
        sweep=dict(path=path, values=config.sweep.values),
        points=[outcome.payload for outcome in outcomes])
    return ExperimentReport(document, ['index', path] + names, rows)
