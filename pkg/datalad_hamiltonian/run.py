# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""
Run a Hamiltonian engineering experiment described by a configuration file
"""
import logging
from os import curdir
from pathlib import Path
from typing import (
    Optional,
    Union,
)

from datalad.distribution.dataset import (
    Dataset,
    EnsureDataset,
    datasetmethod,
    require_dataset,
)
from datalad.dochelpers import exc_str
from datalad.interface.base import (
    Interface,
    build_doc,
    eval_results,
)
from datalad.support.constraints import (
    EnsureInt,
    EnsureNone,
    EnsureStr,
)
from datalad.support.param import Parameter

from .exceptions import (
    ConfigError,
    HamiltonianError,
)
from .experiments import run_experiment
from .schema import (
    load_config,
    validate_config,
)
from .utils import (
    write_csv,
    write_json,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.run')


@build_doc
class HamiltonianRun(Interface):
    """Run a Hamiltonian engineering experiment.

    The experiment is described by a JSON or YAML configuration whose
    "kind" selects one of: extract (effective coupling table of the
    universal coupler), evolve (full dynamics against the effective
    Hamiltonian), calibrate (drive parameters for a target coupling),
    cool (steady state of shadow-qubit cooling), readout (arbitrary-axis
    readout) or multilevel (nonlinearity cancellation of a transmon
    pair).

    Two files are written into the output directory:
    "<output>.result.json", the result document, and
    "<output>.series.csv", the plot-ready series. "<output>" is the
    "output" field of the configuration and defaults to the kind.

    A configuration may sweep one numeric parameter, given by a dotted
    path such as "drive.f_zz" or "device.qubit1.omega". Sweep points are
    computed concurrently by up to JOBS threads.

    Validity-regime warnings are recorded in the result document; they
    never stop a run. Errors in the configuration are reported with the
    path of the offending field.

    Examples:

      Extract the coupling table of a zz drive::

        % datalad hamiltonian-run docs/configs/extract_zz.json

      Sweep a cooling configuration on four threads and save the results
      into the dataset in the current directory::

        % datalad hamiltonian-run -d . --jobs 4 --out results cool_sweep.yaml
    """
    result_renderer = 'tailored'

    _params_ = dict(
        config=Parameter(
            args=("config",),
            metavar="CONFIG",
            doc="""path of the experiment configuration, YAML for .yaml
            and .yml files, JSON otherwise.""",
            constraints=EnsureStr()),
        jobs=Parameter(
            args=("-J", "--jobs"),
            metavar="NJOBS",
            doc="""number of sweep points computed concurrently.""",
            constraints=EnsureInt() | EnsureNone()),
        out=Parameter(
            args=("-o", "--out"),
            metavar="DIR",
            doc="""directory the result files are written to. Defaults
            to the dataset root if a dataset is given, to the current
            directory otherwise.""",
            constraints=EnsureStr() | EnsureNone()),
        dataset=Parameter(
            args=("-d", "--dataset"),
            doc="""dataset to save the result files into.""",
            constraints=EnsureDataset() | EnsureNone()))

    @staticmethod
    @datasetmethod(name='hamiltonian_run')
    @eval_results
    def __call__(
            config: str,
            jobs: Optional[int] = None,
            out: Optional[str] = None,
            dataset: Optional[Union[Dataset, str]] = None):

        res_kwargs = dict(action='hamiltonian_run', logger=lgr)

        ds = None
        if dataset is not None:
            ds = require_dataset(
                dataset,
                purpose='save experiment results',
                check_installed=True)
        out_dir = Path(out) if out else (ds.pathobj if ds else Path(curdir))

        try:
            experiment = validate_config(load_config(config))
        except ConfigError as e:
            yield dict(
                **res_kwargs,
                path=str(config),
                status='impossible',
                field=e.field_path,
                message=('invalid configuration at %s: %s', e.field_path, e.message))
            return

        lgr.info('running %s experiment from %s', experiment.kind, config)
        try:
            report = run_experiment(experiment, jobs=max(jobs or 1, 1))
        except ConfigError as e:
            yield dict(
                **res_kwargs,
                path=str(config),
                status='impossible',
                field=e.field_path,
                message=('invalid configuration at %s: %s', e.field_path, e.message))
            return
        except HamiltonianError as e:
            yield dict(
                **res_kwargs,
                path=str(config),
                status='error',
                message=('%s experiment failed: %s', experiment.kind, exc_str(e)))
            return

        result_path = out_dir / '{}.result.json'.format(experiment.output)
        series_path = out_dir / '{}.series.csv'.format(experiment.output)
        write_json(result_path, report.document)
        write_csv(series_path, report.columns, report.rows)

        warnings = report.document['warnings']
        for path, kind in ((result_path, 'result'), (series_path, 'series')):
            yield dict(
                **res_kwargs,
                path=str(path),
                type='file',
                status='ok',
                experiment=experiment.kind,
                output=kind,
                config_hash=report.document['config_hash'],
                warnings=warnings)

        if ds is not None:
            yield from ds.save(
                path=[str(result_path), str(series_path)],
                message='[DATALAD] hamiltonian {} experiment {}'.format(
                    experiment.kind, report.document['config_hash'][:12]),
                return_type='generator',
                result_renderer='disabled')

    @staticmethod
    def custom_result_renderer(res, **kwargs):
        from datalad.ui import ui
        if res.get('action') != 'hamiltonian_run':
            return
        if res['status'] != 'ok':
            ui.message('{}: {}'.format(res['status'], res.get('path')))
            return
        ui.message('{} [{}] {}'.format(
            res['experiment'], res['output'], res['path']))
        if res['output'] == 'result':
            for warning in res.get('warnings', []):
                ui.message('  warning: {}'.format(warning))
