# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test running experiment configurations"""

import os.path as op

from simplejson import (
    dumps as jsondumps,
    loads as jsonloads,
)

from datalad.api import hamiltonian_run
from datalad.distribution.dataset import Dataset
from datalad.tests.utils_pytest import (
    assert_greater,
    assert_in,
    assert_repo_status,
    assert_result_count,
    eq_,
    with_tempfile,
    with_tree,
)

from ..schema import load_config
from ..utils import config_hash


cool_config = {
    'kind': 'cool',
    'device': {
        'omega': 1.0, 'omega_s': 5.0, 'g': 0.01, 'gamma_s': 0.02,
        'kappa': 1e-4, 'n_th': 0.05,
    },
}

extract_config = """\
kind: extract
output: zz
device:
  qubit1: {omega: 1.0, phase_coeffs: {c: 1.0}}
  qubit2: {omega: 0.75, phase_coeffs: {c: 1.0}}
  alpha_ej: 0.02
drive:
  f_zz: 0.05
"""

run_tree = {
    'cool.json': jsondumps(cool_config),
    'sweep.json': jsondumps(dict(
        cool_config,
        output='cool-sweep',
        sweep={'path': 'device.g', 'values': [0.01, 0.0, 0.02]})),
    'zz.yaml': extract_config,
    'broken.yaml': extract_config.replace('{omega: 0.75, ', '{'),
}


def _read(path):
    with open(path) as stream:
        return stream.read()


def _series(path):
    lines = _read(path).splitlines()
    return lines[0].split(','), [line.split(',') for line in lines[1:]]


@with_tree(tree=run_tree)
def test_cool_run(path=None):
    out = op.join(path, 'out')
    res = hamiltonian_run(
        op.join(path, 'cool.json'), out=out, result_renderer='disabled')
    assert_result_count(res, 2, status='ok', action='hamiltonian_run')
    assert_result_count(res, 1, path=op.join(out, 'cool.result.json'), output='result')
    assert_result_count(res, 1, path=op.join(out, 'cool.series.csv'), output='series')

    text = _read(op.join(out, 'cool.result.json'))
    document = jsonloads(text)
    eq_(document['kind'], 'cool')
    eq_(document['warnings'], [])
    eq_(document['config_hash'], config_hash(load_config(op.join(path, 'cool.json'))))
    result = document['result']
    eq_(result['coupling_kind'], 'exchange')
    assert_greater(result['rho_plus_thermal'], result['rho_plus_lindblad'])

    columns, rows = _series(op.join(out, 'cool.series.csv'))
    eq_(columns, [
        'g', 'temperature', 'rho_plus_analytic', 'rho_plus_lindblad',
        't_eff_analytic', 't_eff_lindblad', 'rho_plus_thermal'])
    eq_(len(rows), 1)
    eq_(rows[0][0], '0.01')

    # identical configurations give identical result files
    hamiltonian_run(op.join(path, 'cool.json'), out=out, result_renderer='disabled')
    eq_(_read(op.join(out, 'cool.result.json')), text)


@with_tree(tree=run_tree)
def test_sweep_run(path=None):
    res = hamiltonian_run(
        op.join(path, 'sweep.json'), out=path, jobs=2, result_renderer='disabled')
    assert_result_count(res, 2, status='ok')
    document = jsonloads(_read(op.join(path, 'cool-sweep.result.json')))
    eq_(document['sweep'], {'path': 'device.g', 'values': [0.01, 0.0, 0.02]})
    eq_(len(document['points']), 3)
    columns, rows = _series(op.join(path, 'cool-sweep.series.csv'))
    eq_(columns, [
        'index', 'device.g', 'g', 'rho_plus_analytic', 'rho_plus_lindblad',
        'rho_plus_thermal', 't_eff_analytic', 't_eff_lindblad', 'temperature'])
    # ordered by sweep index, independent of completion order
    eq_([row[:3] for row in rows], [
        ['0', '0.01', '0.01'], ['1', '0', '0'], ['2', '0.02', '0.02']])


@with_tree(tree=run_tree)
def test_extract_run(path=None):
    hamiltonian_run(op.join(path, 'zz.yaml'), out=path, result_renderer='disabled')
    document = jsonloads(_read(op.join(path, 'zz.result.json')))
    result = document['result']
    eq_(result['method'], 'average')
    zz = result['analytic']['zz']
    assert_greater(abs(zz), 0.)
    assert_greater(0.03 * abs(zz) + 1e-4, result['max_two_body_difference'])
    columns, rows = _series(op.join(path, 'zz.series.csv'))
    eq_(columns, ['label', 'analytic', 'numeric'])
    assert_in('zz', [row[0] for row in rows])


@with_tree(tree=run_tree)
def test_invalid_config(path=None):
    res = hamiltonian_run(
        op.join(path, 'broken.yaml'), out=path,
        on_failure='ignore', result_renderer='disabled')
    assert_result_count(res, 1)
    assert_result_count(
        res, 1, status='impossible', field='device.qubit2.omega')
    eq_(op.exists(op.join(path, 'zz.result.json')), False)
    res = hamiltonian_run(
        op.join(path, 'missing.json'), out=path,
        on_failure='ignore', result_renderer='disabled')
    assert_result_count(res, 1, status='impossible', field='<document>')


@with_tree(tree=run_tree)
@with_tempfile(mkdir=True)
def test_run_into_dataset(path=None, dspath=None):
    ds = Dataset(dspath).create()
    res = ds.hamiltonian_run(op.join(path, 'cool.json'), result_renderer='disabled')
    assert_result_count(res, 2, action='hamiltonian_run', status='ok')
    assert_result_count(res, 1, action='save', status='ok')
    ok_files = [r['path'] for r in res if r['action'] == 'hamiltonian_run']
    eq_(ok_files, [
        op.join(ds.path, 'cool.result.json'), op.join(ds.path, 'cool.series.csv')])
    assert_repo_status(ds.path)
