# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test canonical result serialization"""

import os.path as op
from decimal import Decimal

import numpy as np
from simplejson import loads as jsonloads

from datalad.tests.utils_pytest import (
    assert_raises,
    eq_,
    ok_,
    with_tempfile,
)

from ..utils import (
    canonical,
    canonical_json,
    config_hash,
    format_float,
    write_csv,
    write_json,
)


def test_canonical_values():
    eq_(format_float(0.1), '0.10000000000000001')
    eq_(format_float(0.5), '0.5')
    eq_(canonical(np.float64(0.1)), Decimal('0.10000000000000001'))
    eq_(canonical({1: (np.int64(2), np.bool_(True))}), {'1': [2, True]})
    eq_(canonical(np.array([[1, 2], [3, 4]])), [[1, 2], [3, 4]])
    eq_(canonical(None), None)
    eq_(canonical('zz'), 'zz')
    for bad in (float('nan'), float('inf'), np.float64('-inf'), 1j, np.complex128(1)):
        assert_raises(ValueError, canonical, bad)
    assert_raises(ValueError, canonical, {'a': [0.5, float('nan')]})


def test_canonical_json():
    eq_(canonical_json({'b': 1, 'a': 0.5}), '{\n "a": 0.5,\n "b": 1\n}')
    eq_(canonical_json({'b': 1, 'a': 0.5}), canonical_json({'a': 0.5, 'b': 1}))
    eq_(jsonloads(canonical_json({'x': [0.25, None]})), {'x': [0.25, None]})


def test_config_hash():
    config = {'kind': 'cool', 'device': {'g': 0.01, 'omega_s': 5}}
    reordered = {'device': {'omega_s': 5, 'g': 0.01}, 'kind': 'cool'}
    eq_(config_hash(config), config_hash(reordered))
    eq_(len(config_hash(config)), 64)
    ok_(config_hash(config) != config_hash(dict(config, kind='readout')))


@with_tempfile(mkdir=True)
def test_write_files(path=None):
    csv_path = op.join(path, 'sub', 'series.csv')
    write_csv(csv_path, ['label', 'value', 'count'], [['zz', 0.1, 2], ['xx', -0.5, 0]])
    with open(csv_path) as stream:
        eq_(stream.read(),
            'label,value,count\nzz,0.10000000000000001,2\nxx,-0.5,0\n')
    json_path = op.join(path, 'deeper', 'sub', 'result.json')
    write_json(json_path, {'value': 0.5, 'tags': ('a', 'b')})
    with open(json_path) as stream:
        text = stream.read()
    ok_(text.endswith('}\n'))
    eq_(jsonloads(text), {'tags': ['a', 'b'], 'value': 0.5})
