# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Canonical serialization of result documents and series"""

import csv
import hashlib
import logging
from decimal import Decimal
from pathlib import Path
from typing import (
    Any,
    List,
    Sequence,
)

import numpy as np
from simplejson import dumps as jsondumps

lgr = logging.getLogger('datalad.hamiltonian.utils')

SIGNIFICANT_DIGITS = 17


def format_float(value: float) -> str:
    return format(float(value), '.{}g'.format(SIGNIFICANT_DIGITS))


def canonical(value: Any) -> Any:
    """Convert a result structure into plain JSON types

    Floats become Decimals with 17 significant digits, numpy scalars and
    arrays become Python numbers and lists, tuples become lists.

    Raises
    ------
    ValueError
      On NaN, infinity or complex values.
    """
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError('non-finite value {!r} in result'.format(value))
        return Decimal(format_float(value))
    if isinstance(value, (complex, np.complexfloating)):
        raise ValueError('complex value {!r} in result, split it first'.format(value))
    return value


def canonical_json(document: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed float formatting"""
    return jsondumps(
        canonical(document),
        sort_keys=True,
        indent=1,
        use_decimal=True,
        allow_nan=False)


def config_hash(config: dict) -> str:
    """sha256 of the canonical JSON of a configuration"""
    return hashlib.sha256(canonical_json(config).encode('utf-8')).hexdigest()


def write_json(path: Path, document: Any):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(document) + '\n', encoding='utf-8')
    lgr.debug('wrote %s', path)


def _cell(value):
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return value


def write_csv(path: Path, columns: Sequence[str], rows: List[Sequence]):
    """CSV with a header row and floats at 17 significant digits"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='', encoding='utf-8') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    lgr.debug('wrote %i rows to %s', len(rows), path)
