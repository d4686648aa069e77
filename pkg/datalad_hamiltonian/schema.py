# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Experiment configuration documents

A configuration is a JSON or YAML mapping with a top-level ``kind``::

  {
    "kind": "extract",
    "output": "zz-channel",
    "device": {"qubit1": {"omega": 1.0}, "qubit2": {"omega": 0.75},
               "alpha_ej": 0.02},
    "drive": {"f_zz": 0.05},
    "options": {"method": "floquet"},
    "sweep": {"path": "drive.f_zz", "values": [0.025, 0.05]}
  }

Field requirements per kind are checked by the record builders in
``experiments``; they all read through ``FieldReader`` so that any
violation is reported with its dotted field path.
"""

import copy
import logging
from dataclasses import dataclass
from numbers import Real
from pathlib import Path
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
)

import yaml
from datalad.support.json_py import load as jsonload

from .exceptions import ConfigError
from .pathutils.parameterpath import (
    ParameterPath,
    ParameterPathParser,
)


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.schema')

KINDS = ('extract', 'evolve', 'calibrate', 'cool', 'readout', 'multilevel')
TOP_LEVEL_FIELDS = ('kind', 'output', 'device', 'drive', 'target', 'options', 'sweep')

_MISSING = object()


def load_config(path) -> Dict:
    """Read a configuration document, YAML for .yaml/.yml, JSON otherwise

    Raises
    ------
    ConfigError
      If the file cannot be read or parsed, with field path ``<document>``.
    """
    path = Path(path)
    try:
        if path.suffix in ('.yaml', '.yml'):
            with path.open('rt') as stream:
                document = yaml.safe_load(stream)
        else:
            document = jsonload(str(path))
    except FileNotFoundError:
        raise ConfigError('<document>', 'file {} could not be opened'.format(path))
    except yaml.YAMLError as e:
        raise ConfigError('<document>', 'YAML parsing failed with: {}'.format(e))
    except ValueError as e:
        raise ConfigError('<document>', 'JSON parsing failed with: {}'.format(e))
    if not isinstance(document, dict):
        raise ConfigError('<document>', 'a configuration must be a mapping')
    return document


class FieldReader:
    """Typed access to a configuration document by dotted path"""
    def __init__(self, document: Dict, prefix: str = ''):
        self.document = document
        self.prefix = prefix

    def _path(self, name: str) -> str:
        return '{}.{}'.format(self.prefix, name) if self.prefix else name

    def section(self, name: str, required: bool = True) -> 'FieldReader':
        value = self.document.get(name, _MISSING)
        if value is _MISSING or value is None:
            if required:
                raise ConfigError(self._path(name), 'required section is missing')
            value = {}
        if not isinstance(value, dict):
            raise ConfigError(self._path(name), 'must be a mapping')
        return FieldReader(value, self._path(name))

    def has(self, name: str) -> bool:
        return self.document.get(name) is not None

    def raw(self, name: str, default: Any = _MISSING) -> Any:
        value = self.document.get(name, _MISSING)
        if value is _MISSING or value is None:
            if default is _MISSING:
                raise ConfigError(self._path(name), 'required field is missing')
            return default
        return value

    def number(self,
               name: str,
               default: Any = _MISSING,
               minimum: Optional[float] = None,
               positive: bool = False) -> float:
        value = self.raw(name, default)
        if isinstance(value, bool) or not isinstance(value, Real):
            raise ConfigError(
                self._path(name), 'must be a number, got {!r}'.format(value))
        value = float(value)
        if positive and value <= 0:
            raise ConfigError(self._path(name), 'must be positive, got {!r}'.format(value))
        if minimum is not None and value < minimum:
            raise ConfigError(
                self._path(name), 'must be >= {}, got {!r}'.format(minimum, value))
        return value

    def integer(self, name: str, default: Any = _MISSING,
                minimum: Optional[int] = None, maximum: Optional[int] = None) -> int:
        value = self.raw(name, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(
                self._path(name), 'must be an integer, got {!r}'.format(value))
        if minimum is not None and value < minimum:
            raise ConfigError(
                self._path(name), 'must be >= {}, got {!r}'.format(minimum, value))
        if maximum is not None and value > maximum:
            raise ConfigError(
                self._path(name), 'must be <= {}, got {!r}'.format(maximum, value))
        return value

    def flag(self, name: str, default: bool = False) -> bool:
        value = self.raw(name, default)
        if not isinstance(value, bool):
            raise ConfigError(self._path(name), 'must be true or false')
        return value

    def choice(self, name: str, choices: Sequence[str], default: Any = _MISSING) -> str:
        value = self.raw(name, default)
        if value not in choices:
            raise ConfigError(
                self._path(name),
                'must be one of {}, got {!r}'.format(', '.join(choices), value))
        return value

    def numbers(self, name: str) -> Dict[str, float]:
        """All entries of a mapping of numbers"""
        section = self.section(name)
        return {key: section.number(key) for key in section.document}

    def unknown(self, allowed: Sequence[str]):
        for name in self.document:
            if name not in allowed:
                raise ConfigError(self._path(name), 'unknown field')


@dataclass(frozen=True)
class Sweep:
    path: ParameterPath
    values: List[float]

    def documents(self, document: Dict) -> List[Dict]:
        """One configuration per sweep value, the sweep section removed"""
        result = []
        for value in self.values:
            point = copy.deepcopy(document)
            point.pop('sweep', None)
            self.path.set(point, value)
            result.append(point)
        return result


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    output: str
    document: Dict
    sweep: Optional[Sweep] = None


def parse_sweep(document: Dict) -> Optional[Sweep]:
    if document.get('sweep') is None:
        return None
    reader = FieldReader(document).section('sweep')
    reader.unknown(('path', 'values'))
    spec = reader.raw('path')
    if not isinstance(spec, str):
        raise ConfigError('sweep.path', 'must be a parameter path string')
    path = ParameterPathParser(spec).parse()
    current = path.get(document)
    if isinstance(current, bool) or not isinstance(current, Real):
        raise ConfigError(spec, 'sweep path must address a numeric field')
    values = reader.raw('values')
    if not isinstance(values, list) or not values:
        raise ConfigError('sweep.values', 'must be a non-empty list')
    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, Real):
            raise ConfigError(
                'sweep.values[{}]'.format(index), 'must be a number, got {!r}'.format(value))
    return Sweep(path=path, values=[float(v) for v in values])


def validate_config(document: Dict) -> ExperimentConfig:
    """Check the top level of a configuration

    The kind specific fields are validated when the records are built.
    """
    reader = FieldReader(document)
    reader.unknown(TOP_LEVEL_FIELDS)
    kind = reader.choice('kind', KINDS)
    output = reader.raw('output', kind)
    if not isinstance(output, str) or not output or '/' in output:
        raise ConfigError('output', 'must be a file name prefix without directories')
    return ExperimentConfig(
        kind=kind,
        output=output,
        document=document,
        sweep=parse_sweep(document))
