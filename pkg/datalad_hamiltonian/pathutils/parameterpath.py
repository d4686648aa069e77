# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Parameter paths such as ``device.qubit1.omega`` or ``sweep.values[1]``"""

import enum
from typing import (
    Any,
    List,
    Tuple,
    Union,
)

from ..exceptions import ConfigError


class StepKind(enum.Enum):
    KEY = "key"
    INDEX = "index"


class ParameterPath:
    """A parsed parameter path, e.g. ``drive.tones[2].amplitude``"""
    def __init__(self, path_spec: str, steps: List[Tuple[StepKind, Union[str, int]]]):
        self.path_spec = path_spec
        self.steps = steps

    def __str__(self):
        return self.path_spec

    def _walk(self, document: Any, steps) -> Any:
        current = document
        walked = ""
        for kind, value in steps:
            walked = walked + ("[{}]".format(value) if kind is StepKind.INDEX
                               else ("." if walked else "") + value)
            if kind is StepKind.KEY:
                if not isinstance(current, dict) or value not in current:
                    raise ConfigError(walked, "no such field")
            else:
                if not isinstance(current, list) or not -len(current) <= value < len(current):
                    raise ConfigError(walked, "no such list element")
            current = current[value]
        return current

    def get(self, document: Any) -> Any:
        return self._walk(document, self.steps)

    def set(self, document: Any, value: Any):
        """Replace the addressed value in place; it must exist already"""
        parent = self._walk(document, self.steps[:-1])
        self._walk(parent, self.steps[-1:])
        parent[self.steps[-1][1]] = value


class ParameterPathParser(object):
    separator = "."
    index_open = "["
    index_close = "]"

    def __init__(self, path_spec: str):
        self.path_spec = path_spec
        self.current_spec = self.path_spec[:]

    def match(self, content: str):
        if self.current_spec.startswith(content):
            self.current_spec = self.current_spec[len(content):]
            return True
        return False

    def fetch_upto(self, pattern: str):
        pattern_location = self.current_spec.find(pattern)
        if pattern_location >= 0:
            result, self.current_spec = self.current_spec[:pattern_location], self.current_spec[pattern_location:]
            return True, result
        return False, ""

    def fetch_key(self):
        # a key ends at the next separator, index or the end of the spec
        ends = [
            location
            for location in (
                self.current_spec.find(self.separator),
                self.current_spec.find(self.index_open))
            if location >= 0
        ]
        end = min(ends) if ends else len(self.current_spec)
        result, self.current_spec = self.current_spec[:end], self.current_spec[end:]
        return result

    def get_remaining(self):
        result, self.current_spec = self.current_spec, ""
        return result

    def parse_index(self):
        success, index = self.fetch_upto(self.index_close)
        if not success:
            raise ConfigError(self.path_spec, "unterminated index")
        self.match(self.index_close)
        try:
            return int(index)
        except ValueError:
            raise ConfigError(
                self.path_spec, "index {!r} is not an integer".format(index))

    def parse(self) -> ParameterPath:
        """
        Parse a parameter path.

        PATH:   KEY ("." KEY | "[" INTEGER "]")*
        """
        steps = []
        key = self.fetch_key()
        if not key:
            raise ConfigError(self.path_spec, "a parameter path starts with a key")
        steps.append((StepKind.KEY, key))
        while self.current_spec:
            if self.match(self.index_open):
                steps.append((StepKind.INDEX, self.parse_index()))
            elif self.match(self.separator):
                key = self.fetch_key()
                if not key:
                    raise ConfigError(self.path_spec, "empty key")
                steps.append((StepKind.KEY, key))
            else:
                raise ConfigError(
                    self.path_spec,
                    "unexpected {!r}".format(self.get_remaining()))
        return ParameterPath(self.path_spec, steps)
