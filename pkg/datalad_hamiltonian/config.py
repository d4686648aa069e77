# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Numerical defaults, overridable through DataLad configuration

All settings live in the ``datalad.hamiltonian`` section, e.g.::

    git config --global datalad.hamiltonian.average-tolerance 1e-11
"""

import logging

from datalad import cfg


lgr = logging.getLogger('datalad.hamiltonian.config')


_defaults = {
    'average-tolerance': (1e-10, float),
    'average-max-samples': (2 ** 20, int),
    'propagate-tolerance': (1e-8, float),
    'chunk-size': (4096, int),
    'snap-denominator': (64, int),
}


def get_setting(name: str, override=None):
    """Return a numerical setting

    Parameters
    ----------
    name : str
      Setting name without the ``datalad.hamiltonian.`` prefix.
    override : optional
      If not None, returned as is (converted to the setting's type).
    """
    default, valtype = _defaults[name]
    if override is not None:
        return valtype(override)
    value = cfg.obtain(
        'datalad.hamiltonian.' + name,
        default=default,
        valtype=valtype)
    lgr.debug('setting %s = %r', name, value)
    return value
