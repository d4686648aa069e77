# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Exceptions raised by the Hamiltonian engineering toolkit"""

__docformat__ = 'restructuredtext'


class HamiltonianError(Exception):
    """Base class of all errors raised by datalad_hamiltonian"""


class OperatorError(HamiltonianError):
    """Malformed operator: shape, dims, Hermiticity or non-finite data"""


class FrameError(HamiltonianError):
    """Rotating frame generators do not commute or are not Hermitian"""


class SignalError(HamiltonianError):
    """Degenerate, aliased or non-rational drive tones"""


class ConvergenceError(HamiltonianError):
    """A numerical refinement loop did not reach its tolerance"""


class FloquetBranchError(HamiltonianError):
    """A one-period eigenphase sits too close to the logarithm branch cut"""


class PositivityError(HamiltonianError):
    """A density matrix acquired a negative eigenvalue"""


class DegenerateSteadyStateError(HamiltonianError):
    """The Liouvillian null space is not one-dimensional"""


class ReadoutTruncationError(HamiltonianError):
    """Resonator population approached the truncation dimension"""


class InfeasibleTargetError(HamiltonianError):
    """A target coupling table cannot be reached by the drive channels"""


class UnphysicalParameterError(HamiltonianError):
    """A parameter combination has no physical interpretation"""


class ConfigError(HamiltonianError):
    """An experiment configuration violates the schema

    Parameters
    ----------
    field_path : str
      Dotted path of the offending field, e.g. ``device.qubit1.omega``.
    message : str
      Human readable description of the violation.
    """
    def __init__(self, field_path: str, message: str):
        super().__init__('{}: {}'.format(field_path, message))
        self.field_path = field_path
        self.message = message
