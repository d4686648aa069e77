# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Dense operator layer over composite Hilbert spaces

Level convention: basis states are ordered |0>, |1>, ... in every
subsystem, ``sigma_plus`` raises |0> to |1> and ``sigma_z`` is
diag(-1, +1), i.e. the excited state has eigenvalue +1. With this choice
``(omega / 2) * sigma_z`` is the energy of a qubit and
sigma_+ = (sigma_x + i sigma_y) / 2.
"""

import abc
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
from scipy.linalg import expm

from .exceptions import OperatorError


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.operator_core')

HERMITIAN_TOLERANCE = 1e-12
PAULI_LABELS = 'Ixyz'


@dataclass(frozen=True, eq=False)
class Operator:
    """Immutable dense complex matrix with subsystem dimensions

    Parameters
    ----------
    data : array-like
      Square complex matrix.
    dims : tuple of int
      Subsystem dimensions, ordered left to right. Their product must
      equal the side length of ``data``.
    hermitian : bool
      If True, the matrix is verified to be Hermitian within
      ``HERMITIAN_TOLERANCE``.
    """
    data: np.ndarray
    dims: Tuple[int, ...]
    hermitian: bool = False

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise OperatorError(
                'operator matrix must be square, got shape {}'.format(
                    data.shape))
        dims = tuple(int(d) for d in self.dims)
        if not dims or int(np.prod(dims)) != data.shape[0]:
            raise OperatorError(
                'dims {} do not match matrix side {}'.format(
                    dims, data.shape[0]))
        if not np.all(np.isfinite(data)):
            raise OperatorError('operator has non-finite entries')
        if self.hermitian:
            deviation = hermiticity_error(data)
            if deviation > HERMITIAN_TOLERANCE:
                raise OperatorError(
                    'operator tagged hermitian deviates by {:.3g}'.format(
                        deviation))
        data.setflags(write=False)
        object.__setattr__(self, 'data', data)
        object.__setattr__(self, 'dims', dims)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def dag(self) -> 'Operator':
        return Operator(self.data.conj().T, self.dims, self.hermitian)

    def is_hermitian(self, tol: float = HERMITIAN_TOLERANCE) -> bool:
        return hermiticity_error(self.data) <= tol

    def as_hermitian(self) -> 'Operator':
        """Return a Hermitian-tagged copy, symmetrizing roundoff"""
        data = self.data
        return Operator((data + data.conj().T) / 2, self.dims, True)

    def _check_compatible(self, other: 'Operator'):
        if self.dims != other.dims:
            raise OperatorError(
                'incompatible dims {} and {}'.format(self.dims, other.dims))

    def __add__(self, other):
        if isinstance(other, Operator):
            self._check_compatible(other)
            return Operator(
                self.data + other.data,
                self.dims,
                self.hermitian and other.hermitian)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Operator):
            self._check_compatible(other)
            return Operator(
                self.data - other.data,
                self.dims,
                self.hermitian and other.hermitian)
        return NotImplemented

    def __neg__(self):
        return Operator(-self.data, self.dims, self.hermitian)

    def __mul__(self, scalar):
        if isinstance(scalar, Operator):
            return NotImplemented
        scalar = complex(scalar)
        return Operator(
            scalar * self.data,
            self.dims,
            self.hermitian and scalar.imag == 0)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._check_compatible(other)
            return Operator(self.data @ other.data, self.dims)
        return NotImplemented

    def __repr__(self):
        return 'Operator(dims={}, hermitian={})'.format(
            self.dims, self.hermitian)


def hermiticity_error(data: np.ndarray) -> float:
    """Max-norm of A - A^dagger"""
    if data.size == 0:
        return 0.0
    return float(np.max(np.abs(data - data.conj().T)))


def as_operator(data, dims: Sequence[int], hermitian: bool = False) -> Operator:
    return Operator(np.asarray(data, dtype=complex), tuple(dims), hermitian)


def kron(*operators: Operator) -> Operator:
    """Tensor product, dims concatenated left to right"""
    if not operators:
        raise OperatorError('kron needs at least one operand')
    return reduce(
        lambda a, b: Operator(
            np.kron(a.data, b.data),
            a.dims + b.dims,
            a.hermitian and b.hermitian),
        operators)


def identity(dims) -> Operator:
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    return Operator(np.eye(int(np.prod(dims))), dims, True)


def embed(op: Operator, slot: int, dims: Sequence[int]) -> Operator:
    """Place a single-subsystem operator into a composite space

    Parameters
    ----------
    op : Operator
      Operator acting on subsystem ``slot`` only.
    slot : int
      Index into ``dims``.
    dims : sequence of int
      Dimensions of the composite space.

    Returns
    -------
    Operator
      ``I x ... x op x ... x I`` with the declared subsystem order.
    """
    dims = tuple(int(d) for d in dims)
    if not 0 <= slot < len(dims):
        raise OperatorError(
            'slot {} out of range for dims {}'.format(slot, dims))
    if op.dim != dims[slot]:
        raise OperatorError(
            'operator dimension {} does not match dims[{}] = {}'.format(
                op.dim, slot, dims[slot]))
    factors = [
        op if index == slot else identity(d)
        for index, d in enumerate(dims)
    ]
    embedded = kron(*factors)
    return Operator(embedded.data, dims, op.hermitian)


def boson_ops(dim: int) -> Tuple[Operator, Operator, Operator]:
    """Truncated ladder operators (a, a^dagger, n)"""
    if dim < 2:
        raise OperatorError('boson truncation needs dim >= 2, got {}'.format(dim))
    a = np.diag(np.sqrt(np.arange(1, dim)), k=1)
    annihilate = Operator(a, (dim,))
    create = annihilate.dag()
    number = Operator(np.diag(np.arange(dim, dtype=float)), (dim,), True)
    return annihilate, create, number


def projector(level: int, dim: int) -> Operator:
    """|level><level| on a ``dim`` dimensional subsystem"""
    if not 0 <= level < dim:
        raise OperatorError('level {} outside dimension {}'.format(level, dim))
    data = np.zeros((dim, dim))
    data[level, level] = 1.
    return Operator(data, (dim,), True)


def transition(bra: int, ket: int, dim: int) -> Operator:
    """|bra><ket| on a ``dim`` dimensional subsystem"""
    data = np.zeros((dim, dim))
    data[bra, ket] = 1.
    return Operator(data, (dim,))


def sigma_plus() -> Operator:
    return transition(1, 0, 2)


def sigma_minus() -> Operator:
    return transition(0, 1, 2)


def sigma_x() -> Operator:
    return Operator([[0, 1], [1, 0]], (2,), True)


def sigma_y() -> Operator:
    return Operator([[0, 1j], [-1j, 0]], (2,), True)


def sigma_z() -> Operator:
    return Operator([[-1, 0], [0, 1]], (2,), True)


def pauli_basis() -> List[Operator]:
    return [identity(2), sigma_x(), sigma_y(), sigma_z()]


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a


def matrix_exp(op: Operator, scale: complex = 1.) -> Operator:
    """exp(scale * op) by scaling and squaring with Pade approximants"""
    argument = complex(scale) * op.data
    if not np.all(np.isfinite(argument)):
        raise OperatorError('matrix exponential of non-finite matrix')
    return Operator(expm(argument), op.dims)


@dataclass(frozen=True, eq=False)
class PauliTable:
    """Real coefficients c_ab of a two-qubit operator

    ``coefficients[a, b]`` multiplies ``sigma^a (x) sigma^b`` with
    a, b indexing ``'Ixyz'``.
    """
    coefficients: np.ndarray = field(
        default_factory=lambda: np.zeros((4, 4)))

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=float)
        if coefficients.shape != (4, 4):
            raise OperatorError(
                'Pauli table must be 4x4, got {}'.format(coefficients.shape))
        coefficients.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)

    def __getitem__(self, label: str) -> float:
        a, b = label
        return float(
            self.coefficients[PAULI_LABELS.index(a), PAULI_LABELS.index(b)])

    def reconstruct(self) -> Operator:
        """Sum_ab c_ab sigma^a (x) sigma^b as a Hermitian operator"""
        basis = pauli_basis()
        data = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            for b in range(4):
                if self.coefficients[a, b]:
                    data += self.coefficients[a, b] * np.kron(
                        basis[a].data, basis[b].data)
        return Operator(data, (2, 2), True)

    def two_body(self) -> np.ndarray:
        """The 3x3 block of genuine two-qubit couplings"""
        return np.array(self.coefficients[1:, 1:])

    def single_qubit(self) -> Dict[str, float]:
        """Single-qubit terms, keyed like ``'zI'`` or ``'Ix'``"""
        result = {}
        for index in range(1, 4):
            result[PAULI_LABELS[index] + 'I'] = float(self.coefficients[index, 0])
            result['I' + PAULI_LABELS[index]] = float(self.coefficients[0, index])
        return result

    def to_dict(self) -> Dict[str, float]:
        return {
            a + b: float(self.coefficients[i, j])
            for i, a in enumerate(PAULI_LABELS)
            for j, b in enumerate(PAULI_LABELS)
        }

    @classmethod
    def from_dict(cls, values: Dict[str, float]) -> 'PauliTable':
        coefficients = np.zeros((4, 4))
        for label, value in values.items():
            if len(label) != 2 or any(c not in PAULI_LABELS for c in label):
                raise OperatorError('invalid Pauli label {!r}'.format(label))
            coefficients[
                PAULI_LABELS.index(label[0]),
                PAULI_LABELS.index(label[1])] = value
        return cls(coefficients)

    @classmethod
    def from_two_body(cls, block: np.ndarray) -> 'PauliTable':
        coefficients = np.zeros((4, 4))
        coefficients[1:, 1:] = block
        return cls(coefficients)

    def max_abs_difference(self,
                           other: 'PauliTable',
                           two_body_only: bool = False) -> float:
        difference = self.coefficients - other.coefficients
        if two_body_only:
            difference = difference[1:, 1:]
        return float(np.max(np.abs(difference)))

    def __add__(self, other):
        if isinstance(other, PauliTable):
            return PauliTable(self.coefficients + other.coefficients)
        return NotImplemented


def pauli_decompose(op: Operator) -> PauliTable:
    """c_ab = Tr(H sigma^a (x) sigma^b) / 4 of a Hermitian 4x4 operator"""
    if op.dim != 4:
        raise OperatorError(
            'Pauli decomposition needs a 4x4 operator, got {}'.format(op.dim))
    if not op.is_hermitian():
        raise OperatorError(
            'Pauli decomposition of non-Hermitian operator '
            '(deviation {:.3g})'.format(hermiticity_error(op.data)))
    basis = pauli_basis()
    coefficients = np.zeros((4, 4))
    for a in range(4):
        for b in range(4):
            product = np.kron(basis[a].data, basis[b].data)
            coefficients[a, b] = np.real(np.trace(op.data @ product)) / 4
    return PauliTable(coefficients)


class TimeDependentHamiltonian(abc.ABC):
    """Hermitian operator valued function of time

    Implementations provide vectorized sampling; ``at`` is derived.
    """
    dims: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @abc.abstractmethod
    def sample(self, times: np.ndarray) -> np.ndarray:
        """Matrices at ``times`` as an array of shape (n, dim, dim)"""
        raise NotImplementedError

    @property
    def max_frequency(self) -> float:
        """Largest angular frequency present in the time dependence"""
        return 0.

    def at(self, t: float) -> Operator:
        return Operator(
            self.sample(np.array([float(t)]))[0],
            self.dims,
            True)


class TimeDependentOperator(TimeDependentHamiltonian):
    """H(t) = static + sum_k f_k(t) O_k

    Parameters
    ----------
    static : Operator
      Time independent part.
    terms : iterable of (Operator, callable)
      Operators with real coefficient functions. The functions must
      accept numpy arrays of times.
    max_frequency : float
      Largest angular frequency of the coefficient functions, used for
      step size selection. Required as soon as there are terms.
    """
    def __init__(self,
                 static: Operator,
                 terms: Iterable[Tuple[Operator, Callable]] = (),
                 max_frequency: Optional[float] = None):
        self.static = static
        self.dims = static.dims
        self.terms = tuple(terms)
        for op, _ in self.terms:
            static._check_compatible(op)
        if max_frequency is None:
            if self.terms:
                raise OperatorError(
                    'time dependent terms need their max_frequency')
            max_frequency = 0.
        if max_frequency < 0:
            raise OperatorError(
                'max_frequency must be nonnegative, got {!r}'.format(max_frequency))
        self._max_frequency = float(max_frequency)

    @property
    def max_frequency(self) -> float:
        return self._max_frequency

    def sample(self, times: np.ndarray) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        result = np.broadcast_to(
            self.static.data, (len(times),) + self.static.data.shape).copy()
        for op, function in self.terms:
            values = np.broadcast_to(function(times), times.shape)
            result += values[:, None, None] * op.data[None, :, :]
        return result


class StaticHamiltonian(TimeDependentOperator):
    """Convenience wrapper for a time independent Hamiltonian"""
    def __init__(self, op: Operator):
        super().__init__(op, ())
