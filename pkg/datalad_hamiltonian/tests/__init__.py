from math import sqrt

from datalad_hamiltonian.device_model import (
    CapacitiveCouplerSpec,
    PhaseCoeffs,
    QubitSpec,
    ResonatorSpec,
)
from datalad_hamiltonian.multilevel import MultilevelSpec


ALPHA_EJ = 0.02


def coupler_qubits():
    """Two-level qubits at 1.0 and 0.75 with s = c = 1, c0 = 0"""
    coeffs = PhaseCoeffs(s=1., c0=0., c=1.)
    return QubitSpec(1.0, phase_coeffs=coeffs), QubitSpec(0.75, phase_coeffs=coeffs)


def readout_device(g=0.05, dim=10):
    """Three-level transmon at 1.0 and a resonator at 1.5"""
    coeffs = PhaseCoeffs(c0=0.3, c=-0.1, s1=1., s2=sqrt(2), c2=0.05, q2=sqrt(2))
    return (
        QubitSpec(1.0, levels=3, alpha2=0.2, phase_coeffs=coeffs),
        ResonatorSpec(1.5, dim=dim),
        CapacitiveCouplerSpec(g),
    )


def multilevel_spec(**kwargs):
    values = dict(
        omega1=1., omega2=1.5, alpha1=0.2, alpha2=0.25, alpha_ej=0.025,
        k0=0.1, k1=0.1, k2=0.1, k3=0.1)
    values.update(kwargs)
    return MultilevelSpec(**values)
