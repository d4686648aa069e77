# emacs: -*- mode: python; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Multi-tone drive signals

Every signal is a constant offset plus continuous-wave tones whose
frequencies are exact rational multiples of a base angular frequency, so
that the common period of a signal (and of a rotating frame built on the
same base) is known exactly.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from math import gcd, pi, sqrt
from typing import (
    Dict,
    Iterable,
    List,
    Optional,
    Tuple,
)

import numpy as np

from .config import get_setting
from .exceptions import SignalError


__docformat__ = 'restructuredtext'

lgr = logging.getLogger('datalad.hamiltonian.drive_synth')

MAX_AMPLITUDE = 0.3


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def snap_frequency(frequency: float,
                   base_freq: float,
                   max_denominator: Optional[int] = None) -> Fraction:
    """Express ``frequency`` as a rational multiple of ``base_freq``

    Raises
    ------
    SignalError
      If the closest fraction with a bounded denominator moves the
      frequency by more than 1e-9.
    """
    max_denominator = get_setting('snap-denominator', max_denominator)
    if base_freq <= 0:
        raise SignalError('base frequency must be positive, got {}'.format(base_freq))
    ratio = Fraction(frequency / base_freq).limit_denominator(max_denominator)
    if abs(float(ratio) * base_freq - frequency) > 1e-9:
        raise SignalError(
            'frequency {!r} is not a rational multiple of {!r} with '
            'denominator <= {}'.format(frequency, base_freq, max_denominator))
    return ratio


def commensurate_period(base_freq: float,
                        ratios: Iterable[Fraction]) -> Optional[float]:
    """Shortest common period of tones at ``ratio * base_freq``

    Zero ratios are ignored. Returns None if no finite frequency is left.
    """
    ratios = [abs(Fraction(r)) for r in ratios]
    ratios = [r for r in ratios if r != 0]
    if not ratios:
        return None
    denominator = reduce(_lcm, (r.denominator for r in ratios))
    numerator = reduce(gcd, (int(r * denominator) for r in ratios))
    return 2 * pi / base_freq * denominator / numerator


@dataclass(frozen=True)
class Tone:
    """amplitude * cos(freq_num / freq_den * base * t + phase)"""
    amplitude: float
    freq_num: int
    freq_den: int
    phase: float = 0.

    def __post_init__(self):
        num, den = int(self.freq_num), int(self.freq_den)
        if den < 1:
            raise SignalError('tone frequency denominator must be >= 1')
        if num < 1:
            raise SignalError(
                'tone frequency must be positive, got {}/{}'.format(num, den))
        divisor = gcd(num, den)
        object.__setattr__(self, 'freq_num', num // divisor)
        object.__setattr__(self, 'freq_den', den // divisor)
        object.__setattr__(self, 'amplitude', float(self.amplitude))
        object.__setattr__(self, 'phase', float(self.phase))

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.freq_num, self.freq_den)


def make_tone(amplitude: float,
              frequency: float,
              phase: float,
              base_freq: float,
              max_denominator: Optional[int] = None) -> Tone:
    """Tone at angular ``frequency``; negative frequencies flip the phase"""
    ratio = snap_frequency(frequency, base_freq, max_denominator)
    if ratio == 0:
        raise SignalError('tone at zero frequency (frequency {!r})'.format(frequency))
    if ratio < 0:
        ratio, phase = -ratio, -phase
    return Tone(amplitude, ratio.numerator, ratio.denominator, phase)


@dataclass(frozen=True)
class DriveSignal:
    """offset + sum of tones"""
    offset: float
    base_freq: float
    tones: Tuple[Tone, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.base_freq <= 0:
            raise SignalError('base frequency must be positive')
        object.__setattr__(self, 'tones', tuple(self.tones))

    @property
    def frequencies(self) -> np.ndarray:
        return np.array(
            [self.base_freq * float(tone.ratio) for tone in self.tones])

    @property
    def max_frequency(self) -> float:
        return float(max(self.frequencies, default=0.))

    @property
    def period(self) -> Optional[float]:
        """Exact common period, None for a constant signal"""
        return commensurate_period(
            self.base_freq, (tone.ratio for tone in self.tones))

    def evaluate(self, t):
        """Signal value at scalar or array ``t``"""
        t = np.asarray(t, dtype=float)
        value = np.full(t.shape, self.offset, dtype=float)
        for tone, frequency in zip(self.tones, self.frequencies):
            value = value + tone.amplitude * np.cos(frequency * t + tone.phase)
        return value if value.ndim else float(value)

    def shifted(self, delta_offset: float) -> 'DriveSignal':
        return replace(self, offset=self.offset + delta_offset)

    def to_record(self) -> Dict:
        """Structured-text record with round-trip exact decimal strings"""
        return {
            'offset': repr(float(self.offset)),
            'base_freq': repr(float(self.base_freq)),
            'tones': [
                {
                    'amp': repr(tone.amplitude),
                    'num': tone.freq_num,
                    'den': tone.freq_den,
                    'phase': repr(tone.phase),
                }
                for tone in self.tones
            ],
        }

    @classmethod
    def from_record(cls, record: Dict) -> 'DriveSignal':
        return cls(
            offset=float(record['offset']),
            base_freq=float(record['base_freq']),
            tones=tuple(
                Tone(float(t['amp']), int(t['num']), int(t['den']),
                     float(t['phase']))
                for t in record.get('tones', [])))


def evaluate(sig: DriveSignal, t):
    return sig.evaluate(t)


@dataclass(frozen=True)
class UniversalDriveParams:
    """The nine knobs of the universal two-qubit coupler

    ``f_zz`` is signed, the other amplitudes are nonnegative; signs of
    the oscillating channels are carried by the phases.
    """
    f_zz: float = 0.
    f_xy0: float = 0.
    f_xy2: float = 0.
    f_xz: float = 0.
    f_zx: float = 0.
    chi1: float = 0.
    chi2: float = 0.
    psi1: float = 0.
    psi2: float = 0.

    def __post_init__(self):
        if abs(self.f_zz) > MAX_AMPLITUDE:
            raise SignalError(
                'f_zz = {!r} outside [-{}, {}]'.format(
                    self.f_zz, MAX_AMPLITUDE, MAX_AMPLITUDE))
        for name in ('f_xy0', 'f_xy2', 'f_xz', 'f_zx'):
            value = getattr(self, name)
            if not 0. <= value <= MAX_AMPLITUDE:
                raise SignalError(
                    '{} = {!r} outside [0, {}]'.format(name, value, MAX_AMPLITUDE))

    def to_dict(self) -> Dict[str, float]:
        return {
            name: float(getattr(self, name))
            for name in self.__dataclass_fields__
        }

    @classmethod
    def from_dict(cls, values: Dict[str, float]) -> 'UniversalDriveParams':
        return cls(**{k: float(v) for k, v in values.items()})


def universal_signal(p: UniversalDriveParams,
                     omega1: float,
                     omega2: float,
                     base_freq: Optional[float] = None) -> DriveSignal:
    """Flux signal F(t) realising the universal two-qubit coupler

    Parameters
    ----------
    p : UniversalDriveParams
    omega1, omega2 : float
      Qubit angular frequencies.
    base_freq : float, optional
      Frequency unit of the rational tone frequencies, ``omega1`` by
      default.

    Returns
    -------
    DriveSignal
      Offset pi/2 - f_zz; a pump tone at omega1 + omega2, a frequency
      converting tone at |omega1 - omega2| and half-frequency tones at
      omega1/2 and omega2/2. Tones with zero amplitude are omitted.
    """
    if omega1 <= 0 or omega2 <= 0:
        raise SignalError('qubit frequencies must be positive')
    if omega1 == omega2:
        raise SignalError(
            'degenerate qubit frequencies: the frequency converting tone '
            'would be static')
    base_freq = omega1 if base_freq is None else base_freq
    chi_minus = p.chi1 - p.chi2
    channels = [
        (-2 * p.f_xy2, omega1 + omega2, p.chi1 + p.chi2),
        (-2 * p.f_xy0, omega1 - omega2, chi_minus),
        (2 * sqrt(2) * p.f_xz, omega1 / 2, p.psi1 / 2),
        (2 * sqrt(2) * p.f_zx, omega2 / 2, p.psi2 / 2),
    ]
    tones = []
    for amplitude, frequency, phase in channels:
        # validate all frequencies, also of silent channels
        tone = make_tone(amplitude, frequency, phase, base_freq)
        if amplitude != 0:
            tones.append(tone)
    return DriveSignal(pi / 2 - p.f_zz, base_freq, tuple(tones))


@dataclass(frozen=True)
class SplitTransmonDriveParams:
    """Flux drive of a split transmon with junctions ej1, ej2"""
    ej1: float
    ej2: float
    k1: float = 0.
    k2: float = 0.
    k3: float = 0.
    chi: float = 0.

    def __post_init__(self):
        for name in ('k1', 'k2', 'k3'):
            value = getattr(self, name)
            if not 0. <= value <= MAX_AMPLITUDE:
                raise SignalError(
                    '{} = {!r} outside [0, {}]'.format(name, value, MAX_AMPLITUDE))
        if self.k3 and self.ej1 == self.ej2:
            lgr.warning(
                'symmetric split transmon (ej1 == ej2): the k3 tone '
                'does not produce a sin(phi) drive')


@dataclass(frozen=True)
class ReadoutDrive:
    """Flux signal and the qubit drive coefficients it produces

    The qubit sees ``2 cos(phi) [f1 cos((w_R + w_T) t + chi) +
    f2 cos((w_R - w_T) t - chi)] + 2 f3 sin(phi) cos(w_R t)`` on top of
    ``-(ej1 + ej2) cos(phi)`` and the static shift
    ``static_shift * cos(phi)``.
    """
    phi_signal: DriveSignal
    f1: float
    f2: float
    f3: float
    chi: float
    static_shift: float
    dropped: Tuple[Dict, ...] = ()

    @property
    def hd_coeffs(self) -> Tuple[float, float, float]:
        return self.f1, self.f2, self.f3


def readout_flux_signal(p: SplitTransmonDriveParams,
                        omega_r: float,
                        omega_t: float,
                        base_freq: Optional[float] = None) -> ReadoutDrive:
    """Flux signal of the arbitrary-axis readout and its drive coefficients

    With the junction phases phi -+ Phi/2 the split transmon energy is
    ``-(ej1 + ej2) cos(phi) cos(Phi/2) - (ej1 - ej2) sin(phi) sin(Phi/2)``;
    expanding to second order in the k's gives the coefficients below.
    Terms at other frequencies are listed in ``dropped``.
    """
    if omega_r == omega_t:
        raise SignalError('resonator and qubit frequencies coincide')
    base_freq = omega_t if base_freq is None else base_freq
    ej_sum = p.ej1 + p.ej2
    # components of Phi/2: (amplitude, frequency, phase)
    halves = [
        (p.k1, (omega_r + omega_t) / 2, p.chi / 2),
        (p.k2, (omega_r - omega_t) / 2, -p.chi / 2),
        (p.k3, omega_r, 0.),
    ]
    tones = []
    for amplitude, frequency, phase in halves:
        tone = make_tone(2 * amplitude, frequency, phase, base_freq)
        if amplitude:
            tones.append(tone)
    phi_signal = DriveSignal(0., base_freq, tuple(tones))

    dropped = []
    if p.k3:
        dropped.append(dict(
            term='cos(phi) cos(2 omega_r t)',
            amplitude=ej_sum * p.k3 ** 2 / 4,
            frequency=2 * omega_r))
    labels = ('k1', 'k2', 'k3')
    for i in range(3):
        for j in range(i + 1, 3):
            a_i, w_i, _ = halves[i]
            a_j, w_j, _ = halves[j]
            if not (a_i and a_j):
                continue
            for frequency in (w_i + w_j, abs(w_i - w_j)):
                dropped.append(dict(
                    term='cos(phi) {}*{} cross term'.format(labels[i], labels[j]),
                    amplitude=ej_sum * a_i * a_j / 2,
                    frequency=frequency))
    for entry in dropped:
        lgr.debug('dropping higher order flux term %s', entry)

    return ReadoutDrive(
        phi_signal=phi_signal,
        f1=ej_sum * p.k1 ** 2 / 8,
        f2=ej_sum * p.k2 ** 2 / 8,
        f3=-(p.ej1 - p.ej2) * p.k3 / 2,
        chi=p.chi,
        static_shift=ej_sum * (p.k1 ** 2 + p.k2 ** 2 + p.k3 ** 2) / 4,
        dropped=tuple(dropped))


def cooling_coupling_signal(g: float,
                            delta: float,
                            base_freq: Optional[float] = None) -> DriveSignal:
    """2 g cos(delta t), multiplying the primary/shadow exchange operator"""
    if delta <= 0:
        raise SignalError(
            'shadow detuning must be positive, got {!r}'.format(delta))
    base_freq = delta if base_freq is None else base_freq
    tone = make_tone(2 * g, delta, 0., base_freq)
    return DriveSignal(0., base_freq, (tone,) if g else ())


def multilevel_signal(k0: float,
                      k1: float,
                      k2: float,
                      k3: float,
                      delta: float,
                      alpha1: float,
                      alpha2: float,
                      base_freq: Optional[float] = None,
                      detuning1: float = 0.,
                      detuning2: float = 0.) -> DriveSignal:
    """Flux signal cancelling the two-photon nonlinearity of a transmon pair

    Offset pi/2 and tones k0 at delta, k1 at delta + alpha1, k2 at
    delta - alpha2 and a k3 pair at delta +- (alpha1 - alpha2). The
    optional detunings shift the k1 and k2 tones off resonance.

    Raises
    ------
    SignalError
      If any tone frequency is zero or two tone frequencies coincide.
    """
    alpha12 = alpha1 - alpha2
    base_freq = abs(delta) if base_freq is None else base_freq
    channels = [
        (k0, delta),
        (k1, delta + alpha1 + detuning1),
        (k2, delta - alpha2 + detuning2),
        (k3, delta + alpha12),
        (k3, delta - alpha12),
    ]
    ratios: List[Fraction] = []
    tones = []
    for amplitude, frequency in channels:
        tone = make_tone(amplitude, frequency, 0., base_freq)
        if tone.ratio in ratios:
            raise SignalError(
                'aliased multilevel tones at frequency {!r}'.format(
                    abs(frequency)))
        ratios.append(tone.ratio)
        if amplitude:
            tones.append(tone)
    return DriveSignal(pi / 2, base_freq, tuple(tones))
