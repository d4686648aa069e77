# emacs: -*- mode: python-mode; py-indent-offset: 4; tab-width: 4; indent-tabs-mode: nil -*-
# -*- coding: utf-8 -*-
# ex: set sts=4 ts=4 sw=4 noet:
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
#
#   See COPYING file distributed along with the datalad package for the
#   copyright and license terms.
#
# ## ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ### ##
"""Test flux signal synthesis"""

from fractions import Fraction
from math import pi

import numpy as np
from numpy.testing import assert_allclose

from datalad.tests.utils_pytest import (
    assert_in,
    assert_raises,
    eq_,
    ok_,
)

from ..drive_synth import (
    DriveSignal,
    SplitTransmonDriveParams,
    Tone,
    UniversalDriveParams,
    commensurate_period,
    cooling_coupling_signal,
    make_tone,
    multilevel_signal,
    readout_flux_signal,
    snap_frequency,
    universal_signal,
)
from ..exceptions import SignalError


def test_snap_frequency():
    eq_(snap_frequency(0.75, 1.), Fraction(3, 4))
    eq_(snap_frequency(1.75, 0.25), Fraction(7))
    assert_raises(SignalError, snap_frequency, 1 / 97., 1., 64)
    assert_raises(SignalError, snap_frequency, 1., 0.)


def test_commensurate_period():
    assert_allclose(
        commensurate_period(1., [Fraction(1), Fraction(3, 4)]), 8 * pi)
    eq_(commensurate_period(1., [Fraction(0)]), None)


def test_tone_normalization():
    tone = Tone(0.1, 4, 8)
    eq_((tone.freq_num, tone.freq_den), (1, 2))
    assert_raises(SignalError, Tone, 0.1, 0, 1)
    assert_raises(SignalError, make_tone, 0.1, 0., 0., 1.)
    flipped = make_tone(0.1, -0.5, 0.3, 1.)
    eq_(flipped.ratio, Fraction(1, 2))
    eq_(flipped.phase, -0.3)


def test_signal_evaluate_and_record():
    signal = DriveSignal(
        0.5, 1., (Tone(0.2, 1, 1, 0.1), Tone(0.3, 3, 2)))
    times = np.linspace(0., 10., 5)
    expected = 0.5 + 0.2 * np.cos(times + 0.1) + 0.3 * np.cos(1.5 * times)
    assert_allclose(signal.evaluate(times), expected)
    ok_(isinstance(signal.evaluate(1.), float))
    assert_allclose(signal.period, 4 * pi)
    restored = DriveSignal.from_record(signal.to_record())
    eq_(restored, signal)


def test_universal_signal_tones():
    p = UniversalDriveParams(
        f_zz=0.05, f_xy0=0.05, f_xy2=0.02, f_xz=0.1, f_zx=0.1, chi1=0.3)
    signal = universal_signal(p, 1., 0.75)
    assert_allclose(signal.offset, pi / 2 - 0.05)
    assert_allclose(
        sorted(signal.frequencies), [0.25, 0.375, 0.5, 1.75])
    # silent channels do not create tones
    eq_(len(universal_signal(UniversalDriveParams(f_zz=0.1), 1., 0.75).tones), 0)
    assert_raises(SignalError, universal_signal, p, 1., 1.)


def test_universal_params_limits():
    assert_raises(SignalError, UniversalDriveParams, f_zz=-0.31)
    assert_raises(SignalError, UniversalDriveParams, f_xy0=-0.01)
    assert_raises(SignalError, UniversalDriveParams, f_xz=0.31)
    p = UniversalDriveParams(f_zz=-0.3, psi1=1.)
    eq_(UniversalDriveParams.from_dict(p.to_dict()), p)


def test_readout_flux_signal():
    params = SplitTransmonDriveParams(ej1=30., ej2=20., k1=0.1, k2=0.05, k3=0.02, chi=0.4)
    drive = readout_flux_signal(params, 1.5, 1.)
    assert_allclose(drive.f1, 50. * 0.01 / 8)
    assert_allclose(drive.f2, 50. * 0.0025 / 8)
    assert_allclose(drive.f3, -10. * 0.02 / 2)
    assert_allclose(drive.static_shift, 50. * (0.01 + 0.0025 + 0.0004) / 4)
    assert_allclose(sorted(drive.phi_signal.frequencies), [0.25, 1.25, 1.5])
    ok_(len(drive.dropped) > 0)
    assert_raises(SignalError, readout_flux_signal, params, 1., 1.)
    assert_raises(SignalError, SplitTransmonDriveParams, 10., 10., k1=0.4)


def test_readout_flux_signal_matches_split_junction():
    ej1, ej2, k1, k2, k3, chi = 30., 20., 0.05, 0.04, 0.03, 0.4
    drive = readout_flux_signal(
        SplitTransmonDriveParams(ej1, ej2, k1=k1, k2=k2, k3=k3, chi=chi), 1.5, 1.)
    period = 8 * pi
    assert_allclose(drive.phi_signal.period, period)
    times = np.arange(4096) * period / 4096
    flux = 2 * (k1 * np.cos((2.5 * times + chi) / 2)
                + k2 * np.cos((0.5 * times - chi) / 2)
                + k3 * np.cos(1.5 * times))
    assert_allclose(drive.phi_signal.evaluate(times), flux, atol=1e-12)

    def junction(phi):
        return -ej1 * np.cos(phi - flux / 2) - ej2 * np.cos(phi + flux / 2)

    # H_d(t) = cos_part(t) cos(phi) + sin_part(t) sin(phi)
    cos_part, sin_part = junction(0.), junction(pi / 2)

    def component(values, frequency, phase=0.):
        return np.mean(values * np.cos(frequency * times + phase))

    assert_allclose(np.mean(cos_part) + ej1 + ej2, drive.static_shift, rtol=1e-2)
    assert_allclose(component(cos_part, 2.5, chi), drive.f1, rtol=2e-2)
    assert_allclose(component(cos_part, 0.5, -chi), drive.f2, rtol=2e-2)
    assert_allclose(component(sin_part, 1.5), drive.f3, rtol=1e-2)
    # tone phases: nothing in quadrature
    assert_allclose(component(cos_part, 2.5, chi - pi / 2), 0., atol=1e-5)
    assert_allclose(component(cos_part, 0.5, -chi - pi / 2), 0., atol=1e-5)
    assert_allclose(component(sin_part, 1.5, -pi / 2), 0., atol=1e-5)
    # the k1*k2 sum frequency lands on omega_r in the cos(phi) channel
    cross = [entry for entry in drive.dropped
             if entry['term'].endswith('k1*k2 cross term') and entry['frequency'] == 1.5]
    eq_(len(cross), 1)
    assert_allclose(2 * component(cos_part, 1.5), cross[0]['amplitude'], rtol=2e-2)
    # the larger junction sets the sign of the sin(phi) drive
    flipped = readout_flux_signal(
        SplitTransmonDriveParams(ej2, ej1, k1=k1, k2=k2, k3=k3, chi=chi), 1.5, 1.)
    assert_allclose(flipped.f3, -drive.f3)
    ok_(drive.f3 < 0)


def test_cooling_and_multilevel_signals():
    signal = cooling_coupling_signal(0.01, 4.)
    assert_allclose(signal.evaluate(0.), 0.02)
    assert_raises(SignalError, cooling_coupling_signal, 0.01, 0.)
    multilevel = multilevel_signal(0.1, 0.1, 0.1, 0.1, 0.5, 0.2, 0.25)
    assert_allclose(multilevel.offset, pi / 2)
    assert_allclose(
        sorted(multilevel.frequencies), [0.25, 0.45, 0.5, 0.55, 0.7])
    # equal anharmonicities put both k3 tones on the k0 tone
    with assert_raises(SignalError) as cm:
        multilevel_signal(0.1, 0.1, 0.1, 0.1, 0.5, 0.2, 0.2)
    assert_in('aliased', str(cm.value))
