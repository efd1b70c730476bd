"""Analytic mode integrals vs direct quadrature, envelope invariants."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import quad

from heraldlink.modes import ExponentialNodeModes
from heraldlink.types import PhotonEnvelope, envelope_amplitude


def test_envelope_heaviside_and_value():
    env = PhotonEnvelope(tau=12.4, t_exc=3.0)
    assert env.amplitude(2.0) == 0.0
    assert env.amplitude(3.0) == pytest.approx(1.0 / np.sqrt(12.4))
    assert envelope_amplitude(env, 3.0 + 12.4) == pytest.approx(
        np.exp(-0.5) / np.sqrt(12.4))


def test_envelope_normalization():
    env = PhotonEnvelope(tau=7.3, t_exc=-2.0)
    val, _ = quad(lambda t: env.amplitude(t) ** 2, -2.0, -2.0 + 200 * 7.3)
    assert val == pytest.approx(1.0, abs=1e-9)


def _pair_env(m: ExponentialNodeModes, s1, s2):
    """|Z(s1, s2)| in the node-local frame (real product model)."""
    if s2 <= s1 or s1 < m.t_exc:
        return 0.0
    tau = m.tau
    return (np.exp(-(s1 - m.t_exc) / (2 * tau)) / np.sqrt(tau)
            * np.exp(-(s2 - s1) / (2 * tau)) / np.sqrt(tau))


def _profile(m, t, s):
    """Lost-partner profile f_t(s) for a pair photon detected at t."""
    if s > t:
        return _pair_env(m, t, s)
    return _pair_env(m, s, t)


@pytest.mark.parametrize("t", [0.05, 1.7, 9.0, 31.0])
def test_pair_marginals_match_quadrature(t):
    m = ExponentialNodeModes(tau=12.4, t_exc=0.0)
    up = 60 * m.tau
    m1, _ = quad(lambda s: _pair_env(m, t, s) ** 2, t, up)
    m2, _ = quad(lambda s: _pair_env(m, s, t) ** 2, 0.0, t)
    assert m.marginal_det_first(t) == pytest.approx(m1, rel=1e-8)
    assert m.marginal_det_second(t) == pytest.approx(m2, rel=1e-8, abs=1e-12)
    assert m.h(t, t).real == pytest.approx(m1 + m2, rel=1e-8)


@pytest.mark.parametrize("t", [0.3, 4.0, 18.0])
def test_single_pair_loss_overlap_matches_quadrature(t):
    m = ExponentialNodeModes(tau=9.1, t_exc=0.0)
    up = 80 * m.tau
    want, _ = quad(lambda s: m._env(s) * _profile(m, t, s), 0.0, up)
    assert m.g(t) == pytest.approx(want, rel=1e-8)


@pytest.mark.parametrize("ta,tb", [(0.5, 0.5), (1.0, 6.0), (14.0, 3.0),
                                   (22.0, 25.0)])
def test_pair_pair_loss_overlap_matches_quadrature(ta, tb):
    m = ExponentialNodeModes(tau=12.4, t_exc=0.0)
    up = 80 * m.tau
    want, _ = quad(lambda s: _profile(m, ta, s) * _profile(m, tb, s), 0.0, up,
                   points=[ta, tb], limit=200)
    assert m.h(ta, tb) == pytest.approx(want, rel=1e-7)


def test_pair_normalization():
    m = ExponentialNodeModes(tau=5.0, t_exc=1.0)
    total, _ = quad(lambda t: m.marginal_det_first(t), 1.0, 1.0 + 200 * 5.0)
    assert total == pytest.approx(1.0, abs=1e-9)


def test_phases_enter_through_detuning_and_offsets():
    m = ExponentialNodeModes(tau=12.4, t_exc=0.0, detuning=0.11, delay=0.8,
                             phase_offset=0.3)
    t = 5.0
    assert np.angle(m.z(t)) == pytest.approx(-(0.11 * (t + 0.8) + 0.3))
    # g and h carry the same detected-photon phase factors
    assert np.angle(m.g(t)) == pytest.approx(np.angle(m.z(t)))
    assert np.angle(m.h(2.0, 7.0)) == pytest.approx(
        np.angle(m._u(2.0) * np.conj(m._u(7.0))))
    # loss overlaps at equal arguments stay real
    assert abs(m.h(t, t).imag) < 1e-15
