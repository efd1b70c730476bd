"""Photon-mode primitives consumed by the detection-pattern engine.

Each emitter contributes a single-photon temporal mode and (for double
emission) a joint two-photon mode.  The pattern engine only ever needs a
small set of scalar primitives per node:

* ``z(t)``          detected-mode amplitude at detector time t (complex,
                    carries detuning/path/laser phases),
* ``pair(t1, t2)``  detected joint-mode amplitude, strictly ordered t1 < t2,
* ``p1``/``p2``     total single/double mode weight (1 for normalized modes),
* ``g(t)``          overlap of the single-emission loss profile with the
                    loss profile of a double emission whose other photon was
                    detected at t,
* ``h(ta, tb)``     overlap of two such double-emission loss profiles.

Two backends implement the interface: ``ExponentialNodeModes`` (spontaneous
decay, analytic integrals) and ``DiscreteNodeModes`` (arbitrary complex
amplitudes on a time-bin grid, used to cross-check the engine against a
brute-force state-vector computation).

The double-emission joint mode is modeled as a product of two exponential
envelopes with the second excitation at the first emission time,
Z(t1, t2) = E(t1; t_exc) E(t2; t1), which is normalized on t2 > t1 by
construction.

Phase convention: a photon from node i detected at detector time t carries

    u_i(t) = exp(-i [Delta_i (t + delay_i) + off_i]),

with delay_A = 0, delay_B = dL/c, off_A = phase_setpoint - laser_phase_A and
off_B = -laser_phase_B.  This reproduces the entangled-state phase
phi = theta_B - theta_A + delta_phi + (Delta_A - Delta_B) t - Delta_B dL/c
for the coherence element a12 = |a12| e^{-i phi}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_gauss_legendre
from .types import DetectionSetup, NodeParams, PhotonEnvelope


class ExponentialNodeModes:
    """Analytic primitives for spontaneously decayed photons."""

    def __init__(self, tau: float, t_exc: float = 0.0, detuning: float = 0.0,
                 delay: float = 0.0, phase_offset: float = 0.0):
        self.tau = tau
        self.t_exc = t_exc
        self.detuning = detuning
        self.delay = delay
        self.phase_offset = phase_offset
        self.p1 = 1.0
        self.p2 = 1.0

    # -- helpers in the node-local emission frame ---------------------------

    def _env(self, s: float) -> float:
        d = s - self.t_exc
        if d < 0.0:
            return 0.0
        return math.exp(-d / (2.0 * self.tau)) / math.sqrt(self.tau)

    def _u(self, t: float) -> complex:
        return cmath.exp(-1j * (self.detuning * (t + self.delay) + self.phase_offset))

    # -- engine interface ----------------------------------------------------

    def z(self, t: float) -> complex:
        return self._env(t + self.delay) * self._u(t)

    def pair(self, t1: float, t2: float) -> complex:
        s1, s2 = t1 + self.delay, t2 + self.delay
        if s2 <= s1:
            return 0.0
        return self._env(s1) * math.exp(-(s2 - s1) / (2.0 * self.tau)) \
            / math.sqrt(self.tau) * self._u(t1) * self._u(t2)

    def marginal_det_first(self, t: float) -> float:
        """Integral over lost second-emission times of |Z(t, s)|^2."""
        d = t + self.delay - self.t_exc
        if d < 0.0:
            return 0.0
        return math.exp(-d / self.tau) / self.tau

    def marginal_det_second(self, t: float) -> float:
        """Integral over lost first-emission times of |Z(s, t)|^2."""
        d = t + self.delay - self.t_exc
        if d < 0.0:
            return 0.0
        return d * math.exp(-d / self.tau) / self.tau ** 2

    def g(self, t: float) -> complex:
        d = t + self.delay - self.t_exc
        if d < 0.0:
            return 0.0
        real = (2.0 * math.exp(-d / (2.0 * self.tau))
                - math.exp(-d / self.tau)) / math.sqrt(self.tau)
        return real * self._u(t)

    def h(self, ta: float, tb: float) -> complex:
        da = ta + self.delay - self.t_exc
        db = tb + self.delay - self.t_exc
        if da < 0.0 or db < 0.0:
            return 0.0
        lo, hi = (da, db) if da <= db else (db, da)
        tau = self.tau
        real = (math.exp(-(lo + hi) / (2.0 * tau)) * (lo / tau ** 2 + 2.0 / tau)
                - math.exp(-hi / tau) / tau)
        return real * self._u(ta) * self._u(tb).conjugate()

    def support_end(self) -> float:
        return self.t_exc - self.delay + 60.0 * self.tau


class DiscreteNodeModes:
    """Arbitrary complex mode amplitudes on a strictly ordered bin grid.

    ``z`` has shape (K,), ``zz`` shape (K, K) with only the strictly upper
    triangle used.  "Times" are bin indices; integrals are plain sums, so
    the same numbers are directly comparable with a Fock-space brute force
    on the same grid.
    """

    def __init__(self, z: np.ndarray, zz: np.ndarray):
        self._z = np.asarray(z, dtype=complex)
        k = self._z.shape[0]
        self._zz = np.triu(np.asarray(zz, dtype=complex), k=1)
        if self._zz.shape != (k, k):
            raise ValueError("zz must be K x K for K bins")
        self.nbins = k
        self.p1 = float(np.sum(np.abs(self._z) ** 2))
        self.p2 = float(np.sum(np.abs(self._zz) ** 2))

    def _profile(self, k: int) -> np.ndarray:
        """Loss profile of the undetected partner when one pair photon is
        detected in bin k (first-lost and second-lost orderings combined)."""
        f = np.zeros(self.nbins, dtype=complex)
        f[k + 1:] = self._zz[k, k + 1:]
        f[:k] = self._zz[:k, k]
        return f

    def z(self, k: int) -> complex:
        return complex(self._z[k])

    def pair(self, k1: int, k2: int) -> complex:
        if k2 <= k1:
            return 0.0
        return complex(self._zz[k1, k2])

    def marginal_det_first(self, k: int) -> float:
        return float(np.sum(np.abs(self._zz[k, k + 1:]) ** 2))

    def marginal_det_second(self, k: int) -> float:
        return float(np.sum(np.abs(self._zz[:k, k]) ** 2))

    def g(self, k: int) -> complex:
        return complex(np.vdot(self._z, self._profile(k)))

    def h(self, ka: int, kb: int) -> complex:
        return complex(np.vdot(self._profile(kb), self._profile(ka)))


@dataclass
class LinkModes:
    """Mode primitives for both nodes plus the polarization overlap."""

    a: object
    b: object
    kappa: float
    continuum: bool

    def second_click_sum(self, t_first, fn, rtol: float = 1e-9):
        """Sum/integrate ``fn(t_second)`` over second-click times after the

        first click.  ``fn`` may return scalars or arrays.
        """
        if self.continuum:
            t_end = max(self.a.support_end(), self.b.support_end())
            if t_end <= t_first:
                return np.asarray(fn(t_first)) * 0.0
            return adaptive_gauss_legendre(fn, t_first, t_end, rtol=rtol)
        total = None
        for k in range(int(t_first) + 1, self.a.nbins):
            val = np.asarray(fn(k))
            total = val if total is None else total + val
        if total is None:
            return np.asarray(fn(t_first)) * 0.0
        return total


def link_modes(node_a: NodeParams, node_b: NodeParams,
               env_a: PhotonEnvelope, env_b: PhotonEnvelope,
               setup: DetectionSetup) -> LinkModes:
    """Continuum link built from per-node physical parameters."""
    a = ExponentialNodeModes(env_a.tau, env_a.t_exc, node_a.detuning,
                             delay=0.0,
                             phase_offset=setup.phase_setpoint - node_a.laser_phase)
    b = ExponentialNodeModes(env_b.tau, env_b.t_exc, node_b.detuning,
                             delay=setup.path_delay,
                             phase_offset=-node_b.laser_phase)
    kappa = float(node_a.pol_vector() @ node_b.pol_vector())
    return LinkModes(a=a, b=b, kappa=kappa, continuum=True)


def discrete_link_modes(z_a, zz_a, z_b, zz_b, kappa: float = 1.0) -> LinkModes:
    a = DiscreteNodeModes(z_a, zz_a)
    b = DiscreteNodeModes(z_b, zz_b)
    if a.nbins != b.nbins:
        raise ValueError("both nodes must use the same bin grid")
    return LinkModes(a=a, b=b, kappa=float(kappa), continuum=False)
