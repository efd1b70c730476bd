"""Domain types for the single-photon entanglement link.

Conventions used throughout the package:

* times are in ns, measured from the arrival of the excitation pulse at
  the detectors (node A clock); angular frequencies/detunings in rad/ns;
* each emitter is prepared in sqrt(alpha)|0> + sqrt(1-alpha) e^{-i theta}|1>,
  where |0> is the optically bright state;
* the excitation splits the bright branch into amplitudes (c0, ce, cee) for
  zero, one and two emitted photons; amplitudes are real nonnegative, any
  physical phase is absorbed into laser_phase / the stabilization setpoint;
* the two-qubit basis order is {|00>, |01>, |10>, |11>} (A first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_NORM_TOL = 1e-12

BASIS_LABELS = ("00", "01", "10", "11")


def excitation_amplitudes(theta: float, cee: float = 0.0) -> tuple[float, float, float]:
    """(c0, ce, cee) for an optical rotation angle theta, optionally

    reserving weight ``cee`` for double emission.  The single-emission
    amplitude is scaled down so the branch amplitudes stay normalized.
    """
    c0 = math.cos(theta / 2.0)
    ce2 = 1.0 - c0 * c0 - cee * cee
    if ce2 < -_NORM_TOL:
        raise ValueError("cee too large for the requested rotation angle")
    return c0, math.sqrt(max(ce2, 0.0)), cee


@dataclass(frozen=True)
class NodeParams:
    """Physical settings of one emitter."""

    alpha: float                     # bright-state population
    eta: float                       # end-to-end detection probability
    theta_phase: float = 0.0         # superposition phase (rad)
    c0: float = 0.0                  # no-emission amplitude
    ce: float = 1.0                  # single-emission amplitude
    cee: float = 0.0                 # double-emission amplitude
    detuning: float = 0.0            # laser-to-transition offset (rad/ns)
    pol: tuple[float, float, float] = (1.0, 0.0, 0.0)
    laser_phase: float = 0.0         # phi_l (rad)

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")
        if min(self.c0, self.ce, self.cee) < 0.0:
            raise ValueError("excitation amplitudes must be nonnegative")
        norm = self.c0 ** 2 + self.ce ** 2 + self.cee ** 2
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(
                f"excitation amplitudes must satisfy c0^2+ce^2+cee^2=1, got {norm}")
        pol = np.asarray(self.pol, dtype=float)
        if pol.shape != (3,) or abs(pol @ pol - 1.0) > 1e-9:
            raise ValueError("pol must be a unit 3-vector")

    def pol_vector(self) -> np.ndarray:
        return np.asarray(self.pol, dtype=float)


def pol_from_mismatch(angle_rad: float) -> tuple[float, float, float]:
    """Unit polarization rotated by ``angle_rad`` from the x axis."""
    return (math.cos(angle_rad), math.sin(angle_rad), 0.0)


@dataclass(frozen=True)
class PhotonEnvelope:
    """Exponential temporal mode of a spontaneously emitted photon."""

    tau: float             # excited-state lifetime (ns)
    t_exc: float = 0.0     # excitation time (ns)

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")

    def amplitude(self, t_em) -> np.ndarray:
        """Mode amplitude density at emission time ``t_em`` (units ns^-1/2).

        Zero before t_exc (Heaviside factor), then e^{-(t-t_exc)/2tau}/sqrt(tau).
        """
        dt = np.asarray(t_em, dtype=float) - self.t_exc
        out = np.where(dt >= 0.0, np.exp(-np.clip(dt, 0.0, None) / (2.0 * self.tau))
                       / math.sqrt(self.tau), 0.0)
        if np.isscalar(t_em):
            return float(out)
        return out

    def support_end(self, tails: float = 60.0) -> float:
        """Time beyond which the remaining mode weight is negligible."""
        return self.t_exc + tails * self.tau


def envelope_amplitude(env: PhotonEnvelope, t_em) -> float:
    """Module-level alias for :meth:`PhotonEnvelope.amplitude`."""
    return env.amplitude(t_em)


@dataclass(frozen=True)
class DetectionWindow:
    """Accepted heralding interval, relative to the pulse peak."""

    start: float
    duration: float

    def __post_init__(self):
        if self.duration <= 0.0:
            raise ValueError("window duration must be positive")

    @property
    def end(self) -> float:
        return self.start + self.duration

    def contains(self, t: float) -> bool:
        return self.start <= t <= self.end


@dataclass(frozen=True)
class DetectionSetup:
    """Which port clicked, when, and the optical-phase bookkeeping.

    ``phase_setpoint`` is the stabilized optical phase difference between
    the two excitation/collection paths; ``path_delay`` is dL/c, the pulse
    arrival-time difference between the nodes.
    """

    port: str                       # "C" or "D"
    t_prime: float                  # first detection time (ns)
    window: DetectionWindow
    t_dprime: float | None = None   # second detection time, same port
    path_delay: float = 0.0         # dL/c (ns)
    phase_setpoint: float = 0.0     # delta-phi (rad)

    def __post_init__(self):
        if self.port not in ("C", "D"):
            raise ValueError("port must be 'C' or 'D'")
        if not self.window.contains(self.t_prime):
            raise ValueError("t_prime must lie inside the detection window")
        if self.t_dprime is not None:
            if self.t_dprime < self.t_prime:
                raise ValueError("t_dprime must not precede t_prime")
            if not self.window.contains(self.t_dprime):
                raise ValueError("t_dprime must lie inside the detection window")

    @property
    def port_sign(self) -> int:
        return 1 if self.port == "C" else -1


@dataclass
class DensityMatrix4:
    """4x4 two-qubit matrix in the {|00>,|01>,|10>,|11>} basis.

    When unnormalized, the trace is the click probability associated with
    the detection pattern that produced it.
    """

    entries: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.entries + self.entries.conj().T))[0])

    def validate(self, herm_tol: float = 1e-12, psd_tol: float = -1e-10) -> None:
        if self.hermiticity_defect() > herm_tol * max(1.0, abs(self.trace)):
            raise ValueError("matrix is not Hermitian within tolerance")
        if self.min_eigenvalue() < psd_tol * max(1.0, abs(self.trace)):
            raise ValueError("matrix is not positive semidefinite within tolerance")
        if self.normalized and abs(self.trace - 1.0) > 1e-12:
            raise ValueError("normalized matrix must have unit trace")

    def normalize(self) -> "DensityMatrix4":
        tr = self.trace
        if tr <= 0.0:
            raise ValueError("cannot normalize a matrix with nonpositive trace")
        return DensityMatrix4(self.entries / tr, normalized=True)

    def __add__(self, other: "DensityMatrix4") -> "DensityMatrix4":
        return DensityMatrix4(self.entries + other.entries, normalized=False)


def bell_state(phase: float = 0.0) -> np.ndarray:
    """(|01> + e^{i phase}|10>)/sqrt(2) as a length-4 vector."""
    v = np.zeros(4, dtype=complex)
    v[1] = 1.0 / math.sqrt(2.0)
    v[2] = np.exp(1j * phase) / math.sqrt(2.0)
    return v
