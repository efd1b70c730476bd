"""Unnormalized heralded density matrices per detection pattern.

Both emitters are prepared in sqrt(alpha)|0> + sqrt(1-alpha)e^{-i theta}|1>,
the bright branch emits 0/1/2 photons with amplitudes (c0, ce, cee), each
emitted photon reaches the central beam splitter with amplitude sqrt(eta)
or is lost with amplitude sqrt(1-eta), and the beam splitter maps a photon
from A (B) onto port C with amplitude 1/sqrt(2) (+1/sqrt(2)) and onto port D
with amplitude 1/sqrt(2) (-1/sqrt(2)).

The heralded state for a pattern class is computed by enumerating, for each
node, every emission branch together with an assignment of its photons to
the resolved click slots or to the node's loss channel.  Two assignments
contribute coherently exactly when their final environments overlap: click
slots must carry photons at the same times (with a polarization factor
kappa = eps_A . eps_B per slot whose origin differs between ket and bra),
and the lost-photon states overlap through the mode inner products exposed
by :mod:`heraldlink.modes`.  This reproduces the published closed forms in
their regimes of validity and additionally keeps the interference terms
between loss configurations that those forms drop.

Pattern classes (port P, first click at t'):

* single   - exactly one photon emitted, detected at t'; no photon lost.
* double   - two photons detected in the same port at t' and t''; none lost.
* incoherent - at least one photon lost; one or two clicks in port P (the
  unresolved second click time is integrated out).
* noise    - dark count at probability p_d with no signal photon detected:
  p_d times the product of the per-node states after tracing lost photons.

``high_loss=True`` evaluates the exact eta -> 0 leading order (loss
amplitudes set to 1, two-detected-photon patterns dropped), which is the
regime of the tailored closed-form model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoHeraldError
from .modes import LinkModes, link_modes
from .quadrature import adaptive_gauss_legendre
from .types import (DensityMatrix4, DetectionSetup, NodeParams, PhotonEnvelope)

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class _Outcome:
    """One emission branch of a single node with resolved photon fates."""

    qubit: int            # 0 bright, 1 dark
    amp: complex
    clicks: tuple         # slot indices consumed by this node
    loss: tuple | None    # None | ("single",) | ("pairdet", t) | ("pairboth",)
    n_lost: int


def _node_outcomes(p: NodeParams, nm, bs: complex, slots: tuple,
                   high_loss: bool) -> list[_Outcome]:
    """All ways one node can populate the click slots and its loss channel."""
    sqrt_loss = 1.0 if high_loss else math.sqrt(max(1.0 - p.eta, 0.0))
    sqrt_eta = math.sqrt(p.eta)
    out = [
        _Outcome(1, math.sqrt(1.0 - p.alpha) * np.exp(-1j * p.theta_phase),
                 (), None, 0),
    ]
    bright = math.sqrt(p.alpha)
    if p.c0 > 0.0:
        out.append(_Outcome(0, bright * p.c0, (), None, 0))
    if p.ce > 0.0:
        a0 = bright * p.ce
        for j, t in enumerate(slots):
            out.append(_Outcome(0, a0 * sqrt_eta * nm.z(t) * bs, (j,), None, 0))
        out.append(_Outcome(0, a0 * sqrt_loss, (), ("single",), 1))
    if p.cee > 0.0:
        a0 = bright * p.cee
        if len(slots) == 2:
            out.append(_Outcome(0, a0 * p.eta * nm.pair(slots[0], slots[1]) * bs * bs,
                                (0, 1), None, 0))
        for j, t in enumerate(slots):
            # detected partner's amplitude lives inside the loss profile
            out.append(_Outcome(0, a0 * sqrt_eta * sqrt_loss * bs, (j,),
                                ("pairdet", t), 1))
        out.append(_Outcome(0, a0 * sqrt_loss ** 2, (), ("pairboth",), 2))
    return out


def _loss_overlap(nm, ket: tuple | None, bra: tuple | None) -> complex:
    """<bra loss state | ket loss state> within one node's loss channel."""
    if ket is None and bra is None:
        return 1.0
    if ket is None or bra is None:
        return 0.0
    if ket[0] == "single" and bra[0] == "single":
        return nm.p1
    if ket[0] == "pairdet" and bra[0] == "pairdet":
        return nm.h(ket[1], bra[1])
    if ket[0] == "pairdet" and bra[0] == "single":
        return nm.g(ket[1])
    if ket[0] == "single" and bra[0] == "pairdet":
        return np.conj(nm.g(bra[1]))
    if ket[0] == "pairboth" and bra[0] == "pairboth":
        return nm.p2
    return 0.0


def _pattern_matrix(pa: NodeParams, pb: NodeParams, modes: LinkModes,
                    slots: tuple, port_sign: int, lost_photons: str,
                    high_loss: bool) -> np.ndarray:
    """Sum amp_ket amp_bra* <env_bra|env_ket> over all branch pairs.

    ``lost_photons`` is "none" (reject any loss) or "some" (require >= 1).
    """
    bs_a = 1.0 / _SQRT2
    bs_b = port_sign / _SQRT2
    slot_ids = tuple(range(len(slots)))

    branches = []
    for oa in _node_outcomes(pa, modes.a, bs_a, slots, high_loss):
        for ob in _node_outcomes(pb, modes.b, bs_b, slots, high_loss):
            if set(oa.clicks) & set(ob.clicks):
                continue
            if tuple(sorted(oa.clicks + ob.clicks)) != slot_ids:
                continue
            n_lost = oa.n_lost + ob.n_lost
            if lost_photons == "none" and n_lost != 0:
                continue
            if lost_photons == "some" and n_lost == 0:
                continue
            origins = ["A"] * len(slots)
            for j in ob.clicks:
                origins[j] = "B"
            branches.append((2 * oa.qubit + ob.qubit, oa.amp * ob.amp,
                             tuple(origins), oa, ob))

    rho = np.zeros((4, 4), dtype=complex)
    for qx, ax, ox, oax, obx in branches:
        for qy, ay, oy, oay, oby in branches:
            if oax.n_lost != oay.n_lost or obx.n_lost != oby.n_lost:
                continue
            fac = _loss_overlap(modes.a, oax.loss, oay.loss)
            if fac == 0.0:
                continue
            fac = fac * _loss_overlap(modes.b, obx.loss, oby.loss)
            if fac == 0.0:
                continue
            mism = sum(1 for sa, sb in zip(ox, oy) if sa != sb)
            rho[qx, qy] += ax * np.conj(ay) * fac * modes.kappa ** mism
    return rho


# ---------------------------------------------------------------------------
# modes-level pattern matrices (shared by the continuum API and the
# discrete-grid tests)
# ---------------------------------------------------------------------------

def single_pattern(pa: NodeParams, pb: NodeParams, modes: LinkModes, t,
                   port_sign: int, high_loss: bool = False) -> np.ndarray:
    return _pattern_matrix(pa, pb, modes, (t,), port_sign, "none", high_loss)


def double_pattern(pa: NodeParams, pb: NodeParams, modes: LinkModes, t1, t2,
                   port_sign: int) -> np.ndarray:
    return _pattern_matrix(pa, pb, modes, (t1, t2), port_sign, "none", False)


def incoherent_pattern(pa: NodeParams, pb: NodeParams, modes: LinkModes, t,
                       port_sign: int, high_loss: bool = False) -> np.ndarray:
    mat = _pattern_matrix(pa, pb, modes, (t,), port_sign, "some", high_loss)
    # a second click plus a loss needs three emitted photons, so a double
    # emission must be possible somewhere
    if not high_loss and (pa.cee > 0.0 or pb.cee > 0.0):

        def two_click(t2):
            return _pattern_matrix(pa, pb, modes, (t, t2), port_sign,
                                   "some", False)

        mat = mat + modes.second_click_sum(t, two_click)
    return mat


# ---------------------------------------------------------------------------
# public pattern matrices
# ---------------------------------------------------------------------------

def _default_modes(pa, pb, env_a, env_b, setup):
    return link_modes(pa, pb, env_a, env_b, setup)


def rho_single(pa: NodeParams, pb: NodeParams, setup: DetectionSetup,
               env_a: PhotonEnvelope, env_b: PhotonEnvelope,
               modes: LinkModes | None = None,
               high_loss: bool = False) -> DensityMatrix4:
    """One photon emitted and detected at t', nothing lost (density per ns)."""
    if setup.t_dprime is not None:
        raise ValueError("rho_single takes a single detection time")
    m = modes or _default_modes(pa, pb, env_a, env_b, setup)
    return DensityMatrix4(single_pattern(pa, pb, m, setup.t_prime,
                                         setup.port_sign, high_loss))


def rho_double(pa: NodeParams, pb: NodeParams, setup: DetectionSetup,
               env_a: PhotonEnvelope, env_b: PhotonEnvelope,
               modes: LinkModes | None = None) -> DensityMatrix4:
    """Two photons detected in the same port at t' < t'', nothing lost."""
    if setup.t_dprime is None:
        raise ValueError("rho_double needs a second detection time")
    if setup.t_dprime <= setup.t_prime:
        raise ValueError("t_dprime must be strictly after t_prime")
    m = modes or _default_modes(pa, pb, env_a, env_b, setup)
    return DensityMatrix4(double_pattern(pa, pb, m, setup.t_prime,
                                         setup.t_dprime, setup.port_sign))


def rho_incoherent(pa: NodeParams, pb: NodeParams, setup: DetectionSetup,
                   env_a: PhotonEnvelope, env_b: PhotonEnvelope,
                   modes: LinkModes | None = None,
                   high_loss: bool = False) -> DensityMatrix4:
    """At least one photon lost, clicks only in the heralding port.

    The head click time t' is resolved; the possible second click and all
    lost-photon emission times are integrated out (per-ns density in t').
    """
    m = modes or _default_modes(pa, pb, env_a, env_b, setup)
    return DensityMatrix4(incoherent_pattern(pa, pb, m, setup.t_prime,
                                             setup.port_sign, high_loss))


def rho_noise(pa: NodeParams, pb: NodeParams, p_d: float,
              modes: LinkModes | None = None,
              high_loss: bool = False) -> DensityMatrix4:
    """False herald by a noise count: p_d times the no-signal-detected state.

    Projecting both detected paths on vacuum and tracing the loss channels
    factorizes over the nodes.  The product contains the paper's rho_0
    (nothing emitted, single-qubit coherences kept) and the diagonal
    all-photons-lost part, plus their cross terms.
    """
    if not 0.0 <= p_d <= 1.0:
        raise ValueError("p_d must lie in [0, 1]")

    def node_matrix(p: NodeParams, nm) -> np.ndarray:
        lf = 1.0 if high_loss else (1.0 - p.eta)
        p1 = nm.p1 if nm is not None else 1.0
        p2 = nm.p2 if nm is not None else 1.0
        pop0 = p.alpha * (p.c0 ** 2 + p.ce ** 2 * lf * p1 + p.cee ** 2 * lf ** 2 * p2)
        coh = math.sqrt(p.alpha * (1.0 - p.alpha)) * p.c0 * np.exp(1j * p.theta_phase)
        return np.array([[pop0, coh], [np.conj(coh), 1.0 - p.alpha]], dtype=complex)

    nm_a = modes.a if modes is not None else None
    nm_b = modes.b if modes is not None else None
    return DensityMatrix4(p_d * np.kron(node_matrix(pa, nm_a), node_matrix(pb, nm_b)))


def mode_overlap(pa: NodeParams, pb: NodeParams, setup: DetectionSetup,
                 env_a: PhotonEnvelope, env_b: PhotonEnvelope,
                 t: float) -> complex:
    """(eps_A . eps_B) z_A(t) z_B*(t): the single-photon coherence kernel."""
    m = _default_modes(pa, pb, env_a, env_b, setup)
    return m.kappa * m.a.z(t) * np.conj(m.b.z(t))


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeraldResult:
    p_click: float
    rho: DensityMatrix4


def assemble(pa: NodeParams, pb: NodeParams, setup: DetectionSetup,
             env_a: PhotonEnvelope, env_b: PhotonEnvelope,
             p_d: float = 0.0, integrate_over_window: bool = True,
             high_loss: bool = False, rtol: float = 1e-8) -> HeraldResult:
    """Average heralded state and click probability for the chosen port.

    With ``integrate_over_window`` the single-click patterns are integrated
    over the detection window and the two-photon pattern over the ordered
    region t'' >= t' inside it.  Otherwise all quantities are per-ns
    densities at the resolved ``setup.t_prime`` (noise spread uniformly over
    the window).
    """
    m = _default_modes(pa, pb, env_a, env_b, setup)
    win = setup.window
    sign = setup.port_sign

    def one_click_density(t):
        return (single_pattern(pa, pb, m, t, sign, high_loss)
                + incoherent_pattern(pa, pb, m, t, sign, high_loss))

    include_double = not high_loss and (
        (pa.ce > 0.0 and pb.ce > 0.0) or pa.cee > 0.0 or pb.cee > 0.0)

    def double_at(t1, t2):
        return double_pattern(pa, pb, m, t1, t2, sign)

    noise = rho_noise(pa, pb, p_d, modes=m, high_loss=high_loss).entries

    if integrate_over_window:
        total = adaptive_gauss_legendre(one_click_density, win.start, win.end,
                                        rtol=rtol)
        if include_double:
            def inner(t1):
                if win.end - t1 <= 0.0:
                    return np.zeros((4, 4), dtype=complex)
                return adaptive_gauss_legendre(lambda t2: double_at(t1, t2),
                                               t1, win.end, rtol=rtol)
            total = total + adaptive_gauss_legendre(inner, win.start, win.end,
                                                    rtol=rtol)
        total = total + noise
    else:
        total = one_click_density(setup.t_prime)
        if include_double and win.end > setup.t_prime:
            total = total + adaptive_gauss_legendre(
                lambda t2: double_at(setup.t_prime, t2), setup.t_prime,
                win.end, rtol=rtol)
        total = total + noise / win.duration

    p_click = float(np.real(np.trace(total)))
    if p_click <= 0.0:
        raise NoHeraldError("click probability is zero for these settings")
    return HeraldResult(p_click=p_click,
                        rho=DensityMatrix4(total / p_click, normalized=True))
