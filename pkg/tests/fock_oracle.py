"""Brute-force state-vector oracle for the detection-pattern engine.

Independent of the production code: the full pre-beam-splitter state is
expanded over creation-operator monomials on a discrete time-bin grid
(detected and loss paths per node, three polarization components per
photon), the beam splitter is applied literally, and each detection
pattern is projected out by annihilating click modes and tracing the
loss content.  Only numpy dictionaries here, no heraldlink imports.

Mode labels are tuples (channel, bin, pol) with channel in
{"dA", "dB", "rA", "rB"} before the beam splitter and {"C", "D"} after.
States are dicts mapping (qubit_a, qubit_b, photons) -> amplitude where
``photons`` is a sorted tuple of mode labels (repeats allowed; monomials of
creation operators, so <mono|mono> = prod of multiplicity factorials).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict

import numpy as np


def _node_terms(alpha, theta, c0, ce, cee, eta, z, zz, pol, which):
    """Terms (qubit, photons) -> amp for one node, photons still in the
    node's own detected path."""
    det = "d" + which
    lost = "r" + which
    terms = defaultdict(complex)
    terms[(1, ())] += math.sqrt(1.0 - alpha) * np.exp(-1j * theta)
    bright = math.sqrt(alpha)
    terms[(0, ())] += bright * c0
    nbins = len(z)
    for k in range(nbins):
        for c in range(3):
            if pol[c] == 0.0:
                continue
            base = bright * ce * z[k] * pol[c]
            terms[(0, ((det, k, c),))] += base * math.sqrt(eta)
            terms[(0, ((lost, k, c),))] += base * math.sqrt(1.0 - eta)
    for k in range(nbins):
        for l in range(k + 1, nbins):
            if zz[k, l] == 0.0:
                continue
            for c1 in range(3):
                for c2 in range(3):
                    if pol[c1] == 0.0 or pol[c2] == 0.0:
                        continue
                    base = bright * cee * zz[k, l] * pol[c1] * pol[c2]
                    for ch1, w1 in ((det, math.sqrt(eta)), (lost, math.sqrt(1.0 - eta))):
                        for ch2, w2 in ((det, math.sqrt(eta)),
                                        (lost, math.sqrt(1.0 - eta))):
                            key = tuple(sorted(((ch1, k, c1), (ch2, l, c2))))
                            terms[(0, key)] += base * w1 * w2
    return terms


def build_state(node_a, node_b):
    """Full |Psi_3> after the central beam splitter.

    ``node_a``/``node_b`` are dicts with keys alpha, theta, c0, ce, cee,
    eta, z, zz, pol.
    """
    ta = _node_terms(which="A", **node_a)
    tb = _node_terms(which="B", **node_b)
    state = defaultdict(complex)
    for (qa, pa), aa in ta.items():
        for (qb, pb), ab in tb.items():
            state[(qa, qb, tuple(sorted(pa + pb)))] += aa * ab

    # beam splitter: dA -> (C + D)/sqrt(2), dB -> (C - D)/sqrt(2)
    out = defaultdict(complex)
    for (qa, qb, photons), amp in state.items():
        expansions = [(amp, [])]
        for (ch, k, c) in photons:
            nxt = []
            if ch == "dA":
                routes = ((("C", k, c), 1.0 / math.sqrt(2.0)),
                          (("D", k, c), 1.0 / math.sqrt(2.0)))
            elif ch == "dB":
                routes = ((("C", k, c), 1.0 / math.sqrt(2.0)),
                          (("D", k, c), -1.0 / math.sqrt(2.0)))
            else:
                routes = (((ch, k, c), 1.0),)
            for a0, labels in expansions:
                for label, w in routes:
                    nxt.append((a0 * w, labels + [label]))
            expansions = nxt
        for a0, labels in expansions:
            out[(qa, qb, tuple(sorted(labels)))] += a0
    return out


def annihilate(state, mode):
    """Apply a_mode to a monomial-expanded state."""
    out = defaultdict(complex)
    for (qa, qb, photons), amp in state.items():
        n = photons.count(mode)
        if n == 0:
            continue
        rest = list(photons)
        rest.remove(mode)
        out[(qa, qb, tuple(rest))] += amp * n
    return out


def _has_detected(photons):
    return any(ch in ("C", "D") for ch, _, _ in photons)


def _accumulate_loss_groups(state, rho, require_loss):
    """Sum |q><q'| over loss configurations (monomial norm included)."""
    groups = defaultdict(lambda: np.zeros(4, dtype=complex))
    for (qa, qb, photons), amp in state.items():
        if _has_detected(photons):
            continue
        if require_loss and len(photons) == 0:
            continue
        groups[photons][2 * qa + qb] += amp
    for photons, vec in groups.items():
        norm = 1.0
        for mult in Counter(photons).values():
            norm *= math.factorial(mult)
        rho += norm * np.outer(vec, vec.conj())
    return rho


def oracle_single(state, port, k):
    rho = np.zeros((4, 4), dtype=complex)
    for c in range(3):
        s1 = annihilate(state, (port, k, c))
        vec = np.zeros(4, dtype=complex)
        for (qa, qb, photons), amp in s1.items():
            if len(photons) == 0:
                vec[2 * qa + qb] += amp
        rho += np.outer(vec, vec.conj())
    return rho


def oracle_double(state, port, k1, k2):
    rho = np.zeros((4, 4), dtype=complex)
    for c1 in range(3):
        s1 = annihilate(state, (port, k1, c1))
        for c2 in range(3):
            s2 = annihilate(s1, (port, k2, c2))
            vec = np.zeros(4, dtype=complex)
            for (qa, qb, photons), amp in s2.items():
                if len(photons) == 0:
                    vec[2 * qa + qb] += amp
            rho += np.outer(vec, vec.conj())
    return rho


def oracle_incoherent(state, port, k, nbins):
    rho = np.zeros((4, 4), dtype=complex)
    for c1 in range(3):
        s1 = annihilate(state, (port, k, c1))
        rho = _accumulate_loss_groups(s1, rho, require_loss=True)
        for k2 in range(k + 1, nbins):
            for c2 in range(3):
                s2 = annihilate(s1, (port, k2, c2))
                rho = _accumulate_loss_groups(s2, rho, require_loss=True)
    return rho


def oracle_noise(state, p_d):
    rho = np.zeros((4, 4), dtype=complex)
    rho = _accumulate_loss_groups(state, rho, require_loss=False)
    return p_d * rho
