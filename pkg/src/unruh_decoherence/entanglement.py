"""Wootters concurrence, numerically and from closed-form eigenvalues."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .channels import SIGMA_Y, ChannelKind, Scenario, apply, make_channel
from .linalg import eigenvalues_product, kron
from .state import build_shared_state, check_r

SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)
SPIN_FLIP.setflags(write=False)


def spin_flip(rho) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y).

    The complex conjugate is required for complex states; for the real
    matrices produced by the channels here it makes no difference.
    """
    m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ValueError(f"spin flip needs a two-qubit matrix, got shape {m.shape}")
    return SPIN_FLIP @ m.conj() @ SPIN_FLIP


def concurrence_from_eigenvalues(eigenvalues: Iterable[float]) -> float:
    """max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l sorted descending."""
    lam = sorted((max(float(x), 0.0) for x in eigenvalues), reverse=True)
    roots = [math.sqrt(x) for x in lam]
    return max(0.0, roots[0] - sum(roots[1:]))


def concurrence_numeric(rho) -> float:
    m = np.asarray(rho, dtype=np.complex128)
    return concurrence_from_eigenvalues(eigenvalues_product(m, spin_flip(m)))


def concurrence(kind: ChannelKind | str, scenario: Scenario | str, r: float, p: float) -> float:
    """Numeric concurrence of the shared state after the channel."""
    return concurrence_numeric(apply(make_channel(kind, p), build_shared_state(r), scenario))


# Closed-form eigenvalues of rho_f rho_f~, written in their reference order (which
# is not always descending). Kept symbol for symbol; no algebra applied.

def _phase_flip_single(c2, p):
    return [(1 - 2 * p + p**2) * c2, p**2 * c2, 0.0, 0.0]


def _phase_damping_single(c2, p):
    root = 2 * math.sqrt(1 - p)
    return [(2 - p + root) * c2 / 4, (2 - p - root) * c2 / 4, 0.0, 0.0]


def _depolarizing_single(c2, p):
    # only exact at r = 0; see README
    small = p**2 * c2 / 9
    return [(-1 + p) ** 2 * c2, small, small, small]


def _phase_flip_both(c2, p):
    return [(1 + 2 * (-1 + p) * p) ** 2 * c2, 4 * (-1 + p) ** 2 * p**2 * c2, 0.0, 0.0]


def _phase_damping_both(c2, p):
    return [(-2 + p) ** 2 * c2 / 4, p**2 * c2 / 4, 0.0, 0.0]


def _depolarizing_both_eigenvalues(r: float, p: float) -> list[float]:
    q = p * (-3 + 2 * p)
    cos_r, cos_2r, cos_4r = math.cos(r), math.cos(2 * r), math.cos(4 * r)
    head = (
        324
        + q * (387 + 152 * q)
        + 4 * (3 - 4 * p) ** 2 * (9 + 5 * q) * cos_2r
        + (3 - 4 * p) ** 2 * q * cos_4r
    )
    radicand = (
        3 * (54 + q * (33 + 8 * q))
        + (3 - 4 * p) ** 2 * (2 * (9 - 6 * p + 4 * p**2) * cos_2r + q * cos_4r)
    )
    tail = 4 * (3 - 4 * p) ** 2 * cos_r * math.sqrt(max(radicand, 0.0))
    lam1 = (head + tail) / 1296
    lam3 = (head - tail) / 1296
    lam2 = q * (-9 + 4 * p + (-3 + 4 * p) * cos_2r) * (3 + 4 * p + (-3 + 4 * p) * cos_2r) / 648
    return [lam1, lam2, lam3, lam2]


_FORMULAS = {
    (ChannelKind.PHASE_FLIP, Scenario.ROB_ONLY): _phase_flip_single,
    (ChannelKind.PHASE_DAMPING, Scenario.ROB_ONLY): _phase_damping_single,
    (ChannelKind.DEPOLARIZING, Scenario.ROB_ONLY): _depolarizing_single,
    (ChannelKind.PHASE_FLIP, Scenario.BOTH_QUBITS): _phase_flip_both,
    (ChannelKind.PHASE_DAMPING, Scenario.BOTH_QUBITS): _phase_damping_both,
}


def has_analytic(kind, scenario) -> bool:
    Scenario(scenario)
    return ChannelKind(kind) is not ChannelKind.BIT_FLIP


@dataclass(frozen=True)
class AnalyticCase:
    kind: ChannelKind
    scenario: Scenario

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        if not has_analytic(self.kind, self.scenario):
            raise ValueError(
                f"no closed form for {self.kind.value}/{self.scenario.value}; use the numeric path"
            )

    def __str__(self):
        return f"{self.kind.value}/{self.scenario.value}"


ANALYTIC_CASES = tuple(
    AnalyticCase(k, s)
    for s in Scenario
    for k in (ChannelKind.PHASE_FLIP, ChannelKind.PHASE_DAMPING, ChannelKind.DEPOLARIZING)
)


def analytic_eigenvalues(case: AnalyticCase, r: float, p: float) -> list[float]:
    """Closed-form eigenvalues for ``case``, in their reference order."""
    r = check_r(r)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter must lie in [0, 1], got {p}")
    if case.kind is ChannelKind.DEPOLARIZING and case.scenario is Scenario.BOTH_QUBITS:
        return _depolarizing_both_eigenvalues(r, p)
    return _FORMULAS[case.kind, case.scenario](math.cos(r) ** 2, p)


def concurrence_analytic(case: AnalyticCase, r: float, p: float) -> float:
    return concurrence_from_eigenvalues(analytic_eigenvalues(case, r, p))


@dataclass(frozen=True)
class CrossValidation:
    case: AnalyticCase
    max_deviation: float
    argmax_r: float
    argmax_p: float
    n_points: int


AnalyticFn = Callable[[AnalyticCase, float, float], float]


def cross_validate(kind, scenario, r_grid: Sequence[float], p_grid: Sequence[float],
                   analytic: AnalyticFn = concurrence_analytic) -> CrossValidation:
    """Largest |C_numeric - C_analytic| over the grid and where it occurs."""
    case = AnalyticCase(kind, scenario)
    worst = (-1.0, math.nan, math.nan)
    n = 0
    for r in r_grid:
        for p in p_grid:
            dev = abs(concurrence(case.kind, case.scenario, r, p) - analytic(case, r, p))
            n += 1
            if dev > worst[0]:
                worst = (dev, r, p)
    return CrossValidation(case, worst[0], worst[1], worst[2], n)
