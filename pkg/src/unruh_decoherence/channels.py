"""Single-qubit Kraus channels and their action on the Alice-Rob state.

Qubit 0 is Alice, qubit 1 is Rob (region I).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import kron
from .state import DensityMatrix

COMPLETENESS_TOL = 1e-12

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class ChannelKind(str, enum.Enum):
    BIT_FLIP = "bit-flip"
    PHASE_FLIP = "phase-flip"
    PHASE_DAMPING = "phase-damping"
    DEPOLARIZING = "depolarizing"


class Scenario(str, enum.Enum):
    ROB_ONLY = "single"
    BOTH_QUBITS = "both"


class CompletenessError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class KrausChannel:
    kind: ChannelKind
    p: float
    elements: tuple[np.ndarray, ...]

    def completeness_error(self) -> float:
        """Largest entry of |sum_i E_i^dagger E_i - I|."""
        total = sum(e.conj().T @ e for e in self.elements)
        return float(np.max(np.abs(total - IDENTITY)))

    def two_qubit_elements(self) -> list[np.ndarray]:
        """All pairwise products E_i (x) E_j, the same channel on both qubits."""
        return [kron(a, b) for a, b in product(self.elements, repeat=2)]


def make_channel(kind: ChannelKind | str, p: float) -> KrausChannel:
    kind = ChannelKind(kind)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter must lie in [0, 1], got {p}")
    keep, flip = math.sqrt(1 - p), math.sqrt(p)
    if kind is ChannelKind.BIT_FLIP:
        elements = (keep * IDENTITY, flip * SIGMA_X)
    elif kind is ChannelKind.PHASE_FLIP:
        elements = (keep * IDENTITY, flip * SIGMA_Z)
    elif kind is ChannelKind.PHASE_DAMPING:
        elements = (
            np.diag([1.0, keep]).astype(np.complex128),
            np.diag([0.0, flip]).astype(np.complex128),
        )
    else:
        w = math.sqrt(p / 3)
        elements = (keep * IDENTITY, w * SIGMA_X, w * SIGMA_Y, w * SIGMA_Z)
    for e in elements:
        e.setflags(write=False)
    return KrausChannel(kind, p, elements)


def _checked(channel: KrausChannel) -> None:
    err = channel.completeness_error()
    if err > COMPLETENESS_TOL:
        raise CompletenessError(
            f"{channel.kind.value} channel at p={channel.p} violates completeness by {err:.3g}"
        )


def apply_kraus(ops, rho) -> np.ndarray:
    m = np.asarray(rho)
    return sum(e @ m @ e.conj().T for e in ops)


def apply_to_qubit(channel: KrausChannel, rho: DensityMatrix, qubit: int) -> DensityMatrix:
    """Act with ``channel`` on one qubit of a two-qubit state."""
    _checked(channel)
    if qubit == 0:
        ops = [kron(e, IDENTITY) for e in channel.elements]
    elif qubit == 1:
        ops = [kron(IDENTITY, e) for e in channel.elements]
    else:
        raise IndexError(f"qubit index {qubit} out of range for 2 qubits")
    return DensityMatrix(apply_kraus(ops, rho), 2)


def apply_single(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Noise on Rob's qubit only."""
    return apply_to_qubit(channel, rho, 1)


def apply_both(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """The same channel, with the same p, acting on both qubits.

    The two-qubit Kraus set is the list of all products E_i (x) E_j rather
    than their sum; only the list satisfies completeness.
    """
    _checked(channel)
    return DensityMatrix(apply_kraus(channel.two_qubit_elements(), rho), 2)


def apply(channel: KrausChannel, rho: DensityMatrix, scenario: Scenario | str) -> DensityMatrix:
    if Scenario(scenario) is Scenario.ROB_ONLY:
        return apply_single(channel, rho)
    return apply_both(channel, rho)
