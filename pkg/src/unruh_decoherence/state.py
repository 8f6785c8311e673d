"""Alice-Rob shared state for a uniformly accelerated observer."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, n_qubits_of, partial_trace

R_MAX = math.pi / 4
STANDARD_R_VALUES = tuple(k * math.pi / 16 for k in range(5))


@dataclass(frozen=True)
class AccelerationSpec:
    """Physical inputs behind the acceleration parameter.

    ``a`` may be ``math.inf``; that value is treated as the infinite
    acceleration limit and never enters the exponent.
    """

    omega: float
    c: float
    a: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if math.isnan(self.a) or self.a < 0:
            raise ValueError(f"acceleration must be non-negative, got {self.a}")

    @property
    def infinite(self) -> bool:
        return math.isinf(self.a)


def check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r <= R_MAX:
        raise ValueError(f"r must lie in [0, pi/4], got {r}")
    return r


def r_from_acceleration(spec: AccelerationSpec) -> float:
    """Acceleration parameter r with cos r = (exp(-2 pi omega c / a) + 1)^(-1/2).

    Uses the equivalent tan r = exp(-pi omega c / a), which stays accurate
    near r = 0 where arccos is ill-conditioned.
    """
    if spec.infinite:
        return R_MAX
    if spec.a == 0:
        return 0.0
    return math.atan(math.exp(-math.pi * spec.omega * spec.c / spec.a))


class DensityMatrix:
    """A density matrix on ``n_qubits`` qubits.

    The wrapped array is read-only. ``np.asarray(dm)`` returns it.
    """

    __slots__ = ("mat", "n_qubits")

    def __init__(self, mat, n_qubits: int | None = None, check: bool = True):
        m = as_matrix(mat).copy()
        n = n_qubits_of(m)
        if n_qubits is not None and n != n_qubits:
            raise ValueError(f"matrix of dimension {m.shape[0]} does not describe {n_qubits} qubits")
        m.setflags(write=False)
        self.mat = m
        self.n_qubits = n
        if check:
            self.validate()

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits}, mat=\n{self.mat!r})"

    def validate(self, tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
        m = self.mat
        tr = np.trace(m)
        if abs(tr - 1) > tol:
            raise ValueError(f"trace is {tr}, expected 1")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > tol:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3g})")
        low = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if low < -psd_tol:
            raise ValueError(f"matrix is not positive semidefinite (eigenvalue {low:.3g})")

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


def three_mode_amplitudes(r: float) -> np.ndarray:
    """State vector over (Alice, region I, region II), Alice most significant."""
    r = check_r(r)
    psi = np.zeros(8, dtype=np.complex128)
    psi[0b000] = math.cos(r)
    psi[0b011] = math.sin(r)
    psi[0b110] = 1.0
    return psi / math.sqrt(2)


def build_three_mode_state(r: float) -> DensityMatrix:
    psi = three_mode_amplitudes(r)
    return DensityMatrix(np.outer(psi, psi.conj()), 3)


def build_shared_state(r: float) -> DensityMatrix:
    """Alice-Rob state after tracing out the causally disconnected region II."""
    return DensityMatrix(partial_trace(build_three_mode_state(r).mat, 3, 2), 2)


def shared_state_closed_form(r: float) -> DensityMatrix:
    """The same Alice-Rob state written out entry by entry."""
    r = check_r(r)
    c, s = math.cos(r), math.sin(r)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = c * c
    m[0, 3] = m[3, 0] = c
    m[1, 1] = s * s
    m[3, 3] = 1.0
    return DensityMatrix(m / 2, 2)
