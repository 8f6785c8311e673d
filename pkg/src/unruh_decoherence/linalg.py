"""Dense complex matrix helpers for 2-, 4- and 8-dimensional qubit spaces.

Matrices are plain ``numpy`` complex arrays. Qubit 0 is the leftmost ket
label, i.e. the most significant bit of a row/column index.

The eigenvalues of the 4x4 product ``rho @ rho_tilde`` are obtained from its
characteristic polynomial (Faddeev-LeVerrier) and the shifted QR iteration of
the companion matrix, both carried out with 170-bit floats. Concurrence takes
square roots of these eigenvalues, so a double precision eigensolver turns
rounding noise of order 1e-17 on a zero eigenvalue into an error of order
1e-9 on the concurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np

TOL_IMAG = 1e-9
TOL_EIG = 1e-10

_PREC = 170
_QR_MAX_ITER = 500


def _hp():
    # gmpy2 contexts are thread-local
    return gmpy2.context(precision=_PREC, real_prec=_PREC, imag_prec=_PREC)


class DimensionError(ValueError):
    pass


class SpectrumViolation(ArithmeticError):
    """An eigenvalue of rho @ rho_tilde is not real and non-negative.

    This points at a bug upstream (an invalid density matrix), not at bad
    user input.
    """

    def __init__(self, message: str, value: complex):
        super().__init__(message)
        self.value = value


@dataclass(frozen=True)
class EigenSpectrum:
    """Real eigenvalues sorted in descending order."""

    values: tuple[float, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def sum(self) -> float:
        return float(sum(self.values))


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite, square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def n_qubits_of(m: np.ndarray) -> int:
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def partial_trace(m, n_qubits: int, traced_qubit: int) -> np.ndarray:
    """Trace out one qubit of an ``n_qubits`` operator.

    The remaining qubits keep their relative order.
    """
    m = as_matrix(m)
    if n_qubits_of(m) != n_qubits:
        raise DimensionError(
            f"matrix of dimension {m.shape[0]} does not describe {n_qubits} qubits"
        )
    if not 0 <= traced_qubit < n_qubits:
        raise IndexError(f"qubit index {traced_qubit} out of range for {n_qubits} qubits")
    t = m.reshape((2,) * (2 * n_qubits))
    t = np.trace(t, axis1=traced_qubit, axis2=n_qubits + traced_qubit)
    dim = 2 ** (n_qubits - 1)
    return t.reshape(dim, dim)


def _to_mp(m: np.ndarray) -> list[list]:
    # float -> mpc conversion is exact
    return [[gmpy2.mpc(complex(x)) for x in row] for row in m]


def _mp_matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def characteristic_polynomial(m) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of det(xI - m), highest power first.

    Faddeev-LeVerrier recursion in 170-bit arithmetic. Returns ``gmpy2.mpc``
    values.
    """
    with _hp():
        return _charpoly_mp(_to_mp(as_matrix(m)))


def _charpoly_mp(a):
    n = len(a)
    coeffs = [gmpy2.mpc(1)]
    mk = [[gmpy2.mpc(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            mk[i][i] += coeffs[-1]
        mk = _mp_matmul(a, mk)
        coeffs.append(-sum(mk[i][i] for i in range(n)) / k)
    return coeffs


def _eig2(h, hi):
    """Eigenvalues of the trailing 2x2 block ending at row ``hi - 1``."""
    a, b = h[hi - 2][hi - 2], h[hi - 2][hi - 1]
    c, d = h[hi - 1][hi - 2], h[hi - 1][hi - 1]
    half_tr = (a + d) / 2
    disc = gmpy2.sqrt(((a - d) / 2) ** 2 + b * c)
    return half_tr + disc, half_tr - disc


def _wilkinson_shift(h, hi):
    d = h[hi - 1][hi - 1]
    s1, s2 = _eig2(h, hi)
    return s1 if abs(s1 - d) <= abs(s2 - d) else s2


def companion_eigenvalues(coeffs) -> list:
    """Roots of a monic-normalisable polynomial via its companion matrix.

    Single-shift complex QR on the (already Hessenberg) companion matrix with
    Givens rotations, Wilkinson shifts and an exceptional shift every eleventh
    iteration without deflation. Only the active window is updated since the
    Schur vectors are never needed.
    """
    with _hp():
        return _companion_qr([gmpy2.mpc(x) for x in coeffs])


def _companion_qr(c):
    if c[0] == 0:
        raise ValueError("leading coefficient is zero")
    n = len(c) - 1
    if n == 0:
        return []
    h = [[gmpy2.mpc(0)] * n for _ in range(n)]
    for j in range(n):
        h[0][j] = -c[j + 1] / c[0]
    for i in range(1, n):
        h[i][i - 1] = gmpy2.mpc(1)

    norm = max(sum(abs(x) for x in row) for row in h)
    small = gmpy2.mpfr(2) ** (16 - _PREC) * (norm if norm > 0 else 1)
    roots = []
    hi = n
    stalled = 0
    total = 0
    while hi > 0:
        if hi == 1:
            roots.append(h[0][0])
            break
        if abs(h[hi - 1][hi - 2]) <= small:
            roots.append(h[hi - 1][hi - 1])
            hi -= 1
            stalled = 0
            continue
        if hi == 2 or abs(h[hi - 2][hi - 3]) <= small:
            # decoupled 2x2 block; a Jordan pair would otherwise converge only linearly
            roots.extend(_eig2(h, hi))
            hi -= 2
            stalled = 0
            continue
        lo = hi - 1
        while lo > 0 and abs(h[lo][lo - 1]) > small:
            lo -= 1

        stalled += 1
        total += 1
        if total > _QR_MAX_ITER:
            raise ArithmeticError("companion QR iteration did not converge")
        if stalled % 11 == 0:
            mu = h[hi - 1][hi - 1] + abs(h[hi - 1][hi - 2])
        else:
            mu = _wilkinson_shift(h, hi)

        for i in range(lo, hi):
            h[i][i] -= mu
        rotations = []
        for k in range(lo, hi - 1):
            x, y = h[k][k], h[k + 1][k]
            r = gmpy2.sqrt(abs(x) ** 2 + abs(y) ** 2)
            cs, sn = (x / r, y / r) if r != 0 else (gmpy2.mpc(1), gmpy2.mpc(0))
            for j in range(k, hi):
                u, v = h[k][j], h[k + 1][j]
                h[k][j] = cs.conjugate() * u + sn.conjugate() * v
                h[k + 1][j] = -sn * u + cs * v
            rotations.append((k, cs, sn))
        for k, cs, sn in rotations:
            for i in range(lo, min(k + 2, hi - 1) + 1):
                u, v = h[i][k], h[i][k + 1]
                h[i][k] = u * cs + v * sn
                h[i][k + 1] = -u * sn.conjugate() + v * cs.conjugate()
        for i in range(lo, hi):
            h[i][i] += mu
    return roots


def eigenvalues_product(rho, rho_tilde, tol_imag: float = TOL_IMAG,
                        tol_eig: float = TOL_EIG) -> EigenSpectrum:
    """Eigenvalues of ``rho @ rho_tilde`` for 4x4 inputs, sorted descending.

    Imaginary parts must be below ``tol_imag`` and real parts above
    ``-tol_eig``; negatives inside that band are clamped to zero. Anything
    else raises :class:`SpectrumViolation`.
    """
    rho, rho_tilde = as_matrix(rho), as_matrix(rho_tilde)
    if rho.shape != (4, 4) or rho_tilde.shape != (4, 4):
        raise DimensionError(f"expected two 4x4 matrices, got {rho.shape} and {rho_tilde.shape}")
    with _hp():
        product = _mp_matmul(_to_mp(rho), _to_mp(rho_tilde))
        roots = _companion_qr(_charpoly_mp(product))

    values = []
    for z in roots:
        re, im = float(z.real), float(z.imag)
        if abs(im) > tol_imag:
            raise SpectrumViolation(f"eigenvalue {complex(re, im)} has a non-negligible imaginary part", complex(re, im))
        if re < -tol_eig:
            raise SpectrumViolation(f"eigenvalue {re} is negative", complex(re, im))
        values.append(max(re, 0.0))
    return EigenSpectrum(tuple(sorted(values, reverse=True)))
