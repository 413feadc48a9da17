"""Dissipative part of the master equation in coherence coordinates.

For a Hermitian coefficient matrix A = (a_jk) the dissipator

    rho' = (1/2) sum_jk a_jk (2 lambda_j rho lambda_k - {lambda_k lambda_j, rho})

acts on the coherence vector as sum_jk a_jk (L_jk rho + v_jk rho_0) with

    (L_jk)_lr = -(1/4) sum_m [(f_jmr + i d_jmr) f_kml + (f_kmr - i d_kmr) f_jml]
    v_jk      = (i/sqrt(N)) (f_jk1, ..., f_jkn)^T.

L_kj is the entrywise conjugate of L_jk, so the assembled generator is real
whenever A is Hermitian.  A is admissible when it is positive semidefinite;
inadmissible matrices still assemble to a well-defined real generator.
"""

from typing import NamedTuple

import numpy as np

from .affine import AffineGenerator

__all__ = ["GksMatrix", "AffineGenerator", "build_Ljk", "build_vjk",
           "assemble_dissipator", "check_psd", "PsdReport",
           "check_minors_2level", "MinorsReport", "two_level_gks",
           "is_unital", "split_trace", "fixed_point"]


class GksMatrix:
    """Hermitian coefficient matrix of the dissipator.

    Parameters
    ----------
    entries : (n, n) array_like, Hermitian to 1e-12.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("GKS matrix must be square")
        if np.max(np.abs(entries - entries.conj().T)) > 1e-12:
            raise ValueError("GKS matrix must be Hermitian to 1e-12")
        entries = entries.copy()
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("GksMatrix is immutable")

    @property
    def n(self):
        return self.entries.shape[0]

    @classmethod
    def from_real_imag(cls, a_real, a_imag):
        """Build from the symmetric real part and antisymmetric imaginary part."""
        a_real = np.asarray(a_real, dtype=float)
        a_imag = np.asarray(a_imag, dtype=float)
        if np.max(np.abs(a_real - a_real.T)) > 1e-12:
            raise ValueError("real part must be symmetric to 1e-12")
        if np.max(np.abs(a_imag + a_imag.T)) > 1e-12:
            raise ValueError("imaginary part must be antisymmetric to 1e-12")
        return cls(a_real + 1.0j * a_imag)

    def __repr__(self):
        return "GksMatrix(n=%d)" % self.n


def _check_index(basis, j, name):
    if not 1 <= j <= basis.n:
        raise IndexError("%s index must satisfy 1 <= %s <= %d, got %r"
                         % (name, name, basis.n, j))


def _L_tensor(basis):
    """All matrices L_jk stacked as a complex (n, n, n, n) array [j, k, l, r]."""
    f, d = basis.f, basis.d
    p = f + 1.0j * d
    term1 = np.einsum("jmr,kml->jklr", p, f, optimize=True)
    term2 = np.einsum("kmr,jml->jklr", p.conj(), f, optimize=True)
    return -0.25 * (term1 + term2)


def build_Ljk(basis, j, k):
    """The n x n complex matrix L_jk for 1-based indices j, k."""
    _check_index(basis, j, "j")
    _check_index(basis, k, "k")
    f, d = basis.f, basis.d
    j -= 1
    k -= 1
    p_j = f[j] + 1.0j * d[j]        # [m, r]
    p_kc = f[k] - 1.0j * d[k]
    term1 = np.einsum("mr,ml->lr", p_j, f[k])
    term2 = np.einsum("mr,ml->lr", p_kc, f[j])
    return -0.25 * (term1 + term2)


def build_vjk(basis, j, k):
    """The translation coefficient vector v_jk = (i/sqrt(N)) f_jk."""
    _check_index(basis, j, "j")
    _check_index(basis, k, "k")
    return (1.0j / np.sqrt(basis.N)) * basis.f[j - 1, k - 1, :]


def assemble_dissipator(A, basis):
    """Real affine generator sum_jk a_jk (L_jk, v_jk) for Hermitian A.

    A may be a GksMatrix or a plain Hermitian array.  Pairing the (j, k) and
    (k, j) terms cancels all imaginary parts; a residual imaginary part above
    1e-12 indicates a non-Hermitian input and raises.
    """
    entries = A.entries if isinstance(A, GksMatrix) else np.asarray(A, dtype=complex)
    if entries.shape != (basis.n, basis.n):
        raise ValueError("A must be %d x %d" % (basis.n, basis.n))
    L = _L_tensor(basis)
    linear = np.einsum("jk,jklr->lr", entries, L, optimize=True)
    v_all = (1.0j / np.sqrt(basis.N)) * basis.f
    translation = np.einsum("jk,jkl->l", entries, v_all, optimize=True)
    if np.max(np.abs(linear.imag)) > 1e-12 or np.max(np.abs(translation.imag)) > 1e-12:
        raise ValueError("assembled dissipator has an imaginary part; "
                         "A is not Hermitian to working precision")
    return AffineGenerator(linear.real, translation.real)


class PsdReport(NamedTuple):
    is_psd: bool
    min_eigenvalue: float
    on_boundary: bool


def check_psd(A, tol=1e-10):
    """Positive-semidefiniteness report for a Hermitian matrix.

    on_boundary flags a zero eigenvalue (within tol), i.e. A lies on an
    exposed face of the PSD cone.
    """
    entries = A.entries if isinstance(A, GksMatrix) else np.asarray(A, dtype=complex)
    min_eig = float(np.linalg.eigvalsh(entries)[0])
    is_psd = min_eig >= -tol
    return PsdReport(is_psd, min_eig, is_psd and min_eig <= tol)


class MinorsReport(NamedTuple):
    values: dict
    passed: dict
    all_pass: bool


def check_minors_2level(params, tol=1e-12):
    """Principal-minor inequalities for the two-level GKS matrix.

    params is the sequence (a4, a5, a6, a7, a8, a9, a10, a11, a12)
    parameterizing

        A = [[a10,       a4 + i a5,  a6 + i a7],
             [a4 - i a5, a11,        a8 + i a9],
             [a6 - i a7, a8 - i a9,  a12     ]].

    Evaluates the three 1x1, three 2x2 and one 3x3 principal minors; A is
    positive semidefinite iff all seven are nonnegative.
    """
    a4, a5, a6, a7, a8, a9, a10, a11, a12 = (float(x) for x in params)
    values = {
        "minor1_xx": a10,
        "minor1_yy": a11,
        "minor1_zz": a12,
        "minor2_xy": a10 * a11 - a4 ** 2 - a5 ** 2,
        "minor2_xz": a10 * a12 - a6 ** 2 - a7 ** 2,
        "minor2_yz": a11 * a12 - a8 ** 2 - a9 ** 2,
        "minor3": (a10 * a11 * a12
                   - a10 * (a8 ** 2 + a9 ** 2)
                   - a11 * (a6 ** 2 + a7 ** 2)
                   - a12 * (a4 ** 2 + a5 ** 2)
                   + 2.0 * a4 * (a6 * a8 + a7 * a9)
                   - 2.0 * a5 * (a6 * a9 - a7 * a8)),
    }
    passed = {name: value >= -tol for name, value in values.items()}
    return MinorsReport(values, passed, all(passed.values()))


def two_level_gks(params):
    """Assemble the 3 x 3 GksMatrix from the nine two-level parameters."""
    a4, a5, a6, a7, a8, a9, a10, a11, a12 = (float(x) for x in params)
    entries = np.array([
        [a10, a4 + 1.0j * a5, a6 + 1.0j * a7],
        [a4 - 1.0j * a5, a11, a8 + 1.0j * a9],
        [a6 - 1.0j * a7, a8 - 1.0j * a9, a12],
    ])
    return GksMatrix(entries)


def is_unital(L, tol=1e-12):
    """True when the generator has no translation part (fixes the identity)."""
    return float(np.linalg.norm(L.translation)) <= tol


def split_trace(L):
    """Split L into alpha * Ibar + traceless part, Ibar = diag(0, I_n).

    alpha = tr(linear part)/n controls the purity contraction rate of the
    trace-normalized flow.
    """
    n = L.n
    alpha = float(np.trace(L.linear)) / n
    traceless = AffineGenerator(L.linear - alpha * np.eye(n), L.translation)
    return alpha, traceless


def fixed_point(drift, rcond=1e-10):
    """Unique stationary coherence vector of the drift, or None.

    Solves B rho = -b rho0 for the affine drift (B, b).  Returns None when
    the linear part is singular to rcond (ratio of extreme singular values),
    in which case fixed points are absent or non-unique.  The returned state
    is not validated against the ball constraint; inadmissible systems can
    have formal fixed points outside it.
    """
    from .states import CoherenceVector

    n = drift.n
    N = int(round(np.sqrt(n + 1)))
    if N * N - 1 != n:
        raise ValueError("generator dimension %d is not N^2 - 1 for integer N" % n)
    s = np.linalg.svd(drift.linear, compute_uv=False)
    if s[0] == 0.0 or s[-1] / s[0] < rcond:
        return None
    rho0 = 1.0 / np.sqrt(N)
    rho = np.linalg.solve(drift.linear, -rho0 * drift.translation)
    return CoherenceVector(N, rho, tol=float("inf"))
