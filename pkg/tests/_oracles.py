"""Independent reference implementations used to check the package.

Everything here is deliberately written from the density-matrix picture or
as naive loops, sharing as little code as possible with the package, so
agreement is meaningful.
"""

import numpy as np

from lindbladctl import (ControlSystem, GksMatrix, PiecewiseControl,
                         adjoint_generator, assemble_dissipator, check_psd,
                         gellmann_basis)


def superoperator_generator(h, A, basis):
    """Homogeneous coherence-space generator built by probing basis states.

    Applies the density-matrix master equation

        rho' = -i[H, rho] + (1/2) sum_jk a_jk (2 L_j rho L_k
                                               - L_k L_j rho - rho L_k L_j)

    to every basis element (lambda_0 included) and reads the result back in
    the same basis.  This never touches the structure tensors, so it is an
    independent oracle for adjoint_generator + assemble_dissipator.
    """
    N, n = basis.N, basis.n
    lams = [basis.lambda0, *basis.lambdas]
    H = sum(c * lam for c, lam in zip(h, basis.lambdas))
    H = H + 0.0 * basis.lambda0  # ensure an array even for h = 0
    A = np.asarray(A, dtype=complex)

    def apply(rho):
        out = -1.0j * (H @ rho - rho @ H)
        for j in range(n):
            for k in range(n):
                lj, lk = basis.lambdas[j], basis.lambdas[k]
                out = out + 0.5 * A[j, k] * (
                    2.0 * lj @ rho @ lk - lk @ lj @ rho - rho @ lk @ lj)
        return out

    gen = np.empty((n + 1, n + 1), dtype=complex)
    for col, probe in enumerate(lams):
        image = apply(probe)
        for row, lam in enumerate(lams):
            gen[row, col] = np.trace(lam.conj().T @ image)
    assert np.max(np.abs(gen.imag)) < 1e-12
    return gen.real


def naive_Ljk(basis, j, k):
    """Quadruple-loop evaluation of the linear dissipation matrix L_jk."""
    f, d = basis.f, basis.d
    n = basis.n
    j -= 1
    k -= 1
    out = np.zeros((n, n), dtype=complex)
    for l in range(n):
        for r in range(n):
            acc = 0.0j
            for m in range(n):
                acc += (f[j, m, r] + 1.0j * d[j, m, r]) * f[k, m, l]
                acc += (f[k, m, r] - 1.0j * d[k, m, r]) * f[j, m, l]
            out[l, r] = -0.25 * acc
    return out


def random_hermitian(rng, n, scale=1.0):
    b = rng.normal(size=(n, n)) + 1.0j * rng.normal(size=(n, n))
    return scale * 0.5 * (b + b.conj().T)


def random_psd(rng, n, scale=1.0):
    b = rng.normal(size=(n, n)) + 1.0j * rng.normal(size=(n, n))
    return scale * (b @ b.conj().T) / n


def two_level_system(entries, h0=(0.0, 0.0, 0.0)):
    """Fully controlled qubit system for a 3 x 3 GKS matrix.

    Controls are the three axis rotations (lambda coefficients e_k/sqrt(2)).
    """
    basis = gellmann_basis(2)
    gks = GksMatrix(entries)
    s = 1.0 / np.sqrt(2.0)
    return ControlSystem(
        N=2,
        hamiltonian=adjoint_generator(basis, np.asarray(h0, dtype=float)),
        controls=tuple(adjoint_generator(basis, s * np.eye(3)[k])
                       for k in range(3)),
        dissipator=assemble_dissipator(gks, basis),
        gks=gks,
        admissible=check_psd(gks).is_psd,
    )


def random_piecewise(rng, horizon, num_controls, bound=2.0, max_segments=8):
    m = int(rng.integers(1, max_segments + 1))
    durations = horizon * rng.dirichlet(np.ones(m))
    return PiecewiseControl(tuple(
        (durations[i], rng.uniform(-bound, bound, size=num_controls))
        for i in range(m)))


def matrix_lie_dim(h_vectors, basis, tol=1e-9):
    """Dimension of the matrix Lie algebra generated by the -iH's.

    Works directly on flattened skew-Hermitian N x N matrices with
    Gram-Schmidt, independent of the coefficient-space bracket used by
    hamiltonian_controllability.
    """
    mats = []
    for h in h_vectors:
        H = sum(c * lam for c, lam in zip(h, basis.lambdas))
        mats.append(-1.0j * (H + 0.0 * basis.lambda0))
    q = []

    def try_add(mat):
        # real flattening so the count is the real dimension
        v = np.concatenate([mat.real.ravel(), mat.imag.ravel()])
        nrm = np.linalg.norm(v)
        if nrm < 1e-14:
            return False
        v = v / nrm
        for _ in range(2):
            for u in q:
                v = v - (u @ v) * u
        r = np.linalg.norm(v)
        if r <= tol:
            return False
        q.append(v / r)
        return True

    members = []
    for mat in mats:
        if try_add(mat):
            members.append(mat)
    frontier = 0
    while True:
        lo, hi = frontier, len(members)
        frontier = hi
        added = 0
        for j in range(lo, hi):
            for i in range(j):
                cand = members[i] @ members[j] - members[j] @ members[i]
                if try_add(cand):
                    members.append(cand)
                    added += 1
        if not added:
            break
    return len(members)
