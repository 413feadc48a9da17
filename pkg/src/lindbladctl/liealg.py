"""Lie-algebraic accessibility analysis of controlled master equations.

The reachable directions of a bilinear control system on the coherence ball
are governed by the Lie algebra generated by the drift and control
generators.  This module computes that closure by repeated bracketing with
numerical orthonormalization, classifies the resulting algebra, and emits
machine-checkable certificates of noncontrollability that hold whenever the
dissipative part is nonzero.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .affine import AffineGenerator, bracket
from .dissipator import fixed_point, is_unital
from .states import purity

__all__ = ["ControlSystem", "LieClosure", "bracket", "closure", "classify",
           "accessibility", "AccessibilityReport",
           "noncontrollability_certificates", "Certificate",
           "CertificatesReport", "hamiltonian_controllability",
           "HamiltonianControllabilityReport", "verify_structure_constants",
           "StructureConstantsReport", "ACCESSIBLE_LABELS"]

#: Labels of closures that make the system accessible in the ball.
ACCESSIBLE_LABELS = frozenset({"gl(n)", "gl(n) x R^n"})


@dataclass(frozen=True)
class ControlSystem:
    """A controlled master equation in coherence coordinates.

    Fields
    ------
    N : Hilbert-space dimension.
    hamiltonian : AffineGenerator of the drift Hamiltonian (may be zero).
    controls : tuple of AffineGenerators of the control Hamiltonians.
    dissipator : AffineGenerator of the dissipative part.
    gks : the GksMatrix behind the dissipator, when known.
    admissible : True when the GKS matrix is positive semidefinite.

    The total drift is hamiltonian + dissipator; the two parts are kept
    separate because the certificates depend on the dissipator alone.
    """

    N: int
    hamiltonian: AffineGenerator
    controls: tuple
    dissipator: AffineGenerator
    gks: object = None
    admissible: bool = True

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        n = self.N * self.N - 1
        for name, gen in [("hamiltonian", self.hamiltonian),
                          *[("control", c) for c in self.controls]]:
            if gen.n != n:
                raise ValueError("%s generator has dimension %d, expected %d"
                                 % (name, gen.n, n))
            if np.max(np.abs(gen.linear + gen.linear.T)) > 1e-12:
                raise ValueError("%s generator must have a skew-symmetric "
                                 "linear part" % name)
            if np.max(np.abs(gen.translation)) > 1e-12:
                raise ValueError("%s generator must have no translation" % name)
        if self.dissipator.n != n:
            raise ValueError("dissipator has dimension %d, expected %d"
                             % (self.dissipator.n, n))

    @property
    def drift(self):
        return self.hamiltonian + self.dissipator


@dataclass(frozen=True)
class LieClosure:
    """Result of the bracket-closure computation.

    basis is orthonormal in the flattened-entry inner product on homogeneous
    matrices.  generations counts the bracket rounds that produced at least
    one new element; converged is False only if the generation budget ran
    out while new elements were still appearing.
    """

    basis: tuple
    dim: int
    generations: int
    converged: bool
    classification: Optional[str]
    n: int


class _OrthoSpan:
    """Growing orthonormal set of flat vectors (modified Gram-Schmidt)."""

    def __init__(self, length, tol):
        self.q = np.empty((0, length))
        self.tol = tol

    @property
    def dim(self):
        return self.q.shape[0]

    def add(self, vec):
        """Try to add a vector; returns the accepted unit residual or None.

        The candidate is unit-normalized before orthogonalization so that
        the acceptance threshold is scale-free; projection is applied twice
        for numerical stability.
        """
        nrm = np.linalg.norm(vec)
        if nrm <= 1e-300:
            return None
        v = vec / nrm
        for _ in range(2):
            if self.dim:
                v = v - self.q.T @ (self.q @ v)
        r = np.linalg.norm(v)
        if r <= self.tol:
            return None
        v = v / r
        self.q = np.vstack([self.q, v])
        return v


def closure(generators, tol=1e-9, max_generations=8):
    """Lie closure of a set of affine generators.

    Starting from the given generators, repeatedly brackets all pairs
    involving at least one element new in the previous round, keeping a
    bracket when its unit-normalized residual against the current
    orthonormal basis exceeds tol.  Stops when a full round adds nothing
    or after max_generations productive rounds.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("closure requires at least one generator")
    n = generators[0].n
    span = _OrthoSpan((n + 1) ** 2, tol)
    members = []

    def try_add(gen):
        v = span.add(gen.homogeneous.ravel())
        if v is None:
            return False
        members.append(AffineGenerator.from_homogeneous(
            v.reshape(n + 1, n + 1), tol=np.inf))
        return True

    for g in generators:
        if g.n != n:
            raise ValueError("generators have mismatched dimensions")
        try_add(g)
    if not members:
        raise ValueError("all generators are numerically zero")

    generations = 0
    converged = False
    frontier_start = 0
    max_dim = n * n + n
    while generations < max_generations:
        lo = frontier_start
        frontier_start = len(members)
        added = 0
        for j in range(lo, frontier_start):
            for i in range(j):
                if try_add(bracket(members[i], members[j])):
                    added += 1
        if added == 0:
            converged = True
            break
        generations += 1
        if len(members) >= max_dim:
            converged = True
            break

    label = _label(members, n, tol=1e-9) if converged else None
    return LieClosure(basis=tuple(members), dim=len(members),
                      generations=generations, converged=converged,
                      classification=label, n=n)


def _features(members, n, tol):
    """(p, q, has_trace): linear-projection dim, translation dim, trace test."""
    linear_parts = np.array([g.linear.ravel() for g in members])
    p = int(np.linalg.matrix_rank(linear_parts, tol=tol))
    q = len(members) - p
    traces = np.array([np.trace(g.linear) for g in members])
    has_trace = bool(np.linalg.norm(traces) > tol)
    return p, q, has_trace


def _label(members, n, tol):
    p, q, has_trace = _features(members, n, tol)

    if q == 0:
        suffix = ""
    elif q == n:
        suffix = " x R^n"
    else:
        return "other"

    def max_sym_defect(remove_trace):
        worst = 0.0
        for g in members:
            sym = 0.5 * (g.linear + g.linear.T)
            if remove_trace:
                sym = sym - (np.trace(sym) / n) * np.eye(n)
            worst = max(worst, float(np.max(np.abs(sym))))
        return worst

    if p == n * n and has_trace:
        base = "gl(n)"
    elif p == n * n - 1 and not has_trace:
        base = "sl(n)"
    elif p == n and not has_trace and max_sym_defect(False) <= tol:
        base = "ad_su"
    elif p == n + 1 and has_trace and max_sym_defect(True) <= tol:
        base = "ad_su + span(I)"
    else:
        return "other"

    if base in ("ad_su", "ad_su + span(I)") and suffix:
        return "(%s)%s" % (base, suffix)
    return base + suffix


def classify(c, n=None, tol=1e-9):
    """Label the closure by its linear and translational content.

    Three features decide the label: the dimension p of the projection onto
    linear parts, the dimension q of the intersection with pure
    translations, and whether the trace functional is nonzero on the span.
    Labels are drawn from

        ad_su, ad_su + span(I), sl(n), gl(n),

    each optionally suffixed with " x R^n" when all translations are
    present (q = n); anything else is "other".  The ad_su labels are
    additionally guarded by a structural check that the linear parts are
    skew-symmetric (plus a multiple of the identity in the span(I) case).
    """
    if not c.converged:
        raise ValueError("cannot classify an unconverged closure")
    return _label(c.basis, c.n if n is None else n, tol)


class AccessibilityReport(NamedTuple):
    accessible: bool
    closure_dim: int
    classification: Optional[str]
    generations: int
    converged: bool
    features: dict


def accessibility(system, tol=1e-9, max_generations=8):
    """Decide accessibility in the ball from the closure of drift + controls.

    The system is accessible iff the closure is gl(n) or gl(n) x R^n.
    """
    c = closure([system.drift, *system.controls], tol=tol,
                max_generations=max_generations)
    p, q, has_trace = _features(c.basis, c.n, tol)
    features = {
        "linear_dim": p,
        "translation_dim": q,
        "has_trace": has_trace,
    }
    accessible = bool(c.converged and c.classification in ACCESSIBLE_LABELS)
    return AccessibilityReport(accessible, c.dim, c.classification,
                               c.generations, c.converged, features)


class Certificate(NamedTuple):
    name: str
    active: bool
    value: Optional[float]
    statement: str


class CertificatesReport(NamedTuple):
    certificates: tuple
    active_names: tuple
    note: Optional[str]


def noncontrollability_certificates(system, tol=1e-12):
    """Obstructions to controllability that hold regardless of the controls.

    trace       : tr of the dissipator's linear part is negative, so the
                  linear propagator satisfies det g(t) = exp(tr * t) < 1 and
                  the flow is volume-contracting for every control.
    unital      : the dissipator is nonzero and translation-free, so norms
                  never increase and reachable sets are nested balls; the
                  system is never controllable.
    finite_time : the dissipator is nonzero, so the system is not
                  controllable in any fixed finite time.

    When the dissipator is nonzero but not unital and the drift has a fixed
    point of unit purity, the report notes that the closure of the reachable
    set is the full ball asymptotically (exact controllability still fails).
    """
    L = system.dissipator
    nonzero = L.norm() > tol
    tr = float(np.trace(L.linear))
    unital = is_unital(L, tol)

    trace_active = nonzero and tr < -tol
    unital_active = nonzero and unital
    finite_active = nonzero

    certs = (
        Certificate(
            "trace", trace_active, tr,
            "det g(t) = exp(%.17g * t) < 1 for t > 0: the flow contracts "
            "volume for every control" % tr if trace_active else
            "dissipator trace is not negative"),
        Certificate(
            "unital", unital_active, None,
            "dissipator is unital and nonzero: state norms never increase, "
            "reachable sets are nested balls, never controllable"
            if unital_active else "dissipator is zero or not unital"),
        Certificate(
            "finite_time", finite_active, None,
            "dissipator is nonzero: not controllable in any fixed finite time"
            if finite_active else "dissipator vanishes"),
    )
    note = None
    if nonzero and not unital:
        fp = fixed_point(system.drift)
        if fp is not None and abs(purity(fp) - 1.0) <= 1e-9:
            note = ("drift relaxes to a pure state: the closure of the "
                    "reachable set is the full ball asymptotically")
    return CertificatesReport(certs, tuple(c.name for c in certs if c.active),
                              note)


class HamiltonianControllabilityReport(NamedTuple):
    controllable: bool
    dim: int


def hamiltonian_controllability(basis, h0, hks, tol=1e-9):
    """Rank condition for closed-system controllability.

    Works on coefficient vectors: H = sum_l h_l lambda_l brackets as
    (h, g)_l = sum_jk f_jkl h_j g_k.  The system is controllable on the
    unitary group (up to phase) iff the closure of drift and controls spans
    all n coefficient directions.
    """
    hks = [np.asarray(h, dtype=float) for h in hks]
    if not hks:
        raise ValueError("at least one control Hamiltonian is required")
    seeds = [] if h0 is None else [np.asarray(h0, dtype=float)]
    seeds += hks
    n = basis.n
    for h in seeds:
        if h.shape != (n,):
            raise ValueError("coefficient vectors must have length %d" % n)

    span = _OrthoSpan(n, tol)
    members = []

    def try_add(v):
        u = span.add(v)
        if u is not None:
            members.append(u)
            return True
        return False

    for h in seeds:
        try_add(h)
    frontier_start = 0
    while True:
        lo = frontier_start
        frontier_start = len(members)
        added = 0
        for j in range(lo, frontier_start):
            for i in range(j):
                cand = np.einsum("jkl,j,k->l", basis.f, members[i], members[j])
                if try_add(cand):
                    added += 1
        if added == 0 or len(members) >= n:
            break
    dim = len(members)
    return HamiltonianControllabilityReport(dim == n, dim)


#: Tabulated expansion coefficients c_{jk}^l in [M_j, M_k] = sum_l c M_l for
#: the twelve two-level generator matrices (1-based (j, k, l), j < k; entries
#: not listed are zero).  verify_structure_constants() recomputes every
#: bracket from the matrices themselves and reports any disagreement with
#: this table.
BRACKET_TABLE = {
    (1, 2, 3): 1.0, (1, 3, 2): -1.0, (1, 4, 6): 1.0, (1, 5, 7): 1.0,
    (1, 6, 4): -1.0, (1, 7, 5): -1.0, (1, 8, 12): 1.0, (1, 8, 11): -1.0,
    (1, 11, 8): 1.0, (1, 12, 8): -1.0,
    (2, 3, 1): 1.0, (2, 4, 8): -1.0, (2, 5, 9): -1.0, (2, 6, 10): 1.0,
    (2, 6, 11): -1.0, (2, 8, 4): 1.0, (2, 9, 5): -1.0, (2, 10, 6): -1.0,
    (2, 12, 6): 1.0,
    (3, 4, 11): 1.0, (3, 4, 10): -1.0, (3, 6, 8): 1.0, (3, 7, 9): 1.0,
    (3, 8, 6): -1.0, (3, 9, 7): -1.0, (3, 10, 4): 1.0, (3, 11, 4): -1.0,
    (4, 6, 1): -1.0, (4, 7, 9): -1.0, (4, 8, 2): 1.0, (4, 9, 7): -1.0,
    (4, 10, 3): 1.0, (4, 11, 3): -1.0,
    (5, 6, 9): -1.0, (5, 8, 7): 1.0, (5, 10, 5): 1.0, (5, 11, 5): 1.0,
    (6, 8, 3): -1.0, (6, 9, 5): 1.0, (6, 10, 2): -1.0, (6, 12, 2): 1.0,
    (7, 8, 5): 1.0, (7, 10, 7): 1.0, (7, 12, 7): 1.0,
    (8, 11, 1): 1.0, (8, 12, 1): -1.0,
    (9, 11, 9): 1.0, (9, 12, 9): 1.0,
}


class StructureConstantsReport(NamedTuple):
    ok: bool
    pairs_checked: int
    coefficients_checked: int
    mismatches: tuple
    max_expansion_residual: float


def verify_structure_constants(tol=1e-12):
    """Cross-check the bracket table against the generator matrices.

    Expands [M_j, M_k] for every pair j < k in the M basis (the twelve
    matrices are linearly independent, so the expansion is exact) and
    compares each coefficient with BRACKET_TABLE.  Every deviation beyond
    tol is reported as (j, k, l, expected, computed).
    """
    from .channels import m_matrix

    ms = [m_matrix(k) for k in range(1, 13)]
    flat = np.array([m.homogeneous.ravel() for m in ms]).T  # 16 x 12
    mismatches = []
    max_residual = 0.0
    pairs = 0
    for j in range(1, 13):
        for k in range(j + 1, 13):
            pairs += 1
            b = bracket(ms[j - 1], ms[k - 1]).homogeneous.ravel()
            coeffs, res, _, _ = np.linalg.lstsq(flat, b, rcond=None)
            resid = float(np.linalg.norm(flat @ coeffs - b))
            max_residual = max(max_residual, resid)
            for l in range(1, 13):
                expected = BRACKET_TABLE.get((j, k, l), 0.0)
                computed = float(coeffs[l - 1])
                if abs(computed - expected) > tol:
                    mismatches.append((j, k, l, expected, computed))
    mismatches.sort()
    return StructureConstantsReport(
        ok=not mismatches and max_residual <= 1e-9,
        pairs_checked=pairs,
        coefficients_checked=pairs * 12,
        mismatches=tuple(mismatches),
        max_expansion_residual=max_residual,
    )
