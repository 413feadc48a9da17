"""Command-line interface and the on-disk system-document format.

Subcommands
-----------
analyze    accessibility, classification, certificates, fixed point
simulate   integrate a piecewise-constant controlled flow, write CSV
reachable  Monte-Carlo reachable-set sampling, write CSV + stats JSON
preset     emit the system document of a named two-level channel
verify     run the built-in self-check suite

Exit codes: 0 success, 1 verify failures, 2 parse/validation errors,
3 inadmissible system (without --permissive), 4 numerical failure.

Reports are deterministic: no timestamps, fixed key order, floats printed
with 17 significant digits.  The same input always yields byte-identical
output.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channels import PRESET_NAMES, ChannelPreset, preset
from .dissipator import (GksMatrix, assemble_dissipator, check_psd,
                         fixed_point, is_unital, split_trace)
from .dynamics import (BallExitError, PiecewiseControl, propagate,
                       sample_reachable)
from .liealg import (ControlSystem, accessibility,
                     noncontrollability_certificates,
                     hamiltonian_controllability, verify_structure_constants)
from .states import CoherenceVector, is_physical, purity
from .su_basis import adjoint_generator, gellmann_basis

__all__ = ["SystemDocument", "CliParseError", "InadmissibleSystemError",
           "dumps_report", "cmd_analyze", "cmd_simulate", "cmd_reachable",
           "cmd_preset", "cmd_verify", "main"]

SCHEMA_VERSION = 1

TOLERANCES = {
    "closure": 1e-9,
    "psd": 1e-10,
    "unital": 1e-12,
    "fixed_point_rcond": 1e-10,
    "physicality": 1e-9,
    "ball_exit": 1e-6,
}


class CliParseError(Exception):
    """Malformed document, flag value, or schema violation (exit code 2)."""


class InadmissibleSystemError(Exception):
    """Simulation requested for a non-PSD GKS matrix without --permissive."""


# ---------------------------------------------------------------------------
# Deterministic JSON/CSV writers

def _fmt_number(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot serialize non-finite number %r" % x)
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return "%.17g" % x


def _is_scalar(x):
    return x is None or isinstance(x, (bool, int, float, str,
                                       np.bool_, np.integer, np.floating))


def _write_json(obj, indent, out):
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (bool, int, float, np.bool_, np.integer, np.floating)):
        out.append(_fmt_number(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            out.append(pad + "  " + json.dumps(str(key)) + ": ")
            _write_json(value, indent + 1, out)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(np.asarray(obj).tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            out.append("[]")
            return
        if all(_is_scalar(x) for x in seq):
            parts = []
            for x in seq:
                sub = []
                _write_json(x, 0, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, value in enumerate(seq):
            out.append(pad + "  ")
            _write_json(value, indent + 1, out)
            out.append(",\n" if i + 1 < len(seq) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError("cannot serialize %r" % type(obj))


def dumps_report(obj):
    """Serialize a report to deterministic, human-readable JSON."""
    out = []
    _write_json(obj, 0, out)
    return "".join(out) + "\n"


def _csv_row(values):
    return ",".join(_fmt_number(v) for v in values)


def trajectory_csv(traj):
    """CSV text for a trajectory: t, rho_1..rho_n, purity, det_g."""
    n = traj.states[0].n
    lines = ["t," + ",".join("rho_%d" % (i + 1) for i in range(n))
             + ",purity,det_g"]
    for i, t in enumerate(traj.times):
        lines.append(_csv_row([t, *traj.states[i].rho, traj.purities[i],
                               traj.dets[i]]))
    return "\n".join(lines) + "\n"


def cloud_csv(result):
    """CSV text for a reachable-set sample: sample, t, rho_1..rho_n."""
    n = result.points.shape[2]
    lines = ["sample,t," + ",".join("rho_%d" % (i + 1) for i in range(n))]
    for i in range(result.points.shape[0]):
        for j, t in enumerate(result.grid):
            lines.append(_csv_row([i, t, *result.points[i, j]]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# System documents

@dataclass(frozen=True)
class SystemDocument:
    """JSON-serializable description of a controlled master equation.

    h0 and each control are real lambda-coefficient vectors of length
    N^2 - 1; the GKS matrix is stored as a symmetric real part and an
    antisymmetric imaginary part.  An optional preset block records the
    named channel the document was generated from.
    """

    N: int
    h0: tuple
    controls: tuple
    a_real: tuple
    a_imag: tuple
    preset: object = None
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        object.__setattr__(self, "h0", tuple(float(x) for x in self.h0))
        object.__setattr__(self, "controls",
                           tuple(tuple(float(x) for x in row)
                                 for row in self.controls))
        object.__setattr__(self, "a_real",
                           tuple(tuple(float(x) for x in row)
                                 for row in self.a_real))
        object.__setattr__(self, "a_imag",
                           tuple(tuple(float(x) for x in row)
                                 for row in self.a_imag))
        n = self.N * self.N - 1
        if self.N < 2:
            raise CliParseError("field 'N': must be an integer >= 2")
        if len(self.h0) != n:
            raise CliParseError("field 'h0': expected length %d, got %d"
                                % (n, len(self.h0)))
        for i, row in enumerate(self.controls):
            if len(row) != n:
                raise CliParseError("field 'controls[%d]': expected length %d,"
                                    " got %d" % (i, n, len(row)))
        for name, mat in (("A_real", self.a_real), ("A_imag", self.a_imag)):
            if len(mat) != n or any(len(row) != n for row in mat):
                raise CliParseError("field '%s': expected an %d x %d matrix"
                                    % (name, n, n))
        ar = np.array(self.a_real)
        ai = np.array(self.a_imag)
        if np.max(np.abs(ar - ar.T)) > 1e-12:
            raise CliParseError("field 'A_real': must be symmetric to 1e-12")
        if ai.size and np.max(np.abs(ai + ai.T)) > 1e-12:
            raise CliParseError("field 'A_imag': must be antisymmetric to 1e-12")

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise CliParseError("document root must be a JSON object")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise CliParseError("field 'schema_version': expected %d, got %r"
                                % (SCHEMA_VERSION, version))
        required = ["N", "h0", "controls", "A_real", "A_imag"]
        for key in required:
            if key not in data:
                raise CliParseError("missing required field '%s'" % key)
        unknown = set(data) - set(required) - {"schema_version", "preset"}
        if unknown:
            raise CliParseError("unknown fields: %s"
                                % ", ".join(sorted(unknown)))
        preset_block = data.get("preset")
        if preset_block is not None:
            if (not isinstance(preset_block, dict)
                    or set(preset_block) - {"name", "params"}
                    or "name" not in preset_block):
                raise CliParseError("field 'preset': expected an object with "
                                    "'name' and optional 'params'")
        try:
            return cls(N=int(data["N"]), h0=data["h0"],
                       controls=data["controls"], a_real=data["A_real"],
                       a_imag=data["A_imag"], preset=preset_block)
        except (TypeError, ValueError) as exc:
            raise CliParseError("invalid document: %s" % exc) from exc

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliParseError("invalid JSON at line %d column %d: %s"
                                % (exc.lineno, exc.colno, exc.msg)) from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CliParseError("cannot read %s: %s" % (path, exc)) from exc
        return cls.from_json(text)

    @classmethod
    def from_preset(cls, spec, **params):
        """Document for a named two-level channel.

        The lambda-coefficient vectors are the Bloch rotation vectors
        divided by sqrt(2); the controls are the three axis rotations.
        """
        if isinstance(spec, str):
            spec = ChannelPreset(spec, dict(params))
        from .channels import _preset_data
        _, a = _preset_data(spec.name, spec.gamma)
        s = 1.0 / np.sqrt(2.0)
        return cls(
            N=2,
            h0=(0.0, 0.0, spec.h03 * s),
            controls=((s, 0.0, 0.0), (0.0, s, 0.0), (0.0, 0.0, s)),
            a_real=tuple(map(tuple, np.asarray(a).real)),
            a_imag=tuple(map(tuple, np.asarray(a).imag)),
            preset={"name": spec.name,
                    "params": {"gamma": spec.gamma, "h03": spec.h03}},
        )

    def to_dict(self):
        doc = {
            "schema_version": self.schema_version,
            "N": self.N,
            "h0": list(self.h0),
            "controls": [list(row) for row in self.controls],
            "A_real": [list(row) for row in self.a_real],
            "A_imag": [list(row) for row in self.a_imag],
        }
        if self.preset is not None:
            doc["preset"] = self.preset
        return doc

    def to_json(self):
        return dumps_report(self.to_dict())

    def to_control_system(self):
        """Build the ControlSystem: generators from coefficients, GKS check."""
        basis = gellmann_basis(self.N)
        gks = GksMatrix.from_real_imag(np.array(self.a_real),
                                       np.array(self.a_imag))
        return ControlSystem(
            N=self.N,
            hamiltonian=adjoint_generator(basis, np.array(self.h0)),
            controls=tuple(adjoint_generator(basis, np.array(row))
                           for row in self.controls),
            dissipator=assemble_dissipator(gks, basis),
            gks=gks,
            admissible=check_psd(gks).is_psd,
        )


# ---------------------------------------------------------------------------
# Subcommand implementations

def _write_output(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _parse_rho0(text, N):
    n = N * N - 1
    if text is None:
        rho = np.zeros(n)
    else:
        try:
            rho = np.array([float(x) for x in text.split(",")])
        except ValueError as exc:
            raise CliParseError("--rho0: expected comma-separated floats: %s"
                                % exc) from exc
        if rho.shape != (n,):
            raise CliParseError("--rho0: expected %d components, got %d"
                                % (n, rho.shape[0]))
    try:
        return CoherenceVector(N, rho)
    except ValueError as exc:
        raise CliParseError("--rho0: %s" % exc) from exc


def _parse_control(text, num_controls, horizon):
    if text is None:
        return PiecewiseControl.zero(num_controls, horizon)
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise CliParseError("cannot read control file: %s" % exc) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliParseError("--control: invalid JSON at line %d column %d: %s"
                            % (exc.lineno, exc.colno, exc.msg)) from exc
    if not isinstance(data, list) or not data:
        raise CliParseError("--control: expected a non-empty JSON array of "
                            "segments")
    segments = []
    for i, seg in enumerate(data):
        if isinstance(seg, dict):
            if set(seg) != {"duration", "u"}:
                raise CliParseError("--control: segment %d must have exactly "
                                    "the keys 'duration' and 'u'" % i)
            duration, u = seg["duration"], seg["u"]
        elif isinstance(seg, list) and len(seg) == 2:
            duration, u = seg
        else:
            raise CliParseError("--control: segment %d must be "
                                "{\"duration\": ..., \"u\": [...]} or "
                                "[duration, [...]]" % i)
        segments.append((duration, u))
    try:
        control = PiecewiseControl(tuple(segments))
    except (TypeError, ValueError) as exc:
        raise CliParseError("--control: %s" % exc) from exc
    if control.num_controls != num_controls:
        raise CliParseError("--control: segments have %d amplitudes but the "
                            "document defines %d controls"
                            % (control.num_controls, num_controls))
    if horizon is not None and abs(control.total_duration - horizon) > 1e-9:
        raise CliParseError("--control: total duration %.17g does not match "
                            "--horizon %.17g"
                            % (control.total_duration, horizon))
    return control


def _require_admissible(system, permissive):
    if system.admissible or permissive:
        return
    raise InadmissibleSystemError(
        "the GKS matrix is not positive semidefinite (min eigenvalue %.3e); "
        "rerun with --permissive to proceed anyway"
        % check_psd(system.gks).min_eigenvalue)


def _analyze_report(doc, tol):
    system = doc.to_control_system()
    psd = check_psd(system.gks)
    unital = is_unital(system.dissipator)
    alpha, traceless = split_trace(system.dissipator)
    acc = accessibility(system, tol=tol)
    certs = noncontrollability_certificates(system)
    fp = fixed_point(system.drift)
    if doc.controls:
        ham = hamiltonian_controllability(
            gellmann_basis(doc.N), np.array(doc.h0),
            [np.array(row) for row in doc.controls])
        ham_block = {"controllable": ham.controllable, "dim": ham.dim}
    else:
        ham_block = None
    warnings = []
    if not system.admissible:
        warnings.append("GKS matrix is not positive semidefinite; the "
                        "dynamics is not completely positive and results "
                        "are formal")
    if not acc.converged:
        warnings.append("Lie closure did not converge within the generation "
                        "budget; classification unavailable")
    fixed_block = None
    if fp is not None:
        phys = is_physical(fp)
        fixed_block = {
            "rho": list(fp.rho),
            "purity": purity(fp),
            "is_physical": phys.is_physical,
            "min_eigenvalue": phys.min_eigenvalue,
        }
    report = {
        "report": "analyze",
        "schema_version": SCHEMA_VERSION,
        "tolerances": dict(TOLERANCES, closure=tol),
        "system": {
            "N": system.N,
            "preset": None if doc.preset is None else doc.preset.get("name"),
            "num_controls": len(system.controls),
            "admissible": system.admissible,
            "gks_min_eigenvalue": psd.min_eigenvalue,
            "gks_on_boundary": psd.on_boundary,
            "dissipator_trace": float(np.trace(system.dissipator.linear)),
            "unital": unital,
        },
        "trace_split": {
            "alpha": alpha,
            "traceless_linear": traceless.linear,
            "translation": traceless.translation,
        },
        "accessibility": {
            "accessible": acc.accessible,
            "closure_dim": acc.closure_dim,
            "classification": acc.classification,
            "generations": acc.generations,
            "converged": acc.converged,
            "features": acc.features,
        },
        "hamiltonian_controllability": ham_block,
        "certificates": {
            "active": list(certs.active_names),
            "note": certs.note,
            "details": [
                {"name": c.name, "active": c.active, "value": c.value,
                 "statement": c.statement}
                for c in certs.certificates
            ],
        },
        "fixed_point": fixed_block,
        "warnings": warnings,
    }
    return report, system


def cmd_analyze(path, out=None, tol=1e-9, permissive=False):
    doc = SystemDocument.load(path)
    report, system = _analyze_report(doc, tol)
    _write_output(dumps_report(report), out)
    for w in report["warnings"]:
        print("warning: %s" % w, file=sys.stderr)
    if not system.admissible and not permissive:
        return 3
    return 0


def cmd_simulate(path, control=None, rho0=None, horizon=None, samples=20,
                 out=None, permissive=False):
    doc = SystemDocument.load(path)
    system = doc.to_control_system()
    _require_admissible(system, permissive)
    if horizon is None and control is None:
        horizon = 1.0
    ctrl = _parse_control(control, len(system.controls), horizon)
    v0 = _parse_rho0(rho0, system.N)
    traj = propagate(system, ctrl, v0, samples_per_segment=samples)
    _write_output(trajectory_csv(traj), out)
    return 0


def cmd_reachable(path, rho0=None, horizon=1.0, samples=500, seed=0,
                  control_bound=10.0, out=None, permissive=False):
    doc = SystemDocument.load(path)
    system = doc.to_control_system()
    _require_admissible(system, permissive)
    v0 = _parse_rho0(rho0, system.N)
    result = sample_reachable(system, v0, horizon, num_samples=samples,
                              seed=seed, control_bound=control_bound)
    stats = {
        "report": "reachable",
        "schema_version": SCHEMA_VERSION,
        "tolerances": dict(TOLERANCES),
        "parameters": {
            "horizon": horizon,
            "num_samples": samples,
            "seed": seed,
            "control_bound": control_bound,
            "grid_points": int(result.grid.shape[0]),
            "rho0": list(v0.rho),
        },
        "unital": result.unital,
        "grid": list(result.grid),
        "max_norms": list(result.max_norms),
        "max_norm_increase": result.max_norm_increase,
        "nested_balls_ok": result.nested_balls_ok,
    }
    if out is None or out == "-":
        sys.stdout.write(dumps_report(stats))
    else:
        csv_path = Path(out)
        if csv_path.suffix == ".csv":
            stats_path = csv_path.with_suffix(".stats.json")
        else:
            stats_path = Path(str(csv_path) + ".stats.json")
            csv_path = Path(str(csv_path) + ".csv")
        csv_path.write_text(cloud_csv(result))
        stats_path.write_text(dumps_report(stats))
    return 0


def cmd_preset(name, gamma=1.0, h03=0.0, out=None):
    try:
        doc = SystemDocument.from_preset(name, gamma=gamma, h03=h03)
    except ValueError as exc:
        raise CliParseError(str(exc)) from exc
    _write_output(doc.to_json(), out)
    return 0


# ---------------------------------------------------------------------------
# Self-check suite

#: Representative coefficient families of the two-level taxonomy:
#: (name, (a4..a12), expected closure dim, expected label).  The closure is
#: generated by the dissipator together with the three rotation controls.
TAXONOMY_CASES = (
    ("traceless_real_offdiag", (0.3, 0.0, 0.2, 0.0, 0.5, 0.0, 1.0, -0.4, -0.6),
     8, "sl(n)"),
    ("traceful_real_offdiag", (0.3, 0.0, 0.2, 0.0, 0.5, 0.0, 1.0, 0.4, 0.2),
     9, "gl(n)"),
    ("pure_translation", (0.0, 0.4, 0.0, -0.3, 0.0, 0.25, 0.0, 0.0, 0.0),
     6, "(ad_su) x R^n"),
    ("traceless_generic", (0.3, 0.15, 0.2, -0.1, 0.5, 0.05, 1.0, -0.4, -0.6),
     11, "sl(n) x R^n"),
    ("traceful_generic", (0.3, 0.15, 0.2, -0.1, 0.5, 0.05, 1.0, 0.5, 0.7),
     12, "gl(n) x R^n"),
    ("isotropic_diagonal", (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.8, 0.8, 0.8),
     4, "ad_su + span(I)"),
    ("isotropic_with_translation", (0.0, 0.3, 0.0, 0.2, 0.0, -0.4, 0.8, 0.8, 0.8),
     7, "(ad_su + span(I)) x R^n"),
)


def _two_level_system(params9, h0=(0.0, 0.0, 0.0)):
    """ControlSystem with full rotation controls from nine GKS parameters."""
    from .dissipator import two_level_gks

    return _two_level_system_from_gks(two_level_gks(params9).entries, h0=h0)


def _check_structure_constants():
    r = verify_structure_constants()
    if r.ok:
        return True, ("%d pairs, %d coefficients match the table"
                      % (r.pairs_checked, r.coefficients_checked))
    items = "; ".join("(%d,%d,%d) expected %.17g computed %.17g" % m
                      for m in r.mismatches)
    return False, ("%d of %d coefficients disagree with the table: %s"
                   % (len(r.mismatches), r.coefficients_checked, items))


def _check_gks_symmetry():
    from .dissipator import build_Ljk

    worst = 0.0
    for N in (2, 3, 4):
        basis = gellmann_basis(N)
        for j in range(1, basis.n + 1):
            for k in range(j, basis.n + 1):
                dev = np.max(np.abs(build_Ljk(basis, k, j)
                                    - build_Ljk(basis, j, k).conj()))
                worst = max(worst, float(dev))
    ok = worst <= 1e-12
    return ok, "max |L_kj - conj(L_jk)| = %.3e over N in {2, 3, 4}" % worst


def _check_dissipator_real():
    rng = np.random.default_rng(20240817)
    count = 0
    for N in (2, 3, 4):
        basis = gellmann_basis(N)
        for _ in range(5):
            b = rng.normal(size=(basis.n, basis.n)) \
                + 1.0j * rng.normal(size=(basis.n, basis.n))
            assemble_dissipator(GksMatrix(b + b.conj().T), basis)
            count += 1
    return True, ("%d random Hermitian coefficient matrices assembled to "
                  "real generators" % count)


def _check_generator_table():
    from .channels import m_matrix

    basis = gellmann_basis(2)
    cases = []
    pairs = {(1, 2): (4, 5), (1, 3): (6, 7), (2, 3): (8, 9)}
    for (j, k), (m_re, m_im) in pairs.items():
        a = np.zeros((3, 3), dtype=complex)
        a[j - 1, k - 1] = 1.0
        a[k - 1, j - 1] = 1.0
        cases.append((m_matrix(m_re), a))
        a = np.zeros((3, 3), dtype=complex)
        a[j - 1, k - 1] = 1.0j
        a[k - 1, j - 1] = -1.0j
        cases.append((m_matrix(m_im), a))
    for d, m_d in ((1, 10), (2, 11), (3, 12)):
        a = np.zeros((3, 3), dtype=complex)
        a[d - 1, d - 1] = 1.0
        cases.append((m_matrix(m_d), a))
    worst = 0.0
    for expected, a in cases:
        got = assemble_dissipator(GksMatrix(a), basis)
        worst = max(worst, float(np.max(np.abs(got.homogeneous
                                               - expected.homogeneous))))
    ok = worst <= 1e-12
    return ok, ("single-coefficient assemblies reproduce the stored "
                "generator matrices, max deviation %.3e" % worst)


def _check_taxonomy():
    failures = []
    for name, params, dim, label in TAXONOMY_CASES:
        acc = accessibility(_two_level_system(params))
        if acc.closure_dim != dim or acc.classification != label:
            failures.append("%s: got dim %d label %r, expected dim %d "
                            "label %r" % (name, acc.closure_dim,
                                          acc.classification, dim, label))
    if failures:
        return False, "; ".join(failures)
    return True, "%d coefficient families classified as expected" \
        % len(TAXONOMY_CASES)


def _check_determinant_law():
    from .dynamics import determinant_check

    rng = np.random.default_rng(20240818)
    worst = 0.0
    for _ in range(3):
        b = rng.normal(size=(3, 3)) + 1.0j * rng.normal(size=(3, 3))
        system = _two_level_system_from_gks((b @ b.conj().T) / 3.0,
                                            h0=rng.normal(size=3) * 0.5)
        segs = tuple((0.25, rng.uniform(-2.0, 2.0, size=3)) for _ in range(4))
        traj = propagate(system, PiecewiseControl(segs),
                         CoherenceVector(2, rng.normal(size=3) * 0.3))
        worst = max(worst, determinant_check(traj, system))
    ok = worst <= 1e-8
    return ok, ("max |det g(t) - exp(tr t)| = %.3e over random admissible "
                "systems" % worst)


def _two_level_system_from_gks(entries, h0=(0.0, 0.0, 0.0)):
    basis = gellmann_basis(2)
    gks = GksMatrix(entries)
    s = 1.0 / np.sqrt(2.0)
    controls = tuple(adjoint_generator(basis, s * np.eye(3)[k])
                     for k in range(3))
    return ControlSystem(
        N=2,
        hamiltonian=adjoint_generator(basis, np.asarray(h0, dtype=float)),
        controls=controls,
        dissipator=assemble_dissipator(gks, basis),
        gks=gks,
        admissible=check_psd(gks).is_psd,
    )


def _check_presets():
    expectations = {
        "depolarizing": (4, False),
        "phase_flip": (9, True),
        "bit_flip": (9, True),
        "bit_phase_flip": (9, True),
        "amplitude_damping": (12, True),
    }
    failures = []
    for name, (dim, accessible) in expectations.items():
        system = preset(name, gamma=0.7)
        acc = accessibility(system)
        if acc.closure_dim != dim or acc.accessible != accessible:
            failures.append("%s: got dim %d accessible %r, expected %d/%r"
                            % (name, acc.closure_dim, acc.accessible, dim,
                               accessible))
    fp = fixed_point(preset("amplitude_damping", gamma=0.7).drift)
    if fp is None or abs(purity(fp) - 1.0) > 1e-9:
        failures.append("amplitude_damping: drift fixed point is not pure")
    if failures:
        return False, "; ".join(failures)
    return True, "five channel presets show the expected closures"


def _check_hamiltonian_rank():
    basis = gellmann_basis(2)
    ez = np.array([0.0, 0.0, 1.0])
    ex = np.array([1.0, 0.0, 0.0])
    full = hamiltonian_controllability(basis, ez, [ex])
    degenerate = hamiltonian_controllability(basis, ez, [ez])
    ok = full.controllable and full.dim == 3 \
        and not degenerate.controllable and degenerate.dim == 1
    return ok, ("z-drift with x-control spans dim %d; z-drift with z-control "
                "spans dim %d" % (full.dim, degenerate.dim))


VERIFY_CHECKS = (
    ("structure_constants", _check_structure_constants),
    ("gks_symmetry", _check_gks_symmetry),
    ("dissipator_realness", _check_dissipator_real),
    ("generator_table", _check_generator_table),
    ("taxonomy", _check_taxonomy),
    ("determinant_law", _check_determinant_law),
    ("presets", _check_presets),
    ("hamiltonian_rank", _check_hamiltonian_rank),
)


def cmd_verify(out=None):
    results = []
    for name, func in VERIFY_CHECKS:
        ok, detail = func()
        results.append({"name": name, "ok": bool(ok), "detail": detail})
        print("[%s] %s: %s" % ("PASS" if ok else "FAIL", name, detail))
    all_ok = all(r["ok"] for r in results)
    print("verify: %d/%d checks passed" % (sum(r["ok"] for r in results),
                                           len(results)))
    if out is not None:
        report = {
            "report": "verify",
            "schema_version": SCHEMA_VERSION,
            "ok": all_ok,
            "checks": results,
        }
        _write_output(dumps_report(report), out)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# Argument parsing

def build_parser():
    parser = argparse.ArgumentParser(
        prog="lindbladctl",
        description="Controllability analysis of finite-dimensional "
                    "Markovian master equations in coherence coordinates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="accessibility, classification and "
                       "noncontrollability certificates")
    p.add_argument("document", help="system document (JSON)")
    p.add_argument("--out", help="write the report here (default: stdout)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="Lie-closure residual tolerance (default 1e-9)")
    p.add_argument("--permissive", action="store_true",
                   help="exit 0 even when the GKS matrix is not PSD")
    p.set_defaults(func=lambda a: cmd_analyze(a.document, out=a.out,
                                              tol=a.tol,
                                              permissive=a.permissive))

    p = sub.add_parser("simulate", help="integrate a controlled trajectory, "
                       "write CSV")
    p.add_argument("document")
    p.add_argument("--control",
                   help="JSON segments [{\"duration\": ..., \"u\": [...]}] "
                        "or @file (default: zero control)")
    p.add_argument("--rho0", help="comma-separated initial coherence vector "
                   "(default: maximally mixed)")
    p.add_argument("--horizon", type=float,
                   help="total duration (default 1.0 for zero control)")
    p.add_argument("--samples", type=int, default=20,
                   help="recorded points per segment (default 20)")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--permissive", action="store_true",
                   help="simulate even when the GKS matrix is not PSD")
    p.set_defaults(func=lambda a: cmd_simulate(
        a.document, control=a.control, rho0=a.rho0, horizon=a.horizon,
        samples=a.samples, out=a.out, permissive=a.permissive))

    p = sub.add_parser("reachable", help="Monte-Carlo reachable-set "
                       "sampling, write CSV + stats JSON")
    p.add_argument("document")
    p.add_argument("--rho0", help="comma-separated initial coherence vector "
                   "(default: maximally mixed)")
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=500,
                   help="number of random controls (default 500)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--control-bound", type=float, default=10.0,
                   help="amplitude bound for sampled controls (default 10)")
    p.add_argument("--out", help="output base: writes OUT.csv and "
                   "OUT.stats.json (default: stats to stdout)")
    p.add_argument("--permissive", action="store_true")
    p.set_defaults(func=lambda a: cmd_reachable(
        a.document, rho0=a.rho0, horizon=a.horizon, samples=a.samples,
        seed=a.seed, control_bound=a.control_bound, out=a.out,
        permissive=a.permissive))

    p = sub.add_parser("preset", help="emit the system document of a named "
                       "two-level channel")
    p.add_argument("name", choices=PRESET_NAMES)
    p.add_argument("--gamma", type=float, default=1.0,
                   help="damping rate (default 1.0)")
    p.add_argument("--h03", type=float, default=0.0,
                   help="drift rotation rate about z (default 0)")
    p.add_argument("--out", help="write the document here (default: stdout)")
    p.set_defaults(func=lambda a: cmd_preset(a.name, gamma=a.gamma,
                                             h03=a.h03, out=a.out))

    p = sub.add_parser("verify", help="run the built-in self-check suite")
    p.add_argument("--out", help="also write a JSON report here")
    p.set_defaults(func=lambda a: cmd_verify(out=a.out))

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except InadmissibleSystemError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except BallExitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
