"""End-to-end quantization run: h -> S -> commutators -> canonical pairs -> spectrum."""

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import lee_system
from .errors import AnsatzInadmissible, DecouplingFailed, NotDirectlyCanonical
from .fixtures import load_fixture
from .model import ModelParams, build_h, classify_region, trace_det
from .phase_algebra import eigendecompose, transform_commutators
from .quantizer import (
    BoppSolution,
    DecoupledHamiltonian,
    branch_for,
    decouple_case1,
    relabel,
    solve_bopp,
    verify_canonical,
)
from .serialize import complex_matrix
from .spectral import spectrum

DIAG_TOL = 1e-10


@dataclass
class RunReport:
    params: ModelParams
    h_matrix: np.ndarray
    trace_det: tuple
    eigenvalues: np.ndarray
    region: object
    S: np.ndarray
    s_source: str
    commutator_table: np.ndarray
    pipeline_branch: str
    bopp: BoppSolution = None
    relabel_map: dict = None
    decoupled: DecoupledHamiltonian = None
    canonical_after: bool = None
    transform: np.ndarray = None  # v -> (X, Y, P_X, P_Y)
    spectrum_sample: list = field(default_factory=list)
    classical_exponents: np.ndarray = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = {
            "params": {"gamma": self.params.gamma, "lambda": self.params.lam},
            "hMatrix": self.h_matrix,
            "traceDet": {"trace": self.trace_det[0], "det": self.trace_det[1]},
            "eigenvalues": self.eigenvalues,
            "regionClass": {
                "f": self.region.f,
                "detSign": self.region.det_sign,
                "negativeEigenvalueCount": self.region.neg_count,
                "caseLabel": self.region.case_label,
            },
            "S": self.S,
            "sSource": self.s_source,
            "commutatorTable": complex_matrix(self.commutator_table),
            "pipelineBranch": self.pipeline_branch,
        }
        if self.bopp is not None:
            d["bopp"] = bopp_to_dict(self.bopp)
        if self.relabel_map is not None:
            d["relabelMap"] = self.relabel_map
        if self.decoupled is not None:
            d["decoupled"] = decoupled_to_dict(self.decoupled)
            d["canonicalAfterTransform"] = self.canonical_after
        d["spectrumSample"] = [lvl.to_dict() for lvl in self.spectrum_sample]
        ex = self.classical_exponents
        d["classicalExponents"] = [[float(z.real), float(z.imag)] for z in ex]
        d["notes"] = list(self.notes)
        return d


def bopp_to_dict(sol):
    d = {k: getattr(sol, k) for k in ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4")}
    d["freeParams"] = list(sol.free_params)
    return d


def mode_to_dict(mode):
    return {"pCoeff": mode.p_coeff, "qCoeff": mode.q_coeff, "regime": mode.regime}


def decoupled_to_dict(dec):
    return {
        "modeX": mode_to_dict(dec.mode_x),
        "modeY": mode_to_dict(dec.mode_y),
        "relativeSign": dec.relative_sign,
    }


def unit_kinetic_shift(table, h_d):
    """(b3, b4) giving unit momentum coefficients in both Bopp modes.

    The X mode gets ``(E3 t34^2 + E2 t24^2) / b4^2`` and the Y mode
    ``E1 t13^2 / b3^2``; falls back to 1 where a coefficient is not positive.
    """
    t = np.asarray(table).imag
    E = np.diag(h_d)
    px = E[2] * t[2, 3] ** 2 + E[1] * t[1, 3] ** 2
    py = E[0] * t[0, 2] ** 2
    b4 = math.sqrt(px) if px > 0 else 1.0
    b3 = math.sqrt(py) if py > 0 else 1.0
    return b3, b4


def run_quantize(gamma, lam, fixture=None, b3=None, b4=None, nmax=3, fixture_dir=None):
    params = ModelParams(gamma, lam)
    h = build_h(params)
    dec = eigendecompose(h)
    if fixture:
        S = load_fixture(fixture, fixture_dir)
        source = f"fixture:{fixture}"
    else:
        S = dec.S
        source = "computed"
    D = S @ h.h @ S.T
    h_d = np.diag(np.diag(D))
    table = transform_commutators(S)
    report = RunReport(
        params=params,
        h_matrix=h.h,
        trace_det=trace_det(h),
        eigenvalues=dec.eigenvalues,
        region=classify_region(params),
        S=S,
        s_source=source,
        commutator_table=table,
        pipeline_branch="unsupported",
        classical_exponents=lee_system(params).exponents(),
    )
    off = float(np.max(np.abs(D - h_d)))
    if off > DIAG_TOL:
        report.notes.append(f"S does not diagonalize h (largest off-diagonal {off:.3e})")
        return report

    branch = branch_for(table)
    try:
        if branch == "bopp":
            if b3 is None or b4 is None:
                d3, d4 = unit_kinetic_shift(table, h_d)
                b3 = d3 if b3 is None else b3
                b4 = d4 if b4 is None else b4
            sol = solve_bopp(table, b3, b4)
            decoupled = decouple_case1(h_d, sol)
            R = sol.matrix()
            report.bopp = sol
        elif branch == "relabel":
            decoupled, R, mapping = relabel(table, h_d)
            report.relabel_map = mapping
        else:
            report.notes.append("commutator table fits neither the Bopp ansatz nor a relabeling")
            return report
    except (AnsatzInadmissible, DecouplingFailed, NotDirectlyCanonical) as exc:
        report.notes.append(str(exc))
        return report

    report.pipeline_branch = branch
    report.decoupled = decoupled
    W = np.linalg.solve(R, S)
    report.transform = W
    report.canonical_after = verify_canonical(transform_commutators(W))
    if decoupled.mode_x.regime == "standard" and decoupled.mode_y.regime in ("standard", "inverted"):
        report.spectrum_sample = [spectrum(decoupled, n, m) for n in range(nmax + 1) for m in range(nmax + 1)]
    else:
        report.notes.append("no ladder spectrum: X mode is not a standard oscillator")
    return report
