"""Dispatch a validated job to the library and assemble a deterministic report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .. import __version__
from ..algebra.bipoly import BiPoly
from ..algebra.rational import fmt
from ..functional import adjacent_family, family_polynomial, opposite_family
from ..polytope import BoundaryWeights, Quadrilateral, WeightedQuadrilateral, canonicalize
from ..stability import (Status, classify, float_oracle, locate_semistable, scan_simplex, semistable_split,
                         stable_interval, verify_witness)
from .config import JobConfig, serialize

EXIT_OK, EXIT_ERROR, EXIT_UNSTABLE = 0, 1, 2


@dataclass
class Report:
    data: dict
    exit_code: int = EXIT_OK
    plot: object = field(default=None, repr=False)

    def to_json(self, with_timing: bool = True) -> str:
        data = dict(self.data)
        if not with_timing:
            data.pop("timing", None)
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def quadrilateral(cfg: JobConfig) -> Quadrilateral:
    if cfg.pqk is not None:
        return Quadrilateral.from_pqk(*cfg.pqk)
    return canonicalize(cfg.vertices)


def _canonical_weights(quad: Quadrilateral, weights) -> tuple[Fraction, ...]:
    """Input weights are listed per input edge; reorder them to canonical edge order."""
    return tuple(weights[quad.edge_map[i]] for i in range(4))


def weighted(cfg: JobConfig, weights=None) -> WeightedQuadrilateral:
    quad = quadrilateral(cfg)
    return WeightedQuadrilateral(quad, BoundaryWeights(_canonical_weights(quad, weights or cfg.weights)))


def _quad_json(quad: Quadrilateral) -> dict:
    out = {"pqk": [fmt(x) for x in quad.pqk], "vertices": [[fmt(c) for c in v] for v in quad.vertices]}
    if quad.input_vertices is not None:
        out["to_canonical"] = {"matrix": [[fmt(c) for c in row] for row in quad.matrix],
                               "shift": [fmt(c) for c in quad.shift], "edge_map": [i + 1 for i in quad.edge_map]}
    return out


def _wq_json(wq: WeightedQuadrilateral) -> dict:
    return {"pqk": [fmt(x) for x in wq.quad.pqk], "weights": [fmt(x) for x in wq.weights]}


def _family(quad: Quadrilateral, label: str):
    kind, idx = label.split("-")
    return opposite_family(quad, int(idx)) if kind == "opposite" else adjacent_family(quad, int(idx))


# -- commands --------------------------------------------------------------------------------

def _classify(cfg: JobConfig) -> Report:
    wq = weighted(cfg)
    v = classify(wq)
    result = {"quadrilateral": _quad_json(wq.quad), "canonical_weights": [fmt(x) for x in wq.weights],
              "verdict": v.to_json(), "witness_verified": verify_witness(wq, v)}
    plot = None
    if cfg.family is not None:
        fp = family_polynomial(wq.with_weights(wq.weights.normalized()), _family(wq.quad, cfg.family))
        result["family"] = {"label": fp.family.label, "phi": {f"{i},{j}": fmt(c) for (i, j), c in sorted(fp.poly.terms.items())}}
        plot = fp
    code = EXIT_UNSTABLE if v.status is Status.UNSTABLE else EXIT_OK
    return Report({"result": result}, code, plot)


def _interval(cfg: JobConfig) -> Report:
    quad = quadrilateral(cfg)
    i, j = cfg.edges
    if quad.input_vertices is not None:
        inv = {e: k + 1 for k, e in enumerate(quad.edge_map)}
        i, j = inv[i - 1], inv[j - 1]
    si = stable_interval(quad, i, j)
    result = {"quadrilateral": _quad_json(quad), "interval": si.to_json()}
    if si.empty and not si.note:
        result["interval"]["note"] = "unstable for all r"
    return Report({"result": result})


def _scan(cfg: JobConfig) -> Report:
    quad = quadrilateral(cfg)
    N = cfg.resolution or 20
    res = scan_simplex(quad, N)
    unstable = sorted(res.unstable)
    result = {"quadrilateral": _quad_json(quad), "resolution": N, "counts": res.counts(),
              "unstable_components": res.components,
              "non_stable_points": [list(p) for p in unstable]}
    return Report({"result": result}, EXIT_OK, res)


def _split(cfg: JobConfig) -> Report:
    result: dict = {}
    if cfg.segment is not None:
        quad = quadrilateral(cfg)
        ws = _canonical_weights(quad, cfg.segment["stable"])
        wu = _canonical_weights(quad, cfg.segment["unstable"])
        inst = locate_semistable(quad, ws, wu)
        wq, v = inst.wq, inst.verdict
        result["located"] = {"parameter": fmt(inst.parameter), "bracket": [fmt(x) for x in inst.bracket]}
    else:
        wq = weighted(cfg)
        v = classify(wq)
    result["input"] = _wq_json(wq)
    result["verdict"] = v.to_json()
    if v.status is not Status.STRICTLY_SEMISTABLE:
        result["note"] = f"input is {v.status.value}; only strictly semistable weights split"
        return Report({"result": result}, EXIT_UNSTABLE if v.status is Status.UNSTABLE else EXIT_ERROR)
    pieces = semistable_split(wq, v)
    result["pieces"] = []
    for piece in pieces:
        pv = classify(piece)
        result["pieces"].append({**_wq_json(piece), "verdict": pv.to_json()})
    return Report({"result": result})


def _ambitoric_data(block: dict):
    from ..ambitoric import AmbitoricData

    return AmbitoricData.make(block["alpha"], block["beta"], block["q"], block["weights"], block["type"])


def _formal(cfg: JobConfig) -> Report:
    if cfg.trapezium is not None:
        return _formal_trapezium(cfg)
    from ..ambitoric import (build_H, check_positive, classify_asymptotics, extract_edge_weights,
                             forward_polytope, pi_q_pairing, solve_boundary_system, verify_extremal)

    d = _ambitoric_data(cfg.ambitoric)
    fs = solve_boundary_system(d)
    pos = check_positive(fs, d)
    h = build_H(fs, d)
    result = {"data": d.to_json(), "solution": fs.to_json(), "positivity": pos.to_json(),
              "pi_q_pairing": fmt(pi_q_pairing(fs.pi, d.q0, d.q1, d.q2)), "H": h.to_json()}
    code = EXIT_OK
    if pos.positive:
        result["asymptotics"] = {k: v.to_json() for k, v in classify_asymptotics(fs, d).items()}
    if d.kind == "negative":
        result["note"] = "moment coordinates, edge weights and the extremal check are implemented for positive type only"
        return Report({"result": result})
    result["edge_weights"] = {k: fmt(v) for k, v in extract_edge_weights(h).items()}
    ext = verify_extremal(h)
    result["extremal"] = ext.to_json()
    if ext.extremal:
        wq = forward_polytope(d, h)
        v = classify(wq)
        result["forward_polytope"] = {**_wq_json(wq), "verdict": v.to_json()}
        if v.status is Status.UNSTABLE:
            code = EXIT_UNSTABLE
    return Report({"result": result}, code)


def _formal_trapezium(cfg: JobConfig) -> Report:
    from ..ambitoric import TrapeziumData, legendre_H, legendre_trapezium_solve, verify_extremal

    t = cfg.trapezium
    td = TrapeziumData(*t["alpha"], *t["beta"], t["weights"])
    sol = legendre_trapezium_solve(td)
    ext = verify_extremal(legendre_H(td, sol))
    wq = td.polygon().to_weighted_quadrilateral()
    v = classify(wq)
    result = {"trapezium": td.to_json(), "solution": sol.to_json(), "extremal": ext.to_json(),
              "polytope": {**_wq_json(wq), "verdict": v.to_json()}}
    return Report({"result": result}, EXIT_UNSTABLE if v.status is Status.UNSTABLE else EXIT_OK)


def _verify(cfg: JobConfig) -> Report:
    checks: dict = {}
    result: dict = {"checks": checks}
    if cfg.weights is not None and (cfg.pqk is not None or cfg.vertices is not None):
        wq = weighted(cfg)
        v = classify(wq)
        orc = float_oracle(wq, cfg.samples, cfg.seed)
        result["verdict"] = v.to_json()
        result["oracle"] = orc.to_json()
        checks["witness"] = verify_witness(wq, v)
        if v.status is Status.STABLE:
            checks["oracle_finds_no_violator"] = not orc.refuted
    if cfg.ambitoric is not None:
        checks.update(_verify_ambitoric(cfg, result))
    passed = all(checks.values())
    result["all_passed"] = passed
    return Report({"result": result}, EXIT_OK if passed else EXIT_ERROR)


def _verify_ambitoric(cfg: JobConfig, result: dict) -> dict:
    from ..ambitoric import (ENDPOINTS, build_H, extract_edge_weights, forward_polygon, ibp_check, residuals,
                             solve_boundary_system, verify_extremal)

    d = _ambitoric_data(cfg.ambitoric)
    fs = solve_boundary_system(d)
    checks = {"boundary_residuals_zero": all(r == 0 for r in residuals(fs, d))}
    if d.kind != "positive":
        return checks
    h = build_H(fs, d)
    got = extract_edge_weights(h)
    checks["edge_weights_match"] = all(got[n] == w for n, w in zip(ENDPOINTS, d.weights))
    ext = verify_extremal(h)
    poly = forward_polygon(d, h)
    s, t = BiPoly.s(), BiPoly.t()
    tests = {"1": BiPoly.const(1), "x": s, "y": t, "x^2": s * s, "xy": s * t, "y^2": t * t}
    res = {name: ibp_check(h, ext.zeta, poly, f) for name, f in tests.items()}
    result["ibp_residuals"] = res
    checks["ibp_within_1e-9"] = all(r <= 1e-9 for r in res.values())
    return checks


_DISPATCH = {"classify": _classify, "interval": _interval, "scan": _scan, "formal": _formal,
             "split": _split, "verify": _verify}


def run_job(cfg: JobConfig) -> Report:
    start = time.perf_counter()
    try:
        report = _DISPATCH[cfg.command](cfg)
    except (ValueError, ArithmeticError, NotImplementedError) as exc:
        report = Report({"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_ERROR)
    report.data["command"] = cfg.command
    report.data["input"] = serialize(cfg)
    report.data["quadstab_version"] = __version__
    report.data["exit_code"] = report.exit_code
    report.data["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report
