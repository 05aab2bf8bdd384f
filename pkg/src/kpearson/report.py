"""Report sections (plain dicts, JSON-ready) and their Markdown rendering."""
from __future__ import annotations

import json
from pathlib import Path
from typing import List, Mapping, Optional

from . import __version__
from .algebra import fraction_str
from .expr import parse_poly, parse_rf
from .families import (Family, Params, decomposition_inputs, operator_pair, printed_operator, printed_pair_polys,
                       printed_symmetrizer, system)
from .koornwinder import KoornwinderSystem, basis, factored_weight
from .operators import build_operator, classify
from .pearson import (PearsonError, PearsonPair, decomposition_method, raw_system, search_symmetrizer,
                      symmetrize_with, verify_divergence_form, verify_gradient_form)
from .quadrature import moment_matrix_check, orthocheck


class ReportError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

def weight_section(fam: Family, p: Params, sys: KoornwinderSystem) -> dict:
    try:
        w = factored_weight(sys).describe()
    except ValueError as e:
        w = f"unavailable ({e})"
    return {
        "family": fam.name,
        "title": fam.title,
        "params": {k: fraction_str(v) for k, v in p.items()},
        "w1": sys.w1.label,
        "w2": sys.w2.label,
        "rho": sys.rho.describe(),
        "case": sys.rho.case,
        "weight": w,
        "domain": sys.domain.describe(),
        "boundary": [str(b) for b in sys.domain.boundary_polynomials],
    }


def build_section(sys: KoornwinderSystem, nmax: int) -> dict:
    polys = basis(sys, nmax)
    return {
        "count": len(polys),
        "polynomials": [{"n": n, "m": m, "P": str(P), **P.to_json()} for (n, m), P in sorted(polys.items())],
    }


def _pair_entry(label: str, P: Optional[PearsonPair], verdict, error: str = "", erratum: str = "") -> dict:
    out = {"label": label, "passed": bool(verdict.passed) if verdict is not None else False}
    if P is not None:
        out["pair"] = P.to_json()
    if verdict is not None and not verdict.passed:
        out["residual"] = [str(r) for r in verdict.residual]
    if error:
        out["error"] = error
    if erratum:
        out["erratum"] = erratum
    return out


def pearson_derive_section(fam: Family, p: Params, sys: KoornwinderSystem, search: bool = True) -> dict:
    raw = raw_system(sys)
    out: dict = {"raw_system": {**raw.to_json(), "display_discrepancy": raw.display_discrepancy,
                                "verdict": verify_gradient_form(raw.phi_mat, raw.delta, sys).to_json()}}
    if fam.raw is not None:
        M, v = printed_pair_polys(fam.raw, p)
        out["printed_raw"] = {"label": fam.raw.label, **verify_gradient_form(M, v, sys).to_json(),
                              "erratum": fam.raw.erratum}
    syms = []
    for label, S_txt, note in (("printed", fam.S, fam.S_erratum), ("corrected", fam.S_corrected, "")):
        if S_txt is None:
            continue
        S = printed_symmetrizer(S_txt, p)
        try:
            P = symmetrize_with(S, raw, sys)
            syms.append({"label": label, **S.to_json(), "passed": True, "pair": P.to_json(), "erratum": note})
        except PearsonError as e:
            syms.append({"label": label, **S.to_json(), "passed": False, "error": str(e), "erratum": note})
    out["symmetrizers"] = syms
    pairs = []
    for pp in fam.pairs:
        Phi, psit = printed_pair_polys(pp, p)
        P = PearsonPair.from_gradient_form(Phi, psit, "manual")
        v = verify_divergence_form(P, sys)
        pairs.append({**_pair_entry(pp.label, v.pair or P, v, erratum=pp.erratum), "final": pp.final})
    out["printed_pairs"] = pairs
    dec = []
    for aux, inp in decomposition_inputs(fam, p, sys):
        entry = {"label": aux.label, "registered": aux.registered, **inp.to_json()}
        if aux.erratum:
            entry["erratum"] = aux.erratum
        try:
            entry["pair"] = decomposition_method(inp, sys, require_identity=False).to_json()
            entry["passed"] = True
        except PearsonError as e:
            entry["passed"] = False
            entry["error"] = str(e)
        dec.append(entry)
    out["decomposition"] = dec
    if search:
        cands = search_symmetrizer(raw, sys)
        out["search"] = {"count": len(cands), "candidates": [c.to_json() for c in cands]}
    return out


def load_pair_file(path: str, p: Params):
    """{"kind": "gradient"|"divergence", "matrix": [[..],[..]], "vector": [..]}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(f"cannot read pair file {path}: {e}") from None
    kind = data.get("kind", "gradient")
    if kind not in ("gradient", "divergence"):
        raise ReportError(f"pair file kind must be 'gradient' or 'divergence' (got {kind!r})")
    try:
        M = tuple(tuple(parse_poly(e, p) for e in row) for row in data["matrix"])
        v = tuple(parse_rf(e, p) for e in data["vector"])
    except (KeyError, TypeError) as e:
        raise ReportError(f"pair file {path} lacks matrix/vector: {e}") from None
    if len(M) != 2 or any(len(r) != 2 for r in M) or len(v) != 2:
        raise ReportError("pair file needs a 2x2 matrix and a 2-vector")
    return kind, M, v, data.get("label", Path(path).stem)


def pearson_verify_section(fam: Family, p: Params, sys: KoornwinderSystem, path: str) -> dict:
    kind, M, v, label = load_pair_file(path, p)
    if kind == "gradient":
        verdict = verify_gradient_form(M, v, sys)
    else:
        if M[0][1] != M[1][0]:
            raise ReportError("divergence-form matrix must be symmetric")
        if not all(e.is_polynomial() for e in v):
            raise ReportError("divergence-form vector must be polynomial")
        P = PearsonPair(M[0][0], M[0][1], M[1][1], v[0].as_polynomial(), v[1].as_polynomial(), "manual")
        verdict = verify_divergence_form(P, sys)
    out = {"label": label, "kind": kind, "matrix": [[str(e) for e in r] for r in M],
           "vector": [str(e) for e in v], **verdict.to_json()}
    hit = _matching_erratum(fam, p, M, v)
    out["erratum_flag"] = bool(hit)
    if hit:
        out["erratum"] = hit
    return out


def _matching_erratum(fam: Family, p: Params, M, v) -> str:
    shown = [pp for pp in ((fam.raw,) if fam.raw else ()) + fam.pairs if pp.erratum]
    for pp in shown:
        Mp, vp = printed_pair_polys(pp, p)
        if Mp == M and tuple(vp) == tuple(e.as_polynomial() if e.is_polynomial() else e for e in v):
            return pp.erratum
    return ""


def classify_section(fam: Family, p: Params, sys: KoornwinderSystem, nmax: int) -> dict:
    P = operator_pair(fam, p, sys)
    L = build_operator(P)
    cls = classify(sys, L, nmax, [f.bind(p) for f in fam.formulas])
    out = {"source": fam.operator_source, "pair": P.to_json(), "operator": L.to_json(),
           "operator_text": L.describe(), "classification": cls.to_json()}
    printed = printed_operator(fam, p)
    if printed is not None:
        out["printed_operator_matches"] = printed == L
    if fam.operator_note:
        out["note"] = fam.operator_note
    out["eigenvalues"] = [{"n": k[0], "m": k[1], "value": fraction_str(v)}
                          for k, v in sorted(cls.eigenvalues().items())]
    return out


def orthocheck_section(sys: KoornwinderSystem, fam: Family, p: Params, nmax: int, prec: int, tol: float) -> dict:
    n = max(nmax, 1)
    rep = orthocheck(sys, n, prec, tol)
    out = rep.to_json()
    try:
        out["moment_matrix"] = moment_matrix_check(operator_pair(fam, p, sys), sys, prec).to_json()
    except (PearsonError, ValueError) as e:
        out["moment_matrix"] = {"passed": False, "error": str(e)}
    return out


def metadata(config_echo: Mapping) -> dict:
    return {"tool": "kpearson", "version": __version__, "config": dict(config_echo)}


def full_report(fam: Family, p: Params, nmax: int, prec: int, tol: float, config_echo: Mapping) -> dict:
    sys = system(fam, p)
    return {
        "metadata": metadata(config_echo),
        "weight": weight_section(fam, p, sys),
        "polynomials": build_section(sys, min(nmax, 4)),
        "pearson": pearson_derive_section(fam, p, sys),
        "operator": classify_section(fam, p, sys, max(nmax, 2)),
        "orthocheck": orthocheck_section(sys, fam, p, nmax, prec, tol),
        "errata": fam.errata + list(fam.notes),
    }


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def dumps(report: Mapping) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _mat_md(M) -> List[str]:
    return [f"    [ {' , '.join(row)} ]" for row in M]


def to_markdown(report: Mapping) -> str:
    """Weight, raw system, S, Pearson pair, operator, eigenvalues; whatever sections are present."""
    lines: List[str] = []
    meta = report.get("metadata", {})
    cfg = meta.get("config", {})
    title = report.get("weight", {}).get("title") or cfg.get("family", "report")
    lines += [f"# {title}", ""]
    if cfg:
        params = ", ".join(f"{k} = {v}" for k, v in sorted(cfg.get("params", {}).items()))
        lines += [f"Parameters: {params or 'none'}", ""]
    if "weight" in report:
        w = report["weight"]
        lines += ["## Weight", "", f"- w1: {w['w1']}", f"- w2: {w['w2']}", f"- rho: {w['rho']} (Case {w['case']})",
                  f"- w(x, y) = {w['weight']}", f"- domain: {w['domain']}", ""]
    if "polynomials" in report:
        lines += ["## Polynomials", ""]
        for e in report["polynomials"]["polynomials"]:
            lines.append(f"- P_{e['n']},{e['m']} = {e['P']}")
        lines.append("")
    if "pearson" in report:
        pe = report["pearson"]
        raw = pe["raw_system"]
        lines += ["## Raw system", "", "phi:"] + _mat_md(raw["phi"]) + \
                 [f"delta: ({', '.join(raw['delta'])})", f"row scaling (rho powers): {raw['row_scaling']}",
                  f"display discrepancy: {raw['display_discrepancy']}", ""]
        if "printed_raw" in pe:
            pr = pe["printed_raw"]
            lines.append(f"printed raw system: {'PASS' if pr['passed'] else 'FAIL'}"
                         + (f" (residual {', '.join(pr['residual'])})" if not pr["passed"] else ""))
            lines.append("")
        for s in pe.get("symmetrizers", []):
            lines += [f"## Symmetrizer ({s['label']})", ""] + _mat_md(s["S"])
            lines.append(f"result: {'PASS' if s['passed'] else 'FAIL: ' + s.get('error', '')}")
            if s.get("erratum"):
                lines.append(f"erratum: {s['erratum']}")
            lines.append("")
        for pp in pe.get("printed_pairs", []):
            lines += _pair_md(f"Pearson pair ({pp['label']})", pp)
        for d in pe.get("decomposition", []):
            lines += [f"## Decomposition ({d['label']})", "", f"E = {d['E']}", f"a = {d['a']}", f"b = {d['b']}",
                      f"c = {d['c']}", f"(ac - b^2) E = 1: {d['identity_holds']}"]
            if d.get("passed"):
                lines += ["Phi:"] + _mat_md(d["pair"]["Phi"]) + [f"Psi~ = ({', '.join(d['pair']['Psi_tilde'])})"]
            else:
                lines.append(f"error: {d.get('error', '')}")
            if d.get("erratum"):
                lines.append(f"erratum: {d['erratum']}")
            lines.append("")
        if "search" in pe:
            lines += ["## Symmetrizer search", "", f"{pe['search']['count']} candidates", ""]
            for c in pe["search"]["candidates"][:3]:
                lines += _mat_md(c["S"]) + ["  Phi:"] + _mat_md(c["pair"]["Phi"]) + [""]
    if "verify" in report:
        v = report["verify"]
        lines += [f"## Verification ({v['label']})", "", f"kind: {v['kind']}", "matrix:"] + _mat_md(v["matrix"])
        lines += [f"vector: ({', '.join(v['vector'])})", f"result: {'PASS' if v['passed'] else 'FAIL'}"]
        if not v["passed"]:
            lines.append(f"residual: ({', '.join(v['residual'])})")
        if v.get("erratum"):
            lines.append(f"erratum: {v['erratum']}")
        lines.append("")
    if "operator" in report:
        op = report["operator"]
        c = op["classification"]
        lines += ["## Operator", "", f"L = {op['operator_text']}", f"source: {op['source']}"]
        if "printed_operator_matches" in op:
            lines.append(f"matches printed operator: {op['printed_operator_matches']}")
        if op.get("note"):
            lines.append(f"note: {op['note']}")
        lines += ["", "## Eigenvalues", "", f"classification: {c['kind']} (empirical s = {c['empirical_s']}, "
                                            f"s_value = {c['s_value']})", f"formula: {c['formula']}"]
        if c["formula_mismatches"]:
            lines.append(f"formula mismatches at: {c['formula_mismatches']}")
        lines.append("")
        for r in c["reports"]:
            terms = ", ".join(f"({t['n']},{t['m']}): {t['value']}" for t in r["coefficients"])
            lines.append(f"- L[P_{r['n']},{r['m']}] -> {terms or '0'}")
        lines.append("")
    if "orthocheck" in report:
        o = report["orthocheck"]
        lines += ["## Orthogonality", "", f"N = {o['N']}, precision = {o['precision']}, tol = {o['tolerance']}",
                  f"max residual = {o['max_residual']} at {o['worst_pair']}: {'PASS' if o['passed'] else 'FAIL'}"]
        if "moment_matrix" in o:
            lines.append(f"det <1, Phi> nonzero: {o['moment_matrix'].get('passed')}")
        lines.append("")
    if report.get("errata"):
        lines += ["## Errata", ""] + [f"- {e}" for e in report["errata"]] + [""]
    return "\n".join(lines)


def _pair_md(title: str, pp: Mapping) -> List[str]:
    out = [f"## {title}", ""]
    P = pp.get("pair")
    if P:
        out += ["Phi:"] + _mat_md(P["Phi"]) + [f"Psi~ = ({', '.join(P['Psi_tilde'])})",
                                                f"Psi = ({', '.join(P['Psi'])})",
                                                f"deg Phi = {P['deg_Phi']}, deg Psi = {P['deg_Psi']}"]
    out.append(f"result: {'PASS' if pp['passed'] else 'FAIL'}")
    if not pp["passed"] and pp.get("residual"):
        out.append(f"residual: ({', '.join(pp['residual'])})")
    if pp.get("erratum"):
        out.append(f"erratum: {pp['erratum']}")
    return out + [""]


def render(report: Mapping, fmt: str) -> str:
    return dumps(report) if fmt == "json" else to_markdown(report)
