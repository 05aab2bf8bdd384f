"""kpearson command line.

    kpearson family list
    kpearson build --family ball --param alpha=1 --nmax 3
    kpearson pearson derive --family biangle
    kpearson pearson verify --family laguerre_laguerre --pair data/laguerre_laguerre_paper_intermediate.json
    kpearson operator classify --family triangle --nmax 6
    kpearson orthocheck --family biangle --nmax 5 --tol 1e-10
    kpearson report all --format markdown --out reports/

Errors go to stderr as a single "error: ..." line with exit status 2.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from . import __version__
from .config import ConfigError, RunConfig
from .families import EXAMPLE_FAMILIES, FAMILIES, FamilyError, system
from .report import (ReportError, build_section, classify_section, full_report, metadata, orthocheck_section,
                     pearson_derive_section, pearson_verify_section, render, weight_section)


def _parse_params(items: Optional[List[str]]) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--param expects name=value (got {item!r})")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def make_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if getattr(args, "config", None) else RunConfig()
    over = {k: getattr(args, k) for k in ("family", "nmax", "precision", "out", "format", "pair")
            if getattr(args, k, None) is not None}
    if getattr(args, "tol", None) is not None:
        over["tolerance"] = args.tol
    params = dict(cfg.params)
    params.update(_parse_params(getattr(args, "param", None)))
    return replace(cfg, params=params, **over).validate()


def _emit(report: dict, cfg: RunConfig, name: str = "") -> None:
    text = render(report, cfg.format)
    if cfg.out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    out = Path(cfg.out)
    if name and (out.is_dir() or cfg.out.endswith("/")):
        out.mkdir(parents=True, exist_ok=True)
        out = out / f"{name}.{'json' if cfg.format == 'json' else 'md'}"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)


def _context(cfg: RunConfig):
    fam = cfg.family_obj
    p = cfg.resolved()
    return fam, p, system(fam, p)


def cmd_family(args) -> int:
    if args.action != "list":
        raise ConfigError(f"unknown family action {args.action!r}")
    rows = {name: {"title": f.title, "params": {k: str(v) for k, v in f.defaults},
                   "example": name in EXAMPLE_FAMILIES} for name, f in FAMILIES.items()}
    cfg = RunConfig(format=args.format or "json")
    if cfg.format == "json":
        _emit({"families": rows}, cfg)
    else:
        lines = ["| family | title | defaults |", "|---|---|---|"]
        for name, r in rows.items():
            lines.append(f"| {name} | {r['title']} | {', '.join(f'{k}={v}' for k, v in r['params'].items())} |")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_build(args) -> int:
    cfg = make_config(args)
    fam, p, s = _context(cfg)
    _emit({"metadata": metadata(cfg.echo()), "weight": weight_section(fam, p, s),
           "polynomials": build_section(s, cfg.nmax)}, cfg)
    return 0


def cmd_pearson(args) -> int:
    cfg = make_config(args)
    fam, p, s = _context(cfg)
    rep = {"metadata": metadata(cfg.echo()), "weight": weight_section(fam, p, s)}
    if args.mode == "derive":
        rep["pearson"] = pearson_derive_section(fam, p, s, search=not args.no_search)
        rep["errata"] = fam.errata
    else:
        if not cfg.pair:
            raise ConfigError("pearson verify needs --pair FILE")
        rep["verify"] = pearson_verify_section(fam, p, s, cfg.pair)
    _emit(rep, cfg)
    if args.mode == "verify" and args.strict and not rep["verify"]["passed"]:
        return 1
    return 0


def cmd_operator(args) -> int:
    cfg = make_config(args)
    fam, p, s = _context(cfg)
    nmax = max(cfg.nmax, 2)
    _emit({"metadata": metadata(cfg.echo()), "weight": weight_section(fam, p, s),
           "operator": classify_section(fam, p, s, nmax)}, cfg)
    return 0


def cmd_orthocheck(args) -> int:
    cfg = make_config(args)
    fam, p, s = _context(cfg)
    sec = orthocheck_section(s, fam, p, cfg.nmax, cfg.precision, cfg.tolerance)
    _emit({"metadata": metadata(cfg.echo()), "orthocheck": sec}, cfg)
    return 0 if sec["passed"] else 1


def cmd_report(args) -> int:
    base = make_config(args)
    names = [base.family] if args.family else list(EXAMPLE_FAMILIES)
    if base.out is None and len(names) > 1 and base.format == "json":
        reports = {}
        for name in names:
            cfg = replace(base, family=name, params={}).validate() if not args.family else base
            fam, p, _ = _context(cfg)
            reports[name] = full_report(fam, p, cfg.nmax, cfg.precision, cfg.tolerance, cfg.echo())
        _emit(reports, base)
        return 0
    for name in names:
        cfg = replace(base, family=name, params={}).validate() if not args.family else base
        if len(names) > 1 and cfg.out is not None and not cfg.out.endswith("/"):
            cfg = replace(cfg, out=cfg.out + "/")
        fam, p, _ = _context(cfg)
        _emit(full_report(fam, p, cfg.nmax, cfg.precision, cfg.tolerance, cfg.echo()), cfg, name)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: usage: {' '.join(message.split())}\n")


def _common(p: argparse.ArgumentParser, pair: bool = False) -> None:
    p.add_argument("--family", help="registered family name (see 'family list')")
    p.add_argument("--param", nargs="+", action="extend", metavar="K=V",
                   help="rational parameter, e.g. alpha=1/2 (repeatable)")
    p.add_argument("--nmax", type=int, help="largest total degree (<= 12)")
    p.add_argument("--precision", type=int, help="working precision in decimal digits (default 34)")
    p.add_argument("--tol", type=float, help="orthogonality tolerance (default 1e-10)")
    p.add_argument("--out", help="output file, or directory for multi-family reports")
    p.add_argument("--format", choices=("json", "markdown"))
    p.add_argument("--config", help="JSON config with the same keys; flags override it")
    if pair:
        p.add_argument("--pair", help="pair file: {kind, matrix, vector}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kpearson", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"kpearson {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    f = sub.add_parser("family", help="list registered families")
    f.add_argument("action", choices=("list",))
    f.add_argument("--format", choices=("json", "markdown"))
    f.set_defaults(func=cmd_family)

    b = sub.add_parser("build", help="monic Koornwinder polynomials up to nmax")
    _common(b)
    b.set_defaults(func=cmd_build)

    pe = sub.add_parser("pearson", help="derive or verify Pearson pairs")
    pe.add_argument("mode", choices=("derive", "verify"))
    _common(pe, pair=True)
    pe.add_argument("--no-search", action="store_true", help="skip the symmetrizer search")
    pe.add_argument("--strict", action="store_true", help="exit 1 when verification fails")
    pe.set_defaults(func=cmd_pearson)

    op = sub.add_parser("operator", help="classify the second-order operator")
    op.add_argument("action", choices=("classify",))
    _common(op)
    op.set_defaults(func=cmd_operator)

    oc = sub.add_parser("orthocheck", help="numeric orthogonality residuals")
    _common(oc)
    oc.set_defaults(func=cmd_orthocheck)

    r = sub.add_parser("report", help="full report for one or all example families")
    r.add_argument("scope", choices=("all",))
    _common(r)
    r.set_defaults(func=cmd_report)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FamilyError, ReportError, ValueError, OSError) as e:
        msg = " ".join(str(e).split())
        sys.stderr.write(f"error: {type(e).__name__}: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
