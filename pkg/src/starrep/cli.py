"""Batch front end: parse a presentation, complete it, run the checkers,
build the certified representation, and persist JSON artifacts.

Exit codes: 0 success / all checks passed, 1 usage or pipeline error,
2 completion truncated at the degree cap, 3 a requested check failed.
Artifacts are plain JSON with exact scalars as strings; reruns with the same
configuration and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import examples as ex
from .freealg import Poly
from .gram import FormNotHermitian, GramMatrix, WeightUnavailable, choose_weights, verify_positive
from .groebner import GroebnerBasis, complete, enumerate_bw
from .parser import (
    Presentation,
    PresentationError,
    parse_expression,
    parse_presentation,
    parse_presentation_json,
)
from .rep import adjoint_check, faithfulness_probe, norm_estimate, regular_matrix
from .scalars import Scalar
from .starcheck import CONDITIONS, check_nonexpanding_bounded, is_symmetric, run_checks

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TRUNCATED = 2
EXIT_CHECK_FAILED = 3

DEFAULT_CONDITIONS = ("symmetric", "appropriate", "corollary", "kir", "stardouble", "nonexpanding")


@dataclass
class RunConfig:
    input: Optional[str] = None
    preset: Optional[str] = None
    cap: int = 8
    bw_cap: int = 4
    gram_n: Optional[int] = None
    conditions: tuple = DEFAULT_CONDITIONS
    out: str = "artifacts"
    workspace: str = "."
    alpha: Optional[str] = None
    side: str = "right"
    seed: int = 0
    force: bool = False
    expr: Optional[str] = None


def _out_dir(cfg: RunConfig) -> Path:
    out = os.environ.get("STARREP_OUT", cfg.out)
    path = Path(cfg.workspace) / out
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_artifact(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _load_presentation(cfg: RunConfig) -> Presentation:
    if (cfg.input is None) == (cfg.preset is None):
        raise PresentationError("exactly one of --input or --preset is required")
    alpha = None
    if cfg.alpha not in (None, "symbolic"):
        alpha = Fraction(cfg.alpha)
    if cfg.preset:
        return ex.preset(cfg.preset, alpha=alpha)
    text = (Path(cfg.workspace) / cfg.input).read_text(encoding="utf-8")
    if cfg.input.endswith(".json"):
        pres = parse_presentation_json(json.loads(text))
    else:
        pres = parse_presentation(text)
    if alpha is not None and pres.algebra.parameter is not None:
        pres = pres.at_parameter(alpha)
    return pres


def _complete(cfg: RunConfig, pres: Presentation) -> GroebnerBasis:
    return complete(pres.relations, cfg.cap)


def _require_numeric(pres: Presentation) -> None:
    if pres.algebra.parameter is None:
        return
    for r in pres.relations:
        for c in r.terms.values():
            if not c.is_constant():
                raise PresentationError(
                    "this pipeline needs a numeric parameter; pass --alpha P/Q"
                )


def cmd_complete(cfg: RunConfig) -> int:
    pres = _load_presentation(cfg)
    gb = _complete(cfg, pres)
    out = _out_dir(cfg)
    _write_artifact(out / "gb.json", gb.to_json_obj())
    print(
        f"completed: {len(gb.elements)} elements, status {gb.status}, "
        f"artifact {out / 'gb.json'}"
    )
    return EXIT_OK if gb.status == "complete" else EXIT_TRUNCATED


def cmd_check(cfg: RunConfig) -> int:
    pres = _load_presentation(cfg)
    gb = _complete(cfg, pres)
    reports = run_checks(gb, cfg.conditions, cfg.bw_cap * 2)
    out = _out_dir(cfg)
    _write_artifact(out / "check.json", [r.to_json_obj() for r in reports])
    worst = EXIT_OK
    for r in reports:
        print(f"{r.condition}: {r.verdict}")
        if r.verdict == "fail":
            worst = EXIT_CHECK_FAILED
    return worst


def cmd_represent(cfg: RunConfig) -> int:
    pres = _load_presentation(cfg)
    _require_numeric(pres)
    gb = _complete(cfg, pres)
    if gb.status != "complete" and not cfg.force:
        print("completion is truncated; re-run with --force to proceed anyway")
        return EXIT_TRUNCATED
    report: dict = {"preset": pres.meta.get("preset"), "meta": dict(pres.meta)}

    out = _out_dir(cfg)
    if pres.meta.get("no_bounded_representation"):
        report["no_bounded_representation"] = True

    sym = is_symmetric(gb)
    nonexp_cap = 2 * cfg.bw_cap if gb.status == "complete" else min(2 * cfg.bw_cap, gb.cap)
    nonexp = check_nonexpanding_bounded(gb, nonexp_cap)
    report["checks"] = {"symmetric": sym.verdict, "nonexpanding": nonexp.verdict}
    if nonexp.verdict == "fail":
        report["nonexpanding_witnesses"] = nonexp.witnesses[:5]
    if not (sym.passed and nonexp.passed) and not cfg.force:
        _write_artifact(out / "report.json", report)
        print(json.dumps(report, indent=2, sort_keys=True))
        print(f"preconditions failed (symmetric: {sym.verdict}, nonexpanding: {nonexp.verdict})")
        return EXIT_CHECK_FAILED

    bw = enumerate_bw(gb, cfg.bw_cap)
    n = cfg.gram_n or len(bw.words)
    try:
        weights, gram = choose_weights(gb, bw, n)
    except (WeightUnavailable, FormNotHermitian) as err:
        # the inductive construction found evidence against its hypotheses;
        # record it instead of patching anything
        report["weight_construction"] = {
            "status": "failed",
            "evidence": str(err),
        }
        _write_artifact(out / "report.json", report)
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_ERROR
    pd_ok, minors = verify_positive(gram)
    report["gram"] = {"size": n, "positive_definite": pd_ok, "min_minor": str(min(minors))}

    _write_artifact(out / "gram.json", gram.to_json_obj(gb.algebra))

    # matrices live on the longest full-degree prefix covered by the Gram
    d_full = cfg.bw_cap
    while d_full > 0 and sum(1 for w in bw.words if len(w) <= d_full) > n:
        d_full -= 1
    rep_words = [w for w in bw.words if len(w) <= d_full]
    from .groebner import BWEnumeration

    rep_bw = BWEnumeration(d_full, rep_words, {w: k + 1 for k, w in enumerate(rep_words)})
    m = len(rep_words)
    rep_gram = GramMatrix(
        rep_words,
        [row[:m] for row in gram.entries[:m]],
        gram.weights,
        gram.minors[:m],
    )

    alg = gb.algebra
    rng = random.Random(cfg.seed)
    rep_obj: dict = {"side": cfg.side, "cap": d_full, "generators": {}}
    norms = {}
    for name in alg.generators:
        z = alg.gen_poly(name)
        M = regular_matrix(z, gb, rep_bw, side=cfg.side)
        sparse = []
        for j, col in enumerate(M.columns):
            for i, c in sorted(col.items()):
                sparse.append([i + 1, j + 1, Scalar.from_qi(c).to_text()])
        entry = {"matrix": sparse, "mask": sorted(j + 1 for j in M.mask)}
        if len(M.mask) < M.size:
            nr = norm_estimate(M, rep_gram)
            entry["norm"] = {"value": nr.value, "residual": nr.residual}
            norms[name] = nr.value
        rep_obj["generators"][name] = entry

    adjoints = {}
    for name in alg.generators:
        rep_check = adjoint_check(alg.gen_poly(name), gb, rep_bw, rep_gram)
        adjoints[name] = rep_check.verdict
    rep_obj["adjoint"] = adjoints

    probes = {"witness": 0, "exhausted": 0}
    words = rep_bw.words
    for _ in range(50):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = words[rng.randrange(len(words))]
            terms[w] = Scalar.from_rational(rng.randint(1, 4))
        f = Poly(alg, terms)
        if gb.reduce(f).is_zero():
            continue
        pr = faithfulness_probe(f, gb, rep_bw, rep_gram)
        probes[pr.status] += 1
    rep_obj["faithfulness_sample"] = probes
    report["adjoint"] = adjoints
    report["norms"] = norms
    report["faithfulness_sample"] = probes
    if pres.meta.get("no_bounded_representation"):
        report["no_bounded_representation"] = True

    _write_artifact(out / "rep.json", rep_obj)
    _write_artifact(out / "report.json", report)
    print(json.dumps(report, indent=2, sort_keys=True))
    if not pd_ok:
        return EXIT_ERROR
    if any(v != "pass" for v in adjoints.values()) and not cfg.force:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_normalform(cfg: RunConfig) -> int:
    pres = _load_presentation(cfg)
    gb = _complete(cfg, pres)
    if cfg.expr is None:
        raise PresentationError("normalform needs --expr")
    f = parse_expression(cfg.expr, pres.algebra)
    r = gb.reduce(f)
    print(r.to_text())
    if gb.status != "complete" and f.degree() > gb.cap:
        print("warning: truncated basis; the form is only certified within the cap", file=sys.stderr)
    return EXIT_OK


def cmd_example(name: str, k_max: int, density: str, cfg: RunConfig) -> int:
    coeffs = [Fraction(c.strip()) for c in density.split(",")]
    out = _out_dir(cfg)
    if name == "moments":
        model = ex.moment_weights(coeffs, max(4 * k_max + 8, 16))
        obj = {
            "density": [str(c) for c in coeffs],
            "moments": [str(m) for m in model.moments],
        }
        _write_artifact(out / "moments.json", obj)
        print(json.dumps(obj, indent=2, sort_keys=True))
        return EXIT_OK
    if name == "x2-blocks":
        model = ex.moment_weights(coeffs, 4 * k_max + 8)
        rep = ex.x2_block_structure(k_max, model)
        obj = {
            "k_max": k_max,
            "families": rep["families"],
            "product_table_verified": rep["product_table_verified"],
            "block_diagonal": rep["block_diagonal"],
            "positive_definite": rep["positive_definite"],
            "unit_couplings": rep["unit_couplings"],
        }
        _write_artifact(out / "x2_blocks.json", obj)
        print(json.dumps(obj, indent=2, sort_keys=True))
        return EXIT_OK
    if name == "x2-boundedness":
        model = ex.moment_weights(coeffs, 4 * k_max + 8)
        rep = ex.x2_boundedness(model, k_max)
        obj = {
            "k_max": k_max,
            "monotone_shifted_indexing": rep["monotone_shifted_indexing"],
            "monotone_adjacent_indexing": rep["monotone_adjacent_indexing"],
            "gram_positive_definite": rep["gram_positive_definite"],
            "norm": rep["norm"].value,
            "norm_bounded_by_one": rep["norm_bounded_by_one"],
            "ratio_table": rep["ratio_table"],
        }
        _write_artifact(out / "x2_boundedness.json", obj)
        print(json.dumps(obj, indent=2, sort_keys=True))
        return EXIT_OK
    raise PresentationError(f"unknown example study {name!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="starrep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="presentation file (text or .json)")
        sp.add_argument("--preset", help="built-in presentation, e.g. A_x2, T3, Q4")
        sp.add_argument("--cap", type=int, default=8, help="completion degree cap")
        sp.add_argument("--bw-cap", type=int, default=4, dest="bw_cap", help="basis word degree cap")
        sp.add_argument("--alpha", help="rational value for the parameter, or 'symbolic'")
        sp.add_argument("--out", default="artifacts", help="artifact directory")
        sp.add_argument("--workspace", default=".", help="base directory for paths")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--force", action="store_true", help="continue past failed gates")

    sp = sub.add_parser("complete", help="compute the closed relation set")
    common(sp)

    sp = sub.add_parser("check", help="run involution-compatibility checks")
    common(sp)
    sp.add_argument(
        "--condition",
        action="append",
        choices=sorted(CONDITIONS),
        help="condition to check (repeatable; default: all)",
    )

    sp = sub.add_parser("represent", help="weights, Gram certificate, matrices")
    common(sp)
    sp.add_argument("--gram-n", type=int, dest="gram_n", help="Gram size (default: all basis words)")
    sp.add_argument("--side", choices=("left", "right"), default="right")

    sp = sub.add_parser("normalform", help="reduce an expression")
    common(sp)
    sp.add_argument("--expr", required=True)

    sp = sub.add_parser("example", help="run a preset study")
    sp.add_argument("--name", required=True, choices=("moments", "x2-blocks", "x2-boundedness"))
    sp.add_argument("--k-max", type=int, default=4, dest="k_max")
    sp.add_argument("--density", default="1", help="comma-separated polynomial coefficients")
    sp.add_argument("--out", default="artifacts")
    sp.add_argument("--workspace", default=".")

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "example":
            cfg = RunConfig(out=args.out, workspace=args.workspace)
            return cmd_example(args.name, args.k_max, args.density, cfg)
        cfg = RunConfig(
            input=args.input,
            preset=args.preset,
            cap=args.cap,
            bw_cap=args.bw_cap,
            alpha=args.alpha,
            out=args.out,
            workspace=args.workspace,
            seed=args.seed,
            force=args.force,
        )
        if args.command == "complete":
            return cmd_complete(cfg)
        if args.command == "check":
            if getattr(args, "condition", None):
                cfg.conditions = tuple(args.condition)
            return cmd_check(cfg)
        if args.command == "represent":
            cfg.gram_n = args.gram_n
            cfg.side = args.side
            return cmd_represent(cfg)
        if args.command == "normalform":
            cfg.expr = args.expr
            return cmd_normalform(cfg)
        raise PresentationError(f"unknown command {args.command!r}")
    except (PresentationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
