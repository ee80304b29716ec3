"""Command-line front end: build tables, run verification suites, list presets, count matchings."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exact import to_monomial
from .hypergeom import HypergeometricError, representation_check, split_check
from .matching import (
    GraphError,
    MultipartiteGraph,
    bipartite_check,
    complete_check,
    conjecture_multipartite,
    formula_bipartite,
    formula_complete,
    load_edge_list,
    matching_record,
)
from .operators import (
    Kind,
    SpecError,
    SystemSpec,
    build_P,
    degeneration_check,
    eigen_check,
    hahn_check,
    loads_spec,
    spec_to_dict,
)
from .presets import PRESETS, parse_preset
from .recurrence import bandwidth_check, recurrence_table
from .report import CheckReport, _jsonable
from .series import (
    gf_disc_checks,
    gf_full_checks,
    gf_phi_check,
    gf_rational_check,
    mh_l1_check,
    mh_normalized,
    mh_power_check,
    normalize_Q,
)

SUITES = ("eigen", "recurrence", "hypergeom", "hahn", "genfun", "mehler-heine", "matching")
GF_SAMPLES = {Kind.CONTINUOUS: ("0", "1", "-2/3"), Kind.DISCRETE: ("0", "2", "5/3")}


class UsageError(Exception):
    pass


class NotApplicable(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: SystemSpec | None = None
    n_max: int = 10
    order: int = 12
    tol: float = 1e-2
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    parts: tuple[int, ...] | None = None
    r: int = 1
    edge_list: str | None = None
    normalized: bool = False
    mh_l1_indices: tuple[int, ...] = (25, 50, 100, 200)
    mh_power_indices: tuple[int, ...] = (25, 50, 100, 200)

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.n_max < 0:
            raise UsageError("--n-max must be nonnegative")
        if self.order < 0:
            raise UsageError("--order must be nonnegative")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.r < 1:
            raise UsageError("--r must be positive")


# suites ---------------------------------------------------------------------------------

def _suite_eigen(spec, cfg):
    return [eigen_check(spec, cfg.n_max)]


def _suite_recurrence(spec, cfg):
    return [bandwidth_check(spec, cfg.n_max)]


def _suite_hypergeom(spec, cfg):
    if not spec.is_pure_power:
        raise NotApplicable("closed forms are stated for q = tau G^l")
    out = [representation_check(spec, cfg.n_max)]
    if spec.kind is Kind.CONTINUOUS:
        out.append(split_check(spec, cfg.n_max // spec.l))
    return out


def _suite_hahn(spec, cfg):
    return [hahn_check(spec, max(cfg.n_max, 1)), degeneration_check(spec, cfg.n_max)]


def _skipped(name: str, params: dict, reason: str) -> CheckReport:
    return CheckReport(name, params, data={"skipped": reason})


def _suite_genfun(spec, cfg):
    if not spec.is_pure_power:
        raise NotApplicable("generating functions are stated for q = tau G^l")
    out = []
    for x in GF_SAMPLES[spec.kind]:
        x = Fraction(x)
        for i in range(spec.l):
            try:
                if spec.kind is Kind.CONTINUOUS:
                    out += [gf_phi_check(spec, i, x, cfg.order), gf_rational_check(spec, i, x, cfg.order)]
                else:
                    out += gf_disc_checks(spec, i, x, cfg.order)
            except (HypergeometricError, ValueError) as exc:
                out.append(_skipped("genfun", {"i": i, "x": x}, str(exc)))
        try:
            out += gf_full_checks(spec, x, cfg.order)
        except (HypergeometricError, ValueError) as exc:
            out.append(_skipped("genfun_full", {"x": x}, str(exc)))
    return out


def _suite_mehler_heine(spec, cfg):
    if spec.kind is not Kind.CONTINUOUS or not spec.is_pure_power:
        raise NotApplicable("limits are treated for continuous q = tau G^l systems")
    companion = mh_normalized(spec)
    out = []
    x = Fraction(1)
    if spec.l == 1:
        try:
            out.append(mh_l1_check(companion, x, cfg.mh_l1_indices, cfg.tol).to_check("mehler_heine"))
        except (HypergeometricError, ValueError, ZeroDivisionError) as exc:
            out.append(_skipped("mehler_heine", {"i": 0}, str(exc)))
        return out
    for i in range(spec.l):
        try:
            rep = mh_power_check(companion, x, i, cfg.mh_power_indices, cfg.tol)
            out.append(rep.to_check("mehler_heine"))
        except (HypergeometricError, ValueError, ZeroDivisionError) as exc:
            out.append(_skipped("mehler_heine", {"i": i}, str(exc)))
    for rep in out:
        rep.params["companion"] = spec_to_dict(companion)
    return out


def _suite_matching(spec, cfg):
    if cfg.parts is not None:
        return [_matching_parts_check(cfg.parts, cfg.r)]
    return [complete_check(6), bipartite_check(6, 1)]


def _matching_parts_check(parts: tuple[int, ...], r: int) -> CheckReport:
    g = MultipartiteGraph(parts)
    oracle = matching_record(g, r)
    if all(p == 1 for p in parts):
        claim, name = formula_complete(len(parts), r), "matching_complete"
    elif len(parts) == 2 and r % 2:
        n, m = max(parts), min(parts)
        claim, name = formula_bipartite(n, m, r), "matching_bipartite"
    elif r % 2 == 0:
        rep = CheckReport("matching_oracle", {"parts": list(parts), "r": r})
        rep.data = {"counts": list(oracle.counts), "note": "no closed form for even r"}
        return rep.finish()
    else:
        rep = conjecture_multipartite(parts, r)
        rep.data["counts"] = list(oracle.counts)
        return rep
    rep = CheckReport(name, {"parts": list(parts), "r": r})
    rep.data = {
        "counts": list(oracle.counts),
        "polynomial": [str(c) for c in oracle.polynomial.coeffs],
    }
    if claim != oracle.polynomial:
        rep.fail(f"closed form {claim} differs from oracle {oracle.polynomial}")
    return rep.finish()


SUITE_FUNCS = {
    "eigen": _suite_eigen,
    "recurrence": _suite_recurrence,
    "hypergeom": _suite_hypergeom,
    "hahn": _suite_hahn,
    "genfun": _suite_genfun,
    "mehler-heine": _suite_mehler_heine,
    "matching": _suite_matching,
}


def run_suite(name: str, spec: SystemSpec | None, cfg: RunConfig) -> dict:
    if spec is None and name != "matching":
        raise UsageError(f"suite {name!r} needs --spec or --preset")
    try:
        reports = SUITE_FUNCS[name](spec, cfg)
    except NotApplicable as exc:
        return {"suite": name, "status": "n/a", "reason": str(exc), "reports": []}
    passed = all(r.passed for r in reports)
    return {"suite": name, "status": "pass" if passed else "fail", "reports": [r.to_dict() for r in reports]}


def _run_suites(names: list[str], spec, cfg: RunConfig) -> list[dict]:
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(names))) as pool:
            return list(pool.map(run_suite, names, [spec] * len(names), [cfg] * len(names)))
    return [run_suite(n, spec, cfg) for n in names]


# output -----------------------------------------------------------------------------------

def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


# commands ----------------------------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> int:
    spec = cfg.spec
    rows = []
    for n in range(cfg.n_max + 1):
        P = build_P(spec, n)
        row = {"n": n, "P": [str(c) for c in P.coeffs]}
        if spec.kind is Kind.DISCRETE:
            row["P_monomial"] = [str(c) for c in to_monomial(P).coeffs]
        if cfg.normalized:
            try:
                row["Q"] = [str(c) for c in normalize_Q(spec, n).coeffs]
            except (ValueError, HypergeometricError) as exc:
                row["Q"] = None
                row["Q_error"] = str(exc)
        rows.append(row)
    if cfg.fmt == "json":
        _emit(_dump_json({"spec": spec_to_dict(spec), "basis": spec.basis.value, "rows": rows}), cfg)
    else:
        width = cfg.n_max + 1
        table = [["n", "poly"] + [f"c_{k}" for k in range(width)]]
        for row in rows:
            for key in ("P", "Q"):
                if row.get(key) is not None:
                    table.append([row["n"], key] + row[key] + ["0"] * (width - len(row[key])))
        _emit(_csv(table), cfg)
    return 0


def cmd_verify(cfg: RunConfig, which: str) -> int:
    names = list(SUITES) if which == "all" else [which]
    results = _run_suites(names, cfg.spec, cfg)
    ok = all(r["status"] != "fail" for r in results)
    if cfg.fmt == "json":
        doc = {
            "spec": None if cfg.spec is None else spec_to_dict(cfg.spec),
            "settings": {"n_max": cfg.n_max, "order": cfg.order, "tol": cfg.tol},
            "passed": ok,
            "suites": results,
        }
        _emit(_dump_json(doc), cfg)
    else:
        table = [["suite", "check", "status", "max_deviation", "first_violation"]]
        for res in results:
            if not res["reports"]:
                table.append([res["suite"], "", res["status"], "", res.get("reason", "")])
            for rep in res["reports"]:
                status = "pass" if rep["passed"] else "fail"
                dev = "" if rep["max_deviation"] is None else repr(rep["max_deviation"])
                table.append([res["suite"], rep["name"], status, dev, (rep["violations"] or [""])[0]])
        _emit(_csv(table), cfg)
    return 0 if ok else 1


def cmd_presets(cfg: RunConfig) -> int:
    docs = []
    for name in sorted(PRESETS):
        p = PRESETS[name]
        docs.append({"name": name, "summary": p.summary, "defaults": p.defaults,
                     "spec": spec_to_dict(parse_preset(name))})
    if cfg.fmt == "json":
        _emit(_dump_json(docs), cfg)
    else:
        table = [["name", "defaults", "kind", "alphas", "rho", "q"]]
        for d in docs:
            s = d["spec"]
            table.append([d["name"], " ".join(f"{k}={v}" for k, v in d["defaults"].items()), s["kind"],
                          " ".join(s["alphas"]), s["rho"], " ".join(s["q"])])
        _emit(_csv(table), cfg)
    return 0


def cmd_recurrence(cfg: RunConfig) -> int:
    try:
        table = recurrence_table(cfg.spec, cfg.n_max)
    except AssertionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    if cfg.fmt == "csv":
        _emit(table.to_csv(), cfg)
    else:
        doc = {"spec": spec_to_dict(cfg.spec), "band": table.band,
               "rows": [{"n": n, "gamma": [str(g) for g in row]} for n, row in enumerate(table.rows)]}
        _emit(_dump_json(doc), cfg)
    return 0


def cmd_matching(cfg: RunConfig) -> int:
    if cfg.edge_list:
        graph, label = load_edge_list(cfg.edge_list), {"edge_list": cfg.edge_list}
    elif cfg.parts:
        graph, label = MultipartiteGraph(cfg.parts), {"parts": list(cfg.parts)}
    else:
        raise UsageError("matching needs --parts or --edge-list")
    rec = matching_record(graph, cfg.r)
    N = len(rec.polynomial.coeffs) - 1
    if cfg.fmt == "json":
        _emit(_dump_json({**label, "r": cfg.r, "vertices": N, "counts": list(rec.counts),
                          "polynomial": [str(c) for c in rec.polynomial.coeffs]}), cfg)
    else:
        table = [["j", "count", "exponent"]]
        table += [[j, c, N - (cfg.r + 1) * j] for j, c in enumerate(rec.counts)]
        _emit(_csv(table), cfg)
    return 0


# argument handling ---------------------------------------------------------------------------

def _parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.replace(" ", "").strip("[]").split(",") if p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --parts {text!r}") from exc
    if not parts or any(p < 1 for p in parts):
        raise argparse.ArgumentTypeError("--parts must list positive integers")
    return parts


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 2 with a one-line message
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--spec", help="path to a JSON system document")
    src.add_argument("--preset", help='preset such as "laguerre alpha=1/2"')
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--order", type=int, default=12, help="series order for generating functions")
    common.add_argument("--tol", type=float, default=1e-2)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--parts", type=_parts)
    common.add_argument("--r", type=int, default=1)
    common.add_argument("--edge-list")

    parser = _Parser(prog="ggh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    b = sub.add_parser("build", parents=[common], help="coefficient table of P_n")
    b.add_argument("--normalized", action="store_true", help="also emit Q_n")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=(*SUITES, "all"))
    sub.add_parser("presets", parents=[common], help="list named families")
    sub.add_parser("recurrence", parents=[common], help="gamma_j(n) table")
    sub.add_parser("matching", parents=[common], help="path-packing counts and M_r")
    return parser


def _load_spec(args) -> SystemSpec | None:
    if args.spec:
        try:
            text = Path(args.spec).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from exc
        return loads_spec(text)
    if args.preset:
        return parse_preset(args.preset)
    return None


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        spec = _load_spec(args)
        cfg = RunConfig(
            command=args.command, spec=spec, n_max=args.n_max, order=args.order, tol=args.tol,
            fmt=args.format, out=args.out, jobs=args.jobs, parts=args.parts, r=args.r,
            edge_list=args.edge_list, normalized=getattr(args, "normalized", False),
        )
        if args.command in ("build", "recurrence") and spec is None:
            raise UsageError(f"{args.command} needs --spec or --preset")
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "presets":
            return cmd_presets(cfg)
        if args.command == "recurrence":
            return cmd_recurrence(cfg)
        return cmd_matching(cfg)
    except SpecError as exc:
        sys.stderr.write(f"spec error ({exc.field}): {exc}\n")
        return 2
    except (UsageError, GraphError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
