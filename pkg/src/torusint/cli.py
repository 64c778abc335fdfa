"""Command-line entry point.

Verbs:
  search   enumerate and exactly verify unlikely intersections of a curve
  certify  search, then decompose each point and certify its subspace
  count    numeric counting of bounded-height subspaces + growth verdict
  chain    exact arithmetic of the degree-bound exponent chain
  report   aggregate artifacts in the output directory into a summary

All artifacts embed the producing configuration and are byte-identical
across reruns with the same config (sorted merges throughout).

Exit codes: 0 success, 2 invalid input, 3 precision exhausted,
4 budget truncated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .cache import FactorCache, NullCache, ResultCache
from .chain import degree_chain
from .curve import load_curve
from .errors import (
    BudgetExceededError,
    InvalidInputError,
    PrecisionExhaustedError,
    TorusintError,
)
from .gamma import (
    build_subspace,
    choose_generators,
    relation_lattice_of_point,
    small_vectors,
)
from .logcount import choose_delta, count_subspaces, growth_report, pick_B
from .search import search

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECISION = 3
EXIT_TRUNCATED = 4

OUT_ENV_VAR = "TORUSINT_OUT"


@dataclass(frozen=True)
class RunConfig:
    command: str
    curve: str = ""
    a_max: int = 6
    t_values: tuple = (10, 100, 1000)
    precision: int = 128
    norm_bound: int = 20
    out_dir: str = "."
    use_cache: bool = True
    workers: int = 0
    n: int = 3
    r: int = 1
    d: int = 1

    def header(self) -> dict:
        h = asdict(self)
        h["t_values"] = list(self.t_values)
        h["version"] = __version__
        # only parameters that affect results: artifacts must be reproducible
        # byte-for-byte regardless of output location or worker count
        for k in ("out_dir", "workers", "use_cache"):
            h.pop(k, None)
        return h


def _parse_args(argv) -> RunConfig:
    ap = argparse.ArgumentParser(
        prog="torusint",
        description="unlikely intersections of curves with subtori: "
        "search, certification, and counting",
    )
    ap.add_argument("command", choices=["search", "certify", "count", "chain", "report"])
    ap.add_argument("--curve", default="", help="path to a JSON curve spec")
    ap.add_argument("--A-max", dest="a_max", type=int, default=6,
                    help="max |exponent| in relation vectors")
    ap.add_argument("--T", default="10,100,1000",
                    help="comma-separated subspace height budgets")
    ap.add_argument("--precision", type=int, default=128, help="working bits")
    ap.add_argument("--norm-bound", type=int, default=20,
                    help="relation-lattice detection bound for certify")
    ap.add_argument("--out", default=os.environ.get(OUT_ENV_VAR, "."),
                    help=f"output directory (default ${OUT_ENV_VAR} or .)")
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--workers", type=int, default=0,
                    help="parallel worker processes for the factoring sweep")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--d", type=int, default=1)
    ns = ap.parse_args(argv)
    try:
        t_values = tuple(sorted(int(x) for x in str(ns.T).split(",") if x.strip()))
    except ValueError:
        raise InvalidInputError(f"unparsable --T value: {ns.T!r}")
    if ns.a_max <= 0 or ns.precision <= 0 or ns.norm_bound <= 0:
        raise InvalidInputError("numeric parameters must be positive")
    return RunConfig(
        command=ns.command,
        curve=ns.curve,
        a_max=ns.a_max,
        t_values=t_values,
        precision=ns.precision,
        norm_bound=ns.norm_bound,
        out_dir=ns.out,
        use_cache=not ns.no_cache,
        workers=ns.workers,
        n=ns.n,
        r=ns.r,
        d=ns.d,
    )


def _write(path, text):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        f.write(text)


def _artifact(cfg: RunConfig, name: str) -> str:
    return os.path.join(cfg.out_dir, name)


def _load_curve_or_die(cfg: RunConfig):
    if not cfg.curve:
        raise InvalidInputError("this command requires --curve")
    return load_curve(cfg.curve)


def _factor_cache(cfg: RunConfig, curve):
    if not cfg.use_cache:
        return NullCache()
    store = ResultCache(_artifact(cfg, "cache.jsonl"))
    return FactorCache(store, curve.content_hash)


def _run_search(cfg: RunConfig):
    curve = _load_curve_or_die(cfg)
    report = search(
        curve,
        cfg.a_max,
        factor_cache=_factor_cache(cfg, curve),
        workers=cfg.workers or None,
        phi_precision=cfg.precision,
    )
    payload = json.loads(report.to_json())
    payload["config"] = cfg.header()
    _write(_artifact(cfg, "catalog.json"), json.dumps(payload, sort_keys=True, indent=1))
    _write(
        _artifact(cfg, "catalog.csv"),
        "\n".join(",".join(row) for row in report.csv_rows()) + "\n",
    )
    for p in report.points:
        print(
            f"orbit t-poly {list(p.t_min_poly.coeffs)} degree {p.degree} "
            f"height {float(p.height):.6f} verified {p.verified}"
        )
    print(f"search: {report.count} orbits, artifacts in {cfg.out_dir}")
    return EXIT_TRUNCATED if report.truncated else EXIT_OK, report


def _run_certify(cfg: RunConfig):
    status, report = _run_search(cfg)
    entries = []
    for p in report.points:
        lat = relation_lattice_of_point(p.point, cfg.norm_bound)
        dec = choose_generators(p.point, lat, cfg.norm_bound)
        sv = small_vectors(dec)
        sub = build_subspace(p.point, sv, dec, precision=256)
        entries.append(
            {
                "t_min_poly": list(p.t_min_poly.coeffs),
                "rank": dec.r,
                "torsion_order": dec.big_n,
                "digits": list(dec.d_vec),
                "t_matrix": [list(r) for r in dec.t_matrix.entries],
                "generator_heights": [
                    round(float(h), 12) for h in dec.generator_heights
                ],
                "small_vectors": [list(v) for v in sv.vectors],
                "b_values": list(sub.b_values),
                "subspace": [list(r) for r in sub.matrix.entries],
                "grassmann_height": round(float(sub.height.value), 12),
                "height_bound_exponent": sub.height_exponent,
                "height_bound_ratio": sub.bound_ratio,
                "residual": sub.residual,
                "contained": sub.contained,
            }
        )
    payload = {"config": cfg.header(), "points": entries}
    _write(
        _artifact(cfg, "certify.json"), json.dumps(payload, sort_keys=True, indent=1)
    )
    bad = [e for e in entries if not e["contained"]]
    print(f"certify: {len(entries)} points, {len(bad)} containment failures")
    if bad:
        return EXIT_PRECISION
    return status


def _run_count(cfg: RunConfig):
    curve = _load_curve_or_die(cfg)
    cat = search(
        curve,
        cfg.a_max,
        factor_cache=_factor_cache(cfg, curve),
        workers=cfg.workers or None,
        phi_precision=cfg.precision,
    )
    if not cat.points:
        raise InvalidInputError("no cataloged point to anchor the region")
    # anchor the region on the richest cataloged point: highest field degree,
    # ties broken by catalog order, so B provably contains a known point
    anchor = max(cat.points, key=lambda p: p.degree)
    c_bound = max(cat.max_height, 0.55)
    delta = choose_delta(c_bound, curve.n)
    region = pick_B(anchor.point.conjugate_coordinate_balls(cfg.precision), delta)
    cr = count_subspaces(
        curve,
        region,
        cfg.t_values,
        vector_bound=cfg.a_max,
        precision=max(cfg.precision - 32, 80),
    )
    verdict = growth_report(cr)
    payload = {
        "config": cfg.header(),
        "region_index": cr.region_index,
        "delta": cr.delta,
        "T": list(cr.t_values),
        "counts": list(cr.counts),
        "truncated": cr.truncated,
        "slope": None if verdict.slope != verdict.slope else round(verdict.slope, 6),
        "verdict": verdict.verdict,
    }
    _write(_artifact(cfg, "count.json"), json.dumps(payload, sort_keys=True, indent=1))
    _write(_artifact(cfg, "count.csv"), "\n".join(cr.csv_rows()) + "\n")
    _write(
        _artifact(cfg, "count_points.csv"),
        "\n".join(cr.point_ledger_rows()) + "\n",
    )
    print(f"count: T={list(cr.t_values)} N={list(cr.counts)} {verdict.line()}")
    return EXIT_TRUNCATED if cr.truncated else EXIT_OK


def _run_chain(cfg: RunConfig):
    rep = degree_chain(cfg.n, cfg.r, cfg.d)
    payload = {
        "config": cfg.header(),
        "n": rep.n,
        "r": rep.r,
        "d": rep.d,
        "e_height": rep.e_height,
        "epsilon": [rep.epsilon.numerator, rep.epsilon.denominator],
        "product": [
            rep.comparison_exponent.numerator,
            rep.comparison_exponent.denominator,
        ],
        "conclusion": rep.conclusion,
    }
    _write(_artifact(cfg, "chain.json"), json.dumps(payload, sort_keys=True, indent=1))
    for line in rep.lines():
        print(line)
    return EXIT_OK


def _run_report(cfg: RunConfig):
    lines = [f"torusint report ({cfg.out_dir})"]
    for name in ("catalog.json", "certify.json", "count.json", "chain.json"):
        path = _artifact(cfg, name)
        if not os.path.exists(path):
            continue
        with open(path) as f:
            data = json.load(f)
        if name == "catalog.json":
            lines.append(
                f"catalog: {data['count']} orbits, max height "
                f"{data['max_height']}, max degree {data['max_degree']}"
            )
        elif name == "certify.json":
            ok = sum(1 for e in data["points"] if e["contained"])
            lines.append(f"certify: {ok}/{len(data['points'])} subspaces contain phi(Log P)")
        elif name == "count.json":
            lines.append(
                f"count: T={data['T']} N={data['counts']} slope={data['slope']} "
                f"{data['verdict']}"
            )
        elif name == "chain.json":
            e = data["epsilon"]
            lines.append(
                f"chain: e_H={data['e_height']} epsilon={e[0]}/{e[1]} "
                f"product={data['product'][0]}/{data['product'][1]}"
            )
    if len(lines) == 1:
        lines.append("no artifacts found")
    text = "\n".join(lines) + "\n"
    _write(_artifact(cfg, "report.txt"), text)
    print(text, end="")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        cfg = _parse_args(argv if argv is not None else sys.argv[1:])
        if cfg.command == "search":
            status, _ = _run_search(cfg)
            return status
        if cfg.command == "certify":
            return _run_certify(cfg)
        if cfg.command == "count":
            return _run_count(cfg)
        if cfg.command == "chain":
            return _run_chain(cfg)
        return _run_report(cfg)
    except PrecisionExhaustedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    except (InvalidInputError, TorusintError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
