"""Command-line driver.

Subcommands ``table``, ``verify`` and ``gram`` share the instance options.
Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from importlib import resources

from .bnpair import GroupError
from .fields import FieldError
from .steinberg import (
    DegenerateCharacterError,
    FactorReport,
    Instance,
    build_instance,
    sigma_star,
    verify_suite,
)
from . import linalg

MAX_INDEX_GB = 1000
EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    group: str
    n: int
    q: int
    ell: int
    ext: str = "auto"
    sigma: str = "all"
    out: str = "text"
    out_path: str | None = None
    samples: int = 1000

    @property
    def m(self) -> int | None:
        if self.ext == "auto":
            return None
        try:
            m = int(self.ext)
        except ValueError:
            raise InvalidInput(f"--ext must be 'auto' or a positive integer, got {self.ext!r}")
        if m < 1:
            raise InvalidInput("--ext must be positive")
        return m


def _index_bound(group: str, n: int, q: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= (q**i - 1) // (q - 1)
    return out


def build(cfg: RunConfig) -> Instance:
    if cfg.n < 2:
        raise InvalidInput("n must be at least 2")
    if cfg.q < 2:
        raise InvalidInput("q must be at least 2")
    if cfg.group == "sl2" and cfg.n != 2:
        raise InvalidInput("group sl2 requires n = 2")
    if _index_bound(cfg.group, cfg.n, cfg.q) > MAX_INDEX_GB:
        raise InvalidInput(f"[G:B] exceeds the desk-scale bound {MAX_INDEX_GB}")
    try:
        return build_instance(cfg.group, cfg.n, cfg.q, cfg.ell, cfg.m)
    except (FieldError, GroupError) as exc:
        raise InvalidInput(str(exc)) from exc


def select_sigmas(inst: Instance, choice: str):
    chars = inst.characters
    if choice == "all":
        return list(chars)
    try:
        idx = [int(t) for t in choice.split(",") if t.strip()]
    except ValueError:
        raise InvalidInput(f"--sigma must be 'all' or a comma list of indices, got {choice!r}")
    bad = [i for i in idx if not 0 <= i < len(chars)]
    if bad or not idx:
        raise InvalidInput(f"sigma indices {bad or idx} out of range 0..{len(chars) - 1}")
    return [chars[i] for i in idx]


def consistency_checks(inst: Instance, report: FactorReport, sigmas) -> None:
    St = inst.module.st_basis
    chk = report.checks
    chk["st_dim_is_U"] = St.dim == inst.provider.U_order
    chk["dims_ordered"] = all(
        0 < s["dim_D"] <= s["dim_S"] <= report.dim_St <= report.index_GB for s in report.sigmas
    )
    chk["S_in_St"] = all(linalg.contains(St, inst.compute_S_sigma(s)) for s in sigmas)
    chk["duality_D"] = all(inst.dim_D_sigma(s) == inst.dim_D_sigma(sigma_star(s)) for s in sigmas)


# -- rendering ------------------------------------------------------------


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_table(report: FactorReport, fmt: str) -> str:
    d = report.to_dict()
    d.pop("witnesses")
    if fmt == "json":
        return _json(d)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "n", "q", "ell", "m", "index_GB", "dim_St",
                    "sigma", "params", "orbit", "dim_S", "dim_D"])
        for s in report.sigmas:
            w.writerow([report.group, report.n, report.q, report.ell, report.m,
                        report.index_GB, report.dim_St, s["index"],
                        " ".join(map(str, s["params"])), s["orbit"], s["dim_S"], s["dim_D"]])
        return buf.getvalue()
    lines = [
        f"group={report.group} n={report.n} q={report.q} (p={report.p}, f={report.f}) "
        f"ell={report.ell} m={report.m}",
        f"[G:B]={report.index_GB} dim St={report.dim_St}",
        "sigma  params      orbit  dim_S  dim_D",
    ]
    for s in report.sigmas:
        params = " ".join(map(str, s["params"]))
        lines.append(f"{s['index']:<6} {params:<11} {s['orbit']:<6} {s['dim_S']:<6} {s['dim_D']}")
    lines.append("checks: " + ", ".join(
        f"{k}={'pass' if v else 'FAIL'}" for k, v in report.checks.items()))
    return "\n".join(lines) + "\n"


def render_verify(report: FactorReport, fmt: str) -> str:
    if fmt == "json":
        return _json(report.to_dict())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "result", "witness"])
        for k, v in report.checks.items():
            w.writerow([k, "pass" if v else "fail", report.witnesses.get(k, "")])
        return buf.getvalue()
    head = render_table(report, "text").splitlines()[:-1]
    width = max(len(k) for k in report.checks)
    body = [
        f"{'PASS' if v else 'FAIL'}  {k:<{width}}  {report.witnesses.get(k, '')}".rstrip()
        for k, v in report.checks.items()
    ]
    verdict = "all checks passed" if report.ok else "VERIFICATION FAILED"
    return "\n".join(head + body + [verdict]) + "\n"


def render_gram(inst: Instance, fmt: str) -> tuple[str, str]:
    G = inst.gram_cW
    r = inst.gram_rank()
    tail = f"rank_mod_ell={r}\n"
    if fmt == "json":
        return _json({
            "group": inst.provider.group, "n": inst.provider.n, "q": inst.provider.q,
            "ell": inst.cf.ell, "labels": list(range(len(G))),
            "matrix": G.tolist(), "rank_mod_ell": r,
        }), ""
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(G.tolist())
        return buf.getvalue(), tail
    lines = ["u index: " + " ".join(str(i) for i in range(len(G)))]
    lines += [f"{i}: " + " ".join(map(str, row)) for i, row in enumerate(G.tolist())]
    return "\n".join(lines) + "\n" + tail, ""


# -- entry point ------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="steinberg-gg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=["gl", "sl2"], default="gl")
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--q", type=int, required=True)
    common.add_argument("--ell", type=int, required=True)
    common.add_argument("--ext", default="auto", help="'auto' or an explicit degree m")
    common.add_argument("--sigma", default="all", help="'all' or comma-separated indices")
    common.add_argument("--out-path", default=None)
    for name, default in (("table", "json"), ("verify", "text"), ("gram", "csv")):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--out", choices=["text", "json", "csv"], default=default)
        if name == "verify":
            p.add_argument("--samples", type=int, default=1000,
                           help="random elements for the Bruhat round trip")
    return ap


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cfg = RunConfig(args.group, args.n, args.q, args.ell, args.ext, args.sigma,
                    args.out, args.out_path, getattr(args, "samples", 1000))
    t0 = time.perf_counter()
    try:
        inst = build(cfg)
        sigmas = select_sigmas(inst, cfg.sigma)
        if args.command == "gram":
            text, tail = render_gram(inst, cfg.out)
            _emit(text, cfg.out_path)
            if tail:
                sys.stderr.write(tail)
            return EXIT_OK
        if args.command == "table":
            report = inst.report(sigmas)
            consistency_checks(inst, report, sigmas)
            report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
            _emit(render_table(report, cfg.out), cfg.out_path)
        else:
            if cfg.samples < 1:
                raise InvalidInput("--samples must be positive")
            report = verify_suite(inst, samples=cfg.samples, sigmas=sigmas)
            report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
            _emit(render_verify(report, cfg.out), cfg.out_path)
    except (InvalidInput, DegenerateCharacterError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK if report.ok else EXIT_FAIL


def report_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
