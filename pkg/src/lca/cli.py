"""Command-line front end: ``lca analyze|enumerate|count|verify|flow|perturb-compare``.

Exit status is 0 on success, 1 when a requested check fails and 2 on invalid
input.  Reports go to stdout (or ``--out``) as JSON or as a plain-text table.
"""
from __future__ import annotations

import argparse
import json
import logging
import secrets
import sys
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path

from . import __version__
from .errors import EnumerationBudgetExceeded, LandscapeError
from .flow import FlowParams, trap_audit
from .serialize import dumps, render_report_table, report_to_json, spectrum_from_json, spectrum_to_json
from .spectra import DegeneracyProfile, perturbed_spectrum
from .tables import DEFAULT_MAX_TABLES, count_tables, enumerate_tables
from .topology import MAXIMUM, MINIMUM, analyze, closed_form_counts
from .verify import margin_corpus, run_checks

log = logging.getLogger("lca")

COMMANDS = ("analyze", "enumerate", "count", "verify", "flow", "perturb-compare")
EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    rho: object = None
    theta: object = None
    options: dict = field(default_factory=dict)

    def opt(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value


def _load_json_arg(value: str, what: str):
    text = value.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(value).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {what} from {value!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def _spectra(job: JobSpec, synthetic_ok: bool):
    if job.rho is None or job.theta is None:
        raise InputError(f"{job.command} needs both --rho and --theta")
    tol = job.opt("cluster_tol")
    rho_obj, theta_obj = job.rho, job.theta
    if tol is not None:
        for obj in (rho_obj, theta_obj):
            if isinstance(obj, dict) and "diagonal" in obj:
                obj.setdefault("cluster_tol", tol)
    rho, w1 = spectrum_from_json(rho_obj, synthetic_ok)
    theta, w2 = spectrum_from_json(theta_obj, synthetic_ok)
    return rho, theta, w1 + w2


def _margins(obj) -> DegeneracyProfile:
    spec, _ = spectrum_from_json(obj, synthetic_ok=True)
    return DegeneracyProfile(spec.multiplicities, spec.n)


def _seed(job: JobSpec) -> int:
    seed = job.opt("seed")
    if seed is None:
        seed = secrets.randbits(63)
        print(f"lca: no --seed given, using {seed}", file=sys.stderr)
        job.options["seed"] = seed
    return int(seed)


def _flow_params(job: JobSpec) -> FlowParams:
    return FlowParams(
        step0=job.opt("step0"),
        grad_tol=job.opt("grad_tol", 1e-9),
        max_iters=int(job.opt("max_iters", 100_000)),
    )


def _analyze(job):
    rho, theta, notes = _spectra(job, synthetic_ok=True)
    report = analyze(rho, theta, max_tables=job.opt("max_tables", DEFAULT_MAX_TABLES))
    report.warnings = notes + report.warnings
    report.summary["warnings"] = list(report.warnings)
    doc = report_to_json(report, seed=job.opt("seed"))
    doc["command"] = "analyze"
    return EXIT_OK, doc, render_report_table(report)


def _enumerate(job):
    rows, cols = _margins(job.rho), _margins(job.theta)
    tables = enumerate_tables(rows, cols, max_tables=job.opt("max_tables", DEFAULT_MAX_TABLES))
    doc = {
        "command": "enumerate",
        "rows": list(rows.margins),
        "cols": list(cols.margins),
        "count": len(tables),
        "tables": [t.tolist() for t in tables],
        "seed": job.opt("seed"),
    }
    text = "\n".join(f"{i + 1:>4}  {t.tolist()}" for i, t in enumerate(tables)) + "\n"
    return EXIT_OK, doc, text


def _count(job):
    rows, cols = _margins(job.rho), _margins(job.theta)
    n = count_tables(rows, cols)
    form = closed_form_counts(rows, cols)
    doc = {
        "command": "count",
        "rows": list(rows.margins),
        "cols": list(cols.margins),
        "count": n,
        "closed_form": None if form is None else {"case": form.case, "count": form.count, "max_d0": form.max_d0},
        "seed": job.opt("seed"),
    }
    text = f"{n}\n" if form is None else f"{n}  (closed form, {form.case}: {form.count})\n"
    return EXIT_OK, doc, text


def _verify(job):
    seed = _seed(job)
    if job.rho is not None and job.theta is not None:
        pairs = [(_margins(job.rho).margins, _margins(job.theta).margins)]
    else:
        pairs = margin_corpus(
            max_n=int(job.opt("max_n", 6)), random_pairs=int(job.opt("random_pairs", 30)), seed=seed
        )
    results = run_checks(pairs, seed=seed)
    ok = all(r.passed for r in results)
    doc = {
        "command": "verify",
        "pairs": len(pairs),
        "checks": [r.as_dict() for r in results],
        "passed": ok,
        "seed": seed,
    }
    text = "".join(
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.cases} cases, {r.mismatches} mismatches)\n"
        for r in results
    )
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc, text


def _flow(job):
    seed = _seed(job)
    rho, theta, notes = _spectra(job, synthetic_ok=True)
    audit = trap_audit(rho, theta, int(job.opt("starts", 20)), seed, _flow_params(job))
    s = audit.summary
    ok = s["fraction_at_max"] == 1.0 and s["all_on_levels"] and s["saddle_escape_fraction"] in (None, 1.0)
    doc = {
        "command": "flow",
        "profiles": {"rho": spectrum_to_json(rho), "theta": spectrum_to_json(theta)},
        "levels": audit.levels,
        "summary": s,
        "trajectories": audit.trajectories,
        "passed": ok,
        "seed": seed,
        "warnings": notes,
    }
    text = (
        f"starts={s['starts']} saddle_starts={s['saddle_starts']} J_max={s['J_max']!r}\n"
        f"fraction_at_max={s['fraction_at_max']} saddle_escape_fraction={s['saddle_escape_fraction']}\n"
        f"all_on_levels={s['all_on_levels']} mean_iterations haar={s['mean_iterations_haar']:.1f}"
        f" saddle={s['mean_iterations_saddle']}\n"
    )
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc, text


def _perturb_compare(job):
    rho, theta, notes = _spectra(job, synthetic_ok=True)
    delta = float(job.opt("delta", 1e-3))
    which = job.opt("perturb", "both")
    rho_p = perturbed_spectrum(rho, delta) if which in ("both", "rho") else rho
    theta_p = perturbed_spectrum(theta, delta) if which in ("both", "theta") else theta
    limit = job.opt("max_tables", DEFAULT_MAX_TABLES)
    before, after = analyze(rho, theta, max_tables=limit), analyze(rho_p, theta_p, max_tables=limit)

    def extrema(rep):
        return {
            "maxima": sum(r.kind == MAXIMUM for r in rep.records),
            "minima": sum(r.kind == MINIMUM for r in rep.records),
            "dplus_zero": sum(r.dplus == 0 for r in rep.records),
            "dminus_zero": sum(r.dminus == 0 for r in rep.records),
        }

    n = rho.n
    ext = extrema(after)
    two_extrema = ext["dplus_zero"] == 1 and ext["dminus_zero"] == 1 and ext["maxima"] == ext["minima"] == 1
    doc = {
        "command": "perturb-compare",
        "delta": delta,
        "perturbed": which,
        "original": report_to_json(before),
        "perturbed_report": report_to_json(after),
        "comparison": {
            "table_count": [before.summary["table_count"], after.summary["table_count"]],
            "table_count_delta": after.summary["table_count"] - before.summary["table_count"],
            "n_factorial": factorial(n),
            "within_n_factorial": after.summary["table_count"] <= factorial(n),
            "max_dimension": [max(r.d0 for r in before.records), max(r.d0 for r in after.records)],
            "maximum_dimension": [_kind_d0(before, MAXIMUM), _kind_d0(after, MAXIMUM)],
            "minimum_dimension": [_kind_d0(before, MINIMUM), _kind_d0(after, MINIMUM)],
            "extrema_original": extrema(before),
            "extrema_perturbed": ext,
            "two_extrema_remain": two_extrema,
            "J_max": [before.summary["J_max"], after.summary["J_max"]],
        },
        "seed": job.opt("seed"),
        "warnings": notes,
    }
    c = doc["comparison"]
    text = (
        f"original:\n{render_report_table(before)}\nperturbed (delta={delta!r}, {which}):\n"
        f"{render_report_table(after)}\n"
        f"table count {c['table_count'][0]} -> {c['table_count'][1]} (N! = {c['n_factorial']}); "
        f"two extrema remain: {two_extrema}\n"
    )
    return (EXIT_OK if two_extrema else EXIT_CHECK_FAILED), doc, text


def _kind_d0(report, kind):
    found = [r.d0 for r in report.records if r.kind == kind]
    return found[0] if found else None


HANDLERS = {
    "analyze": _analyze,
    "enumerate": _enumerate,
    "count": _count,
    "verify": _verify,
    "flow": _flow,
    "perturb-compare": _perturb_compare,
}


def run(job: JobSpec):
    """Execute one job; returns ``(exit_status, document, text)``.

    Input problems give status 2 and a document carrying the error message.
    """
    if job.command not in HANDLERS:
        return EXIT_INPUT, {"command": job.command, "error": f"unknown command {job.command!r}"}, ""
    try:
        return HANDLERS[job.command](job)
    except EnumerationBudgetExceeded as exc:
        doc = {"command": job.command, "error": str(exc), "count": exc.count}
        return EXIT_INPUT, doc, f"error: {exc}\n"
    except (LandscapeError, InputError, ValueError, TypeError, KeyError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return EXIT_INPUT, {"command": job.command, "error": msg}, f"error: {msg}\n"


OPTION_KEYS = (
    "seed", "cluster_tol", "max_tables", "format", "out", "step0", "grad_tol", "max_iters",
    "starts", "delta", "perturb", "max_n", "random_pairs",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lca", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--job", help="JSON file with rho, theta and options (flags override it)")
        p.add_argument("--rho", help="spectrum as inline JSON or a path to a JSON file")
        p.add_argument("--theta", help="spectrum as inline JSON or a path to a JSON file")
        p.add_argument("--seed", type=int)
        p.add_argument("--cluster-tol", type=float, dest="cluster_tol")
        p.add_argument("--max-tables", type=int, dest="max_tables")
        p.add_argument("--format", choices=("json", "table"))
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "flow":
            p.add_argument("--step0", type=float)
            p.add_argument("--grad-tol", type=float, dest="grad_tol")
            p.add_argument("--max-iters", type=int, dest="max_iters")
            p.add_argument("--starts", type=int)
        if name == "perturb-compare":
            p.add_argument("--delta", type=float)
            p.add_argument("--perturb", choices=("both", "rho", "theta"))
        if name == "verify":
            p.add_argument("--max-n", type=int, dest="max_n")
            p.add_argument("--random-pairs", type=int, dest="random_pairs")
    return parser


def job_from_args(args) -> JobSpec:
    base = {}
    if args.job:
        base = _load_json_arg(args.job, "--job")
        if not isinstance(base, dict):
            raise InputError("--job must hold a JSON object")
    options = dict(base.get("options", {}))
    for key in OPTION_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    rho = _load_json_arg(args.rho, "--rho") if args.rho else base.get("rho")
    theta = _load_json_arg(args.theta, "--theta") if args.theta else base.get("theta")
    return JobSpec(args.command, rho, theta, options)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        job = job_from_args(args)
    except InputError as exc:
        print(f"lca: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status, doc, text = run(job)
    out = dumps(doc) if job.opt("format", "json") == "json" else text
    if "error" in doc:
        print(f"lca: {doc['error']}", file=sys.stderr)
    dest = job.opt("out")
    if dest:
        Path(dest).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

