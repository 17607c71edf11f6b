"""Command-line interface: ``gaussbargmann {compute,regions,validate}``.

Results go to stdout as JSON (or CSV files for ``regions``); log messages go to stderr.

Exit codes: 0 success, 1 validation failure, 2 bad input, 3 ill-conditioned block
matrix, 4 unphysical state.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from . import fock, regions
from .gaussian import PhysicalityError
from .invariant import IllConditionedError, bargmann_invariant
from .statespec import SpecError, parse_state_spec
from .validation import run_validation

log = logging.getLogger("gaussbargmann")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_ILL, EXIT_PHYS = 0, 1, 2, 3, 4


def _load_specs(path: str, power: int | None):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    doc = json.loads(text)
    if isinstance(doc, dict) and "states" in doc:
        doc = doc["states"]
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        raise SpecError("input must be a state, a list of states or {'states': [...]}")
    specs = [parse_state_spec(o) for o in doc]
    if power is not None:
        if len(specs) != 1:
            raise SpecError("--power expects exactly one state")
        if power < 1:
            raise SpecError("--power must be >= 1")
        specs = specs * power
    return specs


def cmd_compute(args) -> int:
    try:
        specs = _load_specs(args.input, args.power)
    except (OSError, json.JSONDecodeError, SpecError) as exc:
        log.error("could not parse input: %s", exc)
        return EXIT_PARSE
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            states = [s.build() for s in specs]
        for w in caught:
            log.warning("%s", w.message)
    except PhysicalityError as exc:
        log.error("unphysical state: %s", exc)
        return EXIT_PHYS
    if len({s.modes for s in states}) > 1:
        log.error("states have different mode counts")
        return EXIT_PARSE

    out = {"n": len(states), "m": states[0].modes}
    if len(states) == 1:
        out.update(value=[1.0, 0.0], det_M=None)
        _emit(out)
        return EXIT_OK

    reference = None
    if args.oracle_check:
        if all(fock.oracle_supported(s) for s in specs):
            ref, n_used, tail = fock.oracle_invariant(specs, args.fock_truncation)
            reference = ref
            out["oracle"] = {"value": [ref.real, ref.imag], "truncation": n_used, "tail_mass": tail}
        else:
            log.warning("oracle check skipped: only products of one-mode named families are supported")
    try:
        res = bargmann_invariant(states, reference=reference)
    except IllConditionedError as exc:
        log.error("%s", exc)
        _emit({**out, "error": "ill_conditioned", "diagnostics": exc.diagnostics})
        return EXIT_ILL
    out["value"] = [res.value.real, res.value.imag]
    out["det_M"] = [res.det_M.real, res.det_M.imag]
    if args.diagnostics:
        out["diagnostics"] = {k: v for k, v in res.as_dict().items() if k not in ("value", "det_M", "n", "m")}
    if reference is not None:
        out["oracle"]["defect"] = abs(res.value - reference)
        out["oracle"]["branch_suspect"] = res.branch_suspect
    _emit(out)
    return EXIT_OK


def cmd_regions(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ns = args.n or [3, 6, 10, 40]
    if any(n < 3 for n in ns) or args.resolution < 2:
        log.error("need n >= 3 and resolution >= 2")
        return EXIT_PARSE
    written = []
    for n in ns:
        for curve in regions.sample_curves(n, args.resolution):
            written.append(str(regions.write_curve_csv(curve, out / f"{curve.curve_id}_n{n}.csv")))
    _emit({"files": written})
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.cases < 0:
        log.error("--cases must be >= 0")
        return EXIT_PARSE
    report = run_validation(args.seed, args.cases, args.tolerance, args.perturb_cov)
    _emit(report)
    for c in report["checks"]:
        if not c["passed"]:
            log.error("check %d (%s) failed: defect %s > %g", c["case"], c["kind"], c["defect"], c["tolerance"])
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _emit(obj):
    # repr-based float output round-trips exactly
    sys.stdout.write(json.dumps(obj, indent=2, allow_nan=False) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaussbargmann", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="Bargmann invariant of states given as JSON")
    c.add_argument("input", help="JSON file ('-' for stdin)")
    c.add_argument("--power", type=int, help="repeat the single input state this many times")
    c.add_argument("--diagnostics", action="store_true", help="include determinant and branch diagnostics")
    c.add_argument("--oracle-check", action="store_true", help="also compute the value in truncated Fock space")
    c.add_argument("--fock-truncation", type=int, default=fock.DEFAULT_TRUNCATION)
    c.set_defaults(func=cmd_compute)

    r = sub.add_parser("regions", help="write region curves as CSV")
    r.add_argument("--n", type=int, action="append", help="order n (repeatable; default 3 6 10 40)")
    r.add_argument("--resolution", type=int, default=1000)
    r.add_argument("--out", default="regions_out")
    r.set_defaults(func=cmd_regions)

    v = sub.add_parser("validate", help="run the randomised cross-check battery")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=30)
    v.add_argument("--tolerance", type=float, default=None, help="override every per-check tolerance")
    v.add_argument("--perturb-cov", type=float, default=0.0, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)
    return p


def _configure_logging(verbose: bool):
    # own handler on the current stderr, independent of any root configuration
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
