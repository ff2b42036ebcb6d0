"""Command-line surface.

Subcommands: scan (witness sweep over the two-parameter family, CSV),
detect (one witness verdict, JSON), simulate (measurement protocol, JSON),
verify-paper (the acceptance suite as a pass/fail table) and export
(catalog listing, JSON).

Grammar: witnesses are <kind>:<side> with kinds choi-phi / choi-psi /
transpose and sides A / B.  States and filters are catalog labels with
colon-separated parameters (rho-xt:0.63:0.05, gisin:0.6); anything with a
path separator or a .json suffix is read as a JSON file.  BF_SEED overrides
the default simulation seed; an explicit --seed beats both.  Exit codes:
0 success, 1 failed verification, 2 usage or parse errors.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import acceptance, catalog, linalg, mcsim
from .errors import BadParamError, BoundFilterError, ParseError
from .filters import apply_filter, filter_from_json_dict
from .formats import fmt_num
from .measure import protocol_analytic
from .states import is_ppt, state_from_json_dict, state_to_json_dict
from .witness import (
    apply_witness,
    detect,
    parse_witness_spec,
    witness_for_state,
)

DEFAULT_SEED = 2024
DEFAULT_SHOTS = 1000


def _is_path(text: str) -> bool:
    return os.sep in text or "/" in text or text.endswith(".json")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"{path}: invalid JSON at line {e.lineno} column {e.colno}: "
            f"{e.msg}"
        ) from None


def _parse_params(parts, kinds, what):
    vals = []
    for p, kind in zip(parts, kinds):
        try:
            vals.append(kind(p))
        except ValueError:
            raise ParseError(
                f"{what}: cannot parse parameter {p!r}"
            ) from None
    return vals


def parse_state_arg(text: str):
    """Returns (label, DensityOperator)."""
    if _is_path(text):
        return text, state_from_json_dict(_load_json(text))
    parts = text.split(":")
    label, params = parts[0], parts[1:]
    if label == "rho-xt":
        if params:
            if len(params) != 2:
                raise ParseError(
                    "rho-xt takes two parameters: rho-xt:<x>:<t>"
                )
            x, t = _parse_params(params, (float, float), "rho-xt")
        else:
            x, t = 0.63, 0.05
        return text, catalog.rho_xt(x, t)
    if params:
        raise ParseError(f"state '{label}' takes no parameters")
    if label == "rho-upb":
        return text, catalog.rho_upb()
    if label == "bell":
        return text, catalog.bell_state()
    if label == "max-mixed":
        return text, catalog.max_mixed()
    raise ParseError(
        f"unknown state '{text}' (try rho-xt:<x>:<t>, rho-upb, bell, "
        f"max-mixed, or a JSON file)"
    )


def parse_filter_arg(text: str, dims):
    """Returns a LocalFilter; `dims` resolves the identity label."""
    if _is_path(text):
        return filter_from_json_dict(_load_json(text))
    parts = text.split(":")
    label, params = parts[0], parts[1:]
    if label == "gisin":
        if len(params) > 1:
            raise ParseError("gisin takes one parameter: gisin:<kappa>")
        kappa = (
            _parse_params(params, (float,), "gisin")[0] if params else 0.6
        )
        return catalog.gisin_filter(kappa)
    if params:
        raise ParseError(f"filter '{label}' takes no parameters")
    if label in ("choi-example", "upb-rotation"):
        return catalog.resolve_filter(label)
    if label == "identity":
        return catalog.resolve_filter("identity", dims)
    raise ParseError(
        f"unknown filter '{text}' (try choi-example, upb-rotation, "
        f"gisin:<kappa>, identity, or a JSON file)"
    )


def _resolve_seed(explicit):
    if explicit is not None:
        return explicit
    env = os.environ.get("BF_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ParseError(
                f"BF_SEED must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SEED


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_scan(args) -> int:
    if not args.x_max > args.x_min:
        raise BadParamError(
            f"need x-min < x-max, got {args.x_min} and {args.x_max}"
        )
    if args.steps < 2:
        raise BadParamError(f"steps must be >= 2, got {args.steps}")
    if args.x_min < 0 or args.x_max > 1 or args.t <= 0:
        raise BadParamError(
            "scan range outside the family domain (x in [0, 1], t > 0)"
        )
    kind, side = parse_witness_spec(args.witness)
    filt = None
    if args.filter is not None:
        filt = parse_filter_arg(args.filter, (3, 3))
    out = sys.stdout
    if filt is None:
        out.write("x,min_eig_unfiltered,ppt\n")
    else:
        out.write("x,min_eig_unfiltered,min_eig_filtered,ppt\n")
    for x in np.linspace(args.x_min, args.x_max, args.steps):
        rho = catalog.rho_xt(float(x), args.t)
        w = witness_for_state(kind, side, rho)
        unf = linalg.min_eigenvalue(apply_witness(w, rho))
        ppt = "true" if is_ppt(rho) else "false"
        cols = [fmt_num(x), fmt_num(unf)]
        if filt is not None:
            filtered, _ = apply_filter(filt, rho)
            cols.append(fmt_num(linalg.min_eigenvalue(apply_witness(w, filtered))))
        cols.append(ppt)
        out.write(",".join(cols) + "\n")
    return 0


def cmd_detect(args) -> int:
    label, rho = parse_state_arg(args.state)
    if args.filter is not None:
        filt = parse_filter_arg(args.filter, rho.dims)
        rho, _ = apply_filter(filt, rho)
        label = f"{label}|{args.filter}"
    kind, side = parse_witness_spec(args.witness)
    w = witness_for_state(kind, side, rho)
    report = detect(w, rho, state_label=label)
    payload = {
        "label": report.state_label,
        "kind": report.kind.value,
        "side": report.side.value,
        "min_eigenvalue": report.min_eigenvalue,
        "detected": report.detected,
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_simulate(args) -> int:
    _, rho = parse_state_arg(args.state)
    filt = parse_filter_arg(args.filter, rho.dims)
    if args.analytic:
        state, prob = protocol_analytic(filt, rho)
        payload = {
            "analytic": True,
            "total_prob": prob,
            "state": state_to_json_dict(state),
        }
    else:
        seed = _resolve_seed(args.seed)
        run = mcsim.run_protocol(filt, rho, args.shots, seed)
        payload = run.to_json_dict()
    print(json.dumps(payload, indent=2))
    return 0


def cmd_verify_paper(args) -> int:
    results = acceptance.run_all()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}")
        print(f"    expected: {r.expected}")
        print(f"    observed: {r.observed}")
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} checks passed")
    return 0 if npass == len(results) else 1


def cmd_export(args) -> int:
    print(json.dumps({"entries": catalog.catalog_entries()}, indent=2))
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundfilter",
        description=(
            "Local filters, Choi-map witnesses and their measurement-based "
            "implementation for small bipartite states."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "scan", help="witness sweep over the two-parameter family (CSV)"
    )
    p.add_argument("--t", type=float, required=True, help="family parameter t")
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument(
        "--witness", required=True, help="witness spec <kind>:<side>"
    )
    p.add_argument(
        "--filter", help="optional filter label or JSON file for a second column"
    )
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("detect", help="one witness verdict (JSON)")
    p.add_argument("state", help="state label or JSON file")
    p.add_argument("witness", help="witness spec <kind>:<side>")
    p.add_argument("--filter", help="apply this filter before detecting")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser(
        "simulate", help="run the measurement protocol (JSON)"
    )
    p.add_argument("state", help="state label or JSON file")
    p.add_argument("filter", help="filter label or JSON file")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--analytic",
        action="store_true",
        help="closed-form protocol instead of Monte Carlo",
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "verify-paper", help="run the acceptance checks and print a table"
    )
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("export", help="dump catalog entries to JSON")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: file not found: {e.filename or e}", file=sys.stderr)
        return 2
    except BoundFilterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
