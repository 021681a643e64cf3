"""Command-line entry point: ``fermat-forms <command> [options]``.

Exit codes: 0 success, 1 mismatch with the expected count, 2 usage error,
3 budget or stability failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .cohomology import (
    BudgetExceeded,
    Label,
    LabelingError,
    check_label,
    classify,
    sweep_report,
)
from .elliptic import LABEL_NAMES, cocycle_family, ell_invariant, ell_normalize
from .equations import emit_all, emit_equation, verify_equation
from .group import GroupParams
from .loci import (
    MAX_RESOLUTION,
    UnstableCount,
    expected_topology,
    find_real_point,
    prove_empty_allplus,
    stable_component_count,
)
from .quadric import (
    parse_matrix,
    quadric_expected_count,
    quadric_real_forms,
    signature,
)

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _params(args) -> GroupParams:
    try:
        return GroupParams(args.n, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _label(text: str, params: GroupParams) -> Label:
    try:
        label = Label.parse(text)
        check_label(label, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return label


# -- commands: each returns (payload, text lines, exit code) ------------------------


def cmd_classify(args):
    params = _params(args)
    if params.d < 3:
        raise UsageError("d = 2 has an infinite automorphism group; use the `quadric` command")
    rep = classify(params, method=args.method)
    payload = rep.to_dict()
    lines = [
        f"F^{params.n}_{params.d}: {rep.cocycle_count} cocycles, {rep.class_count} classes"
        + (f" (expected {rep.expected_count})" if rep.expected_count is not None else ""),
    ]
    for c in rep.classes:
        lines.append(f"  {str(c.label):<8} orbit size {c.orbit_size}")
    lines += [f"  caveat: {c}" for c in rep.caveats]
    lines.append(f"complete: {str(rep.complete).lower()}  match: {json.dumps(rep.match)}")
    ok = rep.match if rep.complete else True
    return payload, lines, EXIT_OK if ok else EXIT_MISMATCH


def cmd_equations(args):
    params = _params(args)
    if params.d < 3:
        raise UsageError("d = 2 is handled by the `quadric` command")
    if args.label:
        eqs = [emit_equation(_label(args.label, params), params)]
    else:
        eqs = emit_all(params)
    records, lines = [], []
    all_ok = True
    for eq in eqs:
        rec = eq.to_record()
        if eq.polynomial is None:
            rec["verified"] = None
        else:
            rec["verified"] = verify_equation(eq, eq.label, params)
            all_ok &= rec["verified"]
        records.append(rec)
        status = "" if rec["verified"] is None else ("  [verified]" if rec["verified"] else "  [FAILED]")
        lines.append(f"{str(eq.label):<8} {eq.to_text()}{status}")
    payload = {"n": params.n, "d": params.d, "equations": records}
    return payload, lines, EXIT_OK if all_ok else EXIT_MISMATCH


def cmd_locus(args):
    params = _params(args)
    if params.d < 3:
        raise UsageError("d = 2 is handled by the `quadric` command")
    label = _label(args.label, params)
    expected = expected_topology(label, params)
    payload = {"n": params.n, "d": params.d, "label": str(label), "expected": expected.to_dict()}
    if label.kind == "L":
        payload.update(method="structure", count=0, stable=True, witness=None, match=True)
        return payload, [f"{label}: empty real locus (no real points by construction)"], EXIT_OK
    eq = emit_equation(label, params)
    empty_proof = (
        label.kind == "K" and label.s == 0 and label.t == params.size and prove_empty_allplus(params)
    )
    if params.n == 1 and not empty_proof:
        try:
            res = stable_component_count(eq, start=args.resolution, max_resolution=args.max_resolution)
        except UnstableCount as exc:
            raise _Failure(str(exc)) from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        payload.update(method="grid", count=res.count, stable=res.stable, grid=res.to_dict())
    elif empty_proof:
        payload.update(method="positive-definite", count=0, stable=True)
    else:
        payload.update(method="witness", count=None, stable=None)
    witness = None if empty_proof else find_real_point(eq)
    payload["witness"] = witness.to_dict() if witness is not None else None
    want = expected.component_count()
    if payload["count"] is not None and want is not None:
        payload["match"] = payload["count"] == want
    elif want and witness is not None:
        # a real point confirms non-emptiness; the full topology is not computed for n > 1
        payload["match"] = True
    else:
        payload["match"] = None
    lines = [f"{label} on F^{params.n}_{params.d}: expected {expected}"]
    if payload["count"] is not None:
        lines.append(f"  components: {payload['count']} ({payload['method']}, stable={str(payload['stable']).lower()})")
    if witness is not None:
        lines.append(f"  witness: {json.dumps(witness.to_dict())}")
    lines.append(f"  match: {json.dumps(payload['match'])}")
    if payload["stable"] is False:
        return payload, lines, EXIT_FAILURE
    return payload, lines, EXIT_MISMATCH if payload["match"] is False else EXIT_OK


def cmd_sweep(args):
    ns = range(1, args.nmax + 1)
    ds = range(3, args.dmax + 1)
    rows = sweep_report(ns, ds, workers=args.workers)
    payload = {"nmax": args.nmax, "dmax": args.dmax, "rows": [r.to_dict() for r in rows]}
    lines = [f"{'n':>3} {'d':>3} {'cocycles':>9} {'classes':>8} {'expected':>9}  status"]
    bad = False
    for r in rows:
        if r.error:
            status = r.error
        elif not r.applicable:
            status = "linear subgroup only"
        else:
            status = "match" if r.match else "MISMATCH"
            bad |= not r.match
        exp = "-" if r.expected_count is None else r.expected_count
        lines.append(f"{r.n:>3} {r.d:>3} {r.cocycle_count!s:>9} {r.class_count!s:>8} {exp!s:>9}  {status}")
    payload["all_match"] = not bad
    return payload, lines, EXIT_MISMATCH if bad else EXIT_OK


def cmd_elliptic(args):
    family = cocycle_family(args.max_den)
    by_label: dict[str, list] = {}
    records = []
    consistent = True
    for alpha in family:
        label, phi = ell_normalize(alpha)
        inv = ell_invariant(alpha)
        consistent &= inv == (0 if label == "Id" else 1)
        by_label.setdefault(label, []).append(alpha)
        if args.verbose:
            records.append({"cocycle": alpha.to_dict(), "label": label, "invariant": inv, "conjugator": phi.to_dict()})
    labels = sorted(by_label)
    payload = {
        "family_size": len(family),
        "labels": labels,
        "class_names": {k: LABEL_NAMES[k] for k in labels},
        "counts": {k: len(by_label[k]) for k in labels},
        "invariants_consistent": consistent,
        "class_count": len(labels),
        "expected_count": 2,
        "match": consistent and len(labels) == 2,
    }
    if args.verbose:
        payload["certificates"] = records
    lines = [f"elliptic curve F^1_3: {len(family)} cocycles normalized"]
    lines += [f"  {k} ({LABEL_NAMES[k]}): {len(by_label[k])}" for k in labels]
    lines.append(f"  invariant consistent: {str(consistent).lower()}  match: {str(payload['match']).lower()}")
    return payload, lines, EXIT_OK if payload["match"] else EXIT_MISMATCH


def cmd_quadric(args):
    if args.matrix:
        try:
            form = parse_matrix(Path(args.matrix).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        n = form.size - 2
        if not form.is_nondegenerate():
            raise UsageError("quadratic form is degenerate")
        sig = signature(form)
        r, s = max(sig.p, sig.q), min(sig.p, sig.q)
        payload = {"n": n, "signature": [sig.p, sig.q], "real_form": f"Q({r},{s})"}
        return payload, [f"signature ({sig.p}, {sig.q}): real form Q({r},{s})"], EXIT_OK
    if args.n is None:
        raise UsageError("quadric needs --n or --matrix")
    try:
        count = quadric_expected_count(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    forms = quadric_real_forms(args.n)
    payload = {"n": args.n, "count": count, "real_forms": forms}
    return payload, [f"F^{args.n}_2 has {count} real forms: " + ", ".join(forms)], EXIT_OK


class _Failure(Exception):
    pass


COMMANDS = {
    "classify": cmd_classify,
    "equations": cmd_equations,
    "locus": cmd_locus,
    "sweep": cmd_sweep,
    "elliptic": cmd_elliptic,
    "quadric": cmd_quadric,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")
    p = _Parser(prog="fermat-forms", description="Real forms of Fermat hypersurfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[fmt], help="twisted-conjugacy classes of cocycles")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--method", choices=["criterion", "brute"], default="criterion")

    e = sub.add_parser("equations", parents=[fmt], help="real defining equations")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--class", dest="label", help="one label such as H(1), K(0,1) or L")

    lo = sub.add_parser("locus", parents=[fmt], help="real-locus topology of one form")
    lo.add_argument("--n", type=int, required=True)
    lo.add_argument("--d", type=int, required=True)
    lo.add_argument("--class", dest="label", required=True)
    lo.add_argument("--resolution", type=int, default=16)
    lo.add_argument("--max-resolution", type=int, default=MAX_RESOLUTION)

    s = sub.add_parser("sweep", parents=[fmt], help="classify a grid of (n, d)")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)

    el = sub.add_parser("elliptic", parents=[fmt], help="two-class certificate for F^1_3")
    el.add_argument("--max-den", type=int, default=6)
    el.add_argument("--verbose", action="store_true", help="include every conjugator")

    q = sub.add_parser("quadric", parents=[fmt], help="degree-2 real forms")
    q.add_argument("--n", type=int)
    q.add_argument("--matrix", help="file: n on the first line, then n+2 rows of rationals")
    return p


def load_schema() -> dict:
    """The JSON schema that every ``--format json`` report conforms to."""
    return json.loads(resources.files(__package__).joinpath("schemas/report.schema.json").read_text())


def envelope(command: str, args, payload) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format")}
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "fermat-forms",
        "version": __version__,
        "command": command,
        "params": params,
        "payload": payload,
    }


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, lines, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, _Failure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except LabelingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.format == "json":
        print(json.dumps(envelope(args.command, args, payload), indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
