"""``charloc`` command line.

Exit status: 0 on success, 1 on usage or input errors (including boxes too
small to decide), 2 when a mathematical check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import acceptance
from .lattice import InnerProduct, LatticeError, RootDatum, Weight, as_fraction
from .regularity import RegularityInstance, check_condition_S, check_condition_Sprime
from .series import BoxTooSmall, KernelSpec, TheoremFalsified, kernel_y
from .sl2 import ROOT, IdentityFalsified, Sl2Module, blattner, kernel_relation_check, sl2_character, tensor_decompose
from .weyl_kostant import FormulaBug, check_duality, check_transitivity, finite_report

FALLBACK_BOX = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_box() -> int:
    raw = os.environ.get("CHARLOC_BOX_DEFAULT")
    if raw is None:
        return FALLBACK_BOX
    try:
        box = int(raw)
    except ValueError as exc:
        raise UsageError(f"CHARLOC_BOX_DEFAULT must be an integer, got {raw!r}") from exc
    if box <= 0:
        raise UsageError("CHARLOC_BOX_DEFAULT must be positive")
    return box


def _box(args) -> int:
    box = args.box if args.box is not None else default_box()
    if box <= 0:
        raise UsageError("--box must be positive")
    return box


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def load_datum(spec: str) -> RootDatum:
    """A JSON file path, or the name of a shipped datum."""
    path = Path(spec)
    if path.exists():
        return RootDatum.load(path)
    name = path.stem if path.suffix == ".json" else spec
    if name in acceptance.SHIPPED:
        return acceptance.load_datum(name)
    raise UsageError(f"no root datum file or shipped datum named {spec!r}")


def parse_weight(text: str, rank: int | None = None) -> Weight:
    """Comma separated ``L0`` coordinates such as ``1,1`` or ``1/2``."""
    try:
        w = Weight.from_l0(as_fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse weight {text!r}: {exc}") from exc
    if rank is not None and w.rank != rank:
        raise UsageError(f"weight {text!r} has rank {w.rank}, datum has rank {rank}")
    return w


def _l0(w: Weight) -> str:
    return ",".join(str(c) for c in w.l0_coords)


def _table(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _poly_rows(doc: dict) -> list[tuple[str, int]]:
    return [(",".join(str(Fraction(x, 2)) for x in t["w2"]), t["c"]) for t in doc["terms"]]


# -- selftests ---------------------------------------------------------------

SELFTESTS = {
    "char": (1, 2, 9, 10),
    "sl2": (1, 3, 4, 5, 11),
    "kernel": (6, 8),
    "regularity": (12,),
    "acceptance": tuple(n for n, *_ in acceptance.CRITERIA),
}


def _selftest_sl2_extra() -> acceptance.Result:
    start = time.perf_counter()
    ok = kernel_relation_check(40, sign=1) and not kernel_relation_check(40, minus_k=3, sign=1)
    return acceptance.Result(0, "restricted [D1]+[D-1] equals y(1)", ok, time.perf_counter() - start, 1.0, f"{ok}")


def run_selftest(group: str):
    results = [acceptance.run_criterion(n) for n in SELFTESTS[group]]
    if group == "sl2":
        results.append(_selftest_sl2_extra())
    doc = {"selftest": group, "results": [r.to_json() for r in results]}
    text = "\n".join(r.line() for r in results)
    return doc, text, all(r.passed for r in results)


# -- commands ----------------------------------------------------------------


def cmd_char(args):
    _need(args, "datum", "lam")
    datum = load_datum(args.datum)
    lam = parse_weight(args.lam, datum.rank)
    if args.action == "finite":
        doc = finite_report(datum, lam)
        rows = _poly_rows(doc["restriction"])
        text = "\n".join([
            f"highest weight {_l0(lam)}  dimension {doc['dimension']}",
            _table(rows, ("weight", "mult")),
            f"{len(rows)} weights, {sum(c for _, c in rows)} with multiplicity",
        ])
        return doc, text, True
    if args.action == "transitivity":
        _need(args, "levi")
        levi = load_datum(args.levi)
        ok = check_transitivity(datum, levi, lam)
        return {"lambda": _l0(lam), "transitivity": ok}, f"transitivity at {_l0(lam)}: {ok}", ok
    ok = check_duality(datum, lam)
    return {"lambda": _l0(lam), "duality": ok}, f"duality at {_l0(lam)}: {ok}", ok


def _module(text: str | None, flag: str) -> Sl2Module:
    if text is None:
        raise UsageError(f"--{flag} is required")
    try:
        return Sl2Module.parse(text)
    except LatticeError as exc:
        raise UsageError(str(exc)) from exc


def cmd_sl2(args):
    if args.action == "char":
        m = _module(args.module, "module")
        c = sl2_character(m)
        return {"module": str(m), "character": c.to_json()}, f"c({m}) = {c!r}", True
    if args.action == "tensor":
        a, b = _module(args.a, "a"), _module(args.b, "b")
        res = tensor_decompose(a, b, _box(args))
        doc = {"a": str(a), "b": str(b), **res.to_json()}
        if doc["decomposable"]:
            text = f"{a} x {b} = " + " + ".join(
                f"{c}*{m}" if c != 1 else str(m) for m, c in res.summands
            ) + ("" if res.complete else " + ... (truncated)")
        else:
            text = f"{a} x {b}: not discretely decomposable ({res.reason})"
        return doc, text, True
    if args.action == "blattner":
        _need(args, "k")
        s = blattner(args.k, _box(args))
        doc = {"k": args.k, "box": s.box[0], "terms": [{"w2": list(w.coords), "c": c} for w, c in s.items()]}
        return doc, s.dumps().rstrip("\n"), True
    box = _box(args)
    ok = kernel_relation_check(box, args.minus_k, args.sign)
    rel = f"[D1] {'-' if args.sign < 0 else '+'} [D-{args.minus_k}] = y(1)"
    return {"relation": rel, "box": box, "holds": ok}, f"{rel} on box {box}: {ok}", ok


def _kernel_spec(n_text: str):
    try:
        ns = tuple(int(x) for x in n_text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse --n {n_text!r}") from exc
    rank = len(ns)
    if rank not in (1, 2) or any(n < 1 for n in ns):
        raise UsageError("--n takes one or two positive exponents")
    alphas = tuple(Weight(tuple(2 if i == j else 0 for j in range(rank))) for i in range(rank))
    inner = InnerProduct(tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)))
    return KernelSpec(alphas, ns), inner


def cmd_kernel(args):
    from .kernel_window import window_experiment

    _need(args, "n")
    spec, inner = _kernel_spec(args.n)
    box = _box(args)
    if args.action == "y":
        if spec.rank != 1:
            raise UsageError("kernel y takes a single exponent")
        s = kernel_y(ROOT, spec.exponents[0], args.plus, box)
        doc = {"n": spec.exponents[0], "plus": args.plus, "box": box,
               "terms": [{"w2": list(w.coords), "c": c} for w, c in s.items()]}
        return doc, s.dumps().rstrip("\n"), True
    lam0 = parse_weight(args.lambda0, spec.rank) if args.lambda0 else Weight.zero(spec.rank)
    report = window_experiment(spec, lam0, inner, box, args.trials, args.seed)
    doc = {"n": list(spec.exponents), "box": box, "lambda0": _l0(lam0), "seed": args.seed, **report.to_json()}
    verdict = "zero" if report.ok else "FAILED"
    text = "\n".join([
        f"verdict: {verdict} ({report.verdicts.get('zero', 0)}/{report.trials} window-vanishing combinations vanish)",
        f"generators {report.generators}, window points {report.window_points}, box points {report.box_points}",
        f"rank on window {report.window_rank}, rank on box {report.full_rank}, nullity {report.nullity}",
    ])
    return doc, text, report.ok


def cmd_regularity(args):
    _need(args, "config")
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if isinstance(raw.get("datum"), str):
        raw["datum"] = load_datum(raw["datum"]).to_json()
    inst = RegularityInstance.from_json(raw)
    res = check_condition_S(inst) if args.action == "s" else check_condition_Sprime(inst)
    doc = {"condition": "S" if args.action == "s" else "S'", **res.to_json()}
    text = json.dumps(doc, sort_keys=True)
    return doc, text, True


def cmd_acceptance(args):
    numbers = [args.only] if args.only else [n for n, *_ in acceptance.CRITERIA]
    results = [acceptance.run_criterion(n) for n in numbers]
    doc = {"results": [r.to_json() for r in results], "passed": sum(r.passed for r in results), "total": len(results)}
    text = "\n".join(r.line() for r in results) + f"\n{doc['passed']}/{doc['total']} criteria passed"
    return doc, text, all(r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="charloc", description="Algebraic characters, localization and branching checks.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(q):
        q.add_argument("--selftest", action="store_true", help="run this command's invariant suite")
        q.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    char = sub.add_parser("char", help="finite-dimensional characters")
    common(char)
    csub = char.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("finite", "transitivity", "duality"):
        q = csub.add_parser(name)
        common(q)
        q.add_argument("--datum")
        q.add_argument("--lambda", dest="lam", help="L0 coordinates, comma separated")
        if name == "transitivity":
            q.add_argument("--levi")

    sl2 = sub.add_parser("sl2", help="the (sl2, SO(2)) catalogue")
    common(sl2)
    ssub = sl2.add_subparsers(dest="action", parser_class=_Parser)
    q = ssub.add_parser("char")
    common(q)
    q.add_argument("--module", help="F<k>, D<k>, D+<k> or D-<k>")
    q = ssub.add_parser("tensor")
    common(q)
    q.add_argument("--a")
    q.add_argument("--b")
    q.add_argument("--box", type=int)
    q = ssub.add_parser("blattner")
    common(q)
    q.add_argument("--k", type=int)
    q.add_argument("--box", type=int)
    q = ssub.add_parser("kernel-relation")
    common(q)
    q.add_argument("--box", type=int)
    q.add_argument("--minus-k", type=int, default=1)
    q.add_argument("--sign", type=int, choices=(-1, 1), default=-1)

    ker = sub.add_parser("kernel", help="localization kernel and the window test")
    common(ker)
    ksub = ker.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("window", "y"):
        q = ksub.add_parser(name)
        common(q)
        q.add_argument("--n", help="exponent, or two comma separated exponents for orthogonal roots")
        q.add_argument("--box", type=int)
        if name == "window":
            q.add_argument("--lambda0", help="L0 coordinates of the window centre")
            q.add_argument("--trials", type=int, default=50)
            q.add_argument("--seed", type=int, default=0)
        else:
            q.add_argument("--plus", action="store_true")

    reg = sub.add_parser("regularity", help="conditions S and S'")
    common(reg)
    rsub = reg.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("s", "sprime"):
        q = rsub.add_parser(name)
        common(q)
        q.add_argument("--config")

    acc = sub.add_parser("acceptance", help="run the acceptance criteria")
    common(acc)
    acc.add_argument("--only", type=int, choices=range(1, 13), metavar="N")
    return p


HANDLERS = {
    "char": cmd_char,
    "sl2": cmd_sl2,
    "kernel": cmd_kernel,
    "regularity": cmd_regularity,
    "acceptance": cmd_acceptance,
}


def _emit(doc, text, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command is None:
            raise UsageError("a command is required")
        if args.selftest:
            doc, text, ok = run_selftest(args.command)
        else:
            if args.command != "acceptance" and getattr(args, "action", None) is None:
                raise UsageError(f"{args.command} needs a subcommand")
            doc, text, ok = HANDLERS[args.command](args)
        _emit(doc, text, fmt, sys.stdout)
        return 0 if ok else 2
    except UsageError as exc:
        sys.stderr.write(f"charloc: usage error: {exc}\n")
        return 1
    except BoxTooSmall as exc:
        sys.stderr.write(f"charloc: box too small: {exc}\n")
        return 1
    except (TheoremFalsified, IdentityFalsified, FormulaBug) as exc:
        sys.stderr.write(f"charloc: mathematical check failed: {exc}\n")
        return 2
    except (LatticeError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"charloc: invalid input: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
