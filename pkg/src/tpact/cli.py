"""Command-line front end: inspect, crossed, convert and verify."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import semigroup as sg
from .actions import TwistedPartialAction, crossed_product_action
from .checks import Caps, Check, battery_for
from .clifford import certify_clifford
from .correspondence import lambda_from_theta_full, theta_from_lambda_full
from .errors import AxiomViolation, MalformedInput, NotEUnitary, NotSieben, TpactError, format_witness
from .formats import load_bundle, write_sgp, write_tpa, write_tsm
from .modules import TwistedSModule, crossed_product_module
from .suite import generate_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    quiet: bool = False
    suite: bool = False

    def __post_init__(self):
        for name in ("iso", "witness", "mult"):
            if getattr(self.caps, name) <= 0:
                raise UsageError(f"--max-{name} must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-iso", type=int, default=sg.DEFAULT_ISO_CAP)
    common.add_argument("--max-witness", type=int, default=10**6)
    common.add_argument("--max-mult", type=int, default=10)
    common.add_argument("--quiet", action="store_true", help="print only failures and the summary")
    p = _Parser(prog="tpact", description=__doc__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    s = sub.add_parser("inspect", parents=[common], help="structure report for an .sgp table")
    s.add_argument("path")
    s = sub.add_parser("crossed", parents=[common], help="crossed product of a .tpa or .tsm bundle")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s = sub.add_parser("convert", parents=[common], help="action <-> module conversion")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--to-module", metavar="TPA")
    g.add_argument("--to-action", metavar="TSM")
    s.add_argument("-o", "--output")
    s = sub.add_parser("verify", parents=[common], help="run the property battery")
    s.add_argument("--suite", action="store_true", help="also run the generated suite")
    s.add_argument("paths", nargs="*")
    return p


def _yn(b):
    return "yes" if b else "no"


def _load(path, want=None):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    obj = load_bundle(p)
    if want is not None and not isinstance(obj, want):
        raise UsageError(f"{path}: unexpected bundle type {type(obj).__name__}")
    return obj


def cmd_inspect(cfg, out):
    S0 = _load(cfg.paths[0], sg.FiniteSemigroup)
    E = len(S0.idempotent_set)
    try:
        S = sg.inverse_structure(S0)
    except TpactError as exc:
        print(f"n={S0.n} E={E} inverse=no reason={exc}", file=out)
        return EXIT_OK
    sigma = sg.sigma_congruence(S)
    try:
        certify_clifford(S)
        clifford = True
    except TpactError:
        clifford = False
    print(
        f"n={S.n} E={E} sigma-classes={len(sigma.classes)} max-group={len(sigma.classes)} "
        f"e-unitary={_yn(sg.is_e_unitary(S))} f-inverse={_yn(sg.is_f_inverse(S))} clifford={_yn(clifford)}",
        file=out,
    )
    print("hasse " + " ".join(f"{a}<{b}" for a, b in sg.hasse_pairs(S)), file=out)
    return EXIT_OK


def _emit(text, dest, out):
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def cmd_crossed(cfg, out, dest=None):
    obj = _load(cfg.paths[0], (TwistedPartialAction, TwistedSModule))
    if isinstance(obj, TwistedPartialAction):
        cp = crossed_product_action(obj)
        notes = [
            f"crossed product of a twisted partial action: |U|={cp.U.n} |A|={obj.A.n} |G|={obj.G.n} |E(A)*G|={cp.S.n}",
            "elements: " + " ".join(f"{k}={a}d{x}" for k, (a, x) in enumerate(cp.pairs)),
        ]
        U = cp.U
    else:
        cp = crossed_product_module(obj)
        notes = [
            f"crossed product of a twisted module: |U|={cp.U.n} |A|={obj.A.n} |S|={obj.S.n}",
            "elements: " + " ".join(f"{k}={a}d{s}" for k, (a, s) in enumerate(cp.pairs)),
        ]
        U = cp.U
    _emit(write_sgp(U, notes), dest, out)
    if dest and not cfg.quiet:
        for n in notes:
            print(n, file=out)
    return EXIT_OK


def cmd_convert(cfg, out, to, dest=None):
    if to == "module":
        T = _load(cfg.paths[0], TwistedPartialAction)
        lt = lambda_from_theta_full(T)
        cp = lt.crossed
        nu = [f"s{k}={e}d{x}" for k, (e, x) in ((k, cp.s_pair(k)) for k in range(cp.S.n))]
        text = write_tsm(lt.module, ["module over E(A)*G; S elements as e d x:", " ".join(nu)])
    else:
        mod = _load(cfg.paths[0], TwistedSModule)
        try:
            tl = theta_from_lambda_full(mod)
        except NotSieben as exc:
            print(f"sieben condition fails at (s,e)={format_witness(exc.witness)}", file=out)
            return EXIT_FAIL
        except NotEUnitary as exc:
            print(f"not E-unitary: {exc}", file=out)
            return EXIT_FAIL
        classes = {}
        for s in range(mod.S.n):
            classes.setdefault(tl.sigma_nat(s), []).append(s)
        nu = [f"x{x}={{{','.join(map(str, classes[x]))}}}" for x in sorted(classes)]
        text = write_tpa(tl.action, ["action of the maximal group image; group elements as sigma-classes of S:", " ".join(nu)])
    _emit(text, dest, out)
    return EXIT_OK


def cmd_verify(cfg, out):
    if not cfg.paths and not cfg.suite:
        raise UsageError("verify needs --suite or at least one path")
    checks = []
    for path in cfg.paths:
        name = Path(path).name
        try:
            obj = _load(path)
        except AxiomViolation as exc:
            checks.append(Check(f"{name}:axiom-{exc.axiom}", False, _wit(exc.witness), str(exc).split(" witness=")[0]))
            continue
        except MalformedInput:
            raise
        except TpactError as exc:
            checks.append(Check(f"{name}:load", False, _wit(exc.witness), str(exc).split(" witness=")[0]))
            continue
        checks += battery_for(obj, name, cfg.caps)
    if cfg.suite:
        for item in generate_suite(cfg.seed, mult_cap=cfg.caps.mult):
            checks += battery_for(item.action, f"suite:{item.name}", cfg.caps)
    failed = 0
    for c in checks:
        if not c.passed:
            failed += 1
        if not cfg.quiet or not c.passed:
            print(c.line(), file=out)
    print(f"SUMMARY checks={len(checks)} passed={len(checks) - failed} failed={failed}", file=out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _wit(w):
    if w is None:
        return ()
    return w if isinstance(w, tuple) else (w,)


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        caps = Caps(iso=args.max_iso, witness=args.max_witness, mult=args.max_mult)
        paths = [getattr(args, "path", None)] if getattr(args, "path", None) else list(getattr(args, "paths", []))
        cfg = RunConfig(args.command, paths, caps, args.seed, args.quiet)
        if args.command == "inspect":
            return cmd_inspect(cfg, out)
        if args.command == "crossed":
            return cmd_crossed(cfg, out, args.output)
        if args.command == "convert":
            cfg.paths = [args.to_module or args.to_action]
            return cmd_convert(cfg, out, "module" if args.to_module else "action", args.output)
        cfg.suite = args.suite
        return cmd_verify(cfg, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TpactError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=out)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
