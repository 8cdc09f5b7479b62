"""``cob`` command-line interface.

Exit codes: 0 success, 1 negative result of ``validate``/``classify`` under
``--strict``, 2 usage or input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .composition import GenusMismatchError, bullet, compose, s_invariant
from .generators import GeneratorParams, gen_semilagrangian
from .kirby import KirbyMoveError, apply_all, format_moves, parse_moves, random_moves
from .linalg import InvariantViolation, LinalgError
from .mcg import (
    NotSymplecticError,
    SymplecticMap,
    heegaard_h1,
    in_lagrangian_subgroup,
    is_symplectic,
)
from .suite import run_suite
from .triplet import (
    PresentationError,
    chain_graph_complement_h1,
    classify,
    h1_cobordism,
    h1_filling,
    validate,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        T = io.read_presentation(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except io.FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return T


def _load_valid(path: str):
    T = _load(path)
    problems = validate(T)
    if problems:
        raise UsageError(f"{path}: invalid presentation: " + "; ".join(problems))
    return T


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, indent=1))
    else:
        print(text)


def _write_or_print(T, out: str | None):
    if out:
        io.write_presentation(T, out)
    else:
        sys.stdout.write(io.dumps_presentation(T))


def _yn(b: bool) -> str:
    return "true" if b else "false"


# --- commands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    T = _load(args.file)
    problems = validate(T)
    if args.json:
        print(json.dumps({"ok": not problems, "violations": problems}))
    elif problems:
        for p in problems:
            print(f"violation: {p}")
    else:
        print("ok")
    return EXIT_NEGATIVE if problems and args.strict else EXIT_OK


def cmd_h1(args) -> int:
    T = _load_valid(args.file)
    out = {}
    if not args.cobordism:
        out["filling"] = h1_filling(T)
    if not args.filling:
        out["cobordism"] = h1_cobordism(T)[1]
    if args.json:
        print(json.dumps({k: v.to_dict() | {"text": str(v)} for k, v in out.items()}))
    elif len(out) == 1:
        print(next(iter(out.values())))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return EXIT_OK


def cmd_classify(args) -> int:
    T = _load_valid(args.file)
    r = classify(T)
    text = "\n".join([
        f"is_Q: {_yn(r.is_Q)}",
        f"is_Z: {_yn(r.is_Z)}",
        f"det_A: {r.det_A}",
        f"semi_lagrangian_matrix: {_yn(r.semi_lagrangian_matrix)}",
        f"semi_lagrangian_integral: {_yn(r.semi_lagrangian_integral)}",
        f"semi_lagrangian_rational: {_yn(r.semi_lagrangian_rational)}",
    ])
    _emit(r.to_dict(), args.json, text)
    negative = not (r.is_Q and r.semi_lagrangian_matrix)
    return EXIT_NEGATIVE if negative and args.strict else EXIT_OK


def cmd_compose(args) -> int:
    T1, T2 = _load_valid(args.file1), _load_valid(args.file2)
    try:
        build = compose(T1, T2)
    except GenusMismatchError as exc:
        raise UsageError(str(exc)) from None
    _write_or_print(build.result, args.output)
    return EXIT_OK


def cmd_s(args) -> int:
    T1, T2 = _load_valid(args.file1), _load_valid(args.file2)
    try:
        print(s_invariant(T1, T2))
    except GenusMismatchError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_bullet(args) -> int:
    T1, T2 = _load_valid(args.file1), _load_valid(args.file2)
    try:
        P = bullet(T1, T2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_or_print(P, args.output)
    return EXIT_OK


def cmd_kirby(args) -> int:
    T = _load_valid(args.file)
    if args.moves:
        try:
            moves = parse_moves(Path(args.moves).read_text(encoding="utf-8"))
            U = apply_all(T, moves)
        except OSError as exc:
            raise UsageError(f"{args.moves}: {exc.strerror}") from None
        except KirbyMoveError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.random < 0:
            raise UsageError("--random needs a nonnegative count")
        U, moves = random_moves(T, args.seed, args.random)
    if args.log:
        Path(args.log).write_text(format_moves(moves), encoding="utf-8")
    else:
        sys.stderr.write(format_moves(moves))
    _write_or_print(U, args.output)
    return EXIT_OK


def _load_matrix(path: str):
    try:
        return io.read_matrix(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except (io.FormatError, LinalgError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_mcg_check(args) -> int:
    W = _load_matrix(args.file)
    try:
        sym = is_symplectic(W)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lag = sym and in_lagrangian_subgroup(SymplecticMap.of(W))
    out = {"genus": W.rows // 2, "symplectic": sym, "lagrangian_subgroup": lag}
    _emit(out, args.json, "\n".join(f"{k}: {_yn(v) if isinstance(v, bool) else v}"
                                    for k, v in out.items()))
    return EXIT_OK


def cmd_mcg_heegaard(args) -> int:
    W = _load_matrix(args.file)
    try:
        h = heegaard_h1(W)
    except (NotSymplecticError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(h.to_dict() | {"text": str(h), "integral_homology_sphere": h.is_trivial()},
          args.json, str(h))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        params = GeneratorParams(args.family, args.g1, args.g2, args.n, args.bound, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_or_print(gen_semilagrangian(params), args.output)
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = run_suite(args.trials, args.seed)
    if args.json:
        print(json.dumps(report.to_dict(include_timing=not args.no_timing), indent=1))
    else:
        width = max(len(k) for k in report.counts)
        for name, c in sorted(report.counts.items()):
            status = "PASS" if c["failed"] == 0 else "FAIL"
            print(f"{status}  {name:<{width}}  {c['passed']}/{c['passed'] + c['failed']}")
        print(f"rng: {report.rng_algorithm}  seed: {report.seed}  "
              f"time: {report.wall_time:.2f}s  failures: {report.failures}")
    return EXIT_INVARIANT if report.failures else EXIT_OK


def cmd_prop4(args) -> int:
    if args.g < 0:
        raise UsageError("--g must be nonnegative")
    h = chain_graph_complement_h1(args.g)
    _emit(h.to_dict() | {"text": str(h)}, args.json, str(h))
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cob", description="Exact linking-matrix computations for surgery presentations "
                                "of 3-cobordisms.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = with_json(sub.add_parser("validate", help="check block shapes and symmetry"))
    sp.add_argument("file")
    sp.add_argument("--strict", action="store_true", help="exit 1 on violations")
    sp.set_defaults(func=cmd_validate)

    sp = with_json(sub.add_parser("h1", help="first homology of the cobordism and/or filling"))
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--cobordism", action="store_true")
    g.add_argument("--filling", action="store_true")
    sp.set_defaults(func=cmd_h1)

    sp = with_json(sub.add_parser("classify", help="Q/Z-cobordism and semi-Lagrangian flags"))
    sp.add_argument("file")
    sp.add_argument("--strict", action="store_true",
                    help="exit 1 unless the presentation is a semi-Lagrangian Q-cobordism")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("compose", help="glue the top of FILE1 to the bottom of FILE2")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("s", help="decomposition integer of a gluing")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_s)

    sp = sub.add_parser("bullet", help="product of two cobordisms with empty bottom")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bullet)

    sp = sub.add_parser("kirby", help="apply Kirby moves from a log or at random")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--moves", metavar="MOVEFILE")
    g.add_argument("--random", type=int, metavar="N")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.add_argument("--log", help="write the move log here instead of stderr")
    sp.set_defaults(func=cmd_kirby)

    mcg = sub.add_parser("mcg", help="homology action of surface mapping classes")
    msub = mcg.add_subparsers(dest="mcg_command", required=True)
    sp = with_json(msub.add_parser("check", help="symplectic / Lagrangian-subgroup membership"))
    sp.add_argument("file", metavar="MATRIXFILE")
    sp.set_defaults(func=cmd_mcg_check)
    sp = with_json(msub.add_parser("heegaard", help="H_1 of the Heegaard gluing"))
    sp.add_argument("file", metavar="MATRIXFILE")
    sp.set_defaults(func=cmd_mcg_heegaard)

    sp = sub.add_parser("gen", help="random semi-Lagrangian presentation")
    sp.add_argument("--family", type=str.upper, choices=("Z", "Q"), required=True)
    sp.add_argument("--g1", type=int, required=True)
    sp.add_argument("--g2", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--bound", type=int, default=3, help="entry bound for random draws")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("suite", help="run the seeded property suite")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--no-timing", action="store_true",
                    help="omit wall time so output is byte-identical across runs")
    sp.set_defaults(func=cmd_suite)

    sp = with_json(sub.add_parser("prop4", help="H_1 of a genus-g chain graph complement"))
    sp.add_argument("--g", type=int, required=True)
    sp.set_defaults(func=cmd_prop4)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PresentationError as exc:
        print(f"cob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"cob: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
