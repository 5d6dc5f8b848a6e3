"""Command line front end: ``hecke-gram <subcommand> ...``.

Exit status is 0 on success, 1 when validation or verification fails and 2
on usage errors (bad flags, unreadable or malformed input).
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .gram import GramDataError, GramVerificationError, check_balanced, compute_gram, diagnostics, gram_stats
from .intlinalg import DEFAULT_PRIME
from .poly import format_poly
from .polymatrix import format_matrix, parse_matrix
from .polyrecover import RecoveryError, RecoveryPolicy, detect_degree, detect_degree_incremental, recover_from_values
from .rational import recover_rational
from .stdbasis import ReducibleActionError
from .wgraph import (CoxeterSystem, WGraph, WGraphFormatError, benson_curtis_subsets, specialized_schreier_tree,
                     validate_wgraph)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[Path] = field(default_factory=list)
    prime: int = DEFAULT_PRIME
    degree_bound: int = 200
    denominator_bound: int | None = 20
    place_start: int | None = None
    subset_J: tuple[int, ...] | None = None
    jobs: int = 1
    seed: int | None = None
    output: Path | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.prime < 3:
            raise UsageError("--prime must be at least 3")
        if self.degree_bound < 0:
            raise UsageError("--degree-bound must be nonnegative")
        if self.denominator_bound is not None and self.denominator_bound < 1:
            raise UsageError("--denominator-bound must be positive (0 disables it)")
        if self.place_start is not None and self.place_start < 1:
            raise UsageError("--place-start must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")

    def policy(self) -> RecoveryPolicy:
        pol = RecoveryPolicy(degree_bound=self.degree_bound, denominator_bound=self.denominator_bound,
                             prime=self.prime)
        if self.place_start is not None:
            pol.place_start = self.place_start
            pol.window_start = self.place_start
        return pol


def parse_subset(text: str) -> tuple[int, ...]:
    """``"s1,s2"`` or ``"1,2"`` to ``(1, 2)``; an empty string is the empty subset."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        tok = tok.lower().removeprefix("s")
        if not tok.isdigit() or int(tok) < 1:
            raise UsageError(f"bad generator {tok!r} in --subset-J")
        out.append(int(tok))
    return tuple(sorted(set(out)))


def _format_subset(J) -> str:
    return ",".join(f"s{s}" for s in J) or "-"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def _read_text(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_wgraph(path: Path) -> WGraph:
    return WGraph.parse(_read_text(path))


def _load_coxeter(path: Path | None) -> CoxeterSystem | None:
    return None if path is None else CoxeterSystem.parse(_read_text(path))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(cfg: RunConfig) -> int:
    g = _load_wgraph(cfg.inputs[0])
    cox = _load_coxeter(cfg.inputs[1])
    report = validate_wgraph(g, cox)
    if report.ok:
        print("valid")
        return EXIT_OK
    for v in report.violations:
        print(f"violation: {v}")
    return EXIT_FAIL


def cmd_subsets(cfg: RunConfig) -> int:
    g = _load_wgraph(cfg.inputs[0])
    _emit(cfg, "".join(f"{_format_subset(J)} {i + 1}\n" for J, i in benson_curtis_subsets(g)))
    return EXIT_OK


def _resolve_subset(cfg: RunConfig, g: WGraph):
    if cfg.subset_J is None:
        return None
    bad = [s for s in cfg.subset_J if s > g.nsgens]
    if bad:
        raise UsageError(f"--subset-J names generators {bad} beyond {g.nsgens}")
    return cfg.subset_J


def cmd_tree(cfg: RunConfig) -> int:
    g = _load_wgraph(cfg.inputs[0])
    J = _resolve_subset(cfg, g)
    if J is None:
        J = benson_curtis_subsets(g)[0][0]
    tree, lengths, b = specialized_schreier_tree(g, J, first_prime=cfg.prime)
    _emit(cfg, tree.format())
    print(f"# J={_format_subset(J)} place={b} lengths={' '.join(map(str, lengths))}", file=sys.stderr)
    return EXIT_OK


def cmd_gram(cfg: RunConfig) -> int:
    g = _load_wgraph(cfg.inputs[0])
    cox = _load_coxeter(cfg.inputs[1] if len(cfg.inputs) > 1 else None)
    J = _resolve_subset(cfg, g)
    try:
        res = compute_gram(g, cox, J, cfg.policy(), cfg.jobs)
    except (GramDataError, GramVerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(cfg, format_matrix(res.P))
    if cfg.verbosity:
        for d in diagnostics(res, g):
            print(f"# {'held' if d.held else 'FAILED'}: {d.name} {d.detail}".rstrip(), file=sys.stderr)
    print(res.stats.row(cfg.inputs[0].stem))
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    M = parse_matrix(_read_text(cfg.inputs[0]))
    print(gram_stats(M).row(cfg.inputs[0].stem))
    print(f"balanced,{'y' if check_balanced(M) else 'n'}")
    return EXIT_OK


def _number(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except ValueError as exc:
        raise UsageError(f"not a number: {tok!r}") from exc


def _pairs(text: str) -> list[tuple[int, Fraction]]:
    out = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise UsageError(f"expected 'place value', got {ln!r}")
        b = _number(parts[0])
        if b.denominator != 1:
            raise UsageError(f"place must be an integer: {parts[0]}")
        out.append((int(b), _number(parts[1])))
    return out


def _format_coeffs(f) -> str:
    return ",".join(str(c) for c in f) if f else "0"


def cmd_recover(cfg: RunConfig, mode: str, text: str) -> int:
    if mode == "rational":
        status = EXIT_OK
        for a, b in _pairs(text):
            if b.denominator != 1 or b < 1:
                raise UsageError("rational recovery expects integers 'a b' with b > 0")
            rec = recover_rational(a, int(b))
            if rec is None:
                print("fail")
                status = EXIT_FAIL
            else:
                y, x = rec
                print(y if x == 1 else f"{y}/{x}")
        return status
    pairs = _pairs(text)
    if not pairs:
        raise UsageError("no samples on standard input")
    places, values = [b for b, _ in pairs], [v for _, v in pairs]
    try:
        if mode == "poly":
            f = recover_from_values(places, values, cfg.degree_bound, cfg.denominator_bound)
            print(format_poly(f))
            return EXIT_OK
        res = detect_degree(places, values)
        k, inc = detect_degree_incremental(places, values)
    except RecoveryError as exc:
        print(f"fail: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"degree {res.degree}")
    print(f"places {','.join(map(str, res.places))}")
    print(f"coefficients {_format_coeffs(res.poly)}")
    print(f"incremental {k} {','.join(map(str, inc.places))}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="first prime for p-adic solving")
    common.add_argument("--degree-bound", type=int, default=200)
    common.add_argument("--denominator-bound", type=int, default=20, help="0 disables the bound")
    common.add_argument("--place-start", type=int, help="first place of the evaluation schedule")
    common.add_argument("--subset-J", help='Benson-Curtis subset, e.g. "s1,s2" or "1,2"')
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, help="seed for any randomized mode (defaults are deterministic)")
    common.add_argument("--output", "-o", type=Path)
    common.add_argument("--verbose", "-v", action="count", default=0)

    ap = argparse.ArgumentParser(prog="hecke-gram", description="Gram matrices of Hecke algebra representations")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="check a W-graph against a Coxeter system")
    p.add_argument("wgraph", type=Path)
    p.add_argument("coxeter", type=Path)
    p = sub.add_parser("subsets", parents=[common], help="list Benson-Curtis subsets and their vertices")
    p.add_argument("wgraph", type=Path)
    p = sub.add_parser("tree", parents=[common], help="specialized standard basis Schreier tree")
    p.add_argument("wgraph", type=Path)
    p = sub.add_parser("gram", parents=[common], help="compute the primitive Gram matrix")
    p.add_argument("wgraph", type=Path)
    p.add_argument("coxeter", type=Path, nargs="?")
    p = sub.add_parser("stats", parents=[common], help="statistics row of a matrix file")
    p.add_argument("matrix", type=Path)
    p = sub.add_parser("recover", parents=[common], help="recovery utilities reading standard input")
    p.add_argument("mode", choices=["rational", "poly", "degree-detect"])
    return ap


def _config(ns: argparse.Namespace) -> RunConfig:
    inputs = [getattr(ns, k) for k in ("wgraph", "coxeter", "matrix") if getattr(ns, k, None) is not None]
    return RunConfig(
        command=ns.command, inputs=inputs, prime=ns.prime, degree_bound=ns.degree_bound,
        denominator_bound=ns.denominator_bound or None, place_start=ns.place_start,
        subset_J=parse_subset(ns.subset_J) if ns.subset_J is not None else None,
        jobs=ns.jobs, seed=ns.seed, output=ns.output, verbosity=ns.verbose)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(ns)
        logging.basicConfig(level=logging.DEBUG if cfg.verbosity > 1 else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if cfg.seed is not None:
            random.seed(cfg.seed)
        if cfg.command == "validate":
            return cmd_validate(cfg)
        if cfg.command == "subsets":
            return cmd_subsets(cfg)
        if cfg.command == "tree":
            return cmd_tree(cfg)
        if cfg.command == "gram":
            return cmd_gram(cfg)
        if cfg.command == "stats":
            return cmd_stats(cfg)
        return cmd_recover(cfg, ns.mode, sys.stdin.read())
    except (UsageError, WGraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReducibleActionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # malformed files and inconsistent arguments
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
