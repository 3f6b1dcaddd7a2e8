"""Command-line front end: verification suites, coherent-state data, operator dumps.

Exit codes: 0 when every selected check passes, 1 when any relation fails,
2 on invalid arguments (including parameters outside the allowed bounds).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import bargmann, coherent, fock, grassmann, qukit
from .report import CheckReport

MAX_RANK = 4
MAX_LEVEL = 10
DEFAULT_MAX_DIM = 5000
MAX_DIM_ENV = "WHG_MAX_DIM"


class UsageError(Exception):
    """Arguments parsed but violate a bound; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    rank: int = 1
    level: int = 1
    fmt: str = "text"
    out: str | None = None
    verbose: bool = True
    emit: str | None = None
    max_rank: int = 1
    max_level: int = 1
    jobs: int = 1
    operator: str | None = None
    mode: int = 1

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        fields = cls.__dataclass_fields__
        return cls(**{name: getattr(ns, name) for name in fields if hasattr(ns, name)})


def max_dim() -> int:
    raw = os.environ.get(MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_DIM_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{MAX_DIM_ENV} must be positive, got {value}")
    return value


def check_bounds(r: int, k: int) -> None:
    if not 1 <= r <= MAX_RANK:
        raise UsageError(f"rank must be in 1..{MAX_RANK}, got {r}")
    if not 1 <= k <= MAX_LEVEL:
        raise UsageError(f"level must be in 1..{MAX_LEVEL}, got {k}")
    dim = fock.basis_size(r, k)
    cap = max_dim()
    if dim > cap:
        raise UsageError(f"basis dimension {dim} at rank {r}, level {k} exceeds {MAX_DIM_ENV}={cap}")


# -- suites -------------------------------------------------------------------


def algebra_reports(r: int, k: int) -> list[CheckReport]:
    return [
        fock.verify_wh_relations(r, k),
        fock.verify_su_generators(r, k),
        fock.serre_check(r, k),
        fock.verify_commuting_ladders(r, k),
        fock.large_k_report(r, k, min(3, k - 1)),
    ]


def coherent_reports(r: int, k: int) -> list[CheckReport]:
    out = [
        coherent.verify_coefficients(r, k),
        coherent.eigen_check(r, k),
        coherent.lambda_nilpotency(r, k),
        coherent.resolution_check(r, k),
    ]
    if r == 1:
        out.append(coherent.verify_spin(k))
    return out


def cell_reports(cell: tuple[int, int]) -> list[CheckReport]:
    """Every suite at one ``(rank, level)`` grid point; rank-1 cells add the
    level-only suites (Grassmann, qukit, spin)."""
    r, k = cell
    reports = algebra_reports(r, k) + [bargmann.verify_bargmann(r, k)] + coherent_reports(r, k)
    if r == 1:
        reports += [grassmann.verify_grassmann(k), qukit.verify_qukit(k), qukit.verify_nilpotency(k)]
    return reports


def _render(reports: list[CheckReport], cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return json.dumps([rep.to_dict() for rep in reports], indent=2)
    return "\n\n".join(rep.to_text(cfg.verbose) for rep in reports)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _finish(reports: list[CheckReport], cfg: RunConfig) -> int:
    _emit(_render(reports, cfg), cfg)
    return 0 if all(rep.passed for rep in reports) else 1


# -- commands -----------------------------------------------------------------


def cmd_verify_algebra(cfg: RunConfig) -> int:
    check_bounds(cfg.rank, cfg.level)
    return _finish(algebra_reports(cfg.rank, cfg.level), cfg)


def cmd_verify_qukit(cfg: RunConfig) -> int:
    if not 1 <= cfg.level <= qukit.MAX_QUBITS:
        raise UsageError(f"qubit count must be in 1..{qukit.MAX_QUBITS}, got {cfg.level}")
    reports = [qukit.verify_qukit(cfg.level), qukit.verify_nilpotency(cfg.level)]
    return _finish(reports, cfg)


def cmd_verify_bargmann(cfg: RunConfig) -> int:
    check_bounds(cfg.rank, cfg.level)
    return _finish([bargmann.verify_bargmann(cfg.rank, cfg.level)], cfg)


def cmd_verify_grassmann(cfg: RunConfig) -> int:
    check_bounds(1, cfg.level)
    return _finish([grassmann.verify_grassmann(cfg.level)], cfg)


def cmd_coherent(cfg: RunConfig) -> int:
    r, k = cfg.rank, cfg.level
    check_bounds(r, k)
    if cfg.emit == "eigencheck":
        return _finish([coherent.eigen_check(r, k), coherent.lambda_nilpotency(r, k)], cfg)
    if cfg.emit == "resolution":
        return _finish([coherent.resolution_check(r, k)], cfg)
    state = coherent.build_coherent_state(r, k)
    records = state.to_records()
    if cfg.fmt == "json":
        text = json.dumps({"rank": r, "level": k, "entries": records}, indent=2)
    else:
        lines = [f"coherent state (rank={r}, level={k}): {len(records)} entries"]
        for rec in records:
            idx = ",".join(map(str, rec["index"]))
            z = ",".join(map(str, rec["z_monomial"]))
            lines.append(f"  ({idx}) {rec['coefficient']}  eta^{rec['eta_power']}  z^({z})")
        text = "\n".join(lines)
    _emit(text, cfg)
    return 0


def cmd_verify_all(cfg: RunConfig) -> int:
    # an empty grid would pass vacuously
    check_bounds(cfg.max_rank, cfg.max_level)
    cells = [(r, k) for r in range(1, cfg.max_rank + 1) for k in range(1, cfg.max_level + 1)]
    for r, k in cells:
        check_bounds(r, k)
    if cfg.jobs < 1:
        raise UsageError(f"jobs must be >= 1, got {cfg.jobs}")
    if cfg.jobs == 1:
        per_cell = [cell_reports(c) for c in cells]
    else:
        # map() yields in submission order, so output stays sorted by (r, k)
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            per_cell = list(pool.map(cell_reports, cells))
    return _finish([rep for reps in per_cell for rep in reps], cfg)


_OPERATORS = {
    "a-": fock.annihilation,
    "a+": fock.creation,
    "N": fock.number,
}


def cmd_dump_operator(cfg: RunConfig) -> int:
    check_bounds(cfg.rank, cfg.level)
    if not 1 <= cfg.mode <= cfg.rank:
        raise UsageError(f"mode must be in 1..{cfg.rank}, got {cfg.mode}")
    b = fock.basis(cfg.rank, cfg.level)
    op = _OPERATORS[cfg.operator](cfg.mode, b)
    if cfg.fmt == "json":
        text = json.dumps({
            "operator": cfg.operator, "mode": cfg.mode, "rank": cfg.rank, "level": cfg.level,
            "dim": op.dim,
            "entries": [{"row": list(b.label(r)), "col": list(b.label(c)), "value": v.to_text()}
                        for (r, c), v in sorted(op.entries.items())],
        }, indent=2)
    else:
        text = "\n".join(op.dump(b.label))
    _emit(text, cfg)
    return 0


COMMANDS = {
    "verify-algebra": cmd_verify_algebra,
    "verify-qukit": cmd_verify_qukit,
    "verify-bargmann": cmd_verify_bargmann,
    "verify-grassmann": cmd_verify_grassmann,
    "coherent": cmd_coherent,
    "verify-all": cmd_verify_all,
    "dump-operator": cmd_dump_operator,
}


# -- parser -------------------------------------------------------------------


def _output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("-q", "--quiet", dest="verbose", action="store_false",
                   help="text output lists failing relations only")


def _rank(p: argparse.ArgumentParser) -> None:
    p.add_argument("-r", "--rank", type=int, default=1, help=f"number of modes, 1..{MAX_RANK}")


def _level(p: argparse.ArgumentParser, default: int | None = None) -> None:
    p.add_argument("-k", "--level", type=int, required=default is None, default=default,
                   help=f"representation level, 1..{MAX_LEVEL}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whg",
        description="Exact checks for the generalized Weyl-Heisenberg algebra and its coherent states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-algebra", help="A(r) relations, su(r+1) generators, Serre relations")
    _rank(p)
    _level(p)
    _output_options(p)

    p = sub.add_parser("verify-qukit", help="collective ladders on k qubits")
    _level(p)
    _output_options(p)

    p = sub.add_parser("verify-bargmann", help="Fock-Bargmann intertwining")
    _rank(p)
    _level(p)
    _output_options(p)

    p = sub.add_parser("verify-grassmann", help="generalized Grassmann calculus at order k")
    _level(p)
    _output_options(p)

    p = sub.add_parser("coherent", help="coherent-state coefficients and checks")
    _rank(p)
    _level(p)
    _output_options(p)
    p.add_argument("--emit", choices=("coeffs", "eigencheck", "resolution"), default="coeffs")

    p = sub.add_parser("verify-all", help="every suite over a (rank, level) grid")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("-j", "--jobs", type=int, default=1, help="grid cells evaluated in parallel")
    _output_options(p)

    p = sub.add_parser("dump-operator", help="print a ladder or number matrix")
    _rank(p)
    _level(p)
    _output_options(p)
    p.add_argument("--operator", choices=tuple(_OPERATORS), default="a-")
    p.add_argument("--mode", type=int, default=1, help="1-based mode index")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {cfg.command}: error: {exc}\n")
    except OSError as exc:
        parser.exit(2, f"{parser.prog} {cfg.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
