"""Command-line front end.

    m1n-chi chi --genus 1 -n 3 --cap-d 4 --cap-di 4 --format csv
    m1n-chi verify --suite x1

Exit codes: 0 success, 1 usage error, 2 integrality violation,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from . import ENGINE_VERSION
from .cache import SeriesCache
from .genus0 import iterate_pushforward
from .genus1 import Engine, IntegralityError, table_from_series, x1_series
from .sectors import SECTOR_TABLE, SectorTable, phi
from .verify import SUITES, VerifyParams, run_suites

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTEGRALITY = 2
EXIT_VERIFY = 3

COMMANDS = ("chi", "x1", "phi", "verify", "genus0")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    genus: int = 1
    n: int | None = None
    cap_d: int = 5
    cap_di: int = 5
    format: str = "csv"
    cache_dir: Path | None = None
    threads: int = 1
    suite: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.cap_d < 0 or self.cap_di < 0:
            raise UsageError("caps must be nonnegative")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.genus not in (0, 1):
            raise UsageError("--genus must be 0 or 1")
        cmd = self.effective_command()
        if cmd == "chi" and (self.n is None or self.n < 1):
            raise UsageError("chi needs -n >= 1")
        if cmd == "phi" and (self.n is None or self.n < 2):
            raise UsageError("phi needs -n >= 2")
        if cmd == "genus0" and (self.n is None or self.n < 3):
            raise UsageError("genus0 needs -n >= 3")
        if cmd == "verify" and self.suite and self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")

    def effective_command(self) -> str:
        if self.command == "chi" and self.genus == 0:
            return "genus0"
        return self.command

    def cache(self) -> SeriesCache | None:
        return SeriesCache.from_env(self.cache_dir)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="m1n-chi", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--genus", type=int, default=1, choices=(0, 1))
    parser.add_argument("-n", type=int, default=None)
    parser.add_argument("--cap-d", type=int, default=5, help="maximum Hodge exponent d")
    parser.add_argument("--cap-di", type=int, default=5, help="maximum cotangent exponent d_i")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--cache-dir", type=Path, default=None, help="defaults to $CHI_CACHE_DIR")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--suite", default=None, help="verify only this suite")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def run_chi(cfg: RunConfig, out, table: SectorTable = SECTOR_TABLE) -> int:
    engine = Engine(table, cfg.threads, cfg.cache())
    x = engine.x_series(cfg.n, cfg.cap_d, cfg.cap_di)
    try:
        chi = table_from_series(x, cfg.n, cfg.cap_d, cfg.cap_di)
    except IntegralityError as exc:
        print(f"integrality violation: exponent {exc.exponent} has chi = {exc.value}", file=sys.stderr)
        return EXIT_INTEGRALITY
    if cfg.format == "csv":
        out.write(chi.to_csv())
    else:
        out.write(json.dumps(chi.to_dict(), indent=1) + "\n")
    return EXIT_OK


def run_x1(cfg: RunConfig, out) -> int:
    x = x1_series(cfg.cap_d, cfg.cap_di)
    if cfg.format == "json":
        out.write(json.dumps({"engine_version": ENGINE_VERSION, **x.to_dict()}) + "\n")
    else:
        rows = [(d, d1, x.coeff((d, d1))) for d, d1 in product(range(cfg.cap_d + 1), range(cfg.cap_di + 1))]
        out.write(_csv(["d", "d1", "chi"], rows))
    return EXIT_OK


def run_phi(cfg: RunConfig, out, table: SectorTable = SECTOR_TABLE) -> int:
    caps = (cfg.cap_d,) + (cfg.cap_di,) * cfg.n
    s = phi(cfg.n, caps, table)
    if cfg.format == "json":
        out.write(json.dumps({"engine_version": ENGINE_VERSION, **s.to_dict()}) + "\n")
    else:
        header = ["d"] + [f"d{i}" for i in range(1, cfg.n + 1)] + ["coeff"]
        out.write(_csv(header, [(*e, c) for e, c in s.items()]))
    return EXIT_OK


def run_genus0(cfg: RunConfig, out) -> int:
    f = iterate_pushforward(cfg.n, cfg.cap_di)
    header = [f"d{i}" for i in range(1, cfg.n + 1)] + ["chi"]
    rows = []
    for di in product(range(cfg.cap_di + 1), repeat=f.live):
        if list(di) != sorted(di):
            continue
        full = di + (0,) * (cfg.n - f.live)
        rows.append((*sorted(full), f.coeff(full)))
    rows.sort()
    if cfg.format == "json":
        payload = {
            "genus": 0,
            "n": cfg.n,
            "cap_di": cfg.cap_di,
            "engine_version": ENGINE_VERSION,
            "determined_slots": f.live,
            "entries": [{"di": list(r[:-1]), "chi": str(r[-1])} for r in rows],
        }
        out.write(json.dumps(payload, indent=1) + "\n")
    else:
        out.write(_csv(header, rows))
    return EXIT_OK


def run_verify(cfg: RunConfig, out, table: SectorTable = SECTOR_TABLE) -> int:
    params = VerifyParams(table=table, threads=cfg.threads, cache=cfg.cache())
    names = None if cfg.suite in (None, "all") else [cfg.suite]
    results = run_suites(names, params)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"{r.checks} checks" if r.passed else r.failure
        out.write(f"{status} {r.name}: {detail}\n")
    failed = [r for r in results if not r.passed]
    if failed:
        out.write(f"first failure: {failed[0].name}: {failed[0].failure}\n")
        return EXIT_VERIFY
    return EXIT_OK


def run(cfg: RunConfig, out=None, table: SectorTable = SECTOR_TABLE) -> int:
    out = out or sys.stdout
    try:
        cfg.validate()
    except UsageError as exc:
        print(f"m1n-chi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cmd = cfg.effective_command()
    if cmd == "chi":
        return run_chi(cfg, out, table)
    if cmd == "x1":
        return run_x1(cfg, out)
    if cmd == "phi":
        return run_phi(cfg, out, table)
    if cmd == "genus0":
        return run_genus0(cfg, out)
    return run_verify(cfg, out, table)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = RunConfig(
        command=args.command,
        genus=args.genus,
        n=args.n,
        cap_d=args.cap_d,
        cap_di=args.cap_di,
        format=args.format,
        cache_dir=args.cache_dir,
        threads=args.threads,
        suite=args.suite,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
