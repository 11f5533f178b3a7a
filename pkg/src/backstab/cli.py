"""Command-line driver: exact values, simulations, and figure/table data.

Subcommands::

    backstab exact     --recurrence {migdal|rvc|vlopt} --n N --m M
    backstab simulate  --n N --m M --profile P --games G --seed S
    backstab table     --games G --seed S --out PATH
    backstab sweep     --m-list 2,3 --n-range 7:25 --profiles RV,VL_OPT ...
    backstab ratios    --against RVC --sweep-file PATH --out PATH

Exit codes: 0 success, 1 usage/config error, 2 enumeration-cap refusal.
The BACKSTAB_CAP environment variable overrides the default enumeration
cap; an explicit --cap flag wins over the environment.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from ._kernels import mix64
from .exact import EnumerationCapExceededError
from .simulate import BatchResult, GameConfig, PunishTiming, run_batch
from .strategies import StrategyProfile

SWEEP_HEADER = "n,m,strategy,source,value,value_exact,ci_low,ci_high,num_games,seed"
RATIO_HEADER = "n,m,numerator_strategy,denominator_strategy,ratio"
TABLE_HEADER = "n,m,w,RV,w_rvc,RVC,w_vlopt,VL_OPT"

#: the configurations of the headline comparison table
DEFAULT_TABLE_CONFIGS = [
    (7, 2), (8, 2), (9, 3), (10, 3), (11, 3), (11, 5),
    (15, 2), (20, 3), (22, 3), (24, 3), (25, 3), (22, 4), (25, 4),
]

_RECURRENCES = {
    "migdal": exact.w_random,
    "rvc": exact.w_rvc,
    "vlopt": exact.w_vlopt,
}


def decimal_str(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering at `digits` significant digits, round-half-even."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        return str(Decimal(value.numerator) / Decimal(value.denominator))


@dataclass
class OutputRecord:
    """One row of machine-readable output, shared by CSV and JSON."""

    n: int
    m: int
    strategy: str
    source: str  # "exact" or "simulated"
    value: str
    value_exact: str = ""  # "numerator/denominator" when source = exact
    ci_low: str = ""
    ci_high: str = ""
    num_games: str = ""
    seed: str = ""

    def row(self) -> list[str]:
        return [
            str(self.n), str(self.m), self.strategy, self.source, self.value,
            self.value_exact, self.ci_low, self.ci_high, self.num_games, self.seed,
        ]


def write_csv(path: str, header: str, rows: Sequence[Sequence[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader if row]


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors (2 is the cap refusal)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _default_cap() -> int:
    return int(os.environ.get("BACKSTAB_CAP", exact.DEFAULT_CAP))


def _exact_record(recurrence: str, n: int, m: int, cap: int) -> OutputRecord:
    fn = _RECURRENCES[recurrence]
    value = fn(n, m, cap=cap) if recurrence == "rvc" else fn(n, m)
    return OutputRecord(
        n=n, m=m, strategy=recurrence, source="exact",
        value=decimal_str(value),
        value_exact=f"{value.numerator}/{value.denominator}",
    )


def cmd_exact(args) -> int:
    try:
        record = _exact_record(args.recurrence, args.n, args.m, args.cap)
    except EnumerationCapExceededError as exc:
        print(
            f"cap exceeded: (n={exc.n}, m={exc.m}) needs {exc.omega} profile "
            f"evaluations, cap is {exc.cap}",
            file=sys.stderr,
        )
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(asdict(record)))
    else:
        print(
            f"{args.recurrence}(n={args.n}, m={args.m}) = {record.value}"
            f" = {record.value_exact}"
        )
    return 0


def _simulate_record(config: GameConfig, games: int, seed: int, workers: int) -> tuple[OutputRecord, BatchResult]:
    batch = run_batch(config, games, master_seed=seed, workers=workers)
    record = OutputRecord(
        n=config.n, m=config.m, strategy=config.profile.value, source="simulated",
        value=repr(batch.traitor_win_rate),
        ci_low=repr(batch.wilson_low), ci_high=repr(batch.wilson_high),
        num_games=str(games), seed=str(seed),
    )
    return record, batch


def cmd_simulate(args) -> int:
    try:
        config = GameConfig(
            n=args.n, m=args.m,
            profile=StrategyProfile[args.profile],
            punish_timing=PunishTiming(args.punish_timing),
            punish_compliance=args.punish_compliance,
            seed=args.seed,
        )
    except (KeyError, ValueError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 1
    record, batch = _simulate_record(config, args.games, args.seed, args.workers)
    print(
        f"{config.profile.value}(n={config.n}, m={config.m}): "
        f"traitor win rate {batch.traitor_win_rate:.6f} "
        f"[{batch.wilson_low:.6f}, {batch.wilson_high:.6f}] 95% Wilson, "
        f"{args.games} games, seed {args.seed}"
    )
    if args.csv:
        write_csv(args.csv, SWEEP_HEADER, [record.row()])
    return 0


def _table_seed(seed: int, n: int, m: int, strategy: str) -> int:
    """Stable per-cell master seed so cells are independent but reproducible."""
    h = mix64(seed)
    for part in (n, m, sum(strategy.encode())):
        h = mix64(h ^ part)
    return h


def cmd_table(args) -> int:
    if args.configs:
        try:
            with open(args.configs, encoding="utf-8") as fh:
                configs = [(int(n), int(m)) for n, m in json.load(fh)]
        except (OSError, ValueError) as exc:
            print(f"error: cannot read configs: {exc}", file=sys.stderr)
            return 1
    else:
        configs = DEFAULT_TABLE_CONFIGS
    rows = []
    for n, m in configs:
        cells = [str(n), str(m), decimal_str(exact.w_random(n, m), 4)]
        for profile in (StrategyProfile.RV,):
            _, batch = _sim_cell(args, n, m, profile)
            cells.append(f"{batch.traitor_win_rate:.4f}")
        try:
            cells.append(decimal_str(exact.w_rvc(n, m, cap=args.cap), 4))
        except EnumerationCapExceededError:
            cells.append("--")
        _, batch = _sim_cell(args, n, m, StrategyProfile.RVC)
        cells.append(f"{batch.traitor_win_rate:.4f}")
        cells.append(decimal_str(exact.w_vlopt(n, m), 4))
        _, batch = _sim_cell(args, n, m, StrategyProfile.VL_OPT)
        cells.append(f"{batch.traitor_win_rate:.4f}")
        rows.append(cells)
    try:
        write_csv(args.out, TABLE_HEADER, rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _sim_cell(args, n: int, m: int, profile: StrategyProfile):
    config = GameConfig(n=n, m=m, profile=profile)
    seed = _table_seed(args.seed, n, m, profile.value)
    return _simulate_record(config, args.games, seed, args.workers)


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_range(text: str) -> list[int]:
    lo, _, hi = text.partition(":")
    return list(range(int(lo), int(hi) + 1))


def cmd_sweep(args) -> int:
    try:
        m_list = _parse_int_list(args.m_list)
        n_list = _parse_range(args.n_range)
        profiles = [StrategyProfile[p] for p in args.profiles.split(",") if p.strip()]
    except (KeyError, ValueError) as exc:
        print(f"error: invalid sweep arguments: {exc}", file=sys.stderr)
        return 1
    if not m_list or not n_list or not profiles:
        print("error: empty sweep ranges", file=sys.stderr)
        return 1
    exact_fn = {
        StrategyProfile.RV: exact.w_random,
        StrategyProfile.VL_COMP: exact.w_random,
        StrategyProfile.RVC: lambda n, m: exact.w_rvc(n, m, cap=args.cap),
        StrategyProfile.VL_OPT: exact.w_vlopt,
    }
    rows = []
    for m in m_list:
        for n in n_list:
            if not (1 <= m < n):
                continue
            for profile in profiles:
                fn = exact_fn.get(profile)
                if fn is not None:
                    try:
                        faithful = 1 - fn(n, m)
                        rows.append(
                            OutputRecord(
                                n=n, m=m, strategy=profile.value, source="exact",
                                value=decimal_str(faithful),
                                value_exact=f"{faithful.numerator}/{faithful.denominator}",
                            ).row()
                        )
                    except EnumerationCapExceededError:
                        pass
                if args.games > 0:
                    config = GameConfig(n=n, m=m, profile=profile)
                    seed = _table_seed(args.seed, n, m, profile.value)
                    record, batch = _simulate_record(config, args.games, seed, args.workers)
                    record.value = repr(1 - batch.traitor_win_rate)
                    record.ci_low = repr(1 - batch.wilson_high)
                    record.ci_high = repr(1 - batch.wilson_low)
                    rows.append(record.row())
    try:
        write_csv(args.out, SWEEP_HEADER, rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_ratios(args) -> int:
    try:
        header, raw_rows = read_csv(args.sweep_file)
    except OSError as exc:
        print(f"error: cannot read {args.sweep_file}: {exc}", file=sys.stderr)
        return 1
    if ",".join(header) != SWEEP_HEADER:
        print(f"error: {args.sweep_file} is not a sweep file", file=sys.stderr)
        return 1
    # prefer exact rows over simulated ones per (n, m, strategy)
    best: dict[tuple[int, int, str], tuple[str, float]] = {}
    for row in raw_rows:
        n, m, strategy, source, value = int(row[0]), int(row[1]), row[2], row[3], float(row[4])
        key = (n, m, strategy)
        if key not in best or (source == "exact" and best[key][0] != "exact"):
            best[key] = (source, value)
    out_rows = []
    numerator = StrategyProfile.VL_OPT.value
    for (n, m, strategy) in sorted(best):
        if strategy != numerator:
            continue
        denom_key = (n, m, args.against)
        if denom_key not in best:
            print(
                f"error: no {args.against} rows for (n={n}, m={m}) in sweep file",
                file=sys.stderr,
            )
            return 1
        fa = best[(n, m, strategy)][1]
        fb = best[denom_key][1]
        ratio = "" if fb == 0 else repr(fa / fb)
        out_rows.append([str(n), str(m), numerator, args.against, ratio])
    try:
        write_csv(args.out, RATIO_HEADER, out_rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(out_rows)} rows to {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="backstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact recurrence values")
    p.add_argument("--recurrence", choices=sorted(_RECURRENCES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=int, default=_default_cap())
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("simulate", help="Monte Carlo batch for one configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--profile", required=True,
                   choices=[s.value for s in StrategyProfile])
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--punish-timing", dest="punish_timing",
                   choices=[t.value for t in PunishTiming],
                   default=PunishTiming.NEXT_ROUND.value)
    p.add_argument("--punish-compliance", dest="punish_compliance",
                   action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("table", help="headline comparison table as CSV")
    p.add_argument("--games", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--configs", default=None, help="JSON file of [n, m] pairs")
    p.add_argument("--cap", type=int, default=_default_cap())
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("sweep", help="Faithful win rates over a grid, long CSV")
    p.add_argument("--m-list", dest="m_list", required=True)
    p.add_argument("--n-range", dest="n_range", required=True, metavar="LO:HI")
    p.add_argument("--profiles", required=True)
    p.add_argument("--games", type=int, default=0,
                   help="simulated games per cell; 0 for exact-only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=_default_cap())
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("ratios", help="Faithful win-rate ratios from a sweep file")
    p.add_argument("--against", required=True,
                   choices=["RV", "RVC", "VL_COMP", "VL_C"])
    p.add_argument("--sweep-file", dest="sweep_file", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_ratios)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
