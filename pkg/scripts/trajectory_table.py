"""Tabulate numeral trajectories (preperiod l, period t) in small full type hierarchies,
and which of pred, div2, mod2 the model rules out.

    python3 scripts/trajectory_table.py --max-q 4
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from churchforge.finite_model import BUILTIN_ORACLES, CapExceeded, FiniteModel, compat_falsify, numeral_trajectory
from churchforge.syntax import format_type, parse_type


@dataclass
class TableConfig:
    types: tuple[str, ...] = ("o", "o -> o", "o -> o -> o", "w(o)")
    max_q: int = 4
    cap: int = 10**6
    n_bound: int = 50


def main():
    cfg = TableConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--types", nargs="+", default=list(cfg.types))
    p.add_argument("--max-q", type=int, default=cfg.max_q)
    p.add_argument("--cap", type=int, default=cfg.cap)
    p.add_argument("--n-bound", type=int, default=cfg.n_bound)
    a = p.parse_args()
    cfg = TableConfig(tuple(a.types), a.max_q, a.cap, a.n_bound)

    names = sorted(BUILTIN_ORACLES)
    print(f"{'type':<14} {'q':>2} {'l':>4} {'t':>4}  " + "  ".join(f"{n:<10}" for n in names))
    for src in cfg.types:
        tau = parse_type(src)
        for q in range(1, cfg.max_q + 1):
            m = FiniteModel(q, cfg.cap)
            try:
                traj = numeral_trajectory(tau, m)
            except CapExceeded:
                print(f"{format_type(tau, True):<14} {q:>2}  (over cap)")
                break
            cells = []
            for n in names:
                w = compat_falsify(BUILTIN_ORACLES[n], tau, m, cfg.n_bound)
                cells.append(f"{'-' if w is None else str(w):<10}")
            print(f"{format_type(tau, True):<14} {q:>2} {traj.preperiod:>4} {traj.period:>4}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
