"""Compile the generated G suite at s_min and s_min + 1 and verify every function.

    python3 scripts/run_oracle_suite.py --n 200 --max-input 5 --out results.jsonl
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from churchforge.compiler import all_inputs, compile_function, min_width, verify
from churchforge.suite import generated_suite
from churchforge.syntax import format_gexpr
from churchforge.terms import size


@dataclass
class SuiteConfig:
    n: int = 200
    seed: int = 0
    max_depth: int = 3
    max_arity: int = 3
    max_l: int = 3
    max_input: int = 5
    extra_widths: int = 1
    strategy: str = "nbe"


def run(cfg: SuiteConfig):
    suite = generated_suite(cfg.n, cfg.seed, cfg.max_depth, cfg.max_arity, cfg.max_l)
    for f in suite:
        s0 = min_width(f).s_min
        for s in range(s0, s0 + cfg.extra_widths + 1):
            t0 = time.perf_counter()
            c = compile_function(f, s)
            r = verify(c, f, all_inputs(f.arity, cfg.max_input), strategy=cfg.strategy)
            yield {
                "expr": format_gexpr(f.body),
                "arity": f.arity,
                "width": s,
                "term_size": size(c.term),
                "passed": r.n_passed,
                "total": len(r.cases),
                "type_ok": r.type_ok,
                "ok": r.passed,
                "max_steps": max((k.steps or 0 for k in r.cases), default=0),
                "seconds": round(time.perf_counter() - t0, 4),
            }


def main():
    defaults = SuiteConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in asdict(defaults).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    p.add_argument("--out", help="write one JSON record per (function, width)")
    args = vars(p.parse_args())
    out = args.pop("out")
    cfg = SuiteConfig(**args)

    rows = list(run(cfg))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
    bad = [r for r in rows if not r["ok"]]
    print(f"{len(rows) - len(bad)}/{len(rows)} compilations verified "
          f"({cfg.n} functions, inputs <= {cfg.max_input}, strategy {cfg.strategy})")
    print(f"largest term: {max(r['term_size'] for r in rows)} nodes; "
          f"most steps in one case: {max(r['max_steps'] for r in rows)}; "
          f"total time {sum(r['seconds'] for r in rows):.1f}s")
    for r in bad[:10]:
        print(f"FAIL {r['expr']} at s={r['width']}: {r['passed']}/{r['total']}, type_ok={r['type_ok']}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
