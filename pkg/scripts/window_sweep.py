"""Graded dimensions of the presented and smash-product envelopes as the window grows.

    python3 scripts/window_sweep.py [--algebra FILE] [--max-degree 6] [--max-length 8]

Without --algebra the two-generator algebra with (lambda, mu, p) = (0, 1, 1)
is used. Each row reports both dimension vectors, whether they agree and the
time spent; the rows show the dimensions settling as D increases.
"""
import argparse
import sys
import time
from dataclasses import dataclass

from dgpa.catalog import two_generator
from dgpa.dg_poisson import verify
from dgpa.envelope import env_presented, smash_env
from dgpa.io import load_algebra
from dgpa.presentation import TruncationParams, graded_dimension


@dataclass(frozen=True)
class SweepConfig:
    algebra: str = ""
    min_degree: int = 1
    max_degree: int = 6
    max_length: int = 8


def parse_args(argv) -> SweepConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", default="", help="algebra document (JSON)")
    ap.add_argument("--min-degree", type=int, default=1)
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--max-length", type=int, default=8)
    a = ap.parse_args(argv)
    return SweepConfig(a.algebra, a.min_degree, a.max_degree, a.max_length)


def sweep(cfg: SweepConfig):
    A = load_algebra(cfg.algebra) if cfg.algebra else two_generator(0, 1, 1)
    rows = []
    for D in range(cfg.min_degree, cfg.max_degree + 1):
        t = TruncationParams(D, 0, cfg.max_length)
        start = time.perf_counter()
        B = verify(A, t)
        ge = graded_dimension(env_presented(B).presentation, t)
        gs = graded_dimension(smash_env(B, t).presentation, t)
        rows.append((D, ge.as_tuple(), gs.as_tuple(), ge.exact and gs.exact,
                     time.perf_counter() - start))
    return rows


def main(argv=None) -> int:
    cfg = parse_args(argv)
    agree = True
    for D, pe, sm, exact, secs in sweep(cfg):
        equal = pe == sm
        agree &= equal
        flag = "exact" if exact else "upper bound"
        print(f"D={D} presented {pe} smash {sm} {'equal' if equal else 'DIFFER'} ({flag}) "
              f"{secs:.2f}s")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
