"""Run every worked-example replay and print one summary line each.

    python3 scripts/replay_examples.py [--only NAME ...] [--json FILE]
"""
import argparse
import json
import sys
import time

from dgpa.demo import REPLAYS, run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", action="append", choices=sorted(REPLAYS))
    ap.add_argument("--json", metavar="FILE", help="also write the replay records as JSON")
    args = ap.parse_args(argv)
    records = []
    failed = 0
    for name in args.only or REPLAYS:
        start = time.perf_counter()
        (r,) = run_all([name])
        secs = time.perf_counter() - start
        bad = [c.name for c in r.checks if not c.ok]
        failed += bool(bad)
        w = r.window
        print(f"{'ok  ' if not bad else 'FAIL'} {name:26s} D={w.max_degree} L={w.max_word_length} "
              f"{len(r.checks):3d} checks {secs:6.2f}s" + (f"  failing: {', '.join(bad)}" if bad else ""))
        records.append({"name": name, "window": w.as_dict(), "seconds": round(secs, 3),
                        "checks": [c.as_dict() for c in r.checks], "output": r.output})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=2, ensure_ascii=False, default=list)
            fh.write("\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
