"""Both resolutions of x^2+y^2+z^(2m+1)+t^(4m+2) and their ledger deltas."""

import sys
import time

from realmmp import parse_germ, resolve_real


def main(ms):
    for m in ms:
        germ = parse_germ(f"x^2+y^2+z^{2 * m + 1}+t^{4 * m + 2}")[0]
        for prefer in ("high", "low"):
            t0 = time.perf_counter()
            res = resolve_real(germ, prefer=prefer)
            steps = " then ".join(str(s.weights) for s in res.steps)
            print(f"m={m} {prefer:4s} {steps:40s} delta={res.delta} ({time.perf_counter() - t0:.2f}s)")
            for eq in res.intermediate_equations:
                print(f"        chart point: {eq} = 0")


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [1, 2, 3])
