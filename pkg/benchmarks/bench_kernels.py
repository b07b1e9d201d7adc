"""Compare the compiled and numpy pairwise-distance kernels.

Times a full minimum-distance sweep (floor 0, so no early exit) over the DNA
images of RM-type codes and reports pairs per second for each backend.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --m 3 --z 020 --repeat 5
"""

import argparse
import statistics
import time

from ringdna import codes, gau, kernels
from ringdna.ring import parse_element


def time_sweep(packed, backend, threads, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.min_pairwise(packed, floor=0, threads=threads, backend=backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cases", nargs="*", default=["1:300", "2:020", "3:020", "3:002"],
                   help="m:z pairs to benchmark")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--threads", type=int, default=0)
    args = p.parse_args()

    backends = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(backends)} (default {kernels.backend_name()})")
    print(f"{'case':<10}{'M':>8}{'pairs':>12}" + "".join(f"{b + ' s':>14}{b + ' pairs/s':>18}" for b in backends)
          + f"{'speedup':>10}")
    for case in args.cases:
        m, z = case.split(":")
        words = codes.span(codes.rm_generator(int(m), parse_element(z))).words
        packed = gau.packed_image(words)
        pairs = len(words) * (len(words) - 1) // 2
        row = f"{case:<10}{len(words):>8}{pairs:>12}"
        seconds, answers = {}, set()
        for b in backends:
            seconds[b], res = time_sweep(packed, b, args.threads, args.repeat)
            answers.add((res.distance, res.witness))
            row += f"{seconds[b]:>14.4f}{pairs / seconds[b]:>18.3e}"
        if len(answers) != 1:
            raise SystemExit(f"{case}: backends disagree: {answers}")
        if "compiled" in seconds:
            row += f"{seconds['python'] / seconds['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
