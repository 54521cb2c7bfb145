"""Time the genus-one recursion for increasing n at fixed caps.

Usage: python3 scripts/timing.py [N] [CAP] [THREADS]
"""

import sys
import time

from m1n_chi.genus1 import chi_table


def main(argv):
    top = int(argv[1]) if len(argv) > 1 else 5
    cap = int(argv[2]) if len(argv) > 2 else 5
    threads = int(argv[3]) if len(argv) > 3 else 1
    print("n,cap,threads,entries,seconds")
    for n in range(1, top + 1):
        t = time.perf_counter()
        table = chi_table(n, cap, cap, threads=threads)
        print(f"{n},{cap},{threads},{len(table.entries)},{time.perf_counter() - t:.2f}")


if __name__ == "__main__":
    main(sys.argv)
