"""Print chi tables for genus one, n = 1..N, and a few diagonal values.

Usage: python3 scripts/tabulate.py [N] [CAP]
"""

import sys

from m1n_chi.genus1 import Engine, table_from_series


def main(argv):
    top = int(argv[1]) if len(argv) > 1 else 4
    cap = int(argv[2]) if len(argv) > 2 else 3
    engine = Engine()
    for n in range(1, top + 1):
        table = table_from_series(engine.x_series(n, cap, cap), n, cap, cap)
        diag = [table[(0, (k,) * n)] for k in range(cap + 1)]
        hodge = [table[(d, (0,) * n)] for d in range(cap + 1)]
        print(f"n={n}: {len(table.entries)} entries")
        print(f"  chi(L^k on every point), k=0..{cap}: {diag}")
        print(f"  chi(H^-d), d=0..{cap}: {hodge}")


if __name__ == "__main__":
    main(sys.argv)
