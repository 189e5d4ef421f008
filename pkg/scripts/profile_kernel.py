#!/usr/bin/env python3
"""Timing snapshot of the exact kernels: derivation dimensions, witness
verification, and conjugated fingerprints.  Useful when touching the scalar
tower or the elimination routines.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from nilcert import catalog, files  # noqa: E402
from nilcert.degeneration import verify  # noqa: E402
from nilcert.derivations import derivation_dimension  # noqa: E402
from nilcert.sampling import derive_rng, random_invertible  # noqa: E402


def timed(label, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{label:<40} {time.perf_counter() - t0:7.2f} s")
    return out


def main():
    timed("catalog derivation dimensions (25x)",
          lambda: [derivation_dimension(catalog.get(n).table)
                   for n in catalog.names()])
    timed("all witnesses verified (44x)",
          lambda: [verify(w) for _, w in files.load_all_witnesses()])

    rng = derive_rng(0, "profile")
    table = catalog.get("A_08").table
    base = catalog.fingerprint(table)

    def conjugated_fingerprints():
        for _ in range(10):
            m = random_invertible(rng, 5)
            assert catalog.fingerprint(table.change_basis(m)) == base
    timed("10 conjugated fingerprints", conjugated_fingerprints)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
