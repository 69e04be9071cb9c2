"""Write fixtures/deg512.json and fixtures/deg512_perm.json.

The group is C7^3 : P inside Gamma(2^3) wr C3 acting on F_2^9, where P is
the order-27 group generated by the Frobenius twists (phi, phi^2, 1) and
the cyclic block shift.  Its order is 7^3 * 27 = 9261, it is irreducible,
and no vector has an abelian centralizer.

Usage: python scripts/build_deg512_fixture.py [outdir]
"""

import json
import sys
from pathlib import Path

from primsolv.constructions import export_group, semilinear_matrix
from primsolv.matgroup import MatrixGroup, block_diagonal, identity_matrix


def deg512_group():
    I = identity_matrix(3)
    w = semilinear_matrix(2, 3, 0, 1)
    phi = semilinear_matrix(2, 3, 1, 0)
    phi2 = semilinear_matrix(2, 3, 2, 0)
    shift = [[0] * 9 for _ in range(9)]
    for i in range(3):
        for t in range(3):
            shift[i * 3 + t][((i + 1) % 3) * 3 + t] = 1
    return MatrixGroup(2, 9, [block_diagonal([w, I, I]), block_diagonal([phi, phi2, I]), shift])


def main(outdir="fixtures"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    M = deg512_group()
    label = "deg512-odd"
    (out / "deg512.json").write_text(json.dumps(export_group(M, label)) + "\n")
    data = export_group(M.perm_group, label + "-perm")
    (out / "deg512_perm.json").write_text(json.dumps(data) + "\n")


if __name__ == "__main__":
    main(*sys.argv[1:])
