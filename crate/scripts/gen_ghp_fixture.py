"""Emit the [[882,48]] generalized hypergraph-product check matrix.

Lifted product over F2[x]/(x^63 - 1) with a 7x7 circulant-shift matrix A and
b(x) = 1 + x + x^6. Only linearly independent rows are written, so the file
header reads `882 48 834`.

usage: python3 scripts/gen_ghp_fixture.py data/ghp_882_48.chk
"""
import sys

import numpy as np

L = 63


def circ(exps):
    m = np.zeros((L, L), dtype=np.uint8)
    for e in exps:
        for i in range(L):
            m[i, (i + e) % L] ^= 1
    return m


def independent_rows(h):
    basis = []  # (pivot, row)
    keep = []
    for idx, row in enumerate(h):
        r = row.copy()
        for piv, b in basis:
            if r[piv]:
                r ^= b
        nz = np.flatnonzero(r)
        if len(nz):
            basis.append((nz[0], r))
            keep.append(idx)
    return h[keep]


def main(out):
    first = [[27], None, None, [0], [18], [27], [0]]
    a_exp = [first[-i:] + first[:-i] if i else first for i in range(7)]
    zero = np.zeros((L, L), dtype=np.uint8)
    a = np.block([[circ(e) if e is not None else zero for e in row] for row in a_exp])
    b = circ([0, 1, 6])
    hx = np.hstack([a, np.kron(np.eye(7, dtype=np.uint8), b)])
    hz = np.hstack([np.kron(np.eye(7, dtype=np.uint8), b.T), a.T])
    assert not ((hx.astype(int) @ hz.T.astype(int)) % 2).any()
    hx = independent_rows(hx)
    hz = independent_rows(hz)
    n = hx.shape[1]
    m = hx.shape[0] + hz.shape[0]
    k = n - m
    with open(out, "w") as f:
        f.write("# [[882,48]] generalized hypergraph-product code, l=63, b(x)=1+x+x^6\n")
        f.write(f"{n} {k} {m}\n")
        zeros = "0" * n
        for row in hx:
            f.write(" ".join("".join(map(str, row)) + zeros) + "\n")
        for row in hz:
            f.write(" ".join(zeros + "".join(map(str, row))) + "\n")
    print(f"n={n} k={k} m={m}")


if __name__ == "__main__":
    main(sys.argv[1])
