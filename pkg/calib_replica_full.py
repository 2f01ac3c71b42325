"""Definitive check: full 16-per-site two-replica evolution via Weingarten T.

Evolves vec(A) (x) vec(B) on L=4 sites (16^4 complex amplitudes) with the
exact 256x256 bond average, then contracts Z(x, t).  Completely independent
of the six-state reduction.
"""
import numpy as np
from itertools import product

from voidlab import replica as rp

BLK = {0: 0, 1: 1, 2: 1, 3: 2}
WG1, WG2 = 1.0 / 3.0, -1.0 / 6.0


def moment(i1, j1, i2, j2, i3, j3, i4, j4):
    facs = [(i1, j1, False), (i2, j2, True), (i3, j3, False), (i4, j4, True)]
    for i, j, _ in facs:
        if BLK[i] != BLK[j]:
            return 0.0
    for blk in (0, 2):
        if sum((1 if not c else -1) for i, j, c in facs if BLK[i] == blk) != 0:
            return 0.0
    A = [(i - 1, j - 1) for i, j, c in facs if BLK[i] == 1 and not c]
    B = [(i - 1, j - 1) for i, j, c in facs if BLK[i] == 1 and c]
    if len(A) != len(B):
        return 0.0
    if len(A) == 0:
        return 1.0
    if len(A) == 1:
        (a, b), (c, d) = A[0], B[0]
        return 0.5 if (a == c and b == d) else 0.0
    (a, b), (e, f) = A
    (c, d), (g, h) = B
    return float(
        WG1 * ((a == c) * (e == g) * (b == d) * (f == h) + (a == g) * (e == c) * (b == h) * (f == d))
        + WG2 * ((a == c) * (e == g) * (b == h) * (f == d) + (a == g) * (e == c) * (b == d) * (f == h))
    )


def build_twg():
    T = np.zeros((256, 256))
    for idx in product(range(4), repeat=8):
        i1, i2, i3, i4, j1, j2, j3, j4 = idx
        m = moment(i1, j1, i2, j2, i3, j3, i4, j4)
        if m:
            T[((i1 * 4 + i2) * 4 + i3) * 4 + i4, ((j1 * 4 + j2) * 4 + j3) * 4 + j4] = m
    return T


def site_vec(op_pair):
    a, b = op_pair
    return np.einsum("ab,cd->abcd", a, b).reshape(16)


def to_site_layout(T):
    """Permute the bond average from (A-row, A-col, B-row, B-col) two-site
    indices into the (site_x 16) (x) (site_y 16) layout."""
    t = T.reshape((2,) * 16)
    perm = [0, 2, 4, 6, 1, 3, 5, 7]
    t = np.transpose(t, perm + [8 + p for p in perm])
    return t.reshape(256, 256)


def main():
    L = 4
    T = to_site_layout(build_twg())
    # per-site vectors: 16-dim; chain state: (16,)*L
    eye = np.eye(2, dtype=complex)
    ident = site_vec((eye, eye))
    sp_sm = site_vec(rp.local_operator_pair(4))
    vecs = [sp_sm if x == 0 else ident for x in range(L)]
    state = vecs[0]
    for v in vecs[1:]:
        state = np.multiply.outer(state, v)

    T4 = T.reshape(16, 16, 16, 16)

    def apply_bond(s, i, j):
        nd = s.ndim
        moved = np.moveaxis(s, (i, j), (nd - 2, nd - 1))
        shp = moved.shape
        out = moved.reshape(-1, 256) @ T.reshape(256, 256).T
        return np.moveaxis(out.reshape(shp), (nd - 2, nd - 1), (i, j))

    bras = []
    for x in range(L):
        v = [site_vec(rp.local_operator_pair(4)) if s == x else ident for s in range(L)]
        bras.append(v)

    def contract(s, bra_vecs):
        out = s
        for axis in range(L - 1, -1, -1):
            out = np.tensordot(out, bra_vecs[axis].conj(), axes=([axis], [0]))
        return complex(out)

    for t in range(0, 4):
        z = np.array([contract(state, bras[x]) for x in range(L)]).real / 4.0**L
        print(f"t={t}: Z_full = {np.round(z, 6)}")
        # one period: even bonds (0,1),(2,3) then odd bond (1,2)
        for (i, j) in [(0, 1), (2, 3)]:
            state = apply_bond(state, i, j)
        state = apply_bond(state, 1, 2)


if __name__ == "__main__":
    main()
