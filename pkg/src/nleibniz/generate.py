"""Builders for the bundled corpus and for property tests.

Every builder returns model objects; :func:`write_corpus` serializes them
with the library's own serializer so the shipped files round-trip
byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from pathlib import Path

from . import linalg
from .correspondence import lift, reconstruct
from .linalg import ONE, ZERO, RatMatrix, commutator
from .model import (
    LieTripleData,
    MetricLieAlgebra,
    NLeibnizAlgebra,
    SymTensor,
    serialize_algebra,
    serialize_triple,
)

CORPUS_DIR = Path(__file__).parent / "corpus"


def _perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def a4_euclidean() -> NLeibnizAlgebra:
    """The simple 3-Lie algebra on Q^4: ``[e_i, e_j, e_k] = eps_ijkl e_l``, Euclidean S."""
    bracket = {}
    for p in permutations(range(4)):
        bracket[p[:3]] = ((p[3], Fraction(_perm_sign(p))),)
    return NLeibnizAlgebra(3, 4, bracket, SymTensor.euclidean(4))


def abelian(arity: int, dim: int, form: SymTensor | None = None) -> NLeibnizAlgebra:
    if form is None:
        form = SymTensor(dim, arity - 1, {(i,) * (arity - 1): ONE for i in range(dim)})
    return NLeibnizAlgebra(arity, dim, {}, form)


def lie_from_matrices(mats, omega: RatMatrix | None = None) -> MetricLieAlgebra:
    """Lie constants of a linearly independent, commutator-closed set of matrices."""
    m = len(mats)
    vecs = [x.vec() for x in mats]
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    coords = linalg.coordinates(vecs, [commutator(mats[a], mats[b]).vec() for a, b in pairs])
    lie = {p: tuple((c, x) for c, x in enumerate(v) if x) for p, v in zip(pairs, coords)}
    return MetricLieAlgebra(m, lie, omega if omega is not None else RatMatrix.identity(m))


def so_generators(p: int) -> list:
    """``E_ij = e_j e_i^T - e_i e_j^T`` for ``i < j``, lexicographic."""
    out = []
    for i in range(p):
        for j in range(i + 1, p):
            rows = [[ZERO] * p for _ in range(p)]
            rows[j][i] = ONE
            rows[i][j] = -ONE
            out.append(RatMatrix.from_rows(rows, p))
    return out


def so_triple(p: int) -> LieTripleData:
    """so(p) on (Q^p, Euclidean) with omega = -tr(XY)/2, the identity on E_ij."""
    mats = so_generators(p)
    return LieTripleData(3, lie_from_matrices(mats), p, tuple(mats), SymTensor.euclidean(p))


def _diag(entries) -> RatMatrix:
    return RatMatrix.diagonal([Fraction(x) for x in entries])


def xyz_triple() -> LieTripleData:
    """n = 4, S = xyz on Q^3, g = traceless diagonal matrices (abelian)."""
    mats = [_diag([1, -1, 0]), _diag([0, 1, -1])]
    S = SymTensor(3, 3, {(0, 1, 2): ONE})
    return LieTripleData(4, lie_from_matrices(mats), 3, tuple(mats), S)


def x2y_triple() -> LieTripleData:
    """n = 4, S = x^2 y on Q^2, g spanned by diag(1, -2)."""
    S = SymTensor(2, 3, {(0, 0, 1): ONE})
    mats = [_diag([1, -2])]
    return LieTripleData(4, lie_from_matrices(mats), 2, tuple(mats), S)


def _random_invertible(rng: random.Random, size: int, spread: int = 2) -> RatMatrix:
    while True:
        m = RatMatrix.from_rows(
            [[Fraction(rng.randint(-spread, spread)) for _ in range(size)] for _ in range(size)], size)
        if linalg.rank(m) == size:
            return m


def change_of_basis(T: LieTripleData, P: RatMatrix, Q: RatMatrix) -> LieTripleData:
    """Same triple after ``v -> P v`` on V and new Lie basis ``g'_a = sum_b Q[b, a] g_b``."""
    m = T.g.dim
    P_inv = linalg.inverse(P)
    Q_inv = linalg.inverse(Q)
    cols = [Q.col(a) for a in range(m)]
    lie = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = Q_inv.apply(T.g.bracket(cols[a], cols[b]))
            if any(v):
                lie[(a, b)] = tuple((c, x) for c, x in enumerate(v) if x)
    omega = Q.transpose() @ T.g.omega @ Q
    rho = tuple(P @ T.rho_of(cols[a]) @ P_inv for a in range(m))
    return LieTripleData(T.arity, MetricLieAlgebra(m, lie, omega), T.module_dim, rho,
                         T.form.transformed(P_inv))


def random_triple(seed: int, base: LieTripleData | None = None) -> LieTripleData:
    """A valid triple: ``base`` (so(3) by default) under random rational changes of basis."""
    rng = random.Random(seed)
    T = base if base is not None else so_triple(3)
    P = _random_invertible(rng, T.module_dim)
    Q = _random_invertible(rng, T.g.dim)
    return change_of_basis(T, P, Q)


# -- deliberately broken inputs ------------------------------------------------

def broken_fundamental() -> NLeibnizAlgebra:
    A = a4_euclidean()
    bracket = dict(A.bracket)
    bracket[(0, 1, 2)] = ((3, Fraction(2)),)
    return NLeibnizAlgebra(3, 4, bracket, A.form)


def broken_unitarity() -> NLeibnizAlgebra:
    A = a4_euclidean()
    S = SymTensor(4, 2, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 2})
    return NLeibnizAlgebra(3, 4, A.bracket, S)


def broken_symmetry() -> NLeibnizAlgebra:
    A = a4_euclidean()
    bracket = {k: v for k, v in A.bracket.items() if k != (1, 2, 3)}
    return NLeibnizAlgebra(3, 4, bracket, A.form)


def broken_nondegenerate() -> NLeibnizAlgebra:
    return abelian(3, 2, SymTensor(2, 2, {(0, 0): ONE}))


def broken_cyclic() -> NLeibnizAlgebra:
    """A Leibniz bracket on Q^2 that is a derivation of itself but not cyclic.

    ``[e1, e1, e1] = e2``: both sides of the fundamental identity vanish
    because e2 acts trivially, while the cyclic sum at (e1, e1, e1) is 2 e2.
    """
    return NLeibnizAlgebra(3, 2, {(0, 0, 0): ((1, ONE),)}, SymTensor.euclidean(2))


def nonfaithful_triple() -> LieTripleData:
    T = so_triple(3)
    zero = RatMatrix.zeros(3, 3)
    return LieTripleData(3, T.g, 3, (zero,) * 3, T.form)


def degenerate_omega_triple() -> LieTripleData:
    T = so_triple(3)
    return LieTripleData(3, MetricLieAlgebra(3, T.g.lie, RatMatrix.zeros(3, 3)), 3, T.rho, T.form)


def non_orthogonal_triple() -> LieTripleData:
    T = so_triple(4)
    S = SymTensor(4, 2, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 2})
    return LieTripleData(3, T.g, 4, T.rho, S)


# -- corpus ---------------------------------------------------------------------

VALID_ALGEBRAS = {
    "a4_euclidean": a4_euclidean,
    "abelian_n2_d1": lambda: abelian(2, 1),
    "abelian_n3_d2": lambda: abelian(3, 2),
    "abelian_n3_d3": lambda: abelian(3, 3),
    "abelian_n3_d4": lambda: abelian(3, 4),
    "abelian_n4_d2": lambda: abelian(4, 2, x2y_triple().form),
    "so3_reconstructed": lambda: reconstruct(so_triple(3)),
    "n4_xyz_d3": lambda: reconstruct(xyz_triple()),
    "n4_x2y_d2": lambda: reconstruct(x2y_triple()),
}

BROKEN_ALGEBRAS = {
    "broken_fundamental": broken_fundamental,
    "broken_unitarity": broken_unitarity,
    "broken_symmetry": broken_symmetry,
    "broken_nondegenerate": broken_nondegenerate,
    "broken_cyclic": broken_cyclic,
}

VALID_TRIPLES = {
    "so3_euclidean_triple": lambda: so_triple(3),
    "so4_euclidean_triple": lambda: so_triple(4),
    "n4_xyz_triple": xyz_triple,
    "n4_x2y_triple": x2y_triple,
    "a4_lift_triple": lambda: lift(a4_euclidean()).triple,
    "random_triple_s1": lambda: random_triple(1),
    "random_triple_s2": lambda: random_triple(2, xyz_triple()),
}

BROKEN_TRIPLES = {
    "broken_triple_nonfaithful": nonfaithful_triple,
    "broken_triple_degenerate_omega": degenerate_omega_triple,
    "broken_triple_not_orthogonal": non_orthogonal_triple,
}


def corpus_files() -> dict:
    """File name -> serialized text for every corpus entry."""
    out = {}
    for table in (VALID_ALGEBRAS, BROKEN_ALGEBRAS):
        for name, build in table.items():
            out[f"{name}.json"] = serialize_algebra(build())
    for table in (VALID_TRIPLES, BROKEN_TRIPLES):
        for name, build in table.items():
            out[f"{name}.json"] = serialize_triple(build())
    return out


def write_corpus(directory: Path = CORPUS_DIR) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(corpus_files().items()):
        (directory / name).write_text(text)
        written.append(name)
    return written


if __name__ == "__main__":
    for name in write_corpus():
        print(name)
