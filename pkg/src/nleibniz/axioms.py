"""Decision procedures for the identities of n-Leibniz and metric Lie structures.

Every check scans all basis tuples in lexicographic order.  The identities
are multilinear, so a pass on the basis is a proof for all vectors; on
failure the report carries the lexicographically first failing tuple with
both sides of the identity evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import kernels, linalg
from .linalg import ZERO, RatMatrix, basis_vector, render_rational
from .model import (
    LieTripleData,
    MetricLieAlgebra,
    NLeibnizAlgebra,
    SymTensor,
    ensure_enumerable,
    eval_bracket,
    eval_S,
    s_kernel,
)


@dataclass(frozen=True)
class Report:
    check: str
    passed: bool
    witness: dict | None
    tuples_scanned: int

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"check": self.check, "pass": self.passed,
                "witness": self.witness, "tuples_scanned": self.tuples_scanned}


def _vec_json(v) -> list:
    return [render_rational(x) for x in v]


def _digits(t: int, base: int, length: int) -> tuple:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        t, out[i] = divmod(t, base)
    return tuple(out)


def _replace(vs: Sequence, i: int, x) -> list:
    out = list(vs)
    out[i] = x
    return out


# -- vector-level sides of each identity ------------------------------------

def fundamental_sides(A: NLeibnizAlgebra, us: Sequence, vs: Sequence) -> tuple:
    """Both sides of ``[u, [v_1..v_n]] = sum_i [v_1, .., [u, v_i], .., v_n]``."""
    lhs = eval_bracket(A, *us, eval_bracket(A, *vs))
    rhs = linalg.zero_vector(A.dim)
    for i in range(A.arity):
        rhs = linalg.vadd(rhs, eval_bracket(A, *_replace(vs, i, eval_bracket(A, *us, vs[i]))))
    return lhs, rhs


def invariance_value(S: SymTensor, op, ws: Sequence):
    """``sum_i S(w_1, .., op(w_i), .., w_k)``; ``op`` is a callable on vectors."""
    total = ZERO
    for i in range(S.order):
        total += eval_S(S, *_replace(ws, i, op(ws[i])))
    return total


def unitarity_value(A: NLeibnizAlgebra, us: Sequence, vs: Sequence):
    return invariance_value(A.form, lambda w: eval_bracket(A, *us, w), vs)


def symmetry_sides(A: NLeibnizAlgebra, us: Sequence, vs: Sequence) -> tuple:
    lhs = eval_S(A.form, eval_bracket(A, *us, vs[0]), *vs[1:])
    rhs = eval_S(A.form, eval_bracket(A, *vs, us[0]), *us[1:])
    return lhs, rhs


def cyclic_value(A: NLeibnizAlgebra, vs: Sequence) -> tuple:
    """``sum_{i<n} [v_i, v_1, .., ^v_i, .., v_{n-1}, v_n]``."""
    n = A.arity
    total = linalg.zero_vector(A.dim)
    for i in range(n - 1):
        args = [vs[i]] + list(vs[:i]) + list(vs[i + 1:])
        total = linalg.vadd(total, eval_bracket(A, *args))
    return total


# -- n-Leibniz algebra checks ----------------------------------------------

def d_operator_table(A: NLeibnizAlgebra) -> list:
    """Flat row-major entries of D(u) for every basis (n-1)-tuple u, lexicographic."""
    d = A.dim
    consts = A.dense_constants()
    nops = d ** (A.arity - 1)
    return [consts[(u * d + l) * d + k] for u in range(nops) for k in range(d) for l in range(d)]


def _basis(A_dim, idx):
    return [basis_vector(A_dim, i) for i in idx]


def check_fundamental_identity(A: NLeibnizAlgebra, force_python: bool = False) -> Report:
    d, n = A.dim, A.arity
    ensure_enumerable(d, n - 1)
    total = d ** (2 * n - 1)
    f = kernels.first_derivation_failure(
        d_operator_table(A), d ** (n - 1), A.dense_constants(), d, n, force_python)
    if f < 0:
        return Report("fundamental_identity", True, None, total)
    idx = _digits(f, d, 2 * n - 1)
    vecs = _basis(d, idx)
    lhs, rhs = fundamental_sides(A, vecs[:n - 1], vecs[n - 1:])
    return Report("fundamental_identity", False,
                  {"tuple": list(idx), "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}, f + 1)


def check_unitarity(A: NLeibnizAlgebra, force_python: bool = False) -> Report:
    d, n = A.dim, A.arity
    ensure_enumerable(d, n - 1)
    total = d ** (2 * (n - 1))
    f = kernels.first_invariance_failure(
        d_operator_table(A), d ** (n - 1), A.form.dense(), d, n - 1, force_python)
    if f < 0:
        return Report("unitarity", True, None, total)
    idx = _digits(f, d, 2 * (n - 1))
    vecs = _basis(d, idx)
    value = unitarity_value(A, vecs[:n - 1], vecs[n - 1:])
    return Report("unitarity", False,
                  {"tuple": list(idx), "lhs": render_rational(value), "rhs": "0"}, f + 1)


def check_symmetry(A: NLeibnizAlgebra, force_python: bool = False) -> Report:
    d, n = A.dim, A.arity
    ensure_enumerable(d, n - 1)
    total = d ** (2 * (n - 1))
    f = kernels.first_symmetry_failure(A.dense_constants(), A.form.dense(), d, n, force_python)
    if f < 0:
        return Report("symmetry", True, None, total)
    idx = _digits(f, d, 2 * (n - 1))
    vecs = _basis(d, idx)
    lhs, rhs = symmetry_sides(A, vecs[:n - 1], vecs[n - 1:])
    return Report("symmetry", False,
                  {"tuple": list(idx), "lhs": render_rational(lhs), "rhs": render_rational(rhs)},
                  f + 1)


def check_cyclic_sum(A: NLeibnizAlgebra, force_python: bool = False) -> Report:
    d, n = A.dim, A.arity
    total = d ** n
    f = kernels.first_cyclic_failure(A.dense_constants(), d, n, force_python)
    if f < 0:
        return Report("cyclic_sum", True, None, total)
    idx = _digits(f, d, n)
    value = cyclic_value(A, _basis(d, idx))
    return Report("cyclic_sum", False,
                  {"tuple": list(idx), "lhs": _vec_json(value), "rhs": _vec_json([ZERO] * d)},
                  f + 1)


def check_nondegenerate(S: SymTensor) -> Report:
    kernel = s_kernel(S)
    if not kernel:
        return Report("s_nondegenerate", True, None, S.dim)
    return Report("s_nondegenerate", False, {"kernel_vector": _vec_json(kernel[0])}, S.dim)


def check_algebra(A: NLeibnizAlgebra) -> list:
    """Every check applicable to an algebra, in a fixed order."""
    return [
        check_fundamental_identity(A),
        check_unitarity(A),
        check_symmetry(A),
        check_nondegenerate(A.form),
        check_cyclic_sum(A),
    ]


def is_generalized_metric(A: NLeibnizAlgebra) -> tuple:
    """``(ok, first_failing_report)`` over the defining axioms."""
    for rep in (check_fundamental_identity(A), check_unitarity(A),
                check_symmetry(A), check_nondegenerate(A.form)):
        if not rep.passed:
            return False, rep
    return True, None


# -- metric Lie algebra and representation checks --------------------------

def check_metric_lie(L: MetricLieAlgebra) -> Report:
    """Antisymmetry, Jacobi, symmetry and non-degeneracy of omega, ad-invariance."""
    m = L.dim
    scanned = 0
    # both orders of a pair may be stored; they must be negatives, and [x, x] = 0
    for (a, b), out in L.lie.items():
        scanned += 1
        stored = dict(out)
        if a == b or (a > b and (b, a) in L.lie):
            lhs = tuple(stored.get(c, ZERO) for c in range(m))
            rhs = tuple(-x for x in L.on_basis(b, a)) if a != b else linalg.zero_vector(m)
            if lhs != rhs:
                return Report("metric_lie", False, {"condition": "antisymmetry", "tuple": [a, b],
                              "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}, scanned)
    basis = [basis_vector(m, a) for a in range(m)]
    for a, b, c in product(range(m), repeat=3):
        scanned += 1
        x, y, z = basis[a], basis[b], basis[c]
        total = linalg.vadd(linalg.vadd(L.bracket(x, L.bracket(y, z)), L.bracket(y, L.bracket(z, x))),
                            L.bracket(z, L.bracket(x, y)))
        if any(total):
            return Report("metric_lie", False, {"condition": "jacobi", "tuple": [a, b, c],
                          "lhs": _vec_json(total), "rhs": _vec_json([ZERO] * m)}, scanned)
    w = L.omega
    for a in range(m):
        for b in range(a + 1, m):
            scanned += 1
            if w[a, b] != w[b, a]:
                return Report("metric_lie", False, {"condition": "omega_symmetric", "tuple": [a, b],
                              "lhs": render_rational(w[a, b]), "rhs": render_rational(w[b, a])}, scanned)
    kernel = linalg.nullspace(w)
    if kernel:
        return Report("metric_lie", False, {"condition": "omega_nondegenerate",
                      "kernel_vector": _vec_json(kernel[0])}, scanned)
    for a, b, c in product(range(m), repeat=3):
        scanned += 1
        x, y, z = basis[a], basis[b], basis[c]
        lhs = L.form(L.bracket(x, y), z)
        rhs = -L.form(y, L.bracket(x, z))
        if lhs != rhs:
            return Report("metric_lie", False, {"condition": "ad_invariance", "tuple": [a, b, c],
                          "lhs": render_rational(lhs), "rhs": render_rational(rhs)}, scanned)
    return Report("metric_lie", True, None, scanned)


def check_rep_homomorphism(T: LieTripleData) -> Report:
    m = T.g.dim
    scanned = 0
    for a, b in product(range(m), repeat=2):
        scanned += 1
        lhs = T.rho_of(T.g.on_basis(a, b))
        rhs = linalg.commutator(T.rho[a], T.rho[b])
        if lhs != rhs:
            return Report("rep_homomorphism", False, {"tuple": [a, b],
                          "lhs": [_vec_json(r) for r in lhs.to_rows()],
                          "rhs": [_vec_json(r) for r in rhs.to_rows()]}, scanned)
    return Report("rep_homomorphism", True, None, scanned)


def check_rep_faithful(T: LieTripleData) -> Report:
    m = T.g.dim
    if m == 0:
        return Report("rep_faithful", True, None, 0)
    stacked = RatMatrix.from_columns([r.vec() for r in T.rho], T.module_dim ** 2)
    kernel = linalg.nullspace(stacked)
    if kernel:
        return Report("rep_faithful", False, {"kernel_vector": _vec_json(kernel[0])}, m)
    return Report("rep_faithful", True, None, m)


def check_rep_invariance(T: LieTripleData, force_python: bool = False) -> Report:
    d, order, m = T.module_dim, T.arity - 1, T.g.dim
    ensure_enumerable(d, order)
    nw = d ** order
    ops = [x for r in T.rho for x in r.vec()]
    f = kernels.first_invariance_failure(ops, m, T.form.dense(), d, order, force_python)
    if f < 0:
        return Report("rep_invariance", True, None, m * nw)
    a, t = divmod(f, nw)
    idx = _digits(t, d, order)
    value = invariance_value(T.form, T.rho[a].apply, _basis(d, idx))
    return Report("rep_invariance", False,
                  {"tuple": [a, *idx], "lhs": render_rational(value), "rhs": "0"}, f + 1)


def check_orthogonal_rep(T: LieTripleData) -> Report:
    """Homomorphism, faithfulness and generalized orthogonality of ``rho``."""
    scanned = 0
    for rep in (check_rep_homomorphism(T), check_rep_faithful(T), check_rep_invariance(T)):
        scanned += rep.tuples_scanned
        if not rep.passed:
            return Report("orthogonal_rep", False, {"condition": rep.check, **rep.witness}, scanned)
    return Report("orthogonal_rep", True, None, scanned)


def check_triple(T: LieTripleData) -> list:
    return [check_metric_lie(T.g), check_nondegenerate(T.form), check_orthogonal_rep(T)]


def is_lie_triple(T: LieTripleData) -> tuple:
    for rep in check_triple(T):
        if not rep.passed:
            return False, rep
    return True, None
