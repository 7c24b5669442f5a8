"""Generalized orthogonal derivations and automorphisms, and their transfer.

Derivations form a linear space and are solved for.  Automorphisms form a
variety; candidates are only checked.  Each transfer function re-verifies
its preconditions (a failure there is an ordinary failed report) and then
the conclusions, which cannot fail once the preconditions hold; a failing
conclusion raises :class:`InternalInvariantViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

from . import linalg
from .axioms import Report, _vec_json, invariance_value
from .correspondence import FaulknerMap, LiftResult, basis_tuples, reconstruct
from .errors import ConsistencyError, Inconsistent, InternalInvariantViolation
from .linalg import ONE, ZERO, EchelonSpan, RatMatrix, basis_vector, commutator, render_rational
from .model import LieTripleData, NLeibnizAlgebra, ensure_enumerable, eval_bracket, eval_S


# -- derivations ---------------------------------------------------------------

@dataclass(frozen=True)
class DerivationSpace:
    algebra_dim: int
    basis: tuple
    constraint_rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, op: RatMatrix) -> bool:
        span = EchelonSpan(self.algebra_dim ** 2)
        for b in self.basis:
            span.add(b.vec())
        return op.vec() in span

    def is_closed(self) -> bool:
        """Commutators of basis elements stay in the span."""
        return all(self.contains(commutator(a, b))
                   for i, a in enumerate(self.basis) for b in self.basis[i + 1:])

    def to_json(self) -> dict:
        return {"dimension": self.dimension,
                "constraint_rank": self.constraint_rank,
                "basis": [[[render_rational(x) for x in b.row(i)] for i in range(b.rows)]
                          for b in self.basis]}


def derivation_constraints(A: NLeibnizAlgebra):
    """Yield constraint rows on the d*d entries of X (index ``k*d + l`` for X[k, l]).

    Rows come in lexicographic tuple order: first the derivation law on every
    basis n-tuple and output coordinate, then the invariance of S on every
    basis (n-1)-tuple.
    """
    d, n, S = A.dim, A.arity, A.form
    for v in basis_tuples(d, n):
        out = A.on_basis(v)
        images = []
        for i in range(n):
            for j in range(d):
                images.append((i, j, A.on_basis(v[:i] + (j,) + v[i + 1:])))
        for k in range(d):
            row = [ZERO] * (d * d)
            for j, c in enumerate(out):
                if c:
                    row[k * d + j] += c
            for i, j, img in images:
                if img[k]:
                    row[j * d + v[i]] -= img[k]
            yield row
    for w in basis_tuples(d, n - 1):
        row = [ZERO] * (d * d)
        for i in range(n - 1):
            for j in range(d):
                c = S.at(w[:i] + (j,) + w[i + 1:])
                if c:
                    row[j * d + w[i]] += c
        yield row


def solve_derivations(A: NLeibnizAlgebra) -> DerivationSpace:
    """All generalized orthogonal derivations of ``A`` as the canonical RREF nullspace."""
    d = A.dim
    ensure_enumerable(d, A.arity - 1)
    span = EchelonSpan(d * d)
    for row in derivation_constraints(A):
        if any(row):
            span.add(row)
    # the row-reduced span has the same RREF as the full stacked system
    system = RatMatrix.from_rows(span.rows(), d * d)
    kernel = linalg.nullspace(system)
    basis = tuple(RatMatrix(d, d, v) for v in kernel)
    return DerivationSpace(d, basis, len(span))


def check_orthogonal_derivation(A: NLeibnizAlgebra, X: RatMatrix) -> Report:
    """Direct evaluation of both defining laws; independent of the constraint rows."""
    d, n = A.dim, A.arity
    e = [basis_vector(d, i) for i in range(d)]
    scanned = 0
    for v in basis_tuples(d, n):
        scanned += 1
        vs = [e[i] for i in v]
        lhs = X.apply(eval_bracket(A, *vs))
        rhs = linalg.zero_vector(d)
        for i in range(n):
            args = list(vs)
            args[i] = X.apply(vs[i])
            rhs = linalg.vadd(rhs, eval_bracket(A, *args))
        if lhs != rhs:
            return Report("orthogonal_derivation", False, {
                "condition": "derivation", "tuple": list(v),
                "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}, scanned)
    for w in basis_tuples(d, n - 1):
        scanned += 1
        value = invariance_value(A.form, X.apply, [e[i] for i in w])
        if value:
            return Report("orthogonal_derivation", False, {
                "condition": "form_invariance", "tuple": list(w),
                "lhs": render_rational(value), "rhs": "0"}, scanned)
    return Report("orthogonal_derivation", True, None, scanned)


# -- automorphisms -------------------------------------------------------------

def check_automorphism(A: NLeibnizAlgebra, phi: RatMatrix) -> Report:
    """Invertibility, bracket equivariance and preservation of S on all basis tuples."""
    d, n = A.dim, A.arity
    if phi.shape != (d, d) or linalg.rank(phi) != d:
        return Report("automorphism", False, {"condition": "invertible"}, 0)
    e = [basis_vector(d, i) for i in range(d)]
    images = [phi.col(i) for i in range(d)]
    scanned = 0
    for v in basis_tuples(d, n):
        scanned += 1
        lhs = phi.apply(A.on_basis(v))
        rhs = eval_bracket(A, *(images[i] for i in v))
        if lhs != rhs:
            return Report("automorphism", False, {
                "condition": "bracket", "tuple": list(v),
                "lhs": _vec_json(lhs), "rhs": _vec_json(rhs)}, scanned)
    for w in basis_tuples(d, n - 1):
        scanned += 1
        lhs = eval_S(A.form, *(images[i] for i in w))
        rhs = eval_S(A.form, *(e[i] for i in w))
        if lhs != rhs:
            return Report("automorphism", False, {
                "condition": "form", "tuple": list(w),
                "lhs": render_rational(lhs), "rhs": render_rational(rhs)}, scanned)
    return Report("automorphism", True, None, scanned)


def automorphism_candidates(dim: int, limit: int = 64) -> list:
    """Identity, minus identity, then signed permutation matrices in a fixed order."""
    out = [RatMatrix.identity(dim), -RatMatrix.identity(dim)]
    seen = set(out)
    for perm in permutations(range(dim)):
        for signs in product((1, -1), repeat=dim):
            if len(out) >= limit:
                return out
            cols = [tuple(ONE * signs[j] if i == perm[j] else ZERO for i in range(dim))
                    for j in range(dim)]
            m = RatMatrix.from_columns(cols, dim)
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out[:limit]


# -- verification of pairs on a Lie triple data ---------------------------------

def _fail(name, stage, condition, scanned, **extra):
    return Report(name, False, {"stage": stage, "condition": condition, **extra}, scanned)


def _matrix_json(m: RatMatrix) -> list:
    return [_vec_json(m.row(i)) for i in range(m.rows)]


def verify_triple_derivation(T: LieTripleData, d_g: RatMatrix, d_V: RatMatrix,
                             name: str = "triple_derivation", stage: str = "precondition") -> Report:
    """Orthogonal Lie derivation ``d_g``, intertwining with ``rho``, and S-invariance of ``d_V``."""
    g, m, d = T.g, T.g.dim, T.module_dim
    if d_g.shape != (m, m) or d_V.shape != (d, d):
        return _fail(name, stage, "shape", 0)
    cols = [d_g.col(a) for a in range(m)]
    e = [basis_vector(m, a) for a in range(m)]
    scanned = 0
    for a in range(m):
        for b in range(a + 1, m):
            scanned += 1
            lhs = d_g.apply(g.on_basis(a, b))
            rhs = linalg.vadd(g.bracket(cols[a], e[b]), g.bracket(e[a], cols[b]))
            if lhs != rhs:
                return _fail(name, stage, "lie_derivation", scanned, tuple=[a, b],
                             lhs=_vec_json(lhs), rhs=_vec_json(rhs))
    skew = d_g.transpose() @ g.omega + g.omega @ d_g
    scanned += 1
    if not skew.is_zero():
        a, b = next((a, b) for a in range(m) for b in range(m) if skew[a, b])
        return _fail(name, stage, "omega_orthogonal", scanned, tuple=[a, b],
                     lhs=render_rational(skew[a, b]), rhs="0")
    for a in range(m):
        scanned += 1
        lhs = d_V @ T.rho[a]
        rhs = T.rho_of(cols[a]) + T.rho[a] @ d_V
        if lhs != rhs:
            return _fail(name, stage, "intertwining", scanned, tuple=[a],
                         lhs=_matrix_json(lhs), rhs=_matrix_json(rhs))
    ev = [basis_vector(d, i) for i in range(d)]
    for w in basis_tuples(d, T.arity - 1):
        scanned += 1
        value = invariance_value(T.form, d_V.apply, [ev[i] for i in w])
        if value:
            return _fail(name, stage, "form_invariance", scanned, tuple=list(w),
                         lhs=render_rational(value), rhs="0")
    return Report(name, True, None, scanned)


def verify_triple_automorphism(T: LieTripleData, phi_g: RatMatrix, phi_V: RatMatrix,
                               name: str = "triple_automorphism", stage: str = "precondition") -> Report:
    """Orthogonal Lie automorphism ``phi_g``, equivariance with ``rho``, S preserved by ``phi_V``."""
    g, m, d = T.g, T.g.dim, T.module_dim
    if phi_g.shape != (m, m) or phi_V.shape != (d, d):
        return _fail(name, stage, "shape", 0)
    if linalg.rank(phi_g) != m:
        return _fail(name, stage, "lie_invertible", 0)
    if linalg.rank(phi_V) != d:
        return _fail(name, stage, "module_invertible", 0)
    cols = [phi_g.col(a) for a in range(m)]
    scanned = 0
    for a in range(m):
        for b in range(a + 1, m):
            scanned += 1
            lhs = phi_g.apply(g.on_basis(a, b))
            rhs = g.bracket(cols[a], cols[b])
            if lhs != rhs:
                return _fail(name, stage, "lie_automorphism", scanned, tuple=[a, b],
                             lhs=_vec_json(lhs), rhs=_vec_json(rhs))
    pulled = phi_g.transpose() @ g.omega @ phi_g
    scanned += 1
    if pulled != g.omega:
        a, b = next((a, b) for a in range(m) for b in range(m) if pulled[a, b] != g.omega[a, b])
        return _fail(name, stage, "omega_orthogonal", scanned, tuple=[a, b],
                     lhs=render_rational(pulled[a, b]), rhs=render_rational(g.omega[a, b]))
    for a in range(m):
        scanned += 1
        lhs = phi_V @ T.rho[a]
        rhs = T.rho_of(cols[a]) @ phi_V
        if lhs != rhs:
            return _fail(name, stage, "equivariance", scanned, tuple=[a],
                         lhs=_matrix_json(lhs), rhs=_matrix_json(rhs))
    images = [phi_V.col(i) for i in range(d)]
    ev = [basis_vector(d, i) for i in range(d)]
    for w in basis_tuples(d, T.arity - 1):
        scanned += 1
        lhs = eval_S(T.form, *(images[i] for i in w))
        rhs = eval_S(T.form, *(ev[i] for i in w))
        if lhs != rhs:
            return _fail(name, stage, "form_preserved", scanned, tuple=list(w),
                         lhs=render_rational(lhs), rhs=render_rational(rhs))
    return Report(name, True, None, scanned)


def _escalate(report: Report) -> None:
    if not report.passed:
        raise InternalInvariantViolation(
            f"{report.check} failed after its preconditions passed: {report.witness}", report)


def _express_all(L: LiftResult, ops: Sequence[RatMatrix]) -> RatMatrix:
    try:
        coords = linalg.coordinates([b.vec() for b in L.basis_ops], [op.vec() for op in ops])
    except Inconsistent as exc:
        raise ConsistencyError(f"transferred operator leaves g: {exc}") from None
    return RatMatrix.from_columns(coords, L.g.dim)


def _source_algebra(L: LiftResult) -> NLeibnizAlgebra:
    return L.algebra if L.algebra is not None else reconstruct(L.triple, check=False)


# -- transfers -----------------------------------------------------------------

def induce_lie_derivation(L: LiftResult, d_V: RatMatrix) -> tuple:
    """``d_g(x) = [d_V, x]`` on ``g = Im D``; returns ``(d_g, report)``.

    ``d_g`` is None when ``d_V`` is not a generalized orthogonal derivation.
    """
    name = "lie_derivation_transfer"
    pre = check_orthogonal_derivation(_source_algebra(L), d_V)
    if not pre.passed:
        return None, _fail(name, "precondition", pre.witness["condition"], pre.tuples_scanned,
                           **{k: v for k, v in pre.witness.items() if k != "condition"})
    d_g = _express_all(L, [commutator(d_V, x) for x in L.basis_ops])
    post = verify_triple_derivation(L.triple, d_g, d_V, name=name, stage="conclusion")
    _escalate(post)
    return d_g, post


def induce_from_triple_derivation(T: LieTripleData, d_g: RatMatrix, d_V: RatMatrix) -> Report:
    """Check that ``d_V`` is a generalized orthogonal derivation of ``reconstruct(T)``."""
    name = "triple_derivation_transfer"
    pre = verify_triple_derivation(T, d_g, d_V, name=name, stage="precondition")
    if not pre.passed:
        return pre
    d, n = T.module_dim, T.arity
    ensure_enumerable(d, n - 1)
    fmap = FaulknerMap(T)
    ev = [basis_vector(d, i) for i in range(d)]
    scanned = pre.tuples_scanned
    for t in basis_tuples(d, n - 1):
        scanned += 1
        vs = [ev[i] for i in t]
        lhs = d_g.apply(fmap.on_basis(t))
        rhs = linalg.zero_vector(T.g.dim)
        for i in range(n - 1):
            args = list(vs)
            args[i] = d_V.apply(vs[i])
            rhs = linalg.vadd(rhs, fmap(*args))
        if lhs != rhs:
            _escalate(_fail(name, "conclusion", "derivation_identity", scanned, tuple=list(t),
                            lhs=_vec_json(lhs), rhs=_vec_json(rhs)))
    post = check_orthogonal_derivation(reconstruct(T, check=False), d_V)
    if not post.passed:
        _escalate(_fail(name, "conclusion", post.witness["condition"], scanned,
                        **{k: v for k, v in post.witness.items() if k != "condition"}))
    return Report(name, True, None, scanned + post.tuples_scanned)


def induce_lie_automorphism(L: LiftResult, phi_V: RatMatrix) -> tuple:
    """``phi_g(x) = phi_V x phi_V^{-1}`` on ``g = Im D``; returns ``(phi_g, report)``."""
    name = "lie_automorphism_transfer"
    pre = check_automorphism(_source_algebra(L), phi_V)
    if not pre.passed:
        return None, _fail(name, "precondition", pre.witness["condition"], pre.tuples_scanned,
                           **{k: v for k, v in pre.witness.items() if k != "condition"})
    inv = linalg.inverse(phi_V)
    phi_g = _express_all(L, [phi_V @ x @ inv for x in L.basis_ops])
    post = verify_triple_automorphism(L.triple, phi_g, phi_V, name=name, stage="conclusion")
    _escalate(post)
    return phi_g, post


def induce_from_triple_automorphism(T: LieTripleData, phi_g: RatMatrix, phi_V: RatMatrix) -> Report:
    """Check that ``phi_V`` is a generalized orthogonal automorphism of ``reconstruct(T)``."""
    name = "triple_automorphism_transfer"
    pre = verify_triple_automorphism(T, phi_g, phi_V, name=name, stage="precondition")
    if not pre.passed:
        return pre
    d, n = T.module_dim, T.arity
    ensure_enumerable(d, n - 1)
    fmap = FaulknerMap(T)
    images = [phi_V.col(i) for i in range(d)]
    scanned = pre.tuples_scanned
    for t in basis_tuples(d, n - 1):
        scanned += 1
        lhs = phi_g.apply(fmap.on_basis(t))
        rhs = fmap(*(images[i] for i in t))
        if lhs != rhs:
            _escalate(_fail(name, "conclusion", "automorphism_identity", scanned, tuple=list(t),
                            lhs=_vec_json(lhs), rhs=_vec_json(rhs)))
    post = check_automorphism(reconstruct(T, check=False), phi_V)
    if not post.passed:
        _escalate(_fail(name, "conclusion", post.witness["condition"], scanned,
                        **{k: v for k, v in post.witness.items() if k != "condition"}))
    return Report(name, True, None, scanned + post.tuples_scanned)
