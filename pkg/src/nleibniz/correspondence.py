"""Both directions between generalized metric n-Leibniz algebras and Lie triple data.

``lift`` takes an algebra to the Lie algebra ``g = Im D`` inside gl(V) with
its induced form; ``reconstruct`` goes back through the Faulkner map
``omega(x, D(v)) = S(rho(x) v_1, v_2, ...)``.  The Leibniz algebra on the
tensor power of V and its bilinear form B sit in between.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from . import linalg
from .axioms import is_generalized_metric, is_lie_triple
from .errors import (
    AxiomViolation,
    ClosureError,
    Inconsistent,
    InternalInvariantViolation,
    WellDefinednessError,
)
from .linalg import ZERO, EchelonSpan, RatMatrix, commutator
from .model import (
    LieTripleData,
    MetricLieAlgebra,
    NLeibnizAlgebra,
    SymTensor,
    ensure_enumerable,
    eval_bracket,
    eval_S,
)


def basis_tuples(dim: int, order: int) -> list:
    return list(product(range(dim), repeat=order))


def d_operator(A: NLeibnizAlgebra, *us) -> RatMatrix:
    """The operator ``v -> [u_1, .., u_{n-1}, v]``; column k is its value on e_k."""
    if len(us) != A.arity - 1:
        raise ValueError(f"D takes {A.arity - 1} arguments, got {len(us)}")
    cols = [eval_bracket(A, *us, linalg.basis_vector(A.dim, k)) for k in range(A.dim)]
    return RatMatrix.from_columns(cols, A.dim)


def d_basis(A: NLeibnizAlgebra, t: Sequence[int]) -> RatMatrix:
    """``D(e_{t_1}, .., e_{t_{n-1}})`` read straight from the structure constants."""
    t = tuple(t)
    return RatMatrix.from_columns([A.on_basis(t + (k,)) for k in range(A.dim)], A.dim)


def image_of_D(A: NLeibnizAlgebra) -> tuple:
    """Greedy basis of Im D: ``(operators, generator_tuples)``.

    Basis tuples are scanned lexicographically; a tuple is kept iff its
    operator enlarges the span so far.
    """
    ensure_enumerable(A.dim, A.arity - 1)
    span = EchelonSpan(A.dim * A.dim)
    ops, gens = [], []
    for t in basis_tuples(A.dim, A.arity - 1):
        op = d_basis(A, t)
        if span.add(op.vec()):
            ops.append(op)
            gens.append(t)
    return ops, gens


def _s_after(S: SymTensor, x: Sequence, rest: Sequence[int]) -> Fraction:
    """``S(x, e_{rest_1}, ..)`` for a vector x and basis indices."""
    total = ZERO
    for j, c in enumerate(x):
        if c:
            total += c * S.at((j, *rest))
    return total


@dataclass(frozen=True, eq=False)
class LiftResult:
    g: MetricLieAlgebra
    basis_ops: tuple
    generator_tuples: tuple
    triple: LieTripleData
    # coordinates of D(e_t) in ``basis_ops`` for every basis (n-1)-tuple t
    tuple_coordinates: Mapping[tuple, tuple] = field(default_factory=dict)
    algebra: NLeibnizAlgebra | None = None

    def sidecar(self) -> dict:
        return {"generator_tuples": [list(t) for t in self.generator_tuples],
                "omega_signature": list(linalg.signature(self.g.omega))}

    def express(self, op: RatMatrix) -> tuple:
        """Coordinates of an operator of gl(V) in the basis of g."""
        return linalg.coordinates([b.vec() for b in self.basis_ops], [op.vec()])[0]


def lift(A: NLeibnizAlgebra, check: bool = True) -> LiftResult:
    """The Lie triple data ``(Im D, V, inclusion)`` of a generalized metric algebra."""
    if check:
        ok, rep = is_generalized_metric(A)
        if not ok:
            raise AxiomViolation(f"lift requires a generalized metric algebra; {rep.check} fails", rep)
    d, n, S = A.dim, A.arity, A.form
    ops, gens = image_of_D(A)
    m = len(ops)
    vecs = [op.vec() for op in ops]
    tuples = basis_tuples(d, n - 1)
    coords = linalg.coordinates(vecs, [d_basis(A, t).vec() for t in tuples])
    tuple_coords = dict(zip(tuples, coords))

    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    try:
        brackets = linalg.coordinates(vecs, [commutator(ops[a], ops[b]).vec() for a, b in pairs])
    except Inconsistent as exc:
        raise ClosureError(f"a commutator escapes Im D: {exc}") from None
    lie = {p: tuple((c, x) for c, x in enumerate(v) if x) for p, v in zip(pairs, brackets)}

    # omega(g_a, D(w)) := S(g_a w_1, w_2, ..) with w the generator tuple of g_b
    omega = RatMatrix.from_rows(
        [[_s_after(S, ops[a].col(gens[b][0]), gens[b][1:]) for b in range(m)] for a in range(m)], m)
    for t in tuples:
        c = tuple_coords[t]
        for a in range(m):
            direct = _s_after(S, ops[a].col(t[0]), t[1:])
            via_basis = sum((c[b] * omega[a, b] for b in range(m) if c[b]), ZERO)
            if direct != via_basis:
                raise WellDefinednessError(
                    f"omega(g_{a}, D{t}) is {direct} by definition but {via_basis} via the basis")

    g = MetricLieAlgebra(m, lie, omega)
    triple = LieTripleData(n, g, d, tuple(ops), S)
    return LiftResult(g, tuple(ops), tuple(gens), triple, tuple_coords, A)


class FaulknerMap:
    """``D(v) in g`` defined by ``omega(x, D(v)) = S(rho(x) v_1, v_2, ..)``.

    The inverse of the Gram matrix of omega is computed once and reused.
    """

    def __init__(self, T: LieTripleData):
        self.T = T
        m = T.g.dim
        self._omega_inv = linalg.inverse(T.g.omega) if m else RatMatrix.zeros(0, 0)

    def on_basis(self, t: Sequence[int]) -> tuple:
        T = self.T
        rhs = [_s_after(T.form, r.col(t[0]), t[1:]) for r in T.rho]
        return self._omega_inv.apply(rhs)

    def __call__(self, *vectors) -> tuple:
        T = self.T
        rhs = [eval_S(T.form, r.apply(vectors[0]), *vectors[1:]) for r in T.rho]
        return self._omega_inv.apply(rhs)

    def operator(self, *vectors) -> RatMatrix:
        return self.T.rho_of(self(*vectors))


def faulkner_d(T: LieTripleData, *vectors) -> tuple:
    return FaulknerMap(T)(*vectors)


def reconstruct(T: LieTripleData, check: bool = True) -> NLeibnizAlgebra:
    """The algebra ``[v_1, .., v_n] = rho(D(v_1, .., v_{n-1})) v_n``."""
    if check:
        ok, rep = is_lie_triple(T)
        if not ok:
            raise AxiomViolation(f"reconstruct requires a Lie triple data; {rep.check} fails", rep)
    d, n = T.module_dim, T.arity
    ensure_enumerable(d, n - 1)
    fmap = FaulknerMap(T)
    bracket = {}
    for t in basis_tuples(d, n - 1):
        op = T.rho_of(fmap.on_basis(t))
        for k in range(d):
            col = op.col(k)
            if any(col):
                bracket[t + (k,)] = tuple((i, x) for i, x in enumerate(col) if x)
    return NLeibnizAlgebra(n, d, bracket, T.form)


# -- the Leibniz algebra on the tensor power ---------------------------------

def simple_tensor(*vectors) -> dict:
    out = {}
    supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
    for picks in product(*supports):
        c = Fraction(1)
        for _, x in picks:
            c *= x
        out[tuple(i for i, _ in picks)] = c
    return out


def tensor_add(U: Mapping, V: Mapping) -> dict:
    out = dict(U)
    for k, c in V.items():
        out[k] = out.get(k, ZERO) + c
    return {k: c for k, c in out.items() if c}


def tensor_bracket(A: NLeibnizAlgebra, U: Mapping, V: Mapping) -> dict:
    """``[U, V]_F = sum_i v_1 (x) .. (x) [u_1, .., u_{n-1}, v_i] (x) .. (x) v_{n-1}``."""
    out = {}
    for u, cu in U.items():
        for v, cv in V.items():
            c = cu * cv
            if not c:
                continue
            for i in range(A.arity - 1):
                for j, x in A.bracket.get(u + (v[i],), ()):
                    key = v[:i] + (j,) + v[i + 1:]
                    out[key] = out.get(key, ZERO) + c * x
    return {k: c for k, c in out.items() if c}


def tensor_form_B(A: NLeibnizAlgebra, U: Mapping, V: Mapping) -> Fraction:
    """``B(u_1 (x) .., v_1 (x) ..) = S([u_1, .., u_{n-1}, v_1], v_2, ..)``, bilinearly."""
    total = ZERO
    for u, cu in U.items():
        for v, cv in V.items():
            for j, x in A.bracket.get(u + (v[0],), ()):
                total += cu * cv * x * A.form.at((j, *v[1:]))
    return total


def d_of_tensor(A: NLeibnizAlgebra, U: Mapping) -> RatMatrix:
    out = RatMatrix.zeros(A.dim, A.dim)
    for u, c in U.items():
        out = out + d_basis(A, u) * c
    return out


def b_gram_matrix(A: NLeibnizAlgebra) -> RatMatrix:
    ensure_enumerable(A.dim, A.arity - 1)
    tuples = basis_tuples(A.dim, A.arity - 1)
    units = [{t: Fraction(1)} for t in tuples]
    return RatMatrix.from_rows([[tensor_form_B(A, U, V) for V in units] for U in units], len(units))


def b_radical_dim(A: NLeibnizAlgebra) -> int:
    """Dimension of the radical of B on the tensor power, from its Gram matrix."""
    gram = b_gram_matrix(A)
    return gram.rows - linalg.rank(gram)


def ker_d_dim(A: NLeibnizAlgebra) -> int:
    """Nullity of D on the tensor power, from the vectorized operators."""
    ensure_enumerable(A.dim, A.arity - 1)
    tuples = basis_tuples(A.dim, A.arity - 1)
    cols = [d_basis(A, t).vec() for t in tuples]
    return len(tuples) - linalg.rank(RatMatrix.from_columns(cols, A.dim * A.dim))


# -- round trips -------------------------------------------------------------

@dataclass(frozen=True)
class RoundTrip:
    direction: str
    passed: bool
    details: dict

    def to_json(self) -> dict:
        return {"direction": self.direction, "pass": self.passed, **self.details}


def roundtrip_algebra(A: NLeibnizAlgebra) -> RoundTrip:
    """reconstruct(lift(A)) must reproduce every structure constant of A."""
    L = lift(A)
    B = reconstruct(L.triple)
    details = {"dim_g": L.g.dim, "omega_signature": list(linalg.signature(L.g.omega))}
    if B.bracket == A.bracket and B.form == A.form:
        return RoundTrip("algebra", True, details)
    keys = sorted(set(A.bracket) | set(B.bracket))
    bad = next(k for k in keys if A.bracket.get(k) != B.bracket.get(k)) if keys else None
    details["first_mismatch"] = list(bad) if bad is not None else None
    return RoundTrip("algebra", False, details)


def identification_matrix(T: LieTripleData, L: LiftResult) -> RatMatrix:
    """Columns: coordinates of ``rho(g_a)`` in the basis of ``L.g``."""
    coords = linalg.coordinates([b.vec() for b in L.basis_ops], [r.vec() for r in T.rho])
    return RatMatrix.from_columns(coords, L.g.dim)


def roundtrip_triple(T: LieTripleData) -> RoundTrip:
    """lift(reconstruct(T)) must recover g through ``g_a -> rho(g_a)``, omega included."""
    A = reconstruct(T)
    L = lift(A)
    m = T.g.dim
    details = {"dim_g": m, "dim_image_D": L.g.dim}
    if L.g.dim != m:
        details["failure"] = "D is not surjective"
        return RoundTrip("triple", False, details)
    try:
        P = identification_matrix(T, L)
    except Inconsistent:
        details["failure"] = "rho(g) is not contained in Im D"
        return RoundTrip("triple", False, details)
    if linalg.rank(P) != m:
        details["failure"] = "identification is not invertible"
        return RoundTrip("triple", False, details)
    cols = [P.col(a) for a in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            if P.apply(T.g.on_basis(a, b)) != L.g.bracket(cols[a], cols[b]):
                details["failure"] = f"Lie bracket of ({a}, {b}) not preserved"
                return RoundTrip("triple", False, details)
    if P.transpose() @ L.g.omega @ P != T.g.omega:
        details["failure"] = "omega does not pull back"
        return RoundTrip("triple", False, details)
    return RoundTrip("triple", True, details)


def require(result: RoundTrip) -> RoundTrip:
    """Escalate a failed round trip whose preconditions held."""
    if not result.passed:
        raise InternalInvariantViolation(f"{result.direction} round trip failed: {result.details}")
    return result
