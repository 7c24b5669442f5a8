"""Structure-constant data model and JSON interchange.

Three structures are represented:

* :class:`NLeibnizAlgebra` -- an n-linear bracket on V = Q^d given by
  structure constants on basis n-tuples, plus a symmetric (n-1)-tensor S;
* :class:`MetricLieAlgebra` -- Lie structure constants plus a bilinear form;
* :class:`LieTripleData` -- a metric Lie algebra with a representation on
  (V, S), one d x d matrix per Lie basis element.

Structure constants are stored exactly as given; nothing is symmetrized.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Mapping, Sequence

import jsonschema

from . import linalg
from .errors import (
    BasisIndexError,
    DegenerateFormError,
    DuplicateEntry,
    FaithfulnessError,
    GuardrailExceeded,
    HomomorphismError,
    OrthogonalityError,
    ParseError,
)
from .linalg import ONE, ZERO, RatMatrix

DEFAULT_GUARDRAIL = 100_000

# type alias: operators on V are square RatMatrix values in column convention
LinearOperator = RatMatrix


def guardrail() -> int:
    raw = os.environ.get("NLEIBNIZ_GUARDRAIL")
    if raw is None or raw == "":
        return DEFAULT_GUARDRAIL
    try:
        return int(raw)
    except ValueError:
        raise GuardrailExceeded(f"NLEIBNIZ_GUARDRAIL is not an integer: {raw!r}") from None


def ensure_enumerable(dim: int, order: int) -> int:
    """Return ``dim**order`` or raise if it exceeds the tuple-enumeration cap."""
    count = dim ** order
    cap = guardrail()
    if count > cap:
        raise GuardrailExceeded(
            f"enumerating {dim}^{order} = {count} basis tuples exceeds the cap of {cap} "
            f"(set NLEIBNIZ_GUARDRAIL to raise it)")
    return count


def _sparse(vec: Mapping[int, Fraction]) -> tuple:
    return tuple((i, Fraction(c)) for i, c in sorted(vec.items()) if c)


def _dense(entries: Sequence, dim: int) -> tuple:
    out = [ZERO] * dim
    for i, c in entries:
        out[i] += c
    return tuple(out)


@dataclass(frozen=True)
class SymTensor:
    """Symmetric ``order``-tensor on Q^dim stored on sorted index tuples only."""

    dim: int
    order: int
    coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(key)
            if len(key) != self.order or list(key) != sorted(key):
                raise ValueError(f"form key {key} is not a sorted {self.order}-tuple")
            if any(not 0 <= i < self.dim for i in key):
                raise BasisIndexError(f"form index in {key} out of range for dimension {self.dim}")
            c = Fraction(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def euclidean(cls, dim: int) -> "SymTensor":
        return cls(dim, 2, {(i, i): ONE for i in range(dim)})

    def at(self, indices: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(sorted(indices)), ZERO)

    def __call__(self, *vectors) -> Fraction:
        return eval_S(self, *vectors)

    def dense(self) -> list:
        """Values on every index tuple, lexicographic, length ``dim**order``."""
        return [self.at(t) for t in product(range(self.dim), repeat=self.order)]

    def transformed(self, inv: RatMatrix) -> "SymTensor":
        """The tensor ``S'(v_1, ...) = S(inv v_1, ...)``."""
        cols = [inv.col(j) for j in range(self.dim)]
        coeffs = {}
        for key in _sorted_tuples(self.dim, self.order):
            c = eval_S(self, *(cols[j] for j in key))
            if c:
                coeffs[key] = c
        return SymTensor(self.dim, self.order, coeffs)


def _sorted_tuples(dim: int, order: int):
    return combinations_with_replacement(range(dim), order)


def eval_S(S: SymTensor, *vectors) -> Fraction:
    """Symmetric multilinear extension of the stored coefficients."""
    if len(vectors) != S.order:
        raise ValueError(f"S takes {S.order} arguments, got {len(vectors)}")
    for v in vectors:
        if len(v) != S.dim:
            raise ValueError(f"vector of length {len(v)} for dimension {S.dim}")
    supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
    total = ZERO
    for picks in product(*supports):
        key = tuple(sorted(i for i, _ in picks))
        c = S.coeffs.get(key)
        if c:
            for _, x in picks:
                c = c * x
            total += c
    return total


def s_sharp_matrix(S: SymTensor) -> RatMatrix:
    """Matrix of u -> S(u, ...) on the monomial basis of Sym^{order-1}."""
    monomials = list(_sorted_tuples(S.dim, S.order - 1))
    return RatMatrix.from_rows(
        [[S.at((u,) + mono) for mono in monomials] for u in range(S.dim)], len(monomials))


def s_nondegenerate(S: SymTensor) -> bool:
    if S.order < 1:
        return S.dim == 0
    return linalg.rank(s_sharp_matrix(S)) == S.dim


def s_kernel(S: SymTensor) -> list:
    """Basis of the kernel of u -> S(u, ...)."""
    return linalg.nullspace(s_sharp_matrix(S).transpose())


def default_basis(dim: int) -> list:
    return [f"e{i + 1}" for i in range(dim)]


@dataclass(frozen=True, eq=False)
class NLeibnizAlgebra:
    """An n-linear bracket on Q^dim plus a symmetric (n-1)-tensor ``form``.

    ``bracket`` maps an n-tuple of basis indices to a sparse output vector
    given as a tuple of ``(index, coefficient)`` pairs.
    """

    arity: int
    dim: int
    bracket: Mapping[tuple, tuple]
    form: SymTensor
    basis: tuple = ()

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.form.order != self.arity - 1 or self.form.dim != self.dim:
            raise ValueError("form must have order n-1 on the same space")
        clean = {}
        for key, out in self.bracket.items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ValueError(f"bracket key {key} does not have {self.arity} entries")
            if any(not 0 <= i < self.dim for i in key):
                raise BasisIndexError(f"bracket index in {key} out of range")
            if isinstance(out, Mapping):
                out = out.items()
            out = _sparse({i: c for i, c in out})
            if any(not 0 <= i < self.dim for i, _ in out):
                raise BasisIndexError(f"output index of {key} out of range")
            if out:
                clean[key] = out
        object.__setattr__(self, "bracket", dict(sorted(clean.items())))
        object.__setattr__(self, "basis", tuple(self.basis) or tuple(default_basis(self.dim)))
        if len(self.basis) != self.dim:
            raise ValueError("basis names must match the dimension")

    def __eq__(self, other):
        if not isinstance(other, NLeibnizAlgebra):
            return NotImplemented
        return (self.arity, self.dim, self.bracket, self.form) == (
            other.arity, other.dim, other.bracket, other.form)

    def same_structure_constants(self, other: "NLeibnizAlgebra") -> bool:
        return self.arity == other.arity and self.dim == other.dim and self.bracket == other.bracket

    def on_basis(self, indices: Sequence[int]) -> tuple:
        """Dense value of the bracket on a basis n-tuple."""
        return _dense(self.bracket.get(tuple(indices), ()), self.dim)

    def __call__(self, *vectors) -> tuple:
        return eval_bracket(self, *vectors)

    def dense_constants(self) -> list:
        """Flat list: entry ``t*dim + k`` is coefficient k of the bracket on tuple index t."""
        d = self.dim
        flat = [ZERO] * (d ** self.arity * d)
        weights = [d ** (self.arity - 1 - i) for i in range(self.arity)]
        for key, out in self.bracket.items():
            t = sum(i * w for i, w in zip(key, weights))
            for k, c in out:
                flat[t * d + k] = c
        return flat

    def is_abelian(self) -> bool:
        return not self.bracket


def eval_bracket(A: NLeibnizAlgebra, *vectors) -> tuple:
    """Multilinear extension of the structure constants."""
    if len(vectors) != A.arity:
        raise ValueError(f"bracket takes {A.arity} arguments, got {len(vectors)}")
    for v in vectors:
        if len(v) != A.dim:
            raise ValueError(f"vector of length {len(v)} for dimension {A.dim}")
    out = [ZERO] * A.dim
    for key, entries in A.bracket.items():
        c = ONE
        for v, i in zip(vectors, key):
            x = v[i]
            if not x:
                break
            c = c * x
        else:
            for k, y in entries:
                out[k] += c * y
    return tuple(out)


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """Lie structure constants ``[g_a, g_b] = sum_c f_ab^c g_c`` and a form ``omega``.

    Stored pairs are normally ``a < b``; a missing pair is read off its
    reverse by antisymmetry.  Files may list both orders, in which case
    :func:`nleibniz.axioms.check_metric_lie` checks they agree.
    """

    dim: int
    lie: Mapping[tuple, tuple]
    omega: RatMatrix

    def __post_init__(self):
        if self.omega.shape != (self.dim, self.dim):
            raise ValueError(f"omega must be {self.dim}x{self.dim}")
        clean = {}
        for key, out in self.lie.items():
            key = tuple(key)
            if len(key) != 2 or any(not 0 <= i < self.dim for i in key):
                raise BasisIndexError(f"Lie bracket key {key} out of range")
            if isinstance(out, Mapping):
                out = out.items()
            out = _sparse({i: c for i, c in out})
            if any(not 0 <= i < self.dim for i, _ in out):
                raise BasisIndexError(f"Lie bracket output of {key} out of range")
            if out:
                clean[key] = out
        object.__setattr__(self, "lie", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, MetricLieAlgebra):
            return NotImplemented
        return (self.dim, self.lie, self.omega) == (other.dim, other.lie, other.omega)

    def on_basis(self, a: int, b: int) -> tuple:
        if (a, b) in self.lie:
            return _dense(self.lie[(a, b)], self.dim)
        if (b, a) in self.lie:
            return tuple(-x for x in _dense(self.lie[(b, a)], self.dim))
        return linalg.zero_vector(self.dim)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if yb and a != b:
                    for c, v in enumerate(self.on_basis(a, b)):
                        if v:
                            out[c] += xa * yb * v
        return tuple(out)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return linalg.dot(x, self.omega.apply(y))

    def ad(self, a: int) -> RatMatrix:
        """Matrix of ``ad_{g_a}`` in column convention."""
        cols = [self.on_basis(a, b) for b in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)


@dataclass(frozen=True, eq=False)
class LieTripleData:
    """A metric Lie algebra ``g`` represented on (Q^module_dim, form) by ``rho``."""

    arity: int
    g: MetricLieAlgebra
    module_dim: int
    rho: tuple
    form: SymTensor

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if len(self.rho) != self.g.dim:
            raise ValueError("one representation matrix per Lie basis element is required")
        for m in self.rho:
            if m.shape != (self.module_dim, self.module_dim):
                raise ValueError("representation matrices must be module_dim square")
        if self.form.order != self.arity - 1 or self.form.dim != self.module_dim:
            raise ValueError("form must have order n-1 on the module")

    def __eq__(self, other):
        if not isinstance(other, LieTripleData):
            return NotImplemented
        return (self.arity, self.g, self.module_dim, self.rho, self.form) == (
            other.arity, other.g, other.module_dim, other.rho, other.form)

    def rho_of(self, x: Sequence) -> RatMatrix:
        """``rho`` extended linearly to a coordinate vector of g."""
        out = RatMatrix.zeros(self.module_dim, self.module_dim)
        for a, c in enumerate(x):
            if c:
                out = out + self.rho[a] * c
        return out


# ---------------------------------------------------------------------------
# JSON

_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_IDX = {"type": "integer", "minimum": 0}
_OUT = {"type": "array", "items": {
    "type": "object", "required": ["index", "coeff"], "additionalProperties": False,
    "properties": {"index": _IDX, "coeff": _RAT}}}
_FORM = {"type": "array", "items": {
    "type": "object", "required": ["args", "coeff"], "additionalProperties": False,
    "properties": {"args": {"type": "array", "items": _IDX}, "coeff": _RAT}}}


def _bracket_schema(arity=None):
    args = {"type": "array", "items": _IDX}
    if arity is not None:
        args.update(minItems=arity, maxItems=arity)
    return {"type": "array", "items": {
        "type": "object", "required": ["args", "out"], "additionalProperties": False,
        "properties": {"args": args, "out": _OUT}}}


ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["kind", "arity", "dimension", "bracket", "form"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "n-leibniz"},
        "arity": {"type": "integer", "minimum": 2},
        "dimension": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "bracket": _bracket_schema(),
        "form": _FORM,
    },
}

_MATRIX = {"type": "array", "items": {"type": "array", "items": _RAT}}

TRIPLE_SCHEMA = {
    "type": "object",
    "required": ["kind", "arity", "lie", "module_dimension", "rho", "form"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "lie-triple-data"},
        "arity": {"type": "integer", "minimum": 2},
        "lie": {
            "type": "object", "required": ["dimension", "bracket", "omega"],
            "additionalProperties": False,
            "properties": {
                "dimension": {"type": "integer", "minimum": 0},
                "bracket": _bracket_schema(2),
                "omega": _MATRIX,
            },
        },
        "module_dimension": {"type": "integer", "minimum": 1},
        "rho": {"type": "array", "items": _MATRIX},
        "form": _FORM,
    },
}


def _reject_duplicate_keys(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise DuplicateEntry(f"duplicate JSON key {k!r}")
        seen[k] = v
    return seen


def load_json(text) -> dict:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"schema violation at {where}: {exc.message}") from None


def _check_index(i, dim, where):
    if not 0 <= i < dim:
        raise BasisIndexError(f"{where}: basis index {i} out of range for dimension {dim}")


def _read_out(entries, dim, where) -> dict:
    out = {}
    for e in entries:
        _check_index(e["index"], dim, where)
        if e["index"] in out:
            raise DuplicateEntry(f"{where}: output index {e['index']} listed twice")
        out[e["index"]] = linalg.parse_rational(e["coeff"])
    return out


def _read_bracket(entries, arity, dim, where) -> dict:
    bracket = {}
    for e in entries:
        args = tuple(e["args"])
        if len(args) != arity:
            raise ParseError(f"{where}: args {list(args)} must have {arity} entries")
        for i in args:
            _check_index(i, dim, where)
        if args in bracket:
            raise DuplicateEntry(f"{where}: args {list(args)} listed twice")
        bracket[args] = _read_out(e["out"], dim, f"{where} {list(args)}")
    return bracket


def _read_form(entries, order, dim) -> SymTensor:
    coeffs = {}
    for e in entries:
        args = tuple(e["args"])
        if len(args) != order:
            raise ParseError(f"form args {list(args)} must have {order} entries")
        if list(args) != sorted(args):
            raise ParseError(f"form args {list(args)} must be sorted ascending")
        for i in args:
            _check_index(i, dim, "form")
        if args in coeffs:
            raise DuplicateEntry(f"form args {list(args)} listed twice")
        coeffs[args] = linalg.parse_rational(e["coeff"])
    return SymTensor(dim, order, coeffs)


def _read_matrix(rows, nrows, ncols, where) -> RatMatrix:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ParseError(f"{where} must be {nrows}x{ncols}")
    return RatMatrix.from_rows([[linalg.parse_rational(x) for x in r] for r in rows], ncols)


def algebra_from_dict(doc: dict) -> NLeibnizAlgebra:
    _validate(doc, ALGEBRA_SCHEMA)
    n, d = doc["arity"], doc["dimension"]
    basis = doc.get("basis") or default_basis(d)
    if len(basis) != d:
        raise ParseError(f"basis has {len(basis)} names for dimension {d}")
    bracket = _read_bracket(doc["bracket"], n, d, "bracket")
    form = _read_form(doc["form"], n - 1, d)
    return NLeibnizAlgebra(n, d, bracket, form, tuple(basis))


def parse_algebra(text) -> NLeibnizAlgebra:
    return algebra_from_dict(load_json(text))


def triple_from_dict(doc: dict, validate: bool = True) -> LieTripleData:
    _validate(doc, TRIPLE_SCHEMA)
    n = doc["arity"]
    lie = doc["lie"]
    m = lie["dimension"]
    d = doc["module_dimension"]
    lie_bracket = _read_bracket(lie["bracket"], 2, m, "lie.bracket")
    omega = _read_matrix(lie["omega"], m, m, "lie.omega")
    if len(doc["rho"]) != m:
        raise ParseError(f"rho has {len(doc['rho'])} matrices for a {m}-dimensional Lie algebra")
    rho = [_read_matrix(r, d, d, f"rho[{a}]") for a, r in enumerate(doc["rho"])]
    form = _read_form(doc["form"], n - 1, d)
    triple = LieTripleData(n, MetricLieAlgebra(m, lie_bracket, omega), d, tuple(rho), form)
    if validate:
        validate_triple(triple)
    return triple


def parse_triple(text, validate: bool = True) -> LieTripleData:
    """Load a triple; with ``validate`` the defining invariants are enforced."""
    return triple_from_dict(load_json(text), validate=validate)


def validate_triple(T: LieTripleData) -> None:
    """Raise the specific :class:`TripleInvariantError` for the first failed invariant."""
    from . import axioms

    if linalg.rank(T.g.omega) != T.g.dim:
        raise DegenerateFormError("omega is degenerate")
    if not T.g.omega.is_symmetric():
        raise DegenerateFormError("omega is not symmetric")
    rep = axioms.check_rep_homomorphism(T)
    if not rep.passed:
        raise HomomorphismError(f"rho is not a Lie algebra homomorphism: {rep.witness}")
    rep = axioms.check_rep_faithful(T)
    if not rep.passed:
        raise FaithfulnessError(f"rho is not faithful: {rep.witness}")
    rep = axioms.check_rep_invariance(T)
    if not rep.passed:
        raise OrthogonalityError(f"rho is not generalized orthogonal: {rep.witness}")


def parse_any(text):
    """Dispatch on ``"kind"``; triples are loaded without validation."""
    doc = load_json(text)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "n-leibniz":
        return algebra_from_dict(doc)
    if kind == "lie-triple-data":
        return triple_from_dict(doc, validate=False)
    raise ParseError(f"unknown kind {kind!r}")


def _out_json(entries) -> list:
    return [{"index": i, "coeff": linalg.render_rational(c)} for i, c in entries]


def _form_json(S: SymTensor) -> list:
    return [{"args": list(k), "coeff": linalg.render_rational(c)} for k, c in sorted(S.coeffs.items())]


def _matrix_json(m: RatMatrix) -> list:
    return [[linalg.render_rational(x) for x in m.row(i)] for i in range(m.rows)]


def algebra_to_dict(A: NLeibnizAlgebra) -> dict:
    return {
        "kind": "n-leibniz",
        "arity": A.arity,
        "dimension": A.dim,
        "basis": list(A.basis),
        "bracket": [{"args": list(k), "out": _out_json(v)} for k, v in A.bracket.items()],
        "form": _form_json(A.form),
    }


def triple_to_dict(T: LieTripleData) -> dict:
    return {
        "kind": "lie-triple-data",
        "arity": T.arity,
        "lie": {
            "dimension": T.g.dim,
            "bracket": [{"args": list(k), "out": _out_json(v)} for k, v in T.g.lie.items()],
            "omega": _matrix_json(T.g.omega),
        },
        "module_dimension": T.module_dim,
        "rho": [_matrix_json(r) for r in T.rho],
        "form": _form_json(T.form),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def serialize_algebra(A: NLeibnizAlgebra) -> str:
    return dumps(algebra_to_dict(A))


def serialize_triple(T: LieTripleData) -> str:
    return dumps(triple_to_dict(T))
