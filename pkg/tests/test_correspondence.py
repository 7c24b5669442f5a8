import random
from fractions import Fraction

import pytest

from nleibniz import axioms, generate, linalg
from nleibniz.correspondence import (
    FaulknerMap,
    b_gram_matrix,
    b_radical_dim,
    basis_tuples,
    d_of_tensor,
    d_operator,
    identification_matrix,
    image_of_D,
    ker_d_dim,
    lift,
    reconstruct,
    roundtrip_algebra,
    roundtrip_triple,
    simple_tensor,
    tensor_add,
    tensor_bracket,
    tensor_form_B,
)
from nleibniz.errors import AxiomViolation, GuardrailExceeded
from nleibniz.linalg import RatMatrix, basis_vector, commutator
from nleibniz.model import LieTripleData, MetricLieAlgebra, SymTensor

from conftest import VALID_ALGEBRAS, VALID_TRIPLES, load, random_vector

e4 = [basis_vector(4, i) for i in range(4)]

# the displayed operators D_ij; row k holds D e_k, the transpose of our column convention
DISPLAYED_D = {
    (0, 1): [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    (0, 2): [[0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 1, 0, 0]],
    (0, 3): [[0, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 0]],
    (1, 2): [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 0]],
    (1, 3): [[0, 0, -1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
    (2, 3): [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
}


def displayed_matrix(key) -> RatMatrix:
    return RatMatrix.from_rows([[Fraction(x) for x in r] for r in DISPLAYED_D[key]]).transpose()


def test_d_operator_matches_displayed_matrices(a4):
    for (i, j) in DISPLAYED_D:
        assert d_operator(a4, e4[i], e4[j]) == displayed_matrix((i, j))
    assert d_operator(a4, e4[0], e4[0]).is_zero()
    assert d_operator(generate.abelian(3, 4), e4[0], e4[1]).is_zero()


def test_d_operator_columns_are_brackets(a4):
    rng = random.Random(1)
    u, w = random_vector(rng, 4), random_vector(rng, 4)
    D = d_operator(a4, u, w)
    for k in range(4):
        assert D.col(k) == a4(u, w, e4[k])


def test_image_of_D(a4):
    ops, gens = image_of_D(a4)
    assert gens == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert [op for op in ops] == [displayed_matrix(t) for t in DISPLAYED_D]
    assert image_of_D(generate.abelian(3, 3)) == ([], [])
    # all 16 tuples span the same space, with a 10-dimensional kernel
    assert ker_d_dim(a4) == 10


def test_lift_a4(a4):
    L = lift(a4)
    assert L.g.dim == 6
    nonzero = {(a, b): L.g.omega[a, b] for a in range(6) for b in range(6) if L.g.omega[a, b]}
    # indices: D12=0, D13=1, D14=2, D23=3, D24=4, D34=5
    assert nonzero == {(0, 5): 1, (5, 0): 1, (1, 4): -1, (4, 1): -1, (2, 3): 1, (3, 2): 1}
    assert linalg.signature(L.g.omega) == (3, 3, 0)
    assert axioms.check_metric_lie(L.g).passed
    assert axioms.check_orthogonal_rep(L.triple).passed
    assert L.sidecar() == {"generator_tuples": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
                           "omega_signature": [3, 3, 0]}


def test_lift_abelian_is_zero_dimensional():
    L = lift(generate.abelian(3, 2))
    assert L.g.dim == 0 and L.g.omega.shape == (0, 0)
    assert axioms.check_orthogonal_rep(L.triple).passed
    assert reconstruct(L.triple).is_abelian()


def test_lift_rejects_non_metric():
    with pytest.raises(AxiomViolation) as info:
        lift(load("broken_unitarity"))
    assert info.value.report.check == "unitarity"


def test_lift_guardrail(monkeypatch):
    monkeypatch.setenv("NLEIBNIZ_GUARDRAIL", "10")
    with pytest.raises(GuardrailExceeded):
        image_of_D(load("a4_euclidean"))


def test_faulkner_system_solution_substitutes(a4):
    # omega(g_a, D(v)) = S(rho(g_a) v_1, v_2) checked by substitution
    T = lift(a4).triple
    fmap = FaulknerMap(T)
    for t in basis_tuples(4, 2):
        x = fmap.on_basis(t)
        rhs = [T.form(r.col(t[0]), e4[t[1]]) for r in T.rho]
        assert T.g.omega.apply(x) == tuple(rhs)


def test_reconstruct_a4_exact(a4):
    assert reconstruct(lift(a4).triple).bracket == a4.bracket


@pytest.mark.parametrize("name", VALID_ALGEBRAS)
def test_roundtrip_algebra(name):
    assert roundtrip_algebra(load(name)).passed


@pytest.mark.parametrize("name", VALID_TRIPLES)
def test_roundtrip_triple_and_surjectivity(name):
    T = load(name)
    A = reconstruct(T)
    assert all(r.passed for r in axioms.check_algebra(A))
    assert len(image_of_D(A)[0]) == T.g.dim
    assert roundtrip_triple(T).passed


def test_identification_matrix_for_lift_triple(a4):
    L = lift(a4)
    assert identification_matrix(L.triple, lift(reconstruct(L.triple))) == RatMatrix.identity(6)


def test_reconstruct_zero_lie_algebra_is_abelian():
    T = LieTripleData(3, MetricLieAlgebra(0, {}, RatMatrix.zeros(0, 0)), 3, (), SymTensor.euclidean(3))
    assert reconstruct(T).is_abelian()


def test_reconstruct_rejects_invalid_triple():
    with pytest.raises(AxiomViolation):
        reconstruct(generate.non_orthogonal_triple())


@pytest.mark.parametrize("name", VALID_TRIPLES)
def test_faulkner_antisymmetrized_sum(name):
    T = load(name)
    fmap = FaulknerMap(T)
    d, n = T.module_dim, T.arity
    for t in basis_tuples(d, n - 1):
        total = linalg.zero_vector(T.g.dim)
        for i in range(n - 1):
            total = linalg.vadd(total, fmap.on_basis((t[i],) + t[:i] + t[i + 1:]))
        assert not any(total)


@pytest.mark.parametrize("name", VALID_TRIPLES)
def test_reconstructed_cyclic_and_lifted_invariance(name):
    A = reconstruct(load(name))
    assert axioms.check_cyclic_sum(A).passed
    assert axioms.check_metric_lie(lift(A).g).passed


def test_tensor_examples(a4):
    u = simple_tensor(e4[0], e4[1])
    assert tensor_bracket(a4, u, u) == {}
    assert tensor_form_B(a4, u, simple_tensor(e4[2], e4[3])) == 1
    ab = generate.abelian(3, 4)
    assert tensor_bracket(ab, u, u) == {} and tensor_form_B(ab, u, u) == 0


def _random_simple(rng, A):
    return simple_tensor(*(random_vector(rng, A.dim) for _ in range(A.arity - 1)))


@pytest.mark.parametrize("name", VALID_ALGEBRAS)
def test_tensor_bracket_homomorphism(name):
    A = load(name)
    rng = random.Random(name)
    for _ in range(20):
        U, V = _random_simple(rng, A), _random_simple(rng, A)
        assert d_of_tensor(A, tensor_bracket(A, U, V)) == commutator(d_of_tensor(A, U), d_of_tensor(A, V))


@pytest.mark.parametrize("name", VALID_ALGEBRAS)
def test_b_symmetric_and_invariant(name):
    A = load(name)
    rng = random.Random(name)
    for _ in range(100):
        U, V, W = (_random_simple(rng, A) for _ in range(3))
        assert tensor_form_B(A, U, V) == tensor_form_B(A, V, U)
        assert tensor_form_B(A, U, tensor_bracket(A, V, W)) == tensor_form_B(A, tensor_bracket(A, U, V), W)


def test_b_bilinear(a4):
    rng = random.Random(3)
    U, V, W = (_random_simple(rng, a4) for _ in range(3))
    assert tensor_form_B(a4, tensor_add(U, V), W) == tensor_form_B(a4, U, W) + tensor_form_B(a4, V, W)


@pytest.mark.parametrize("name", VALID_ALGEBRAS)
def test_b_radical_equals_ker_d(name):
    A = load(name)
    assert b_radical_dim(A) == ker_d_dim(A)


def test_b_radical_a4_and_abelian(a4):
    assert b_radical_dim(a4) == 10 == ker_d_dim(a4)
    assert b_gram_matrix(a4).is_symmetric()
    assert b_radical_dim(generate.abelian(3, 3)) == 9
