import galois
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.algebra.module_min import (
    PolyMatrix,
    ReductionStats,
    WeightSpec,
    degree,
    leading_position,
    minimal_row,
    minimize_weighted,
    pi_embed,
    pi_extract,
    w_embed,
    weak_popov,
    weighted_degree,
)
from src.algebra.poly import NEG_INF, UniPoly
from src.exceptions import ModuleMinimisationError
from tests.oracles import poly_det


GF4 = galois.GF(4)
GF16 = galois.GF(16)


def P(*coeffs, GF=GF4):
    return UniPoly(GF(list(coeffs)) if coeffs else GF.Zeros(0), GF)


def matrices(size, max_len=4, GF=GF16):
    entry = st.lists(st.integers(0, GF.order - 1), max_size=max_len)
    return st.lists(
        st.lists(entry, min_size=size, max_size=size), min_size=size, max_size=size
    ).map(lambda rows: PolyMatrix.from_lists(GF, rows))


def nonsingular(V: PolyMatrix) -> bool:
    return not poly_det(V.rows()).is_zero


def combination(U: PolyMatrix, multipliers):
    """sum_i a_i * row_i for polynomial multipliers a_i."""
    ncols = U.shape[1]
    out = [UniPoly.zero(U.GF)] * ncols
    for a, row in zip(multipliers, U.rows()):
        out = [o + a * e for o, e in zip(out, row)]
    return out


# rows


def test_degree_and_leading_position_examples():
    one, x = P(1), P(0, 1)
    assert (leading_position([one, x]), degree([one, x])) == (1, 1)
    assert leading_position([x, x]) == 1
    assert (leading_position([P(0, 0, 1), P(), x]), degree([P(0, 0, 1), P(), x])) == (0, 2)
    assert degree([P(), P()]) == NEG_INF


def test_leading_position_of_zero_row():
    with pytest.raises(ModuleMinimisationError):
        leading_position([P(), P()])


# weak Popov


def test_identity_is_fixed():
    identity = PolyMatrix.identity(GF4, 3)
    assert weak_popov(identity) == identity


def test_two_by_two_reduction():
    V = PolyMatrix.from_lists(GF4, [[[1], [0, 1]], [[1], [1, 1]]])
    U = weak_popov(V)
    assert U.is_weak_popov()
    assert poly_det(U.rows()).degree == 0
    assert U.rows() == [[P(1), P()], [P(), P(1)]]


def test_already_weak_popov_is_unchanged():
    V = PolyMatrix.from_lists(GF4, [[[0, 1], [1]], [[1], [0, 0, 1]]])
    assert V.is_weak_popov()
    stats = ReductionStats()
    assert weak_popov(V, stats) == V
    assert stats.steps == 0


def test_rank_deficient_input():
    V = PolyMatrix.from_lists(GF4, [[[1], [0, 1]], [[0, 1], [0, 0, 1]]])
    with pytest.raises(ModuleMinimisationError):
        weak_popov(V)


def test_zero_row_is_rejected():
    V = PolyMatrix.from_lists(GF4, [[[1], [1]], [[], []]])
    with pytest.raises(ModuleMinimisationError):
        weak_popov(V)


@given(matrices(3))
def test_weak_popov_preserves_determinant(V):
    assume(nonsingular(V))
    stats = ReductionStats()
    U = weak_popov(V, stats)
    assert U.is_weak_popov()
    det_v, det_u = poly_det(V.rows()), poly_det(U.rows())
    # unimodular transformation: determinants agree up to a unit
    assert det_u.degree == det_v.degree
    assert det_u == det_v.scale(det_u.leading_coefficient / det_v.leading_coefficient)
    # weak Popov matrices have zero orthogonality defect
    assert U.rowdeg() == det_u.degree
    assert stats.orthogonality_defect == V.rowdeg() - det_v.degree >= 0


@given(matrices(3), st.lists(st.lists(st.integers(0, 15), max_size=3), min_size=3, max_size=3))
def test_predictable_degree(V, mults):
    assume(nonsingular(V))
    U = weak_popov(V)
    b = combination(U, [P(*m, GF=GF16) for m in mults])
    assume(degree(b) != NEG_INF)
    lp = leading_position(b)
    u = next(row for row in U.rows() if leading_position(row) == lp)
    assert degree(u) <= degree(b)


# minimal rows


def test_minimal_row_examples():
    U = PolyMatrix.from_lists(GF4, [[[1], []], [[], [0, 1]]])
    assert minimal_row(U, [1]) == [P(), P(0, 1)]
    U = PolyMatrix.from_lists(GF4, [[[0, 1], []], [[], [0, 0, 1]]])
    assert minimal_row(U, [0, 1]) == [P(0, 1), P()]


def test_minimal_row_ties_go_to_least_position():
    U = PolyMatrix.from_lists(GF4, [[[], [0, 1]], [[0, 1], []]])
    assert minimal_row(U, [0, 1]) == [P(0, 1), P()]


def test_minimal_row_needs_a_candidate():
    U = PolyMatrix.identity(GF4, 2)
    with pytest.raises(ModuleMinimisationError):
        minimal_row(U, [5])


# embeddings


def test_weight_spec_permutation():
    assert WeightSpec(nu=3, w=(0, 0, 0)).pi == (0, 1, 2)
    assert WeightSpec(nu=2, w=(0, 1)).pi == (0, 1)
    assert WeightSpec(nu=2, w=(3, 2)).pi == (1, 0)
    assert WeightSpec(nu=4, w=(7, 5, 4, 9)).pi == (3, 1, 0, 2)


def test_weight_spec_validation():
    with pytest.raises(ModuleMinimisationError):
        WeightSpec(nu=0, w=(1,))
    with pytest.raises(ModuleMinimisationError):
        WeightSpec(nu=2, w=(1, -1))


def test_pi_embed_examples():
    V = PolyMatrix.from_lists(GF4, [[[1], [1]]])
    assert pi_embed(V, WeightSpec(nu=2, w=(0, 1))).row(0) == [P(1), P(1)]
    spec = WeightSpec(nu=2, w=(3, 2))
    embedded = pi_embed(V, spec)
    assert embedded.row(0) == [P(0, 1), P(0, 1)]
    assert pi_extract(embedded.row(0), spec) == [P(1), P(1)]


def test_pi_extract_rejects_non_divisible_entries():
    spec = WeightSpec(nu=2, w=(4, 0))
    with pytest.raises(ModuleMinimisationError):
        pi_extract([P(1), P(1)], spec)


@given(
    matrices(3, max_len=3, GF=GF4),
    st.integers(1, 4),
    st.lists(st.integers(0, 12), min_size=3, max_size=3),
)
def test_w_and_pi_embeddings_agree_on_weak_popov(V, nu, w):
    spec = WeightSpec(nu=nu, w=tuple(w))
    assume(all(d != NEG_INF for d in V.row_degrees()))
    assert w_embed(V, spec).is_weak_popov() == pi_embed(V, spec).is_weak_popov()


@given(matrices(3, max_len=3), st.integers(1, 4), st.lists(st.integers(0, 12), min_size=3, max_size=3))
def test_minimize_weighted_matches_w_embedding(V, nu, w):
    assume(nonsingular(V))
    spec = WeightSpec(nu=nu, w=tuple(w))
    row = minimize_weighted(V, spec, range(3))
    # the minimal row degree of the W-embedded module is the minimal weighted degree
    U = weak_popov(w_embed(V, spec))
    assert weighted_degree(row, spec) == min(U.row_degrees())


def test_unweighted_minimisation_is_plain_minimal_row():
    V = PolyMatrix.from_lists(GF16, [[[1, 2], [0, 1], [3]], [[0, 0, 1], [1], [1]], [[5], [], [0, 0, 0, 1]]])
    spec = WeightSpec(nu=1, w=(0, 0, 0))
    row = minimize_weighted(V, spec, range(3))
    assert degree(row) == min(weak_popov(V).row_degrees())
