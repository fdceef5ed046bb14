import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from data_processing.MinorProcessor import MINOR_CHUNK, all_minors, enumerate_minors, matrix_minors, \
    max_minor_modulus, minor_at, minor_chunks, minor_terms, mode_minor_values, mode_squared_minor_sum, \
    on_segre_variety, pair_at, pair_chunks, pair_indices, scan_minors, squared_minor_sum
from data_processing.StateFactory import RandomKind, StateFactory, make_state
from data_processing.TensorProcessor import matricize, mode_purity
from model.EntanglementError import DegenerateMode, SubsystemOutOfRange
from model.MinorId import MinorId
from model.Shape import Shape
from tests.corpus import TEST_SHAPES, haar_corpus


def expected_minor_count(dims) -> int:
    return sum(math.comb(n, 2) * math.comb(math.prod(dims) // n, 2) for n in dims)


@pytest.mark.parametrize("dims", TEST_SHAPES + [(3, 2, 4), (2, 5)])
def test_minor_count_law(dims):
    state = StateFactory.random_state(Shape.of(dims), seed=0)
    assert len(all_minors(state)) == expected_minor_count(dims)


def test_minor_count_goldens():
    assert len(all_minors(StateFactory.ghz(3))) == 18
    assert len(all_minors(StateFactory.ghz(4))) == 112
    assert len(enumerate_minors(StateFactory.bell(1), 1)) == 1


def test_matrix_minors_order():
    matrix = np.arange(9, dtype=np.complex128).reshape(3, 3) ** 2
    expected = []
    for k, l in [(0, 1), (0, 2), (1, 2)]:
        for c, d in [(0, 1), (0, 2), (1, 2)]:
            expected.append(matrix[k, c] * matrix[l, d] - matrix[k, d] * matrix[l, c])
    assert np.array_equal(matrix_minors(matrix), np.array(expected))


@settings(max_examples=50, deadline=None)
@given(matrix=arrays(np.float64, (2, 2), elements=st.floats(min_value=-10, max_value=10)))
def test_single_minor_is_the_determinant(matrix):
    assert matrix_minors(matrix.astype(np.complex128))[0] == pytest.approx(np.linalg.det(matrix), abs=1e-9)


def test_ghz_mode_one_minors(ghz3):
    minors = enumerate_minors(ghz3, 1)
    assert len(minors) == 6
    nonzero = [minor for minor in minors if minor.modulus >= 1e-9]
    assert len(nonzero) == 1
    assert nonzero[0].id == MinorId(mode=1, row_pair=(1, 2), col_pair=(1, 4))
    assert nonzero[0].value == pytest.approx(0.5)


def test_minor_ids_are_canonical(w3):
    for minor in all_minors(w3):
        k, l = minor.id.row_pair
        c, d = minor.id.col_pair
        assert 1 <= k < l and 1 <= c < d


def test_minor_values_match_their_terms():
    state = StateFactory.random_state(Shape(dims=(2, 3, 2)), seed=4)
    for minor in all_minors(state):
        (a, d), (b, c) = minor_terms(state.shape, minor.id)
        value = state.amplitude(*a) * state.amplitude(*d) - state.amplitude(*b) * state.amplitude(*c)
        assert minor.value == pytest.approx(value, abs=1e-15)


def test_minor_terms_of_three_qubits():
    shape = Shape(dims=(2, 2, 2))
    terms = minor_terms(shape, MinorId(mode=1, row_pair=(1, 2), col_pair=(1, 2)))
    assert terms == (((1, 1, 1), (2, 1, 2)), ((1, 1, 2), (2, 1, 1)))
    terms = minor_terms(shape, MinorId(mode=3, row_pair=(1, 2), col_pair=(1, 4)))
    assert terms == (((1, 1, 1), (2, 2, 2)), ((2, 2, 1), (1, 1, 2)))


def test_degenerate_and_out_of_range_modes():
    state = StateFactory.basis([1, 2], [1, 2])
    with pytest.raises(DegenerateMode):
        enumerate_minors(state, 1)
    with pytest.raises(DegenerateMode):
        all_minors(state)
    with pytest.raises(SubsystemOutOfRange):
        enumerate_minors(StateFactory.ghz(3), 4)


def test_product_states_are_on_the_variety(product_010):
    assert on_segre_variety(product_010) == (True, None)
    for state in haar_corpus((2, 3, 2), 20, kind=RandomKind.PRODUCT_HAAR):
        assert on_segre_variety(state)[0]


def test_entangled_witness_is_a_maximal_minor(phi_plus, w3):
    on_variety, witness = on_segre_variety(phi_plus)
    assert not on_variety
    assert witness.id.mode == 1
    assert witness.value == pytest.approx(0.5)

    on_variety, witness = on_segre_variety(w3)
    assert not on_variety
    assert witness.modulus == pytest.approx(max(minor.modulus for minor in all_minors(w3)))


def test_on_segre_variety_requires_positive_tolerance(ghz3):
    with pytest.raises(ValueError):
        on_segre_variety(ghz3, eps=0.0)


def test_max_minor_modulus(phi_plus_pairs):
    # the {1,2}|{3,4} unfolding is the rank-one outer product of two Bell vectors
    assert max_minor_modulus(matricize(phi_plus_pairs, (1, 2))) == pytest.approx(0.0, abs=1e-15)
    assert max_minor_modulus(matricize(phi_plus_pairs, (1, 3))) == pytest.approx(0.25)
    assert max_minor_modulus(matricize(phi_plus_pairs, (1, 3)), limit=10) is None


def test_max_minor_modulus_matches_enumeration():
    state = StateFactory.random_state(Shape(dims=(3, 2, 2)), seed=2)
    largest = max(minor.modulus for minor in enumerate_minors(state, 1))
    assert_allclose(max_minor_modulus(matricize(state, (1,))), largest, rtol=1e-14)


@pytest.mark.parametrize("dims", TEST_SHAPES)
def test_minor_purity_identity(dims):
    for state in haar_corpus(dims, 200, seed=50):
        for j in range(1, len(dims) + 1):
            lhs = 4 * squared_minor_sum(mode_minor_values(state, j))
            assert lhs == pytest.approx(2 * (1 - mode_purity(state, j)), abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(re=st.floats(min_value=-3, max_value=3), im=st.floats(min_value=-3, max_value=3),
       seed=st.integers(min_value=0, max_value=2 ** 32))
def test_minors_scale_quadratically(re, im, seed):
    scale = complex(re, im)
    matrix = matricize(StateFactory.random_state(Shape(dims=(2, 3, 2)), seed=seed), (2,)).matrix
    assert_allclose(matrix_minors(scale * matrix), scale ** 2 * matrix_minors(matrix), atol=1e-12)


def test_global_phase_keeps_the_verdict(w3, product_010):
    for state in (w3, product_010):
        rotated = make_state(state.shape, np.exp(0.7j) * state.amps)
        assert on_segre_variety(rotated)[0] == on_segre_variety(state)[0]


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (2, 2, 2)])
def test_minor_test_matches_rank_test(dims):
    corpus = haar_corpus(dims, 100, seed=70) + haar_corpus(dims, 100, seed=80, kind=RandomKind.PRODUCT_HAAR)
    for state in corpus:
        rank_one = all(np.linalg.svd(matricize(state, (j,)).matrix, compute_uv=False)[1] < 1e-9
                       for j in range(1, len(dims) + 1))
        assert on_segre_variety(state)[0] == rank_one


@pytest.mark.parametrize("n", [2, 3, 7, 40])
@pytest.mark.parametrize("size", [1, 5, 1000])
def test_pair_chunks_cover_the_pairs_in_order(n, size):
    offsets, firsts, seconds = [], [], []
    for offset, first, second in pair_chunks(n, size):
        offsets.append(offset)
        firsts.append(first)
        seconds.append(second)
    expected_first, expected_second = pair_indices(n)
    assert np.array_equal(np.concatenate(firsts), expected_first)
    assert np.array_equal(np.concatenate(seconds), expected_second)
    assert offsets == [sum(len(first) for first in firsts[:i]) for i in range(len(firsts))]


@pytest.mark.parametrize("n", [2, 5, 9])
def test_pair_at_inverts_the_pair_order(n):
    for position, (i, j) in enumerate(zip(*pair_indices(n))):
        assert pair_at(n, position) == (i, j)


@pytest.mark.parametrize("rows, cols", [(2, 9), (3, 7), (5, 5), (7, 3), (12, 2)])
@pytest.mark.parametrize("size", [1, 4, MINOR_CHUNK])
def test_streamed_minors_match_materialized_minors(rows, cols, size):
    rng = np.random.default_rng(100 * rows + cols)
    matrix = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    values = matrix_minors(matrix)
    streamed = np.zeros_like(values)
    for positions, chunk in minor_chunks(matrix, size):
        streamed[positions] = chunk
    assert_allclose(streamed, values, rtol=1e-15, atol=1e-15)

    moduli = np.abs(values)
    largest, position = scan_minors(matrix, size)
    assert largest == pytest.approx(float(moduli.max()), rel=1e-14)
    assert position == int(np.argmax(moduli))


def test_scan_keeps_the_first_of_equal_minors():
    # modulus 1 at positions 1, 6 and 14; the column-pair loop meets position 6 first
    matrix = np.array([[1, 0, 0], [0, 0, 1], [0, 0, 0], [0, 1, 0]], dtype=np.complex128)
    assert scan_minors(matrix, 1) == (1.0, 1)
    assert scan_minors(matrix.T, 1) == (1.0, int(np.argmax(np.abs(matrix_minors(matrix.T)))))


@pytest.mark.parametrize("dims", TEST_SHAPES)
def test_singular_value_sum_matches_direct_sum(dims):
    for state in haar_corpus(dims, 50, seed=120):
        for j in range(1, len(dims) + 1):
            direct = mode_squared_minor_sum(state, j)
            assert direct == pytest.approx(squared_minor_sum(mode_minor_values(state, j)), rel=1e-14)
            assert mode_squared_minor_sum(state, j, limit=0) == pytest.approx(direct, rel=1e-12, abs=1e-15)


def test_singular_value_sum_vanishes_on_products():
    for state in haar_corpus((3, 2, 4), 20, seed=130, kind=RandomKind.PRODUCT_HAAR):
        for j in (1, 2, 3):
            assert mode_squared_minor_sum(state, j, limit=0) < 1e-24


def test_bounded_variety_test_agrees_with_full_scan(w3, ghz3):
    corpus = haar_corpus((2, 3, 2), 30, seed=140) + [w3, ghz3]
    corpus += haar_corpus((2, 3, 2), 30, seed=140, kind=RandomKind.PRODUCT_HAAR)
    for state in corpus:
        assert on_segre_variety(state, limit=0) == on_segre_variety(state)


def test_minor_at_matches_enumeration():
    state = StateFactory.random_state(Shape(dims=(3, 2, 2)), seed=6)
    for mode in (1, 2, 3):
        minors = enumerate_minors(state, mode)
        for position in (0, len(minors) // 2, len(minors) - 1):
            minor = minor_at(state, mode, position)
            assert minor.id == minors[position].id
            assert minor.value == pytest.approx(minors[position].value, abs=1e-15)


def test_large_product_state_is_on_the_variety():
    state = StateFactory.random_state(Shape(dims=(64, 4096)), RandomKind.PRODUCT_HAAR, seed=5)
    assert on_segre_variety(state) == (True, None)
    assert max_minor_modulus(matricize(state, (1,))) is None
