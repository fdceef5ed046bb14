import itertools
import logging
import math
from typing import Iterator, Optional

import numpy as np

from data_processing.TensorProcessor import matricize
from model.EntanglementError import DegenerateMode
from model.Matricization import Matricization
from model.MinorId import MinorId
from model.MinorValue import MinorValue
from model.PureStateTensor import PureStateTensor
from model.Shape import Shape

# row pairs x column pairs above which the exhaustive minor scan of a cut is skipped
MAX_MINOR_EVALUATIONS = 2 ** 22
# minors evaluated at once while streaming
MINOR_CHUNK = 2 ** 20


def pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The 0-based index pairs (i, j), i < j, of 0..n-1 in lexicographic order."""
    return np.triu_indices(n, k=1)


def pair_at(n: int, position: int) -> tuple[int, int]:
    """The 0-based pair at ``position`` of ``pair_indices(n)``."""
    i = 0
    while position >= n - 1 - i:
        position -= n - 1 - i
        i += 1
    return i, i + 1 + position


def pair_chunks(n: int, size: int = MINOR_CHUNK) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """
    The pairs of ``pair_indices(n)`` in consecutive slices, without building the whole list.

    A slice holds every pair of one or more first indices and at most ``size`` pairs, unless a single first index
    already has more.

    Args:
        n (int): The number of indices.
        size (int): The preferred slice length.

    Yields:
        tuple[int, numpy.ndarray, numpy.ndarray]: The position of the first pair of the slice and its 0-based
            first and second indices.
    """
    offset, i = 0, 0
    while i < n - 1:
        stop, count = i + 1, n - 1 - i
        while stop < n - 1 and count + n - 1 - stop <= size:
            count += n - 1 - stop
            stop += 1
        lengths = np.arange(n - 1 - i, n - 1 - stop, -1)
        first = np.repeat(np.arange(i, stop), lengths)
        starts = np.repeat(np.cumsum(lengths) - lengths, lengths)
        second = np.arange(count) - starts + first + 1
        yield offset, first, second
        offset += count
        i = stop


def minor_count(rows: int, cols: int) -> int:
    return math.comb(rows, 2) * math.comb(cols, 2)


def minor_chunks(matrix: np.ndarray, size: int = MINOR_CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """
    Stream the 2x2 minors of a matrix in bounded slices.

    The outer loop runs over the pairs of the shorter side, the inner one over slices of the pairs of the longer
    side. Every value is computed with the operands and operations of ``matrix_minors``.

    Args:
        matrix (numpy.ndarray): A complex matrix.
        size (int): The preferred number of minors per slice.

    Yields:
        tuple[numpy.ndarray, numpy.ndarray]: The positions of the minors in ``matrix_minors`` order and their values.
    """
    rows, cols = matrix.shape
    col_pairs = math.comb(cols, 2)
    if rows <= cols:
        for p, (k, l) in enumerate(zip(*pair_indices(rows))):
            top, bottom = matrix[k], matrix[l]
            for offset, c, d in pair_chunks(cols, size):
                values = top[c] * bottom[d] - top[d] * bottom[c]
                yield p * col_pairs + offset + np.arange(values.size), values
    else:
        for q, (c, d) in enumerate(zip(*pair_indices(cols))):
            left, right = matrix[:, c], matrix[:, d]
            for offset, k, l in pair_chunks(rows, size):
                values = left[k] * right[l] - right[k] * left[l]
                yield (offset + np.arange(values.size)) * col_pairs + q, values


def scan_minors(matrix: np.ndarray, size: int = MINOR_CHUNK) -> tuple[float, int]:
    """
    The largest minor modulus of a matrix and the first position reaching it, in ``matrix_minors`` order.

    Memory stays bounded by ``size`` minors whatever the matrix size.
    """
    best, best_position = -1.0, 0
    for positions, values in minor_chunks(matrix, size):
        moduli = np.abs(values)
        top = float(moduli.max())
        if top >= best:
            first = int(positions[moduli == top].min())
            if top > best or first < best_position:
                best, best_position = top, first
    return max(best, 0.0), best_position


def matrix_squared_minor_sum(matrix: np.ndarray, limit: int = MAX_MINOR_EVALUATIONS) -> float:
    """
    The sum of |minor|^2 over every 2x2 minor of a matrix.

    Up to ``limit`` minors the squares are streamed into one compensated sum. Above it the sum is taken as
    sum_{i<j} s_i^2 s_j^2 over the singular values s (Cauchy-Binet), whose terms are all non-negative.

    Args:
        matrix (numpy.ndarray): A complex matrix.
        limit (int): The largest number of minors summed directly.

    Returns:
        float: The sum of squared moduli.
    """
    rows, cols = matrix.shape
    if minor_count(rows, cols) <= limit:
        squares = ((values.real ** 2 + values.imag ** 2).tolist() for _, values in minor_chunks(matrix))
        return math.fsum(itertools.chain.from_iterable(squares))
    logging.debug(f"Summing the {minor_count(rows, cols)} minors of a {rows} x {cols} matrix through its "
                  f"singular values")
    squares = np.linalg.svd(matrix, compute_uv=False) ** 2
    tails = np.cumsum(squares[::-1])[::-1]
    return math.fsum((squares[:-1] * tails[1:]).tolist())


def matrix_minors(matrix: np.ndarray) -> np.ndarray:
    """
    Every 2x2 minor of a matrix.

    Args:
        matrix (numpy.ndarray): A complex matrix with at least two rows and two columns.

    Returns:
        numpy.ndarray: A flat array; entry (row pair p, column pair q) sits at p * C(cols, 2) + q and holds
            M[k, c] * M[l, c'] - M[k, c'] * M[l, c] for the p-th pair k < l and the q-th pair c < c'.
    """
    row_k, row_l = pair_indices(matrix.shape[0])
    col_c, col_d = pair_indices(matrix.shape[1])
    top, bottom = matrix[row_k], matrix[row_l]
    values = top[:, col_c] * bottom[:, col_d] - top[:, col_d] * bottom[:, col_c]
    return values.reshape(-1)


def require_mode(shape: Shape, mode: int) -> None:
    shape.require_subsystem(mode)
    if shape.dims[mode - 1] < 2 or shape.complement_dim(mode) < 2:
        raise DegenerateMode(f"Mode {mode} of shape {shape.dims} has a matricization side of dimension 1")


def mode_minor_values(state: PureStateTensor, mode: int) -> np.ndarray:
    """The values of the minors of ``enumerate_minors(state, mode)`` as a flat complex array, same order."""
    require_mode(state.shape, mode)
    return matrix_minors(matricize(state, (mode,)).matrix)


def squared_minor_sum(values: np.ndarray) -> float:
    """The correctly rounded sum of |value|^2, independent of the summation order."""
    return math.fsum((values.real ** 2 + values.imag ** 2).tolist())


def mode_squared_minor_sum(state: PureStateTensor, mode: int, limit: int = MAX_MINOR_EVALUATIONS) -> float:
    """The sum of |minor|^2 over the minors of ``enumerate_minors(state, mode)``, in bounded memory."""
    require_mode(state.shape, mode)
    return matrix_squared_minor_sum(matricize(state, (mode,)).matrix, limit)


def minor_at(state: PureStateTensor, mode: int, position: int) -> MinorValue:
    """The minor at ``position`` of ``enumerate_minors(state, mode)``, without enumerating the others."""
    require_mode(state.shape, mode)
    matrix = matricize(state, (mode,)).matrix
    rows, cols = matrix.shape
    p, q = divmod(position, math.comb(cols, 2))
    k, l = pair_at(rows, p)
    c, d = pair_at(cols, q)
    value = matrix[k, c] * matrix[l, d] - matrix[k, d] * matrix[l, c]
    minor_id = MinorId(mode=mode, row_pair=(k + 1, l + 1), col_pair=(c + 1, d + 1))
    return MinorValue(id=minor_id, value=complex(value))


def enumerate_minors(state: PureStateTensor, mode: int) -> list[MinorValue]:
    """
    Enumerate the 2x2 minors of the mode-``mode`` matricization.

    Args:
        state (PureStateTensor): The state.
        mode (int): The 1-based subsystem indexing the rows.

    Raises:
        DegenerateMode: If a side of the matricization has dimension 1.

    Returns:
        list[MinorValue]: C(N_mode, 2) * C(prod_{i != mode} N_i, 2) minors, ordered by (row pair, column pair).
    """
    values = mode_minor_values(state, mode)
    row_k, row_l = pair_indices(state.dims[mode - 1])
    col_c, col_d = pair_indices(state.shape.complement_dim(mode))

    minors = []
    position = 0
    for k, l in zip(row_k.tolist(), row_l.tolist()):
        for c, d in zip(col_c.tolist(), col_d.tolist()):
            minor_id = MinorId(mode=mode, row_pair=(k + 1, l + 1), col_pair=(c + 1, d + 1))
            minors.append(MinorValue(id=minor_id, value=complex(values[position])))
            position += 1
    return minors


def all_minors(state: PureStateTensor) -> list[MinorValue]:
    """
    The minors of every mode, mode 1 first.

    A minor exposed by several modes is listed once per mode.

    Raises:
        DegenerateMode: If some subsystem has dimension 1.
    """
    state.shape.require_analyzable()
    return [minor for mode in range(1, state.m + 1) for minor in enumerate_minors(state, mode)]


def on_segre_variety(state: PureStateTensor, eps: float = 1e-9,
                     limit: int = MAX_MINOR_EVALUATIONS) -> tuple[bool, Optional[MinorValue]]:
    """
    Test whether the state is a product state by checking that every mode minor vanishes.

    The minors are streamed. A mode with more than ``limit`` minors is only scanned when the square root of its
    squared minor sum, an upper bound of every modulus, reaches ``eps``.

    Args:
        state (PureStateTensor): A normalized state.
        eps (float): The absolute threshold on minor moduli.
        limit (int): The number of minors of a mode above which the bound is tried first.

    Returns:
        tuple: (True, None) on the Segre variety; otherwise (False, a minor of maximal modulus), the first such
            minor in ``all_minors`` order.
    """
    if eps <= 0:
        raise ValueError("The tolerance must be positive")
    state.shape.require_analyzable()

    best_mode, best_position, best_modulus = 0, 0, -1.0
    for mode in range(1, state.m + 1):
        matrix = matricize(state, (mode,)).matrix
        if minor_count(*matrix.shape) > limit and math.sqrt(matrix_squared_minor_sum(matrix, limit)) < eps:
            logging.debug(f"Every minor of mode {mode} is below {eps:g}")
            continue
        modulus, position = scan_minors(matrix)
        if modulus > best_modulus:
            best_mode, best_position, best_modulus = mode, position, modulus

    if best_modulus < eps:
        return True, None
    return False, minor_at(state, best_mode, best_position)


def max_minor_modulus(matricization: Matricization,
                      limit: int = MAX_MINOR_EVALUATIONS) -> Optional[float]:
    """
    The largest modulus of a 2x2 minor of a matricization.

    Args:
        matricization (Matricization): The unfolding.
        limit (int): The largest number of minors scanned; above it the scan is skipped.

    Returns:
        Optional[float]: The maximal modulus, or None if the scan was skipped.
    """
    count = minor_count(*matricization.matrix.shape)
    if count > limit:
        logging.warning(f"Skipping the scan of {count} minors of the cut {matricization.row_subsystems}")
        return None
    if count == 0:
        return 0.0
    return scan_minors(matricization.matrix)[0]


def matricization_multi_index(shape: Shape, row_subsystems: tuple[int, ...], col_subsystems: tuple[int, ...],
                              row: int, col: int) -> tuple[int, ...]:
    """
    The 1-based tensor multi-index of entry (row, col) of a matricization.

    Args:
        shape (Shape): The tensor shape.
        row_subsystems: The ordered row subsystems.
        col_subsystems: The ordered column subsystems.
        row (int): The 0-based row.
        col (int): The 0-based column.

    Returns:
        tuple[int, ...]: (i_1, ..., i_m), 1-based.
    """
    index = [0] * shape.m
    row_dims = tuple(shape.dims[j - 1] for j in row_subsystems)
    col_dims = tuple(shape.dims[j - 1] for j in col_subsystems)
    for j, i in zip(row_subsystems, np.unravel_index(row, row_dims)):
        index[j - 1] = int(i) + 1
    for j, i in zip(col_subsystems, np.unravel_index(col, col_dims)):
        index[j - 1] = int(i) + 1
    return tuple(index)


def minor_terms(shape: Shape, minor_id: MinorId) -> tuple[tuple[tuple[int, ...], tuple[int, ...]],
                                                        tuple[tuple[int, ...], tuple[int, ...]]]:
    """
    The four amplitudes of a minor as 1-based multi-indices.

    Returns:
        tuple: ((A, D), (B, C)) such that the minor equals alpha_A * alpha_D - alpha_B * alpha_C.
    """
    rows = (minor_id.mode,)
    cols = tuple(j for j in range(1, shape.m + 1) if j != minor_id.mode)
    (k, l), (c, d) = minor_id.row_pair, minor_id.col_pair

    def entry(row: int, col: int) -> tuple[int, ...]:
        return matricization_multi_index(shape, rows, cols, row - 1, col - 1)

    return (entry(k, c), entry(l, d)), (entry(k, d), entry(l, c))
