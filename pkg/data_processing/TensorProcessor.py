from typing import Iterable, Sequence

import numpy as np

from data_processing.StateFactory import make_state
from model.EntanglementError import BadArity, EmptyPartition
from model.Matricization import Matricization
from model.PureStateTensor import PureStateTensor


def matricize(state: PureStateTensor, rows: Iterable[int]) -> Matricization:
    """
    Unfold the state tensor into a matrix whose rows are indexed by the subsystems ``rows``.

    Row and column multi-indices are linearized row-major over their ordered subsystems, last index fastest;
    the columns use the remaining subsystems in ascending order. No arithmetic is performed on the amplitudes.

    Args:
        state (PureStateTensor): The state.
        rows: The ordered 1-based row subsystems, a nonempty proper subset of 1..m.

    Raises:
        EmptyPartition: If ``rows`` is empty, repeats a subsystem, covers every subsystem or leaves 1..m.

    Returns:
        Matricization: The unfolding.
    """
    rows = tuple(rows)
    m = state.m
    if not rows or len(set(rows)) != len(rows) or len(rows) >= m or any(not 1 <= j <= m for j in rows):
        raise EmptyPartition(f"Rows {rows} are not a nonempty proper subset of 1..{m}")
    cols = tuple(j for j in range(1, m + 1) if j not in rows)

    row_dim = int(np.prod([state.dims[j - 1] for j in rows]))
    matrix = np.transpose(state.tensor(), [j - 1 for j in rows + cols]).reshape(row_dim, -1)
    matrix = np.ascontiguousarray(matrix)
    matrix.setflags(write=False)
    return Matricization(shape=state.shape, row_subsystems=rows, col_subsystems=cols, matrix=matrix)


def fold(matricization: Matricization) -> PureStateTensor:
    """Reassemble the state tensor from one of its matricizations (inverse of ``matricize``)."""
    order = [j - 1 for j in matricization.row_subsystems + matricization.col_subsystems]
    tensor = matricization.matrix.reshape(matricization.row_dims + matricization.col_dims)
    return make_state(matricization.shape, np.transpose(tensor, np.argsort(order)).reshape(-1))


def reduced_density_matrix(state: PureStateTensor, j: int) -> np.ndarray:
    """The reduced density matrix rho_j = M M^dagger of subsystem ``j``, M being the mode-j matricization."""
    state.shape.require_subsystem(j)
    if state.m == 1:
        return np.outer(state.amps, state.amps.conj())
    matrix = matricize(state, (j,)).matrix
    return matrix @ matrix.conj().T


def mode_purity(state: PureStateTensor, j: int) -> float:
    """
    The purity Tr(rho_j^2) of the reduced state of subsystem ``j``.

    Args:
        state (PureStateTensor): A normalized state.
        j (int): The 1-based subsystem.

    Returns:
        float: A value in [1/N_j, 1].
    """
    rho = reduced_density_matrix(state, j)
    # rho is Hermitian, so Tr(rho^2) is the squared Frobenius norm
    return float(np.vdot(rho, rho).real)


def apply_local_unitaries(state: PureStateTensor, unitaries: Sequence[np.ndarray]) -> PureStateTensor:
    """
    Apply U_1 (x) U_2 (x) ... (x) U_m to the state.

    Args:
        state (PureStateTensor): The state.
        unitaries: One N_j x N_j unitary per subsystem.

    Raises:
        BadArity: If the number or the sizes of the unitaries do not match the shape.

    Returns:
        PureStateTensor: The transformed state.
    """
    if len(unitaries) != state.m:
        raise BadArity(f"Expected {state.m} local unitaries, got {len(unitaries)}")
    tensor = state.tensor()
    for axis, (n, unitary) in enumerate(zip(state.dims, unitaries)):
        if np.shape(unitary) != (n, n):
            raise BadArity(f"The unitary of subsystem {axis + 1} must be {n} x {n}")
        tensor = np.moveaxis(np.tensordot(unitary, tensor, axes=([1], [axis])), 0, axis)
    return make_state(state.shape, tensor.reshape(-1))
