import math
from typing import ClassVar

import numpy as np

from data_processing.MinorProcessor import MAX_MINOR_EVALUATIONS, mode_squared_minor_sum, require_mode, \
    squared_minor_sum
from data_processing.TensorProcessor import mode_purity
from model.EntanglementError import ShapeTooLarge, WrongArity, WrongShape
from model.MeasureConfig import MeasureConfig
from model.MeasureResult import MeasureConvention, MeasureResult
from model.PureStateTensor import PureStateTensor

# each unordered minor stands for 4 ordered index tuples (k <-> l swaps on both sides)
ORDERED_MULTIPLICITY = 4


def _result(partials: list[tuple[int, float]], cfg: MeasureConfig, convention: MeasureConvention) -> MeasureResult:
    value = math.sqrt(cfg.norm_const * math.fsum(partial for _, partial in partials))
    return MeasureResult(value=value, per_mode=partials if cfg.report_breakdown else [], config=cfg,
                         convention=convention)


class MeasureProcessor:
    """
    Entanglement measures built from squared 2x2 minors.

    Attributes:
        cfg (MeasureConfig): The normalization constant and breakdown settings.
    """

    # (modes exposing the minor, (A, D), (B, C)) for alpha_A alpha_D - alpha_B alpha_C, in the order of the
    # expanded three-qubit formula; the weight of a term is the number of modes exposing it
    THREE_QUBIT_TERMS: ClassVar[list[tuple[tuple[int, ...], tuple, tuple]]] = [
        ((1, 2), ((1, 1, 1), (2, 2, 1)), ((1, 2, 1), (2, 1, 1))),
        ((1, 2), ((1, 1, 2), (2, 2, 2)), ((1, 2, 2), (2, 1, 2))),
        ((1, 3), ((1, 1, 1), (2, 1, 2)), ((1, 1, 2), (2, 1, 1))),
        ((1, 3), ((1, 2, 1), (2, 2, 2)), ((1, 2, 2), (2, 2, 1))),
        ((2, 3), ((1, 1, 1), (1, 2, 2)), ((1, 1, 2), (1, 2, 1))),
        ((2, 3), ((2, 1, 1), (2, 2, 2)), ((2, 1, 2), (2, 2, 1))),
        ((3,), ((1, 1, 1), (2, 2, 2)), ((1, 1, 2), (2, 2, 1))),
        ((2,), ((1, 1, 1), (2, 2, 2)), ((1, 2, 1), (2, 1, 2))),
        ((1,), ((1, 1, 1), (2, 2, 2)), ((1, 2, 2), (2, 1, 1))),
        ((1,), ((1, 1, 2), (2, 2, 1)), ((1, 2, 1), (2, 1, 2))),
        ((2,), ((1, 1, 2), (2, 2, 1)), ((1, 2, 2), (2, 1, 1))),
        ((3,), ((1, 2, 1), (2, 1, 2)), ((1, 2, 2), (2, 1, 1))),
    ]

    def __init__(self, cfg: MeasureConfig = MeasureConfig()):
        self.cfg = cfg

    def concurrence_bipartite(self, state: PureStateTensor) -> MeasureResult:
        """
        The generalized concurrence of a two-partite state.

        sqrt(N * 4 * sum over unordered minors |minor|^2), equal to the ordered sum over all (i, j, k, l). For two
        qubits and N = 1 this is the usual 2 |a_11 a_22 - a_12 a_21|.

        Args:
            state (PureStateTensor): A normalized two-partite state.

        Raises:
            WrongArity: If the state does not have exactly two subsystems.
            DegenerateMode: If a subsystem has dimension 1.

        Returns:
            MeasureResult: The concurrence.
        """
        if state.m != 2:
            raise WrongArity(f"The bipartite concurrence needs 2 subsystems, got {state.m}")
        partial = ORDERED_MULTIPLICITY * mode_squared_minor_sum(state, 1)
        return _result([(1, partial)], self.cfg, MeasureConvention.CONCURRENCE)

    def concurrence_ordered_sum(self, state: PureStateTensor) -> MeasureResult:
        """
        The bipartite concurrence evaluated literally over every ordered index tuple (i, j, k, l).

        Raises:
            WrongArity: If the state does not have exactly two subsystems.
            ShapeTooLarge: If there are more than 2^22 ordered tuples.
        """
        if state.m != 2:
            raise WrongArity(f"The bipartite concurrence needs 2 subsystems, got {state.m}")
        require_mode(state.shape, 1)
        if state.shape.total_dim ** 2 > MAX_MINOR_EVALUATIONS:
            raise ShapeTooLarge(f"The ordered sum over shape {state.dims} has {state.shape.total_dim ** 2} terms")
        a = state.tensor()
        minors = np.einsum('ik,jl->ijkl', a, a) - np.einsum('il,jk->ijkl', a, a)
        return _result([(1, squared_minor_sum(minors.reshape(-1)))], self.cfg, MeasureConvention.ORDERED_SUM)

    def measure_multipartite(self, state: PureStateTensor) -> MeasureResult:
        """
        The multipartite measure E = sqrt(N * sum_j 4 * sum over the unordered mode-j minors |minor|^2).

        For m = 2 both modes contribute the same minors, so E is sqrt(2) times the concurrence.

        Args:
            state (PureStateTensor): A normalized state with at least two subsystems.

        Raises:
            WrongArity: If the state has a single subsystem.
            DegenerateMode: If a subsystem has dimension 1.

        Returns:
            MeasureResult: E with one partial sum per mode.
        """
        if state.m < 2:
            raise WrongArity("The multipartite measure needs at least 2 subsystems")
        state.shape.require_analyzable()
        partials = [(j, ORDERED_MULTIPLICITY * mode_squared_minor_sum(state, j))
                    for j in range(1, state.m + 1)]
        return _result(partials, self.cfg, MeasureConvention.ALL_MODES)

    def three_qubit_explicit(self, state: PureStateTensor) -> MeasureResult:
        """
        E for three qubits, evaluated term by term from the expanded 12-term formula.

        Raises:
            WrongShape: If the shape is not (2, 2, 2).
        """
        if state.dims != (2, 2, 2):
            raise WrongShape(f"The explicit three-qubit formula needs shape (2, 2, 2), got {state.dims}")

        def alpha(index: tuple[int, ...]) -> complex:
            return state.amplitude(*index)

        squares = []
        for modes, (a, d), (b, c) in self.THREE_QUBIT_TERMS:
            term = alpha(a) * alpha(d) - alpha(b) * alpha(c)
            squares.append((modes, term.real ** 2 + term.imag ** 2))

        weighted = math.fsum(len(modes) * square for modes, square in squares)
        value = math.sqrt(ORDERED_MULTIPLICITY * self.cfg.norm_const * weighted)
        partials = [(j, ORDERED_MULTIPLICITY * math.fsum(square for modes, square in squares if j in modes))
                    for j in (1, 2, 3)]
        return MeasureResult(value=value, per_mode=partials if self.cfg.report_breakdown else [], config=self.cfg,
                             convention=MeasureConvention.THREE_QUBIT_EXPLICIT)

    def measure_from_purities(self, state: PureStateTensor) -> MeasureResult:
        """E through the linear entropies: sqrt(N * sum_j 2 (1 - Tr rho_j^2))."""
        if state.m < 2:
            raise WrongArity("The multipartite measure needs at least 2 subsystems")
        state.shape.require_analyzable()
        partials = [(j, max(0.0, 2.0 * (1.0 - mode_purity(state, j)))) for j in range(1, state.m + 1)]
        return _result(partials, self.cfg, MeasureConvention.PURITY)


def concurrence_bipartite(state: PureStateTensor, cfg: MeasureConfig = MeasureConfig()) -> MeasureResult:
    return MeasureProcessor(cfg).concurrence_bipartite(state)


def measure_multipartite(state: PureStateTensor, cfg: MeasureConfig = MeasureConfig()) -> MeasureResult:
    return MeasureProcessor(cfg).measure_multipartite(state)


def three_qubit_explicit(state: PureStateTensor, cfg: MeasureConfig = MeasureConfig()) -> MeasureResult:
    return MeasureProcessor(cfg).three_qubit_explicit(state)
