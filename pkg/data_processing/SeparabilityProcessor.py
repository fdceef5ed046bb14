import itertools
import logging
from typing import ClassVar, Optional

import numpy as np

from data_processing.MeasureProcessor import MeasureProcessor
from data_processing.MinorProcessor import max_minor_modulus, on_segre_variety, require_mode, scan_minors
from data_processing.TensorProcessor import matricize
from model.EntanglementError import BadPartition, NotSeparable, TooManySubsystems
from model.MeasureConfig import MeasureConfig
from model.PartitionSpec import PartitionSpec
from model.PureStateTensor import PureStateTensor
from model.SeparabilityReport import BipartitionVerdict, SeparabilityReport


def canonical_bipartitions(m: int) -> list[PartitionSpec]:
    """
    Every cut of m subsystems, as blocks containing subsystem 1, by block size then lexicographically.

    Returns:
        list[PartitionSpec]: The 2^(m-1) - 1 cuts.
    """
    partitions = []
    for size in range(1, m):
        for rest in itertools.combinations(range(2, m + 1), size - 1):
            partitions.append(PartitionSpec(m=m, block=(1,) + rest))
    return partitions


def schmidt_coefficients(state: PureStateTensor, part: PartitionSpec) -> np.ndarray:
    """
    The Schmidt coefficients of the state across a cut, in decreasing order.

    Args:
        state (PureStateTensor): The state.
        part (PartitionSpec): The cut.

    Raises:
        BadPartition: If the cut was built for a different number of subsystems.

    Returns:
        numpy.ndarray: The singular values of the matricization along ``part.block``.
    """
    if part.m != state.m:
        raise BadPartition(f"The cut {part.label} is for {part.m} subsystems, the state has {state.m}")
    return np.linalg.svd(matricize(state, part.block).matrix, compute_uv=False)


def bipartition_factorable(state: PureStateTensor, part: PartitionSpec, eps: float = 1e-9) -> tuple[bool, float]:
    """
    Decide whether the state factors as |phi_S> (x) |phi_S-bar> across a cut.

    Args:
        state (PureStateTensor): A normalized state.
        part (PartitionSpec): The cut.
        eps (float): The absolute threshold on the second singular value.

    Returns:
        tuple[bool, float]: (sigma_2 < eps, sigma_2), sigma_2 being 0 for a single Schmidt coefficient.
    """
    coefficients = schmidt_coefficients(state, part)
    second = float(coefficients[1]) if coefficients.size > 1 else 0.0
    return second < eps, second


def ideal_satisfied(state: PureStateTensor, part: PartitionSpec, eps: float = 1e-9) -> tuple[bool, float]:
    """
    Evaluate the ideal of "subsystem j is unentangled with the rest" at the state.

    Args:
        state (PureStateTensor): A normalized state.
        part (PartitionSpec): A cut splitting off a single subsystem j.
        eps (float): The absolute threshold on minor moduli.

    Raises:
        BadPartition: If neither side of the cut is a single subsystem.
        DegenerateMode: If N_j or the complementary dimension is 1.

    Returns:
        tuple[bool, float]: (every mode-j minor is below eps, the largest modulus).
    """
    j = part.single_mode
    if j is None:
        raise BadPartition(f"The cut {part.label} does not split off a single subsystem")
    require_mode(state.shape, j)
    largest, _ = scan_minors(matricize(state, (j,)).matrix)
    return largest < eps, largest


class SeparabilityProcessor:
    """
    Separability analysis of a pure state over every bipartition.

    Attributes:
        eps (float): The absolute threshold shared by the singular value and minor tests.
        cfg (MeasureConfig): The measure settings.
    """

    MAX_BIPARTITIONS: ClassVar[int] = 1024

    def __init__(self, eps: float = 1e-9, cfg: MeasureConfig = MeasureConfig()):
        if eps <= 0:
            raise ValueError("The tolerance must be positive")
        self.eps = eps
        self.cfg = cfg

    def verdict(self, state: PureStateTensor, part: PartitionSpec) -> BipartitionVerdict:
        factorable, second = bipartition_factorable(state, part, self.eps)
        return BipartitionVerdict(partition=part, factorable=factorable, second_singular_value=second,
                                  max_minor_modulus=max_minor_modulus(matricize(state, part.block)))

    def analyze(self, state: PureStateTensor) -> SeparabilityReport:
        """
        Check every cut of the state and compute its entanglement measure.

        Args:
            state (PureStateTensor): A normalized state with every N_j >= 2.

        Raises:
            TooManySubsystems: If there are more than 1024 cuts (m > 11).
            DegenerateMode: If a subsystem has dimension 1.

        Returns:
            SeparabilityReport: The verdicts; a disagreement between the rank test and the Segre variety test is
                recorded in ``consistency_error``.
        """
        m = state.m
        if 2 ** (m - 1) - 1 > self.MAX_BIPARTITIONS:
            raise TooManySubsystems(f"{m} subsystems give {2 ** (m - 1) - 1} cuts, more than "
                                    f"{self.MAX_BIPARTITIONS}")
        state.shape.require_analyzable()
        logging.debug(f"Analysing a state of shape {state.dims}")

        verdicts = [self.verdict(state, part) for part in canonical_bipartitions(m)]
        fully_separable = all(v.factorable for v in verdicts if v.partition.single_mode is not None)

        measures = MeasureProcessor(self.cfg)
        on_variety, witness = on_segre_variety(state, self.eps)
        consistency_error = None
        if on_variety != fully_separable:
            consistency_error = (f"The rank test says fully_separable={fully_separable} but the minor test says "
                                 f"on_segre_variety={on_variety} at tolerance {self.eps:g}")
            logging.warning(consistency_error)

        return SeparabilityReport(
            dims=state.dims,
            fully_separable=fully_separable,
            per_bipartition=verdicts,
            measure_E=measures.measure_multipartite(state),
            concurrence=measures.concurrence_bipartite(state) if m == 2 else None,
            on_segre_variety=on_variety,
            witness=witness,
            tolerance=self.eps,
            consistency_error=consistency_error,
        )

    def segre_factors(self, state: PureStateTensor) -> list[np.ndarray]:
        """
        Recover local states phi_1, ..., phi_m with alpha = phi_1 (x) ... (x) phi_m up to a global phase.

        The mode-j matricization of a product state has rank one; its leading left singular vector is phi_j.
        The global phase is put on phi_1.

        Args:
            state (PureStateTensor): A fully separable state.

        Raises:
            NotSeparable: If some single-subsystem cut is not factorable.

        Returns:
            list[numpy.ndarray]: One unit vector per subsystem.
        """
        state.shape.require_analyzable()
        factors = []
        for j in range(1, state.m + 1):
            matrix = matricize(state, (j,)).matrix
            u, s, _ = np.linalg.svd(matrix, full_matrices=False)
            if s.size > 1 and s[1] >= self.eps:
                raise NotSeparable(f"Subsystem {j} is entangled with the rest (sigma_2 = {s[1]:.12g})")
            factors.append(u[:, 0])

        product = factors[0]
        for factor in factors[1:]:
            product = np.multiply.outer(product, factor)
        overlap = np.vdot(product.reshape(-1), state.amps)
        factors[0] = factors[0] * (overlap / abs(overlap))
        return factors


def analyze(state: PureStateTensor, eps: float = 1e-9, cfg: Optional[MeasureConfig] = None) -> SeparabilityReport:
    return SeparabilityProcessor(eps, cfg or MeasureConfig()).analyze(state)
