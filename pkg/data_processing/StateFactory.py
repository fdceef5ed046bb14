import logging
from enum import StrEnum
from functools import reduce
from typing import ClassVar, Optional, Sequence

import numpy as np

from model.EntanglementError import BadArity, BadPartition, LengthMismatch, NotFinite, NotNormalized, \
    UnnormalizedFactor, ZeroState
from model.PureStateTensor import NormPolicy, PureStateTensor
from model.Shape import Shape
from model.StateFile import StateFile

NORM_TOLERANCE = 1e-9


class StateName(StrEnum):
    BELL = "bell"
    GHZ = "ghz"
    W = "w"
    PRODUCT = "product"
    BASIS = "basis"


class RandomKind(StrEnum):
    HAAR = "haar"
    PRODUCT_HAAR = "product-haar"


def make_state(shape: Shape, amps, policy: NormPolicy = NormPolicy.REQUIRE_NORMALIZED) -> PureStateTensor:
    """
    Build a pure state tensor from flat row-major amplitudes.

    Args:
        shape (Shape): The local dimensions.
        amps: Any array-like of total_dim complex amplitudes, last subsystem index fastest.
        policy (NormPolicy): Reject (default) or rescale amplitudes whose norm is not 1.

    Raises:
        LengthMismatch: If the number of amplitudes differs from shape.total_dim.
        NotFinite: If an amplitude is NaN or infinite.
        ZeroState: If every amplitude is zero.
        NotNormalized: If the policy requires unit norm and the norm deviates from 1 by more than 1e-9.

    Returns:
        PureStateTensor: The read-only state.
    """
    amps = np.array(amps, dtype=np.complex128).reshape(-1)
    if amps.size != shape.total_dim:
        raise LengthMismatch(f"Shape {shape.dims} needs {shape.total_dim} amplitudes, got {amps.size}")
    if not np.isfinite(amps).all():
        position = int(np.flatnonzero(~np.isfinite(amps))[0])
        raise NotFinite(f"Amplitude {position} is {amps[position]}")
    if not np.any(amps):
        raise ZeroState("The zero vector is not a state")

    norm = np.linalg.norm(amps)
    if not np.isfinite(norm):
        raise NotFinite("The norm of the amplitudes overflows")
    if policy == NormPolicy.AUTO_NORMALIZE:
        amps = amps / norm
    elif abs(norm - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"The amplitudes have norm {norm:.12g}; pass the normalize option to rescale them")

    amps.setflags(write=False)
    return PureStateTensor(shape=shape, amps=amps, norm_policy=policy)


def state_from_file(state_file: StateFile, normalize: bool = False) -> PureStateTensor:
    """
    Build a state from a parsed state file.

    Args:
        state_file (StateFile): The validated file content.
        normalize (bool): Rescale to unit norm even if the file does not ask for it.

    Returns:
        PureStateTensor: The state.
    """
    policy = NormPolicy.AUTO_NORMALIZE if normalize or state_file.normalize else NormPolicy.REQUIRE_NORMALIZED
    amps = [complex(re, im) for re, im in state_file.amps]
    return make_state(Shape.of(state_file.dims), amps, policy)


def state_to_file(state: PureStateTensor) -> StateFile:
    return StateFile(dims=list(state.dims), amps=[(float(a.real), float(a.imag)) for a in state.amps])


def _haar_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    vector = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return vector / np.linalg.norm(vector)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw a Haar-random n x n unitary.

    The Q factor of a complex Gaussian matrix, with the phases of the diagonal of R moved into Q.

    Args:
        n (int): The dimension.
        rng (numpy.random.Generator): The random generator.

    Returns:
        numpy.ndarray: The unitary.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_local_unitaries(shape: Shape, seed: int) -> list[np.ndarray]:
    """One Haar-random unitary per subsystem, deterministic given the seed."""
    rng = np.random.default_rng(seed)
    return [random_unitary(n, rng) for n in shape.dims]


class StateFactory:
    """
    Constructors for the named and random states used as fixtures and by the ``gen`` command.

    All indices in the public arguments are 1-based.
    """

    BELL_AMPS: ClassVar[dict[int, tuple[float, float, float, float]]] = {
        1: (1.0, 0.0, 0.0, 1.0),  # Phi+
        2: (1.0, 0.0, 0.0, -1.0),  # Phi-
        3: (0.0, 1.0, 1.0, 0.0),  # Psi+
        4: (0.0, 1.0, -1.0, 0.0),  # Psi-
    }

    @classmethod
    def bell(cls, k: int = 1) -> PureStateTensor:
        if k not in cls.BELL_AMPS:
            raise BadArity(f"Bell state index must be in 1..4, got {k}")
        amps = np.array(cls.BELL_AMPS[k], dtype=np.complex128) / np.sqrt(2.0)
        return make_state(Shape(dims=(2, 2)), amps)

    @classmethod
    def ghz(cls, m: int) -> PureStateTensor:
        if m < 2:
            raise BadArity(f"A GHZ state needs at least 2 subsystems, got {m}")
        amps = np.zeros(2 ** m, dtype=np.complex128)
        amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
        return make_state(Shape.of((2,) * m), amps)

    @classmethod
    def w(cls, m: int) -> PureStateTensor:
        if m < 2:
            raise BadArity(f"A W state needs at least 2 subsystems, got {m}")
        amps = np.zeros(2 ** m, dtype=np.complex128)
        # exactly one subsystem in its second level: flat positions 2^0, 2^1, ..., 2^(m-1)
        amps[[1 << bit for bit in range(m)]] = 1.0 / np.sqrt(m)
        return make_state(Shape.of((2,) * m), amps)

    @classmethod
    def product(cls, vectors: Sequence) -> PureStateTensor:
        """
        The Segre image of a tuple of local unit vectors, i.e. their outer product.

        Args:
            vectors: One normalized complex vector per subsystem.

        Raises:
            BadArity: If no vector is given.
            UnnormalizedFactor: If a vector is not normalized within 1e-9.

        Returns:
            PureStateTensor: The product state.
        """
        if len(vectors) == 0:
            raise BadArity("A product state needs at least one factor")
        factors = [np.array(v, dtype=np.complex128).reshape(-1) for v in vectors]
        for j, factor in enumerate(factors, start=1):
            if abs(np.linalg.norm(factor) - 1.0) > NORM_TOLERANCE:
                raise UnnormalizedFactor(f"Factor {j} has norm {np.linalg.norm(factor):.12g}")
        shape = Shape.of(tuple(f.size for f in factors))
        return make_state(shape, reduce(np.multiply.outer, factors).reshape(-1))

    @classmethod
    def basis(cls, dims: Sequence[int], index: Sequence[int]) -> PureStateTensor:
        """The computational basis state |i_1, ..., i_m> for a 1-based ``index``."""
        if len(dims) != len(index):
            raise BadArity(f"Index {tuple(index)} does not match dims {tuple(dims)}")
        vectors = []
        for n, i in zip(dims, index):
            if not 1 <= i <= n:
                raise BadArity(f"Index {i} is out of range 1..{n}")
            vectors.append(np.eye(n, dtype=np.complex128)[i - 1])
        return cls.product(vectors)

    @classmethod
    def named_state(cls, name: StateName, *, k: int = 1, m: int = 3, vectors: Optional[Sequence] = None,
                    dims: Optional[Sequence[int]] = None, index: Optional[Sequence[int]] = None) -> PureStateTensor:
        """
        Build one of the named fixture states.

        Args:
            name (StateName): Bell(k), GHZ(m), W(m), Product(vectors) or Basis(dims, index).
            k (int): The Bell state number, 1..4 for Phi+, Phi-, Psi+, Psi-.
            m (int): The number of qubits of a GHZ or W state.
            vectors: The local unit vectors of a product state.
            dims: The dimensions of a basis state.
            index: The 1-based index of a basis state.

        Returns:
            PureStateTensor: The state.
        """
        match StateName(name):
            case StateName.BELL:
                return cls.bell(k)
            case StateName.GHZ:
                return cls.ghz(m)
            case StateName.W:
                return cls.w(m)
            case StateName.PRODUCT:
                return cls.product(vectors if vectors is not None else [])
            case StateName.BASIS:
                if dims is None or index is None:
                    raise BadArity("A basis state needs its dims and index")
                return cls.basis(dims, index)

    @classmethod
    def random_state(cls, shape: Shape, kind: RandomKind = RandomKind.HAAR,
                     blocks: Optional[Sequence[Sequence[int]]] = None, seed: int = 0) -> PureStateTensor:
        """
        Draw a random state, deterministic given the seed.

        Haar states are standard complex Gaussian vectors rescaled to unit norm. Product-Haar states tensor
        independent Haar states drawn for each block in the order the blocks are given.

        Args:
            shape (Shape): The local dimensions.
            kind (RandomKind): Haar or ProductHaar.
            blocks: For ProductHaar, 1-based subsystem blocks partitioning 1..m (default: one block per subsystem).
            seed (int): The seed of numpy's PCG64 generator.

        Raises:
            BadPartition: If the blocks do not partition the subsystems.

        Returns:
            PureStateTensor: The random state.
        """
        rng = np.random.default_rng(seed)
        if RandomKind(kind) == RandomKind.HAAR:
            return make_state(shape, _haar_vector(rng, shape.total_dim))

        if blocks is None:
            blocks = [[j] for j in range(1, shape.m + 1)]
        blocks = [sorted(block) for block in blocks]
        flat = [j for block in blocks for j in block]
        if any(not block for block in blocks) or sorted(flat) != list(range(1, shape.m + 1)):
            raise BadPartition(f"Blocks {blocks} do not partition the subsystems 1..{shape.m}")

        factors = []
        for block in blocks:
            block_dims = tuple(shape.dims[j - 1] for j in block)
            factors.append(_haar_vector(rng, int(np.prod(block_dims))).reshape(block_dims))
        tensor = reduce(np.multiply.outer, factors)
        # axes are ordered block after block; put them back in subsystem order
        tensor = np.transpose(tensor, np.argsort([j - 1 for j in flat]))
        logging.debug(f"Drew a product-Haar state of shape {shape.dims} with blocks {blocks}")
        return make_state(shape, tensor.reshape(-1))
