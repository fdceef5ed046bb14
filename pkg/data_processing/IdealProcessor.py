import json
from enum import StrEnum

import numpy as np

from data_processing.MinorProcessor import pair_indices, require_mode
from model.EntanglementError import DegenerateMode
from model.IdealGenerators import IdealGenerators, IdealKind, IdealLabel
from model.PartitionSpec import PartitionSpec
from model.PureStateTensor import PureStateTensor
from model.Shape import Shape
from model.SymbolicGenerator import MultiIndex, SymbolicGenerator


class RenderFormat(StrEnum):
    PLAIN_TEXT = "plain"
    LATEX_LIKE = "latex"
    MACHINE_JSON = "json"


def index_matrix(shape: Shape, rows: tuple[int, ...]) -> np.ndarray:
    """
    The matricization of the flat position array 0..total_dim-1, laid out exactly like ``matricize``.

    Entry (r, c) is the flat position of the amplitude that ``matricize(state, rows).matrix[r, c]`` reads.
    """
    cols = tuple(j for j in range(1, shape.m + 1) if j not in rows)
    positions = np.arange(shape.total_dim).reshape(shape.dims)
    row_dim = int(np.prod([shape.dims[j - 1] for j in rows]))
    return np.transpose(positions, [j - 1 for j in rows + cols]).reshape(row_dim, -1)


def _multi_index(shape: Shape, position: int) -> MultiIndex:
    return tuple(int(i) + 1 for i in np.unravel_index(position, shape.dims))


def _minor_generators(shape: Shape, rows: tuple[int, ...]) -> list[SymbolicGenerator]:
    positions = index_matrix(shape, rows)
    col_c, col_d = pair_indices(positions.shape[1])
    generators = []
    for k, l in zip(*pair_indices(positions.shape[0])):
        for c, d in zip(col_c, col_d):
            positive = (_multi_index(shape, positions[k, c]), _multi_index(shape, positions[l, d]))
            negative = (_multi_index(shape, positions[k, d]), _multi_index(shape, positions[l, c]))
            generators.append(SymbolicGenerator.from_terms(positive, negative)[0])
    return generators


def mode_ideal(shape: Shape, j: int) -> IdealGenerators:
    """
    The ideal of "subsystem j is unentangled with the rest".

    Args:
        shape (Shape): The shape of the variables.
        j (int): The 1-based subsystem.

    Raises:
        DegenerateMode: If N_j or the complementary dimension is 1.

    Returns:
        IdealGenerators: The canonical 2x2 minors of the symbolic mode-j matricization, in the order of
            ``enumerate_minors`` (by row pair, then column pair).
    """
    require_mode(shape, j)
    return IdealGenerators(label=IdealLabel(kind=IdealKind.MODE, mode=j), shape=shape,
                           gens=_minor_generators(shape, (j,)))


def segre_ideal(shape: Shape) -> IdealGenerators:
    """
    The Segre ideal: the union of every mode ideal without repeated generators.

    Generators keep the order of their first appearance, mode 1 first.

    Raises:
        DegenerateMode: If some subsystem has dimension 1.
    """
    shape.require_analyzable()
    if shape.m < 2:
        raise DegenerateMode("The Segre ideal needs at least two subsystems")
    seen: dict[str, SymbolicGenerator] = {}
    for j in range(1, shape.m + 1):
        for generator in mode_ideal(shape, j).gens:
            seen.setdefault(generator.canonical_key, generator)
    return IdealGenerators(label=IdealLabel(kind=IdealKind.SEGRE), shape=shape, gens=list(seen.values()))


def bipartition_ideal(shape: Shape, part: PartitionSpec) -> IdealGenerators:
    """
    The ideal of the states factoring across a cut: the 2x2 minors of the matricization along ``part.block``.

    Raises:
        DegenerateMode: If a side of the cut has dimension 1.
    """
    rows = part.block
    row_dim = int(np.prod([shape.dims[j - 1] for j in rows]))
    if part.m != shape.m or row_dim < 2 or shape.total_dim // row_dim < 2:
        raise DegenerateMode(f"The cut {part.label} of shape {shape.dims} has a side of dimension 1")
    return IdealGenerators(label=IdealLabel(kind=IdealKind.BIPARTITION, partition=part), shape=shape,
                           gens=_minor_generators(shape, rows))


def evaluate(ideal: IdealGenerators, state: PureStateTensor) -> np.ndarray:
    """The values of the generators at the amplitudes of ``state``, in generator order."""
    if state.dims != ideal.shape.dims:
        raise DegenerateMode(f"The ideal is over shape {ideal.shape.dims}, the state has shape {state.dims}")
    tensor = state.tensor()

    def gather(term: int, factor: int) -> np.ndarray:
        indices = [(g.positive_term, g.negative_term)[term][factor] for g in ideal.gens]
        return np.array([tensor[tuple(i - 1 for i in index)] for index in indices], dtype=np.complex128)

    return gather(0, 0) * gather(0, 1) - gather(1, 0) * gather(1, 1)


def _latex(index: MultiIndex) -> str:
    return "\\alpha_{" + ",".join(map(str, index)) + "}"


def render(ideal: IdealGenerators, output_format: RenderFormat = RenderFormat.PLAIN_TEXT) -> str:
    """
    Render the generators as text.

    Args:
        ideal (IdealGenerators): The ideal.
        output_format (RenderFormat): ``plain`` (one ``a_{i1,...,im}`` binomial per line), ``latex``
            (``\\alpha_{...}`` names) or ``json`` (index tuples).

    Returns:
        str: The byte-deterministic rendering, ending with a newline.
    """
    match RenderFormat(output_format):
        case RenderFormat.PLAIN_TEXT:
            lines = [g.canonical_key for g in ideal.gens]
        case RenderFormat.LATEX_LIKE:
            lines = [f"{_latex(g.positive_term[0])}{_latex(g.positive_term[1])} - "
                     f"{_latex(g.negative_term[0])}{_latex(g.negative_term[1])}" for g in ideal.gens]
        case RenderFormat.MACHINE_JSON:
            document = {
                "label": str(ideal.label),
                "dims": list(ideal.shape.dims),
                "count": len(ideal.gens),
                "generators": [{"pos": [list(i) for i in g.positive_term],
                                "neg": [list(i) for i in g.negative_term]} for g in ideal.gens],
            }
            return json.dumps(document, indent=2) + "\n"
    return "\n".join(lines) + "\n"
