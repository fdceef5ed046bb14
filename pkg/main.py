import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from data_processing.IdealProcessor import RenderFormat, bipartition_ideal, mode_ideal, render, segre_ideal
from data_processing.MinorProcessor import all_minors, enumerate_minors
from data_processing.ReportFormatter import format_minors, format_report, minors_json, report_json
from data_processing.SeparabilityProcessor import SeparabilityProcessor
from data_processing.StateFactory import RandomKind, StateFactory, StateName, state_from_file, state_to_file
from model.CliConfig import CliConfig, OutputMode
from model.EntanglementError import BadArity, ParseError
from model.PartitionSpec import PartitionSpec
from model.PureStateTensor import PureStateTensor
from model.Shape import Shape
from model.StateFile import StateFile

EXIT_SEPARABLE = 0
EXIT_ENTANGLED = 1
EXIT_INPUT_ERROR = 2


def setup_logging(verbose: bool = False):
    """Configure logging with proper formatting and levels."""
    # Remove existing handlers
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s'
    )


def validation_details(ve: ValidationError) -> list[str]:
    return [f"/{'/'.join(map(str, e['loc']))}: {e['type']}, {e['msg']}" for e in ve.errors()]


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a comma-separated list of integers, got '{text}'")


def parse_blocks(text: str) -> list[list[int]]:
    return [parse_int_list(block) for block in text.split(";")]


def load_state(state_file: Path, cfg: CliConfig) -> PureStateTensor:
    """
    Read and validate a state file.

    Args:
        state_file (Path): The JSON state file.
        cfg (CliConfig): The settings (``normalize`` rescales the amplitudes instead of rejecting them).

    Raises:
        ParseError: If the file cannot be read or is not a valid state document.

    Returns:
        PureStateTensor: The state.
    """
    logging.info(f"Loading state from '{state_file}'...")
    try:
        content = state_file.read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(f"Cannot read '{state_file}': {e.strerror}")
    try:
        parsed = StateFile.model_validate_json(content)
    except ValidationError as ve:
        raise ParseError(f"State file validation failed: {validation_details(ve)}")
    return state_from_file(parsed, normalize=cfg.normalize)


def write_output(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding='utf-8')
        logging.info(f"Wrote '{out}'")


def cmd_analyze(state_file: Path, cfg: CliConfig) -> int:
    """
    Analyse the separability of a state file and print the report.

    Returns:
        int: 0 if the state is fully separable, 1 if it is entangled.
    """
    state = load_state(state_file, cfg)
    report = SeparabilityProcessor(cfg.eps, cfg.measure_config).analyze(state)
    write_output(report_json(report) if cfg.output == OutputMode.JSON else format_report(report), None)
    return EXIT_SEPARABLE if report.fully_separable else EXIT_ENTANGLED


def cmd_minors(state_file: Path, mode: Optional[int], nonzero: bool, cfg: CliConfig) -> int:
    """Print the minors of one mode (or of every mode), optionally only those with modulus >= eps."""
    state = load_state(state_file, cfg)
    minors = enumerate_minors(state, mode) if mode is not None else all_minors(state)
    if nonzero:
        minors = [minor for minor in minors if minor.modulus >= cfg.eps]
    logging.info(f"Listing {len(minors)} minors")
    if cfg.output == OutputMode.JSON:
        write_output(minors_json(state.shape, minors), None)
    else:
        write_output(format_minors(state.shape, minors), None)
    return 0


def cmd_ideal(dims: list[int], mode: Optional[int], segre: bool, block: Optional[list[int]],
              output_format: RenderFormat, out: Optional[Path]) -> int:
    """Print the generators of a mode, bipartition or Segre ideal."""
    shape = Shape.of(dims)
    if segre:
        ideal = segre_ideal(shape)
    elif block is not None:
        ideal = bipartition_ideal(shape, PartitionSpec.of(block, shape.m))
    elif mode is not None:
        ideal = mode_ideal(shape, mode)
    else:
        raise BadArity("Choose one of --segre, --mode or --block")
    logging.info(f"{ideal.label} of shape {shape.dims}: {len(ideal.gens)} generators")
    write_output(render(ideal, output_format), out)
    return 0


def cmd_gen(kind: str, spec: Optional[str], index: Optional[list[int]], blocks: Optional[list[list[int]]],
            out: Optional[Path], cfg: CliConfig) -> int:
    """Write a named or random state as a state file."""
    match kind:
        case "bell":
            state = StateFactory.bell(int(spec or 1))
        case "ghz" | "w":
            state = StateFactory.named_state(StateName(kind), m=int(spec or 3))
        case "basis":
            dims = parse_int_list(spec or "")
            state = StateFactory.basis(dims, index or [1] * len(dims))
        case "haar":
            state = StateFactory.random_state(Shape.of(parse_int_list(spec or "")), RandomKind.HAAR, seed=cfg.seed)
        case "product":
            state = StateFactory.random_state(Shape.of(parse_int_list(spec or "")), RandomKind.PRODUCT_HAAR,
                                              seed=cfg.seed)
        case "product-haar":
            state = StateFactory.random_state(Shape.of(parse_int_list(spec or "")), RandomKind.PRODUCT_HAAR,
                                              blocks=blocks, seed=cfg.seed)
        case _:
            raise BadArity(f"Unknown state kind '{kind}'")
    write_output(state_to_file(state).model_dump_json(indent=2) + "\n", out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=1e-9, help="absolute threshold for sigma_2 and minors")
    common.add_argument("--norm-const", type=float, default=1.0, help="normalization constant of the measures")
    common.add_argument("--normalize", action="store_true", help="rescale input states to unit norm")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed of the random state generators")
    common.add_argument("--verbose", action="store_true", help="log debug messages")

    parser = argparse.ArgumentParser(prog="segrelibre",
                                     description="Entanglement analysis of pure multipartite states")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="separability report of a state file")
    analyze.add_argument("state_file", type=Path)

    minors = commands.add_parser("minors", parents=[common], help="2x2 minors of a state file")
    minors.add_argument("state_file", type=Path)
    minors.add_argument("--mode", type=int, help="1-based subsystem (default: every mode)")
    minors.add_argument("--nonzero", action="store_true", help="only minors with modulus >= eps")

    ideal = commands.add_parser("ideal", parents=[common], help="symbolic ideal generators")
    ideal.add_argument("--dims", type=parse_int_list, required=True, help="e.g. 2,2,2")
    target = ideal.add_mutually_exclusive_group(required=True)
    target.add_argument("--mode", type=int, help="1-based subsystem of a mode ideal")
    target.add_argument("--segre", action="store_true", help="the Segre ideal")
    target.add_argument("--block", type=parse_int_list, help="one side of a cut, e.g. 1,2")
    ideal.add_argument("--format", choices=[f.value for f in RenderFormat], default=RenderFormat.PLAIN_TEXT.value)
    ideal.add_argument("--out", type=Path)

    gen = commands.add_parser("gen", parents=[common], help="write a named or random state file")
    gen.add_argument("kind", choices=["bell", "ghz", "w", "basis", "haar", "product", "product-haar"])
    gen.add_argument("spec", nargs="?", help="Bell number, qubit count or dims such as 2,2,2")
    gen.add_argument("--index", type=parse_int_list, help="1-based index of a basis state")
    gen.add_argument("--blocks", type=parse_blocks, help="product-haar blocks such as '1,2;3'")
    gen.add_argument("--out", type=Path)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main function to handle command line execution."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    try:
        cfg = CliConfig(eps=args.eps, norm_const=args.norm_const, normalize=args.normalize, seed=args.seed,
                        output=OutputMode.JSON if args.json else OutputMode.HUMAN)
        match args.command:
            case "analyze":
                return cmd_analyze(args.state_file, cfg)
            case "minors":
                return cmd_minors(args.state_file, args.mode, args.nonzero, cfg)
            case "ideal":
                return cmd_ideal(args.dims, args.mode, args.segre, args.block, RenderFormat(args.format), args.out)
            case "gen":
                return cmd_gen(args.kind, args.spec, args.index, args.blocks, args.out, cfg)
    except ValidationError as ve:
        logging.error(f"Invalid input: {validation_details(ve)}")
    except (ValueError, argparse.ArgumentTypeError) as e:
        logging.error(f"{type(e).__name__}: {e}")
    except MemoryError:
        logging.error("Not enough memory for this shape")
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
