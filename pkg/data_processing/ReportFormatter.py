import json
import logging
from pathlib import Path
from typing import Any, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateNotFound

from data_processing.MinorProcessor import minor_terms
from model.MeasureResult import MeasureResult
from model.MinorValue import MinorValue
from model.Shape import Shape
from model.SeparabilityReport import SeparabilityReport
from model.SymbolicGenerator import variable_name

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / 'templates'


def format_real(value: Optional[float]) -> str:
    """
    Format a real number with 12 significant digits.

    Args:
        value (Optional[float]): The number, or None for a value that was not computed.

    Returns:
        str: The formatted number, or ``n/a``.
    """
    if value is None:
        return "n/a"
    return f"{value:.12g}"


def format_complex(value: complex) -> str:
    """
    Format a complex number as ``re+imi`` with 12 significant digits per part.

    Args:
        value (complex): The number.

    Returns:
        str: The formatted number, e.g. ``0.5+0i``.
    """
    return f"{value.real:.12g}{value.imag:+.12g}i"


def format_yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def format_pair(pair: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, pair)) + ")"


def render_text_template(template_name: str, template_data: dict[str, Any]) -> str:
    """Render one of the text templates with the provided data."""
    env = Environment(loader=FileSystemLoader(TEMPLATE_DIR), undefined=StrictUndefined, trim_blocks=True,
                      lstrip_blocks=True, keep_trailing_newline=True)
    env.filters.update(real=format_real, cplx=format_complex, yes_no=format_yes_no, pair=format_pair)
    try:
        return env.get_template(template_name).render(template_data)
    except TemplateNotFound as e:
        logging.error(f"Template not found: {e}")
        raise


def minor_expression(shape: Shape, minor: MinorValue) -> str:
    """The minor as a binomial in the 1-based amplitude names, factors in matricization order."""
    (a, d), (b, c) = minor_terms(shape, minor.id)
    return f"{variable_name(a)}*{variable_name(d)} - {variable_name(b)}*{variable_name(c)}"


def measure_data(result: MeasureResult) -> dict[str, Any]:
    return {
        "value": result.value,
        "convention": str(result.convention),
        "norm_const": result.config.norm_const,
        "per_mode": result.per_mode,
    }


def report_template_data(report: SeparabilityReport) -> dict[str, Any]:
    """
    Flatten a separability report for the human-readable template.

    Args:
        report (SeparabilityReport): The report.

    Returns:
        dict[str, Any]: The template data.
    """
    shape = Shape(dims=report.dims)
    witness = None
    if report.witness is not None:
        witness = {
            "mode": report.witness.id.mode,
            "rows": report.witness.id.row_pair,
            "cols": report.witness.id.col_pair,
            "expression": minor_expression(shape, report.witness),
            "value": report.witness.value,
        }
    return {
        "dims": report.dims,
        "fully_separable": report.fully_separable,
        "on_segre_variety": report.on_segre_variety,
        "witness": witness,
        "measure": measure_data(report.measure_E),
        "concurrence": measure_data(report.concurrence) if report.concurrence is not None else None,
        "tolerance": report.tolerance,
        "bipartitions": [
            {
                "label": v.partition.label,
                "factorable": v.factorable,
                "second_singular_value": v.second_singular_value,
                "max_minor_modulus": v.max_minor_modulus,
            }
            for v in report.per_bipartition
        ],
        "factorable_count": len(report.factorable_partitions),
        "consistency_error": report.consistency_error,
    }


def format_report(report: SeparabilityReport) -> str:
    return render_text_template('text/report.txt', report_template_data(report))


def format_minors(shape: Shape, minors: list[MinorValue]) -> str:
    """Render a minor table, one row per minor with 1-based indices."""
    rows = [
        {
            "mode": minor.id.mode,
            "rows": minor.id.row_pair,
            "cols": minor.id.col_pair,
            "expression": minor_expression(shape, minor),
            "value": minor.value,
        }
        for minor in minors
    ]
    return render_text_template('text/minors.txt', {"dims": shape.dims, "minors": rows})


def to_json(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def report_json(report: SeparabilityReport) -> str:
    return to_json(report.model_dump(mode="json"))


def minors_json(shape: Shape, minors: list[MinorValue]) -> str:
    return to_json({
        "dims": list(shape.dims),
        "count": len(minors),
        "minors": [dict(minor.model_dump(mode="json"), expression=minor_expression(shape, minor))
                   for minor in minors],
    })
