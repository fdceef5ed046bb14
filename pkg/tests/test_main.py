import json
import math
from pathlib import Path

import pytest

from data_processing.StateFactory import StateFactory, state_to_file
from main import EXIT_ENTANGLED, EXIT_INPUT_ERROR, EXIT_SEPARABLE, main

GOLDEN_DIR = Path(__file__).parent / "golden"


def write_state(path, state):
    path.write_text(state_to_file(state).model_dump_json(), encoding='utf-8')
    return str(path)


def test_analyze_bell_state(tmp_path, capsys):
    code = main(["analyze", write_state(tmp_path / "bell.json", StateFactory.bell(1))])
    out = capsys.readouterr().out
    assert code == EXIT_ENTANGLED
    assert "Fully separable: no" in out
    assert "E = 1 (concurrence convention, N = 1)" in out
    assert "E = 1.41421356237 (all-modes convention, N = 1)" in out
    assert "Bipartitions: 1 (0 factorable, tolerance 1e-09)" in out


def test_analyze_product_state(tmp_path, capsys):
    code = main(["analyze", write_state(tmp_path / "product.json", StateFactory.basis([2, 2], [1, 2]))])
    out = capsys.readouterr().out
    assert code == EXIT_SEPARABLE
    assert "Fully separable: yes" in out
    assert "On Segre variety: yes" in out
    assert "Largest minor" not in out


def test_input_errors(tmp_path):
    malformed = tmp_path / "malformed.json"
    malformed.write_text("{ not json", encoding='utf-8')
    assert main(["analyze", str(malformed)]) == EXIT_INPUT_ERROR
    assert main(["analyze", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR

    unnormalized = tmp_path / "unnormalized.json"
    unnormalized.write_text('{"dims": [2, 2], "amps": [[1, 0], [0, 0], [0, 0], [1, 0]]}', encoding='utf-8')
    assert main(["analyze", str(unnormalized)]) == EXIT_INPUT_ERROR
    assert main(["analyze", str(unnormalized), "--normalize"]) == EXIT_ENTANGLED

    degenerate = tmp_path / "degenerate.json"
    degenerate.write_text('{"dims": [1, 2], "amps": [[1, 0], [0, 0]]}', encoding='utf-8')
    assert main(["analyze", str(degenerate)]) == EXIT_INPUT_ERROR

    short = tmp_path / "short.json"
    short.write_text('{"dims": [2, 2], "amps": [[1, 0]]}', encoding='utf-8')
    assert main(["analyze", str(short)]) == EXIT_INPUT_ERROR

    assert main(["analyze", str(short), "--eps", "0"]) == EXIT_INPUT_ERROR


def test_analyze_json_is_stable(tmp_path, capsys):
    path = write_state(tmp_path / "w.json", StateFactory.w(3))
    main(["analyze", path, "--json"])
    first = capsys.readouterr().out
    main(["analyze", path, "--json"])
    assert capsys.readouterr().out == first

    report = json.loads(first)
    assert list(report) == ["dims", "fully_separable", "per_bipartition", "measure_E", "concurrence",
                            "on_segre_variety", "witness", "tolerance", "consistency_error"]
    assert report["measure_E"]["value"] == pytest.approx(math.sqrt(8 / 3), abs=1e-12)
    assert report["measure_E"]["convention"] == "all-modes"
    assert len(report["per_bipartition"]) == 3
    assert report["per_bipartition"][0]["partition"] == {"m": 3, "block": [1]}
    assert len(report["witness"]["value"]) == 2


def test_minors_of_ghz(tmp_path, capsys):
    path = write_state(tmp_path / "ghz.json", StateFactory.ghz(3))
    assert main(["minors", path, "--mode", "1", "--nonzero"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "Minors of shape (2,2,2): 1"
    assert lines[1:] == ["mode 1  rows (1,2)  cols (1,4)  a_{1,1,1}*a_{2,2,2} - a_{1,2,2}*a_{2,1,1} = 0.5+0i"]

    assert main(["minors", path]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "Minors of shape (2,2,2): 18"

    assert main(["minors", path, "--json", "--nonzero"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["count"] == 3
    assert document["minors"][0]["value"] == pytest.approx([0.5, 0.0])


def test_minors_of_product_state(tmp_path, capsys):
    path = write_state(tmp_path / "product.json", StateFactory.basis([2, 2, 2], [2, 1, 2]))
    assert main(["minors", path, "--mode", "2", "--nonzero"]) == 0
    assert capsys.readouterr().out == "Minors of shape (2,2,2): 0\n"


def test_ideal_command(tmp_path, capsys):
    assert main(["ideal", "--dims", "2,2,2", "--segre"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 12

    assert main(["ideal", "--dims", "2,2", "--mode", "1"]) == 0
    assert capsys.readouterr().out == "a_{1,1}*a_{2,2} - a_{1,2}*a_{2,1}\n"

    out = tmp_path / "segre4.json"
    assert main(["ideal", "--dims", "2,2,2,2", "--segre", "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding='utf-8'))["count"] == 88

    assert main(["ideal", "--dims", "2,2,2,2", "--block", "3,4", "--format", "latex"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 36

    assert main(["ideal", "--dims", "1,2", "--mode", "1"]) == EXIT_INPUT_ERROR
    with pytest.raises(SystemExit):
        main(["ideal", "--dims", "2,2"])


def test_gen_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "product", "2,2,2", "--seed", "7", "--out", str(first)]) == 0
    assert main(["gen", "product", "2,2,2", "--seed", "7", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert main(["analyze", str(first)]) == EXIT_SEPARABLE


def test_gen_w_state(tmp_path):
    out = tmp_path / "w.json"
    assert main(["gen", "w", "3", "--out", str(out)]) == 0
    document = json.loads(out.read_text(encoding='utf-8'))
    assert document["dims"] == [2, 2, 2]
    for position in (1, 2, 4):
        assert document["amps"][position] == pytest.approx([1 / math.sqrt(3), 0.0])


def test_gen_ghz_then_analyze(tmp_path, capsys):
    out = tmp_path / "ghz.json"
    assert main(["gen", "ghz", "3", "--out", str(out)]) == 0
    assert main(["analyze", str(out)]) == EXIT_ENTANGLED
    assert "E = 1.73205080757 (all-modes convention, N = 1)" in capsys.readouterr().out


@pytest.mark.parametrize("args, expected", [
    (["bell", "2"], EXIT_ENTANGLED),
    (["ghz", "4"], EXIT_ENTANGLED),
    (["w", "5"], EXIT_ENTANGLED),
    (["basis", "2,3,2", "--index", "2,3,1"], EXIT_SEPARABLE),
    (["haar", "2,3"], EXIT_ENTANGLED),
    (["product", "3,2,2"], EXIT_SEPARABLE),
    (["product-haar", "2,2,2,2", "--blocks", "1,2;3,4"], EXIT_ENTANGLED),
])
def test_gen_round_trip(tmp_path, args, expected):
    out = tmp_path / "state.json"
    assert main(["gen", *args, "--seed", "3", "--out", str(out)]) == 0
    assert main(["analyze", str(out)]) == expected


def test_gen_errors():
    assert main(["gen", "bell", "7"]) == EXIT_INPUT_ERROR
    assert main(["gen", "ghz", "three"]) == EXIT_INPUT_ERROR
    assert main(["gen", "product-haar", "2,2", "--blocks", "1"]) == EXIT_INPUT_ERROR
    with pytest.raises(SystemExit):
        main(["gen", "cluster", "3"])


def rounded(document):
    """The JSON document with every float cut to the 12 significant digits of the text output."""
    if isinstance(document, float):
        return float(f"{document:.12g}") + 0.0
    if isinstance(document, list):
        return [rounded(item) for item in document]
    if isinstance(document, dict):
        return {key: rounded(value) for key, value in document.items()}
    return document


def test_analyze_json_matches_golden_file(tmp_path, capsys):
    assert main(["analyze", write_state(tmp_path / "bell.json", StateFactory.bell(1)), "--json"]) == EXIT_ENTANGLED
    actual = rounded(json.loads(capsys.readouterr().out))
    golden = rounded(json.loads((GOLDEN_DIR / "bell_report.json").read_text(encoding='utf-8')))
    assert json.dumps(actual) == json.dumps(golden)


def test_non_finite_amplitudes_are_input_errors(tmp_path, capsys):
    nan_state = tmp_path / "nan.json"
    nan_state.write_text('{"dims": [2, 2], "amps": [[NaN, 0], [0, 0], [0, 0], [1, 0]]}', encoding='utf-8')
    assert main(["minors", str(nan_state)]) == EXIT_INPUT_ERROR
    assert main(["analyze", str(nan_state)]) == EXIT_INPUT_ERROR
    assert "nan" not in capsys.readouterr().out

    inf_state = tmp_path / "inf.json"
    inf_state.write_text('{"dims": [2, 2], "amps": [[Infinity, 0], [0, 0], [0, 0], [1, 0]]}', encoding='utf-8')
    assert main(["analyze", str(inf_state), "--normalize"]) == EXIT_INPUT_ERROR


def test_gen_then_analyze_a_large_product_state(tmp_path, capsys):
    out = tmp_path / "large.json"
    assert main(["gen", "product", "64,4096", "--seed", "2", "--out", str(out)]) == 0
    assert main(["analyze", str(out)]) == EXIT_SEPARABLE
    lines = capsys.readouterr().out.splitlines()
    assert "Fully separable: yes" in lines
    assert "On Segre variety: yes" in lines
