import io

import numpy as np
import pytest

import psiparam.errors as errors
import psiparam.files as files
import psiparam.parser as parser


@pytest.fixture
def json_parser():
    return parser.JsonParser()


@pytest.fixture
def csv_parser():
    return parser.CsvParser()


def test_json_unparse_uses_round_trip_precision(json_parser):
    text = json_parser.unparse(
        {"p": [1 / 3, 0.5, 1.0], "ordering": "lex-down0", "witness": None}
    )
    assert text == (
        '{"p": [0.33333333333333331, 0.5, 1], '
        '"ordering": "lex-down0", "witness": null}'
    )
    assert json_parser.parse(text)["p"][0] == 1 / 3


def test_json_unparse_numpy_values(json_parser):
    data = {
        "matrix": np.eye(2),
        "deterministic": np.bool_(False),
        "steps": np.int64(3),
        "zero": -0.0,
    }
    assert json_parser.unparse(data) == (
        '{"matrix": [[1, 0], [0, 1]], "deterministic": false, '
        '"steps": 3, "zero": 0}'
    )


@pytest.mark.parametrize("value", [float("nan"), float("inf")])
def test_json_unparse_rejects_non_finite_numbers(json_parser, value):
    with pytest.raises(errors.ValidationError):
        json_parser.unparse({"p": [value]})


@pytest.mark.parametrize(
    "text, line",
    [
        ('{"p": [0.5', 1),
        ('{\n"p": [0.5,\n]}', 3),
    ],
)
def test_json_parse_errors_carry_the_location(json_parser, text, line):
    with pytest.raises(errors.ParseError) as info:
        json_parser.parse(text)
    assert info.value.line == line
    assert info.value.column is not None


def test_json_parse_needs_an_object(json_parser):
    with pytest.raises(errors.ParseError):
        json_parser.parse("[0.5, 0.5]")


def test_csv_unparse(csv_parser):
    text = csv_parser.unparse(
        {"header": ["t", "p1"], "rows": [[0.0, 1.0], [0.5, 0.25]]}
    )
    assert text == "t,p1\n0,1\n0.5,0.25"


def test_csv_unparse_of_a_record(csv_parser):
    text = csv_parser.unparse(
        {"type": "error", "name": "UsageError", "message": "bad, value"}
    )
    assert text == 'type,name,message\nerror,UsageError,"bad, value"'


def test_csv_parse(csv_parser):
    document = csv_parser.parse("t,p1\n0,1\n0.5,0.25\n")
    assert document == {"header": ["t", "p1"], "rows": [[0.0, 1.0], [0.5, 0.25]]}


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("t,p1\n0,1\n0.5\n", 3),
        ("t,p1\nzero,1\n", 2),
    ],
)
def test_csv_parse_errors(csv_parser, text, line):
    with pytest.raises(errors.ParseError) as info:
        csv_parser.parse(text)
    assert info.value.line == line


def test_parser_options():
    assert parser.ParserOption("json").parser_class is parser.JsonParser
    assert parser.ParserOption.CSV.value == "csv"


def test_read_document(tmp_path, monkeypatch, json_parser):
    path = tmp_path / "dist.json"
    path.write_text('{"p": [0.25, 0.75]}', encoding="utf-8")
    assert files.read_document(str(path), json_parser) == {"p": [0.25, 0.75]}
    assert files.read_document(' {"p": [1]}', json_parser) == {"p": [1]}

    monkeypatch.setattr("sys.stdin", io.StringIO('{"p": [0.5, 0.5]}'))
    assert files.read_document("-", json_parser) == {"p": [0.5, 0.5]}

    with pytest.raises(OSError):
        files.read_document(str(tmp_path / "missing.json"), json_parser)


def test_open_output(tmp_path, capsys):
    path = tmp_path / "out.csv"
    with files.open_output(str(path)) as stream:
        stream.write("t\n")
    assert path.read_text(encoding="utf-8") == "t\n"
    with files.open_output("-") as stream:
        stream.write("p\n")
    assert capsys.readouterr().out == "p\n"


def test_read_document_rejects_invalid_utf8(tmp_path, json_parser):
    path = tmp_path / "dist.json"
    path.write_bytes(b'{"p": [1]}\xff')
    with pytest.raises(errors.ParseError, match="offset 10"):
        files.read_document(str(path), json_parser)
