import pytest
from hypothesis import given, settings

from conftest import systems
from partialcp.sysfile import SystemFileError, load_system, parse_system, to_json, to_text


@settings(max_examples=100, deadline=None)
@given(systems())
def test_round_trip(system):
    assert parse_system(to_json(system)) == system
    assert parse_system(to_text(system)) == system


def test_comments_and_blank_lines():
    s = parse_system("# sigma_2\n\na 1  # first\nb 1\n\na -> b\n")
    assert s.map.pairs == (("a", "b"),)


@pytest.mark.parametrize("text,match,line", [
    ("a 0\n", "block 'a' has invalid dimension 0", 1),
    ("a 1\nb x\n", "block 'b' has invalid dimension", 2),
    ("a 1\na 1\n", "duplicate block id 'a'", 2),
    ("a 1\nb 1\nc 1\na -> c\nb -> c\n", "map not injective at target c", 5),
    ("a 1\nb 1\na -> b\na -> a\n", "not a function at source a", 4),
    ("a 1\nb 2\na -> b\n", "dim 2", 3),
    ("a 1\na -> q\n", "unknown block 'q'", 2),
    ("a 1\na ->\n", "expected 'src -> dst'", 2),
    ("a 1\na -> a\nb 1\n", "before map lines", 3),
    ("a 1 2\n", "expected 'id dim'", 1),
])
def test_line_errors(text, match, line):
    with pytest.raises(SystemFileError, match=match) as e:
        parse_system(text)
    assert e.value.line == line


def test_json_errors():
    with pytest.raises(SystemFileError) as e:
        parse_system('{"blocks": [\n  {"id": "a", "dim": 1},\n]}')
    assert e.value.line == 3
    with pytest.raises(SystemFileError, match=r"block 'a' has invalid dimension 0 \(need a positive integer\) \(blocks\[0\]\)"):
        parse_system('{"blocks": [{"id": "a", "dim": 0}], "map": []}')
    with pytest.raises(SystemFileError, match="injective at target b"):
        parse_system('{"blocks": [{"id": "a", "dim": 1}, {"id": "b", "dim": 1}], "map": [["a", "b"], ["b", "b"]]}')
    with pytest.raises(SystemFileError, match="keys"):
        parse_system('{"nodes": []}')
    with pytest.raises(SystemFileError, match="invalid dimension True"):
        parse_system('{"blocks": [{"id": "a", "dim": true}]}')


def test_missing_file(tmp_path):
    with pytest.raises(SystemFileError, match="cannot read"):
        load_system(str(tmp_path / "absent.txt"))
