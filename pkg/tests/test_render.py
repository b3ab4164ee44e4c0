import xml.etree.ElementTree as ET

import pytest

from conftest import load
from yinyang.grid import ClueViolation, DimensionError, parse_puzzle, parse_solution, serialize_puzzle
from yinyang.reduction import compile_drawing, embed_solution
from yinyang.render import RenderOptions, to_ascii, to_svg

SVG = "{http://www.w3.org/2000/svg}"


def test_ascii_matches_serializers():
    p = parse_puzzle("B.\n.W\n")
    assert to_ascii(p) == serialize_puzzle(p) == "B.\n.W\n"
    c = parse_solution("BB\nWW\n")
    assert to_ascii(p, c) == "Bb\nwW\n"


def test_ascii_one_by_two():
    assert to_ascii(parse_puzzle("B.\n"), parse_solution("BW\n")) == "Bw\n"


def test_mismatch_raises():
    p = parse_puzzle("B.\n.W\n")
    with pytest.raises(DimensionError):
        to_ascii(p, parse_solution("BW\n"))
    with pytest.raises(ClueViolation):
        to_svg(p, parse_solution("WW\nWW\n"))
    with pytest.raises(ValueError):
        RenderOptions(cell_size=0)


def _parse(svg):
    return ET.fromstring(svg.encode())


def test_svg_structure():
    p = parse_puzzle("B..\n..W\n")
    c = parse_solution("BBB\nWWW\n")
    root = _parse(to_svg(p, c, RenderOptions(cell_size=10)))
    assert root.get("width") == "30" and root.get("height") == "20"
    assert len(root.findall(f"{SVG}rect")) == 6
    circles = root.findall(f"{SVG}circle")
    assert len(circles) == 6
    given = [x for x in circles if x.get("class") == "given"]
    filled = [x for x in circles if x.get("class") == "filled"]
    assert len(given) == 2 and len(filled) == 4
    assert all(x.get("stroke-dasharray") for x in filled)
    assert not any(x.get("stroke-dasharray") for x in given)
    solid = _parse(to_svg(p, c, RenderOptions(10, show_given_vs_filled=False)))
    assert not any(x.get("stroke-dasharray") for x in solid.findall(f"{SVG}circle"))


def test_svg_puzzle_only_draws_clues():
    root = _parse(to_svg(parse_puzzle("B..\n..W\n")))
    assert len(root.findall(f"{SVG}circle")) == 2


def test_svg_is_deterministic():
    p = parse_puzzle("B.\n.W\n")
    c = parse_solution("BB\nWW\n")
    assert to_svg(p, c).encode() == to_svg(p, c).encode()


def test_svg_overlay_marks_exceptional_cell():
    ci = compile_drawing(load("two_parallel"), which="tree")
    c = embed_solution(ci, {"u"})
    root = _parse(to_svg(ci.puzzle, c, RenderOptions(4, overlay=ci.map)))
    rects = root.findall(f"{SVG}rect")
    ex = [x for x in rects if x.get("class") == "exceptional"]
    assert len(ex) == 1
    r, col = ci.map.exceptional
    assert (ex[0].get("x"), ex[0].get("y")) == (str(col * 4), str(r * 4))
    assert sum(x.get("class") == "important" for x in rects) == int(ci.map.important.sum())
    other = compile_drawing(load("two_loops"), which="tree")
    with pytest.raises(DimensionError):
        to_svg(ci.puzzle, None, RenderOptions(overlay=other.map))
