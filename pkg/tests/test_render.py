import xml.etree.ElementTree as ET

from towerloc.harness.generators import fig13_fixture, gen_comb
from towerloc.harness.render import render_svg, render_svg_text
from towerloc.partition import partition
from towerloc.towers import emit_towers

NS = "{http://www.w3.org/2000/svg}"


def _drawing(p):
    pr = partition(p)
    return p, pr, emit_towers(pr).towers


def test_deterministic():
    args = _drawing(gen_comb(3))
    assert render_svg_text(*args) == render_svg_text(*args)


def test_elements():
    p, pr, towers = _drawing(gen_comb(3))
    root = ET.fromstring(render_svg_text(p, pr, towers))
    assert root.tag == NS + "svg"
    circles = root.findall(f".//{NS}circle[@class='tower']")
    assert len(circles) == len(towers)
    polys = root.findall(f".//{NS}polygon")
    # outline plus one per piece, plus shaded kernels
    assert len(polys) >= 1 + len(pr.pieces)


def test_outline_only():
    p = fig13_fixture()
    root = ET.fromstring(render_svg_text(p))
    assert len(root.findall(f".//{NS}polygon")) == 1
    assert not root.findall(f".//{NS}circle")
    assert "<circle" not in render_svg_text(p, None, ())


def test_write(tmp_path):
    p, pr, towers = _drawing(fig13_fixture())
    out = tmp_path / "f.svg"
    text = render_svg(p, pr, towers, out)
    assert out.read_text() == text
