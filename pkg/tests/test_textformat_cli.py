import json

import pytest

from pcengel import ParseError, parse_text, serialize
from pcengel.catalog import RunConfig, load_catalog
from pcengel.cli import main
from pcengel.report import strip_header

HEIS = """\
# Heisenberg group mod 3
group h3
gen x 3
gen y 3
gen z 3
conj y x = y*z
end
aut inv2 on h3
x -> x^-1
y -> y^-1
z -> z
end
"""

BAD = """\
group bad
gen a 2
gen b 2
gen c 2
pow b = c
conj b a = c
end
"""


def test_parse_and_automorphisms():
    parsed = parse_text(HEIS)
    g = parsed.groups["h3"]
    assert g.order == 27
    assert parsed.automorphisms["h3"]["inv2"].order == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("group g\ngen a 4\nend\n", 2),
        ("group g\ngen a 2\nfoo\nend\n", 3),
        ("group g\ngen a 2\npow a = q\nend\n", 3),
        ("group g\ngen a 2\n", 1),
        ("aut f on g\nend\n", 1),
        ("group g\ngen a 3\nend\naut f on g\na -> a^0\nend\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_text(text, source="t.pc")
    assert info.value.line == line
    assert f"t.pc:{line}:" in str(info.value)


def test_round_trip_catalog(catalog):
    for e in catalog:
        text = serialize(e.presentation, e.automorphisms[1:])
        back = parse_text(text)
        g = back.groups[e.name]
        assert g == e.presentation
        for a in e.automorphisms[1:]:
            assert back.automorphisms[e.name][a.name].images == a.images


def test_directory_catalog(tmp_path):
    (tmp_path / "h3.pc").write_text(HEIS)
    entries = load_catalog(str(tmp_path))
    assert [e.name for e in entries] == ["h3"]
    assert [a.name for a in entries[0].automorphisms] == ["id", "inv2"]


def test_cli_validate(tmp_path, capsys):
    good = tmp_path / "good.pc"
    good.write_text(HEIS)
    assert main(["validate", str(good)]) == 0
    assert "h3: order 27, consistent" in capsys.readouterr().out
    bad = tmp_path / "bad.pc"
    bad.write_text(BAD)
    assert main(["validate", str(bad)]) == 2
    broken = tmp_path / "broken.pc"
    broken.write_text("group g\ngen a 6\nend\n")
    assert main(["validate", str(broken)]) == 2
    assert "broken.pc:2:" in capsys.readouterr().err


def test_cli_analyze(capsys):
    assert main(["analyze", "--group", "heis5", "--filtration", "lcs"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == 2
    assert out["lie_ring"]["component_orders"] == [25, 5]
    assert main(["analyze", "--group", "c25", "--filtration", "zassenhaus"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["filtration"]["orders"] == [25, 5, 5, 5, 5, 1]
    assert main(["analyze", "--group", "nosuch"]) == 2
    assert main(["analyze", "--group", "s3", "--filtration", "zassenhaus"]) == 2
    assert main(["analyze", "--group", "c5wrc5", "--cap", "1000"]) == 3


def test_cli_lie(capsys):
    assert main(["lie", "--group", "heis7", "--extend-q", "3", "--aut", "sq"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["automorphism_order"] == 3
    assert out["eigencomponents"]["1,0"] == 1
    assert main(["lie", "--group", "heis7", "--extend-q", "7", "--aut", "sq"]) == 2
    assert main(["lie", "--group", "heis7", "--aut", "nope"]) == 2


def test_cli_certify(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["certify", "--suite", "main", "--catalog", "builtin", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "pcengel-report/1"
    met = [r for r in data["reports"] if r["hypotheses_met"]]
    assert met and all(r["status"] == "pass" for r in met)
    flagged = {r["group"] for r in data["reports"] if r["status"] == "hypothesis-not-met"}
    assert {"f21", "s3", "s3xc11"} <= flagged
    assert main(["certify", "--suite", "bogus"]) == 2


def test_cli_batch_deterministic(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": ["baer", "main"], "analyses": ["lcs"], "groups": ["heis3", "f21"]}))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["batch", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["batch", "--config", str(cfg), "--out", str(b)]) == 0
    assert strip_header(a.read_text()) == strip_header(b.read_text())
    body = lambda p: p.read_text().split('"header"')[0]  # noqa: E731
    assert body(a) == body(b)
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"suites": []}))
    out = tmp_path / "e.json"
    assert main(["batch", "--config", str(empty), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["reports"] == []


def test_batch_rejects_bad_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": ["main"], "colour": "red"}))
    assert main(["batch", "--config", str(cfg)]) == 2
    cfg.write_text("{not json")
    assert main(["batch", "--config", str(cfg)]) == 2
    with pytest.raises(Exception):
        RunConfig(cap=0)
