import json

import pytest

from polarflip.cli import BAD_INPUT, EXHAUSTED, OK, VERBS, RunConfig, main, run


def report(verb, inp, **kw):
    text, code = run(RunConfig(verb=verb, input=inp, **kw))
    return (json.loads(text) if kw.get("format", "json") == "json" else text), code


@pytest.mark.parametrize("verb", [v for v in VERBS if v not in ("render", "followup")])
def test_every_verb_runs_on_a_spatial_fixture(verb):
    _, code = report(verb, "fixture:boolean3")
    assert code == OK


def test_faces_on_two_lines():
    body, code = report("faces", "fixture:E1")
    assert code == OK
    assert (body["chambers"], body["edges"], body["vertices"]) == (4, 4, 1)


def test_morse_on_braid_matches_betti():
    body, code = report("morse", "fixture:E3")
    assert code == OK
    assert body["critical"] == [1, 6, 11, 6]
    assert body["pass"]


def test_followup_on_pencil():
    body, code = report("followup", "fixture:pencil")
    assert code == OK and body["followup"]


def test_followup_needs_a_flag_in_space():
    _, code = report("followup", "fixture:E3")
    assert code == BAD_INPUT


def test_bad_json_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "hyperplanes": [}\n')
    body, code = report("faces", str(bad))
    assert code == BAD_INPUT
    assert f"{bad}:2:" in body["error"]


def test_unknown_fixture_is_bad_input():
    _, code = report("faces", "fixture:nope")
    assert code == BAD_INPUT


def test_small_limit_exhausts_the_enumeration():
    body, code = report("sweep", "fixture:E3", limit=1)
    assert code == EXHAUSTED
    assert body["budget_exhausted"]


def test_supersolvable_needs_a_central_arrangement():
    assert report("supersolvable", "fixture:E2")[1] == BAD_INPUT
    body, code = report("supersolvable", "fixture:E4")
    assert code == OK and not body["supersolvable"]


def test_repeated_runs_are_byte_identical():
    a = run(RunConfig(verb="polar", input="fixture:E2", seed=3))
    b = run(RunConfig(verb="polar", input="fixture:E2", seed=3))
    assert a == b


def test_tsv_output():
    text, code = report("faces", "fixture:E1", format="tsv")
    assert code == OK
    assert text.splitlines() == ["# seed=0 limit=10000", "dim\tcount", "0\t1", "1\t4", "2\t4"]


def test_flag_file_round_trip(tmp_path):
    body, _ = report("flag", "fixture:E2", seed=5)
    path = tmp_path / "flag.json"
    path.write_text(json.dumps(body["flag"]))
    again, code = report("flag", "fixture:E2", flag_file=str(path))
    assert code == OK
    assert again["flag"] == body["flag"]


def test_render_writes_svg(tmp_path):
    out = tmp_path / "e2.svg"
    assert main(["render", "--input", "fixture:E2", "--limit", "1", "--out", str(out)]) == OK
    text = out.read_text()
    assert text.startswith("<svg")
    assert "<desc>seed=0 limit=1</desc>" in text
    assert text.count('class="vertex swept"') == 1


def test_render_rejects_space(capsys):
    assert main(["render", "--input", "fixture:E3"]) == BAD_INPUT


def test_format_must_fit_the_verb(capsys):
    assert main(["faces", "--input", "fixture:E1", "--format", "svg"]) == BAD_INPUT
    assert main(["render", "--input", "fixture:E2", "--format", "json"]) == BAD_INPUT


def test_flag_file_accepts_a_saved_report(tmp_path):
    text, _ = run(RunConfig(verb="flag", input="fixture:E2", seed=5))
    path = tmp_path / "report.json"
    path.write_text(text)
    again, code = report("flag", "fixture:E2", flag_file=str(path))
    assert code == OK
    assert again["flag"] == json.loads(text)["flag"]
