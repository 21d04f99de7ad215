import json

import pytest
from click.testing import CliRunner

from src.cli import app

IDENTITY_DERIVATION = r"""
(All2Intro [] |- "\x.x" : "forall2 X X -> X" {"X"}
  (ImpIntro [] |- "\x.x" : "X -> X"
    (Axiom [x : "X"] |- "x" : "X")))
"""

BROKEN_DERIVATION = r"""
(ImpIntro [] |- "\x.x" : "X -> Y"
  (Axiom [x : "X"] |- "x" : "Y"))
"""


@pytest.fixture
def runner():
    return CliRunner()


def lines(result):
    return result.stdout.strip().splitlines()


def test_parse_prints_canonical_text(runner):
    result = runner.invoke(app, ["parse", "stack", "#a0.#a1.e0"])
    assert result.exit_code == 0
    assert lines(result) == ["#a0 . #a1 . e0"]


def test_parse_as_json(runner):
    result = runner.invoke(app, ["--json", "parse", "process", "#b1 * e0"])
    assert json.loads(result.stdout) == {"record": "parsed", "kind": "process", "text": "#b1 * e0"}


def test_parse_errors_exit_with_usage_status(runner):
    result = runner.invoke(app, ["parse", "term", "\\x."])
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_run_traces_until_stuck(runner):
    result = runner.invoke(app, ["run", r"\x.x * #a0 . e0"])
    assert result.exit_code == 0
    assert lines(result)[1:] == [
        "grab | #a0 | e0",
        "stuck:bare-instruction | #a0 | e0",
        "stuck after 1 steps",
    ]


def test_run_reports_exhaustion(runner):
    result = runner.invoke(app, ["run", "--fuel", "5", r"(\x. x x) (\x. x x)"])
    assert result.exit_code == 0
    assert lines(result)[-1] == "exhausted after 5 steps"


def test_run_streams_json_records(runner):
    result = runner.invoke(app, ["--json", "run", r"\x.x * #a0 . e0"])
    records = [json.loads(line) for line in lines(result)]
    assert [r["rule"] for r in records] == ["grab", "stuck:bare-instruction"]
    assert all(r["record"] == "step" for r in records)


@pytest.mark.parametrize("text", [r"\x.x*#a0.e0", r"\x.x *#a0 . e0", r"\x.x* #a0.e0"])
def test_processes_need_no_spaces_around_the_star(runner, text):
    result = runner.invoke(app, ["run", text])
    assert result.exit_code == 0
    assert lines(result)[-1] == "stuck after 1 steps"


def test_a_broken_process_is_not_read_as_a_term(runner):
    result = runner.invoke(app, ["run", "#a0 * "])
    assert result.exit_code == 2
    assert "syntax error in process" in result.output


def test_step_stops_when_declined(runner):
    result = runner.invoke(app, ["step", r"(\x.x) (\y.y) * #a0 . e0"], input="n\n")
    assert result.exit_code == 0
    assert "push" in result.stdout
    assert "stuck" not in result.stdout


def test_step_runs_to_the_end(runner):
    result = runner.invoke(app, ["step", "--fuel", "10", r"\x.x * #a0 . e0"])
    assert lines(result)[-1] == "stuck: bare-instruction"


@pytest.mark.parametrize(
    "process,expected",
    [
        ("#b1 * e0", "IN 1"),
        (r"\x.x * #b1 . e0", "IN 2"),
        ("#b0 * e0", "UNKNOWN 10"),
    ],
)
def test_pole_member(runner, process, expected):
    result = runner.invoke(app, ["pole-member", "--gimel", "2", "--depth", "10", process])
    assert result.exit_code == 0
    assert lines(result)[0] == expected


def test_pole_member_tree(runner):
    result = runner.invoke(app, ["pole-member", "--gimel", "2", "--tree", r"\x.x * #b1 . e0"])
    assert lines(result)[1:] == [r"  (\x. x) * #b1 . e0  [step]", "    #b1 * e0  [bottom]"]


def test_pole_member_as_json(runner):
    result = runner.invoke(app, ["--json", "pole-member", "--gimel", "2", "#b1 * e0"])
    record = json.loads(result.stdout)
    assert record["verdict"] == "pass" and record["depth"] == 1
    assert record["justification"]["rule"] == "bottom"


def test_enumerate_poles(runner, tmp_path):
    world = tmp_path / "world.json"
    world.write_text(json.dumps({"processes": [r"\x.x * #a0 . e0"], "close": True}))
    result = runner.invoke(app, ["enumerate-poles", str(world)])
    assert result.exit_code == 0
    assert len(lines(result)) == 3


def test_invalid_input_files_are_usage_errors(runner, tmp_path):
    world = tmp_path / "world.json"
    world.write_text(json.dumps({"processes": "not a list"}))
    result = runner.invoke(app, ["enumerate-poles", str(world)])
    assert result.exit_code == 2
    assert "invalid WorldFile" in result.output


def test_check_voting_passes_for_phi(runner):
    result = runner.invoke(app, ["check", "voting", "#a0", "--gimel", "2", "--count", "10"])
    assert result.exit_code == 0
    assert lines(result)[-1].startswith("voting-3-1: PASS")


def test_check_voting_fails_for_a_projection(runner, tmp_path):
    samples = tmp_path / "samples.json"
    samples.write_text(json.dumps({"voting": [{"args": ["#b0", "#b1", "#b1"], "excluded": [0]}]}))
    result = runner.invoke(app, ["check", "voting", r"\x.\y.\z.x", "--gimel", "2", "--samples", str(samples)])
    assert result.exit_code == 1
    assert "FAIL" in lines(result)[-1]
    assert "--instance 0" in result.stdout


def test_check_needs_a_candidate(runner):
    result = runner.invoke(app, ["check", "voting"])
    assert result.exit_code == 2


@pytest.mark.parametrize("args", [["check", "voting"], ["run", "--no-such-option", "#a0"]])
def test_usage_errors_show_the_grammar(runner, args):
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    assert "process := term * stack" in result.output
    assert "A bare term runs against e0." in result.output


def test_check_instance_must_exist(runner):
    result = runner.invoke(app, ["check", "voting", "#a0", "--gimel", "2", "--count", "3", "--instance", "7"])
    assert result.exit_code == 2


def test_check_derivation_accepts_and_realizes(runner, tmp_path):
    derivation = tmp_path / "identity.deriv"
    derivation.write_text(IDENTITY_DERIVATION)
    model = tmp_path / "model.json"
    model.write_text(json.dumps({"stacks": ["#a0 . e0"]}))
    result = runner.invoke(app, ["check-derivation", str(derivation), "--model", str(model)])
    assert result.exit_code == 0
    assert lines(result) == [r"ACCEPTED realizer=\x. x realized=yes"]


def test_check_derivation_rejects(runner, tmp_path):
    derivation = tmp_path / "broken.deriv"
    derivation.write_text(BROKEN_DERIVATION)
    result = runner.invoke(app, ["--json", "check-derivation", str(derivation)])
    assert result.exit_code == 1
    record = json.loads(result.stdout)
    assert record["verdict"] == "fail"
    assert record["reason"].startswith("Axiom")


def test_verify_a_suite(runner):
    result = runner.invoke(app, ["verify", "machine", "--samples", "5"])
    assert result.exit_code == 0
    assert lines(result)[-1] == "machine: PASS seed=0"


def test_verify_rejects_unknown_suites(runner):
    result = runner.invoke(app, ["verify", "nope"])
    assert result.exit_code == 2


def test_gimel_content(runner):
    result = runner.invoke(app, ["gimel", "-n", "2", "content", "#b2 * e0", "--index", "0", "--index", "1"])
    assert result.exit_code == 0
    assert lines(result) == ["I = [0, 1]", "[]", "[1]"]


def test_gimel_content_as_json(runner):
    result = runner.invoke(app, ["--json", "gimel", "-n", "2", "content", "#b2 * e0", "--index", "0", "--index", "1"])
    record = json.loads(result.stdout)
    assert record["members"] == [[], [1]]
    assert record["maximal"] == [[1]]


def test_gimel_cover_check(runner):
    result = runner.invoke(app, ["gimel", "-n", "1", "cover-check", "--radius", "6", "#a0 * #b2 . #b3 . #b2 . e0"])
    assert result.exit_code == 0
    assert lines(result) == ["PASS radius=6"]


def test_gimel_cover_check_precondition(runner):
    result = runner.invoke(app, ["gimel", "-n", "1", "cover-check", "--index", "0", "--index", "1", "#b2 #b3 * e0"])
    assert result.exit_code == 2
