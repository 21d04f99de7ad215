import json

import pytest

from src.krivine.errors import ParseError, WorldNotValidated
from src.krivine.files import ModelFile, RulesFile, SamplesFile, WorldFile, load_model, read_model
from src.krivine.logic import ZERO, Const, falsity, numeral
from src.krivine.multieval import DETERMINISTIC
from src.krivine.nondet import VotingSample
from src.krivine.syntax import Lam, Var, parse_process, parse_stack

IDENTITY = Lam(Var(0), "x")


def test_rules_files():
    assert RulesFile().resolve() == (None, DETERMINISTIC)
    cfg, rules = RulesFile(preset="gimel3", kind="must").resolve()
    assert cfg.n == 3 and rules.name == "gimel-3"
    cfg, rules = RulesFile.model_validate({"kind": "must", "config": {"n": 1}}).resolve()
    assert cfg.n == 1 and rules.name == "must"


def test_world_files():
    world, _ = WorldFile(processes=[r"\x.x * #a0 . e0"], close=True).load()
    assert world.processes == (parse_process(r"\x.x * #a0 . e0"), parse_process("#a0 * e0"))
    with pytest.raises(WorldNotValidated):
        WorldFile(processes=[r"\x.x * #a0 . e0"]).load()


def test_read_model_reports_invalid_files(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"size": 0, "stacks": []}))
    with pytest.raises(ParseError, match="invalid ModelFile"):
        read_model(path, ModelFile)


def test_model_files_carry_predicate_tables():
    spec = ModelFile.model_validate(
        {
            "stacks": ["#a0 . e0", "#a1 . e0"],
            "tables": [{"name": "p", "arity": 1, "rows": [{"args": [0], "stacks": [1]}]}],
        }
    )
    model = load_model(spec, [IDENTITY])
    assert falsity(Const("p", (ZERO,)), 0, model) == frozenset({parse_stack("#a1 . e0")})
    assert falsity(Const("p", (numeral(1),)), 0, model) == frozenset()


@pytest.mark.parametrize(
    "row",
    [
        {"args": [0, 1], "stacks": [0]},
        {"args": [0], "stacks": [5]},
    ],
)
def test_bad_table_rows(row):
    spec = ModelFile.model_validate({"stacks": ["#a0 . e0"], "tables": [{"name": "p", "arity": 1, "rows": [row]}]})
    with pytest.raises(ParseError):
        load_model(spec, [IDENTITY])


def test_model_files_extend_the_world():
    extra = r"\x.x * #a1 . e0"
    model = load_model(ModelFile(stacks=["#a0 . e0"], world=[extra]), [IDENTITY])
    assert parse_process(extra) in model.world.processes
    assert parse_process("#a1 * e0") in model.world.processes


def test_samples_files():
    samples = SamplesFile.model_validate(
        {"voting": [{"args": ["#b0", "#b1", "#b1"]}], "choice": [{"u": "#b1", "v": "#b0"}]}
    ).samples()
    assert len(samples) == 2
    assert isinstance(samples[0], VotingSample) and samples[0].excluded == (0,)
