"""Unit tests for JSON spec loading."""

import json
import os
import tempfile

import pytest

from src.coord_tori import JordanIsotope, OppositeTorus, QuantumTorus, SpinFactorTorus
from src.lie_tori import InadmissibleShiftError, SLModel, SSPModel, TKKModel
from src.quadform2 import QuadFormF2
from src.spec_loader import (
    SpecLoadError, build_involution, build_model, build_torus, load_form, load_model, load_spec, load_torus,
    parse_shift,
)

QUANTUM = {"kind": "quantum", "n": 2, "q": [[1, -1], [-1, 1]]}


def _write(suffix, text):
    with tempfile.NamedTemporaryFile(mode='w', suffix=suffix, delete=False) as f:
        f.write(text)
        f.flush()
    return f.name


@pytest.fixture
def model_json():
    """Create a temporary sl_3 model spec over the quantum torus."""
    path = _write('.json', json.dumps({"model": "sl", "r": 2, "coord": QUANTUM, "shift": "1,0;0,1"}))
    yield path
    os.unlink(path)


@pytest.fixture
def torus_json():
    path = _write('.json', json.dumps({"coord": {"kind": "spin", "n": 3}}))
    yield path
    os.unlink(path)


@pytest.fixture
def malformed_json():
    path = _write('.json', '{"model": "sl", ')
    yield path
    os.unlink(path)


@pytest.fixture
def empty_json():
    path = _write('.json', '{}')
    yield path
    os.unlink(path)


@pytest.fixture
def non_json_file():
    path = _write('.txt', 'This is not a JSON spec')
    yield path
    os.unlink(path)


def test_load_model(model_json):
    model = load_model(model_json)
    assert isinstance(model, SLModel)
    assert model.r == 2
    assert model.shift.to_json() == {'s': [[1, 0], [0, 1]]}


def test_load_torus(torus_json):
    torus = load_torus(torus_json)
    assert isinstance(torus, SpinFactorTorus)
    assert torus.n == 3


def test_load_nonexistent_file():
    with pytest.raises(SpecLoadError, match="File not found"):
        load_spec("nonexistent_file.json")


def test_load_malformed_json(malformed_json):
    with pytest.raises(SpecLoadError, match="Failed to parse JSON spec"):
        load_spec(malformed_json)


def test_load_empty_json(empty_json):
    with pytest.raises(SpecLoadError, match="empty or not a JSON object"):
        load_spec(empty_json)


def test_load_non_json_file(non_json_file):
    with pytest.raises(SpecLoadError, match="not a JSON spec"):
        load_spec(non_json_file)


def test_build_tori():
    assert isinstance(build_torus(QUANTUM), QuantumTorus)
    isotope = build_torus({"kind": "jordan_isotope", "parent": {"kind": "spin"}, "u": "-1,0,0"})
    assert isinstance(isotope, JordanIsotope)
    assert isotope.shift == (1, 0, 0)
    assert isinstance(build_torus({"kind": "opposite", "parent": QUANTUM}), OppositeTorus)


def test_build_torus_errors():
    with pytest.raises(SpecLoadError, match="Unknown torus kind"):
        build_torus({"kind": "hyperbolic"})
    with pytest.raises(SpecLoadError):
        build_torus({"kind": "quantum", "n": 2, "q": [[1, -1], [1, 1]]})
    with pytest.raises(SpecLoadError):
        build_torus({"n": 2})


def test_build_involution():
    torus = build_torus(QUANTUM)
    iota = build_involution(torus, {"e": [1, 1], "h": [[0, 1]]})
    assert iota.sign((1, 0)) == -1
    with pytest.raises(SpecLoadError):
        build_involution(torus, {"e": [1, 3]})


def test_build_models():
    ssp = build_model({"model": "ssp", "r": 2, "coord": QUANTUM, "involution": {"e": [1, 1]}})
    assert isinstance(ssp, SSPModel)
    tkk = build_model({"model": "tkk", "coord": {"kind": "spin"}, "action_window": 1})
    assert isinstance(tkk, TKKModel)
    assert tkk.algebra.action_window == 1
    untwisted = build_model({"model": "untwisted", "r": 1, "n": 1})
    assert untwisted.torus.kind == 'laurent'


def test_build_model_errors():
    with pytest.raises(SpecLoadError, match="Unknown model kind"):
        build_model({"model": "e8"})
    with pytest.raises(SpecLoadError):
        build_model({"model": "sl", "coord": QUANTUM})
    with pytest.raises(InadmissibleShiftError):
        build_model({"model": "tkk", "coord": {"kind": "spin"}, "shift": "1,1,0"})


def test_parse_shift():
    model = build_model({"model": "sl", "r": 2, "coord": QUANTUM})
    assert parse_shift("1,0;0,1", model) == parse_shift([[1, 0], [0, 1]], model)
    with pytest.raises(SpecLoadError):
        parse_shift("1,0", model)


def test_load_form():
    assert load_form({"q": [[1, -1], [-1, 1]], "e": [1, 1]}) == QuadFormF2.from_bits(2, [0, 0], [[0, 1], [0, 0]])
    assert load_form({"n": 2, "b": [1, 0]}) == QuadFormF2.from_bits(2, [1, 0])
    with pytest.raises(SpecLoadError):
        load_form({"q": [[1, 2], [2, 1]], "e": [1, 1]})
