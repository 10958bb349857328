"""Tests for the command line front end."""

import json

import pytest

from src.cli import build_parser, canonical_json, main

QUANTUM = {"kind": "quantum", "n": 2, "q": [[1, -1], [-1, 1]]}


@pytest.fixture
def quantum_spec(tmp_path):
    path = tmp_path / "quantum.json"
    path.write_text(json.dumps(QUANTUM))
    return path


@pytest.fixture
def spin_spec(tmp_path):
    path = tmp_path / "spin.json"
    path.write_text(json.dumps({"kind": "spin", "n": 3}))
    return path


@pytest.fixture
def sl2_spec(tmp_path):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps({"model": "untwisted", "r": 1, "n": 1}))
    return path


def test_scenario_list(capsys):
    assert main(['scenario', 'list', '--json']) == 0
    listing = json.loads(capsys.readouterr().out)
    names = [s['name'] for s in listing['scenarios']]
    assert 'spin-sigma-obstruction' in names
    assert 'thm-6-chi-sl2-n1' in names


def test_scenario_run(capsys):
    assert main(['scenario', 'run', 'quadform-classify-n2']) == 0
    assert capsys.readouterr().out.startswith("✅ Report summary for quadform-classify-n2")


def test_scenario_expectation_override(capsys):
    assert main(['scenario', 'run', 'quadform-classify-n2', '--expect', 'class_count=5', '--json']) == 1
    report = json.loads(capsys.readouterr().out)
    assert report['diff'] == {'class_count': {'expected': 5, 'observed': 4}}
    assert 'duration_s' not in report


def test_unknown_scenario(capsys):
    assert main(['scenario', 'run', 'no-such-scenario']) == 2
    assert "❌" in capsys.readouterr().err


def test_torus_check(quantum_spec, capsys):
    assert main(['torus', 'check', '--spec', str(quantum_spec), '--window', '1']) == 0
    assert "✅ Flavor Laws" in capsys.readouterr().out


def test_torus_mul(quantum_spec, capsys):
    assert main(['torus', 'mul', '--spec', str(quantum_spec), '--lam', '0,1', '--mu', '1,0']) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['text'] == "(-1)a[1, 1]"


def test_torus_invariants(spin_spec, capsys):
    assert main(['torus', 'invariants', '--spec', str(spin_spec), '--json']) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['sigma'] == [0, 0, 0]


def test_isotope_composition(spin_spec, capsys):
    args = ['torus', 'isotope', '--spec', str(spin_spec), '--u=-1,0,0', '--v', '1,0,0', '--json']
    assert main(args) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['checks'][0]['check_type'] == 'isotope_composition'


def test_alternative_isotope_needs_two_degrees(quantum_spec, capsys):
    assert main(['torus', 'isotope', '--spec', str(quantum_spec), '--u', '1,0']) == 2
    assert "--u twice" in capsys.readouterr().err


def test_quadform_classify(capsys):
    assert main(['quadform', 'classify', '--n', '2', '--json']) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['class_count'] == 4


def test_quadform_isometric(tmp_path, capsys):
    form = tmp_path / "form.json"
    form2 = tmp_path / "form2.json"
    form.write_text(json.dumps({"q": [[1, -1], [-1, 1]], "e": [1, 1]}))
    form2.write_text(json.dumps({"n": 2, "b": [1, 0], "a": [[0, 1], [0, 0]]}))
    assert main(['quadform', 'isometric', '--form', str(form), '--form2', str(form2), '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['checks'][0]['tau'] is not None


def test_quadform_capacity(capsys):
    assert main(['quadform', 'classify', '--n', '6']) == 2


def test_lietorus_iso_needs_shift(sl2_spec, capsys):
    assert main(['lietorus', 'iso', '--spec', str(sl2_spec), '--kind', 'diag']) == 2
    assert "--shift is required" in capsys.readouterr().err


def test_lietorus_iso(sl2_spec):
    assert main(['lietorus', 'iso', '--spec', str(sl2_spec), '--kind', 'diag', '--shift', '1']) == 0


def test_eala_chi_writes_report(sl2_spec, tmp_path, capsys):
    out = tmp_path / "reports" / "chi.json"
    assert main(['eala', 'chi', '--spec', str(sl2_spec), '--shift', '1', '--out', str(out)]) == 0
    written = json.loads(out.read_text())
    assert written['summary']['overall_passed']
    assert 'duration_s' not in written


def test_missing_spec(tmp_path, capsys):
    assert main(['torus', 'check', '--spec', str(tmp_path / "missing.json")]) == 2
    assert "File not found" in capsys.readouterr().err


def test_canonical_json_sorts_keys():
    assert canonical_json({'b': 1, 'a': (1, 2)}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}'


def test_parser_requires_a_group():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
