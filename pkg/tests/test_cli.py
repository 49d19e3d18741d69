import json
from pathlib import Path

import pytest

import jsonfile
import monogen
from scenario import Scenario

SCENARIOS = Path(__file__).resolve().parent.parent / 'scenarios'


@pytest.fixture(autouse=True)
def no_config(tmp_path, monkeypatch):
    """Run where no monogen.cfg is found."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(monogen, 'get_config_paths', lambda: [])


def run(capsys, *argv):
    code = monogen.main([str(x) for x in argv])
    return code, capsys.readouterr()


def write_scenario(tmp_path, name, d):
    path = tmp_path / f'{name}.json'
    path.write_text(json.dumps(d))
    return path


def test_run_disc(capsys):
    code, out = run(capsys, SCENARIOS / 'disc_eta.json')
    assert code == monogen.EXIT_OK
    assert 'x^12' in out.out


def test_run_json(capsys):
    code, out = run(capsys, '--json', SCENARIOS / 'disc_eta.json')
    assert code == 0
    report = json.loads(out.out)
    assert jsonfile.validate_report(report) == []
    assert report['status'] == 'ok'
    assert report['result']['discriminant'] == 'x^12'


@pytest.mark.parametrize('name', ['addendum', 'bounds', 'order_eq_a1',
                                  'unit_solve_f2', 'unit_solve_f3'])
def test_bundled_scenarios(capsys, name):
    code, out = run(capsys, '--json', SCENARIOS / f'{name}.json')
    assert code == 0, out.out
    report = json.loads(out.out)
    assert jsonfile.validate_report(report) == []
    assert report['scenario'] == name


def test_unit_solve_box_override(capsys):
    code, out = run(capsys, '--json', '--box', 3,
                    SCENARIOS / 'unit_solve_f2.json')
    assert code == 0
    report = json.loads(out.out)
    assert report['params']['box'] == 3
    assert report['result']['missing'] == []
    assert report['result']['extra'] == []


def test_non_monic_tower(tmp_path, capsys):
    path = write_scenario(tmp_path, 'bad', dict(
        field=dict(p=3), tower=[dict(label='y', poly='2*y^2 + x')],
        task='disc', params=dict(element='y')))
    code, out = run(capsys, path)
    assert code == monogen.EXIT_CONFIG
    assert 'not monic' in out.err


@pytest.mark.parametrize('d', [
    dict(task='disc', colour='red'),
    dict(task='nope'),
    dict(task='bounds', params=dict(d=3, p=2, q_K=2)),
    dict(task='bounds', params=dict(d=1, p=2, q_K=2, S_size=1)),
    dict(task='disc', field=dict(k=2)),
    ])
def test_invalid_scenarios(tmp_path, capsys, d):
    path = write_scenario(tmp_path, 'bad', d)
    code, _ = run(capsys, path)
    assert code == monogen.EXIT_CONFIG


def test_unreadable_scenario(tmp_path, capsys):
    path = tmp_path / 'broken.json'
    path.write_text('{')
    code, _ = run(capsys, path)
    assert code == monogen.EXIT_CONFIG


def test_failed_check_exit(tmp_path, capsys):
    path = write_scenario(tmp_path, 'probe', dict(
        field=dict(p=2), task='unit-solve',
        params=dict(generators=['x', '1+x'], box=2, height_bound=0)))
    code, out = run(capsys, '--json', path)
    report = json.loads(out.out)
    assert jsonfile.validate_report(report) == []
    assert code == (monogen.EXIT_OK if report['status'] == 'ok'
                    else monogen.EXIT_FAILED)


def test_deterministic_output(tmp_path, capsys):
    paths = [SCENARIOS / 'unit_solve_f3.json', SCENARIOS / 'addendum.json',
             SCENARIOS / 'bounds.json']
    for out in ('a', 'b'):
        code, _ = run(capsys, '--outdir', tmp_path / out, *paths)
        assert code == 0
    for p in paths:
        a = (tmp_path / 'a' / p.name).read_bytes()
        b = (tmp_path / 'b' / p.name).read_bytes()
        assert a == b


def test_show_and_tasks(capsys):
    code, out = run(capsys, '-c', 'show', '--',
                    SCENARIOS / 'search_example_b.json')
    assert code == 0
    assert 'search_example_b' in out.out and 'symmetric' in out.out
    code, out = run(capsys, '-c', 'tasks')
    assert code == 0
    assert 'unit-solve' in out.out and 'ef_bound' in out.out


def test_verify_command(capsys):
    code, out = run(capsys, '-c', 'verify_b', '--json')
    assert code == 0
    report = json.loads(out.out)
    assert report['task'] == 'verify-b'
    assert report['result']['passed']


def test_scenario_override():
    sc = Scenario.read(SCENARIOS / 'search_a1.json')
    sc.override(box=4, m_max=2, places='inf,x')
    assert sc.params['box'] == [4, 4]
    assert 'm_max' not in sc.params
    assert str(sc.place_set()) == 'inf,x'


def test_validate_report_problems():
    assert jsonfile.validate_report([]) == ['report is not an object']
    problems = jsonfile.validate_report(dict(scenario='a', task='disc',
                                             status='maybe', result={},
                                             extra=1))
    assert problems == ["unknown keys: ['extra']", "invalid status: 'maybe'"]


def test_timing_is_opt_in(capsys):
    _, out = run(capsys, '--json', SCENARIOS / 'bounds.json')
    assert 'elapsed' not in json.loads(out.out)
    _, out = run(capsys, '--json', '--timing', SCENARIOS / 'bounds.json')
    report = json.loads(out.out)
    assert report['elapsed'] >= 0
    assert jsonfile.validate_report(report) == []
