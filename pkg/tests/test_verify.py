import pytest

import verify
from funcfield import Poly
from gf import get_ctx
from misctypes import ConfigError, Status
from monorder import MonOrder
from verify import EtaSequence, VerificationReport


def assert_passed(report):
    failed = [(c.name, c.witness) for c in report.failed]
    assert not failed, failed
    assert report.passed


def test_report_bookkeeping():
    report = VerificationReport('demo', {})
    report.add('fine', True)
    report.add('probe', False, probe=True)
    bad = report.add('bad', False)
    assert bad.status == Status.failed
    assert bad.witness == dict(result='False')
    assert not report.passed
    assert report.summary() == dict(failed=1, passed=1, probe=1)
    out = report.as_json()
    assert [c['name'] for c in out['checks']] == ['fine', 'probe', 'bad']
    assert out['passed'] is False


def test_eta_sequence():
    eta = Poly.parse(get_ctx(2), 'x+1')
    etas = EtaSequence(eta).extend(3)
    assert etas[1] == eta
    assert len(etas.terms) == 3
    assert etas.check()
    etas.terms[1] = etas.terms[1] + 1
    assert not etas.check()
    with pytest.raises(IndexError):
        etas[0]


@pytest.mark.parametrize('eta', ['1', 'x^2+x', 'x'])
def test_eta_rejected(eta):
    with pytest.raises(ConfigError):
        verify.eta_tower(eta)


def test_example_a1():
    report = verify.verify_example_A1(m_max=2)
    assert_passed(report)
    names = [c.name for c in report.checks]
    assert 'disc(s) = x^12' in names


def test_example_a1_limits():
    with pytest.raises(ConfigError):
        verify.verify_example_A1(m_max=5)


def test_section_3_3():
    report = verify.verify_section_3_3('x+1', m_max=2)
    assert_passed(report)
    assert any(c.name == 'z_1 = x*s^2 + s' and c.status == Status.passed
               for c in report.checks)


def test_example_b():
    report = verify.verify_example_B(1, 1)
    assert_passed(report)
    assert report.summary().get('passed', 0) >= 3


def test_example_b_limits():
    with pytest.raises(ConfigError):
        verify.verify_example_B(3, 1)


@pytest.mark.slow
def test_example_a1_full():
    assert_passed(verify.verify_example_A1(m_max=4))


@pytest.mark.slow
@pytest.mark.parametrize('eta', ['x+1'])
def test_section_3_3_full(eta):
    assert_passed(verify.verify_section_3_3(eta, m_max=4))


@pytest.mark.slow
def test_example_b_full():
    assert_passed(verify.verify_example_B(2, 2))


def test_failed_membership_is_cross_checked(sqrt_x_tower):
    y = sqrt_x_tower.gen('y')
    order = MonOrder(sqrt_x_tower.parse('x*y'))
    report = VerificationReport('demo', {})
    verify._add_membership(report, 'y in O[x*y]', y, order)
    check = report.checks[0]
    assert check.status == Status.failed
    assert check.witness['cramer'] is False
    assert check.note == 'claim'
