import json

import pytest

from chromobruhat.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from chromobruhat.config import VerifierConfig
from chromobruhat.excel_export import create_excel_export
from chromobruhat.pdf_export import create_report_pdf, pdf_text
from chromobruhat.permutation import Permutation
from chromobruhat.verifier import (
    CHECKS, VerificationError, analyze_payload, cmd_analyze, cmd_golden, cmd_verify,
    golden_payload, load_golden, structural_diff,
)


def test_config_validation():
    with pytest.raises(ValueError):
        VerifierConfig(jobs=-1)
    with pytest.raises(ValueError):
        VerifierConfig(expr_rule='shortest')
    assert VerifierConfig(jobs=0).jobs >= 1
    assert VerifierConfig().ceiling('lattice-el') == 5


def test_config_from_env(monkeypatch):
    monkeypatch.setenv('CHROMOBRUHAT_CAP', '3')
    monkeypatch.setenv('CHROMOBRUHAT_LOG_LEVEL', 'WARNING')
    config = VerifierConfig.from_env(jobs=None)
    assert config.counterexample_cap == 3
    assert config.log_level == 'warning'
    assert VerifierConfig.from_env(counterexample_cap=7).counterexample_cap == 7


def test_golden_matches_fixture():
    report = cmd_golden()
    assert report.failures == 0, report.counterexamples
    assert report.passed
    assert report.population == 12


def test_golden_payload_has_fixture_shape():
    expected = load_golden()
    actual = golden_payload(Permutation.parse('4132'))
    assert set(actual) == set(expected)


def test_structural_diff():
    assert structural_diff({'a': [1, 2]}, {'a': [1, 2]}) == []
    diffs = structural_diff({'a': [1, 2], 'b': 1}, {'a': [1, 3]})
    assert {'path': 'a[1]', 'expected': 2, 'actual': 3} in diffs
    assert {'path': 'b', 'expected': 1, 'actual': None} in diffs


def test_analyze_4231_flags_gap():
    payload = analyze_payload(Permutation.parse('4231'))
    assert payload['br'] == 20
    assert payload['re'] == payload['ao'] == 18
    assert payload['flags'] == ['br != re']
    assert payload['contained_pattern'] == '4231'
    assert payload['witness']['u'] == '1324'
    assert payload['witness']['directed_distance'] == 4
    assert payload['witness']['absolute_length'] == 2


def test_analyze_4132():
    report = cmd_analyze('4132')
    assert report.passed
    assert report.payload['br'] == report.payload['re'] == 12
    assert report.payload['flags'] == []
    assert report.payload['opy_exponents'] == [0, 1, 1, 2]
    assert len(report.payload['phi_table']) == 12
    json.loads(report.to_json())


def test_analyze_large_n_skips_interval_quantities():
    payload = analyze_payload(Permutation.parse('2,1,3,4,5,6,7,8,10,9'))
    assert 'skipped' in payload
    assert payload['br'] == 4


def test_analyze_longest_n10_takes_lattice_values_from_chromatic():
    payload = analyze_payload(Permutation.parse('10,9,8,7,6,5,4,3,2,1'))
    assert payload['lattice_size'] is None
    assert payload['re'] == payload['ao'] == payload['br'] == 3628800
    assert payload['betti'][0] == 1
    assert payload['betti'][1] == 45
    assert len(payload['betti']) == 10
    assert sum(payload['betti']) == payload['re']


def test_analyze_small_n_betti_from_lattice_matches_chromatic():
    payload = analyze_payload(Permutation.parse('4231'))
    coefficients = payload['chromatic']['coefficients']
    assert payload['betti'] == [abs(coefficients[4 - i]) for i in range(len(payload['betti']))]


@pytest.mark.parametrize('check', sorted(CHECKS))
def test_every_check_passes_on_s4(check):
    report = cmd_verify(check, 4)
    assert report.passed, report.counterexamples
    assert report.population == 24


def test_verify_tallies():
    report = cmd_verify('conjectureB', 5)
    assert report.payload['tally']['chromobruhatic'] == 101
    report = cmd_verify('opy', 5)
    assert report.payload['tally']['applicable'] == 88


def test_verify_all_expressions():
    report = cmd_verify('phi-injective', 4, VerifierConfig(expr_rule='all'))
    assert report.passed
    assert report.payload['expr_rule'] == 'all'


def test_all_expressions_have_lower_ceiling():
    assert VerifierConfig().ceiling('phi-injective') == 7
    assert VerifierConfig(expr_rule='all').ceiling('phi-injective') == 5
    with pytest.raises(VerificationError):
        cmd_verify('phi-injective', 6, VerifierConfig(expr_rule='all'))
    assert main(['verify', '--check', 'phi-injective', '--n', '6', '--expr', 'all']) == EXIT_USAGE


def test_verify_rejects_bad_arguments():
    with pytest.raises(VerificationError):
        cmd_verify('conjectureC', 4)
    with pytest.raises(VerificationError):
        cmd_verify('lattice-el', 6)
    with pytest.raises(VerificationError):
        cmd_verify('betti', 0)
    with pytest.raises(VerificationError):
        cmd_verify('betti', 4, VerifierConfig(expr_rule='all'))


def test_parallel_run_matches_serial():
    serial = cmd_verify('chromatic-identity', 5, VerifierConfig(jobs=1))
    parallel = cmd_verify('chromatic-identity', 5, VerifierConfig(jobs=2))
    assert serial.comparison_dict() == parallel.comparison_dict()


def test_counterexample_cap(monkeypatch):
    from chromobruhat import verifier
    from chromobruhat.verifier import CheckOutcome

    monkeypatch.setitem(verifier.CHECKS, 'conjectureA', lambda w, config: CheckOutcome(False))
    report = cmd_verify('conjectureA', 4, VerifierConfig(counterexample_cap=3))
    assert report.failures == 24
    assert len(report.counterexamples) == 3
    report = cmd_verify('conjectureA', 4, VerifierConfig(counterexample_cap=3, full_dump=True))
    assert len(report.counterexamples) == 24


def test_exports_produce_files():
    report = cmd_verify('conjectureB', 4)
    assert create_excel_export(report).getvalue()[:2] == b'PK'
    assert create_report_pdf(report).getvalue()[:4] == b'%PDF'


def test_pdf_text_stays_in_latin1():
    assert pdf_text('∅') == '(leer)'
    assert pdf_text('Bild unter φ, χ(t)') == 'Bild unter phi, chi(t)'
    assert pdf_text('Hülle') == 'Hülle'
    assert pdf_text("ℓ'(uw^-1)") == "l'(uw^-1)"
    assert pdf_text([1, 4, 5, 2]) == '[1, 4, 5, 2]'


def test_cli_exit_codes(capsys):
    assert main(['golden', '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['passed'] is True
    assert main(['analyze', '4a32']) == EXIT_USAGE
    assert main(['verify', '--check', 'lattice-el', '--n', '9']) == EXIT_USAGE
    assert main(['verify', '--check', 'going-down', '--n', '4']) == EXIT_OK
    with pytest.raises(SystemExit) as exc:
        main(['verify', '--check', 'nope', '--n', '4'])
    assert exc.value.code == EXIT_USAGE


def test_cli_reports_failure(monkeypatch):
    from chromobruhat import verifier
    from chromobruhat.verifier import CheckOutcome

    monkeypatch.setitem(verifier.CHECKS, 'coherence', lambda w, config: CheckOutcome(w.is_identity))
    assert main(['verify', '--check', 'coherence', '--n', '3']) == EXIT_FAILURE


@pytest.mark.slow
@pytest.mark.parametrize('check', ['conjectureB', 'phi-surjective-iff', 'characterization', 'recurrences'])
def test_checks_pass_on_s6(check):
    assert cmd_verify(check, 6, VerifierConfig(jobs=0)).passed


@pytest.mark.slow
@pytest.mark.parametrize('check,n', [
    ('conjectureA', 7),
    ('opy', 7),
    ('going-down', 5),
    ('hull-vs-standard', 6),
])
def test_acceptance_sweeps(check, n):
    report = cmd_verify(check, n, VerifierConfig(jobs=0))
    assert report.passed, report.counterexamples
