import json

import pytest

from qforms.cli import EXIT_FAIL, EXIT_OK, EXIT_TRUNCATED, EXIT_USAGE, main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_dims(capsys):
    status, out, _ = run(capsys, "dims", "--n", "2", "--max-degree", "4")
    assert status == EXIT_OK
    assert json.loads(out) == [1, 4, 6, 4, 1]


def test_probabilistic_needs_seed(capsys):
    status, _, err = run(capsys, "dims", "--mode", "probabilistic")
    assert status == EXIT_USAGE and "seed" in err


def test_dims_truncation(capsys, monkeypatch):
    monkeypatch.setenv("QFORMS_MAX_DIM", "64")
    status, out, _ = run(capsys, "dims", "--n", "2", "--max-degree", "5")
    assert status == EXIT_TRUNCATED
    assert json.loads(out) == [1, 4, 6, 4]


def test_spectrum_single_row(capsys):
    status, out, _ = run(capsys, "spectrum", "--n", "2", "--max-boxes", "1")
    doc = json.loads(out)
    assert status == EXIT_OK
    assert len(doc["rows"]) == 1
    assert doc["rows"][0]["E"] == "(2*z^8 - 2*z^6 - 2*z^2 + 2)/(z^4)"


@pytest.mark.parametrize("bad", ["0", "1", "-1"])
def test_spectrum_rejects_degenerate_point(capsys, bad):
    status, _, _ = run(capsys, "spectrum", "--at", bad)
    assert status == EXIT_USAGE


def test_spectrum_csv_quotes_strings(capsys):
    status, out, _ = run(capsys, "spectrum", "--n", "2", "--max-boxes", "1", "--at", "3/2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == '"diagram","E","value"'
    assert lines[1].startswith('"1,0","(2*z^8')


def test_verify_metric_and_negative_control(capsys):
    status, out, _ = run(capsys, "verify-metric", "--n", "2")
    doc = json.loads(out)
    assert status == EXIT_OK
    assert all(c["anchor"] for c in doc["checks"])
    status, _, _ = run(capsys, "verify-metric", "--n", "2", "--negative-control")
    assert status == EXIT_FAIL


def test_verify_metric_beyond_bound(capsys):
    status, out, _ = run(capsys, "verify-metric", "--n", "5")
    assert status == EXIT_TRUNCATED
    assert json.loads(out)["truncated"] is True


def test_bad_flag_is_usage_error(capsys):
    assert run(capsys, "dims", "--bogus")[0] == EXIT_USAGE
    assert run(capsys, "laplace-oracle", "--m", "3")[0] == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["braid-check", "--n", "2"],
    ["rform", "--n", "2"],
    ["hodge", "--n", "2", "--k", "2"],
    ["laplace-oracle", "--n", "2", "--m", "2"],
    ["laplace-oracle", "--n", "3", "--m", "1"],
])
def test_suites_pass(capsys, argv):
    status, out, _ = run(capsys, *argv)
    assert status == EXIT_OK
    json.loads(out)


def test_text_format(capsys):
    status, out, _ = run(capsys, "hodge", "--n", "2", "--k", "1", "--format", "text")
    assert status == EXIT_OK
    assert out.startswith("name=hodge_round_trip")
