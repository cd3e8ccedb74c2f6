import io
import json

import pytest

from g2fourier.cli import (
    Config, EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY, evaluate_table, format_word, main,
    parse_ints, parse_word,
)
from g2fourier.defaults import PAIR_WORDS
from g2fourier.scalars import GaussRational, T, parse_scalar
from g2fourier.theta import TABLE6_VALUES, PolyVW


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_sp6_trivial_target_prints_zero():
    code, text = run("sp6", "--t0", "1,0,0,0,0,0", "--k1", "1", "--k2", "1", "--r", "2,t,0,1,0,-1/2")
    assert code == EXIT_OK and text.strip() == "0"


def test_sp6_json_round_trip():
    code, text = run("--format", "json", "sp6", "--t0", "1,1,1,1,1,1", "--k1", "2", "--k2", "4",
                     "--r", "t,1,1/2,0,2,-1")
    assert code == EXIT_OK
    doc = json.loads(text)
    poly = PolyVW.from_json(doc["polynomial"])
    assert not poly.is_zero()
    assert str(poly) == doc["text"]
    assert PolyVW.parse(doc["text"], 2, 4) == poly


def test_sp6_vanishing_at_0_7():
    code, text = run("sp6", "--t0", "1,1,1,1,1,1", "--k1", "0", "--k2", "7", "--r", "1,0,0,0,0,0")
    assert code == EXIT_OK and text.strip() == "0"


@pytest.mark.parametrize("argv", [
    ("sp6", "--t0", "2,1,1,0,0,0", "--k1", "1", "--k2", "0"),
    ("sp6", "--t0", "1,1,1", "--k1", "1", "--k2", "0"),
    ("sp6", "--t0", "1,1,1,1,1,1", "--k1", "0", "--k2", "0"),
    ("sp6", "--t0", "1,1,1,1,1,1", "--k1", "1", "--k2", "0", "--r", "1,2"),
    ("g2", "--frame", "I", "--cubic", "2,0,0,0", "--m", "2"),
    ("g2", "--frame", "I", "--cubic", "1,0,0,0", "--m", "0"),
    ("g2", "--frame", "I", "--cubic", "1,0,1,0", "--m", "2", "--word", "99:1"),
    ("g2", "--frame", "I", "--cubic", "1,0,1,0", "--m", "2", "--word", "3"),
    ("g2", "--frame", "X", "--cubic", "1,0,1,0", "--m", "2"),
    ("shells", "--n", "-1"),
    ("table6", "--frames", "Q"),
    ("--jobs", "0", "shells", "--n", "1"),
    ("nonsense",),
])
def test_precondition_errors_exit_1(argv):
    assert run(*argv)[0] == EXIT_PRECONDITION


def test_g2_empty_omega_is_zero():
    code, text = run("g2", "--frame", "I", "--cubic", "1,0,1,0", "--m", "3", "--word", "0:t,9:1")
    assert code == EXIT_OK and text.strip() == "0"


def test_g2_csv_output():
    code, text = run("--format", "csv", "g2", "--frame", "I", "--cubic", "1,-1,-1,0", "--m", "2",
                     "--word", format_word(PAIR_WORDS[1]))
    assert code == EXIT_OK
    header, row = text.strip().splitlines()
    assert header.split(",")[0] == "frame"
    assert parse_scalar(row.split(",")[-1]) != 0


def test_g2_E_frame_on_reducible_cubic():
    code, text = run("g2", "--frame", "E", "--cubic", "1,0,-1,0", "--m", "5", "--word", "0:t,9:1,17:t")
    assert code == EXIT_OK and text.strip() == "0"


def test_shells_command(tmp_path):
    cache = tmp_path / "c.json"
    code, text = run("--format", "json", "shells", "--n", "2", "--trace", "1", "--cache", str(cache))
    assert code == EXIT_OK and json.loads(text)["count"] == 576
    assert cache.exists()
    code2, text2 = run("--format", "json", "shells", "--n", "2", "--trace", "1", "--cache", str(cache))
    assert (code2, text2) == (code, text)
    code, text = run("shells", "--n", "1", "--list")
    assert code == EXIT_OK and len(text.strip().splitlines()) == 241


def test_bad_cache_file_is_rejected(tmp_path):
    cache = tmp_path / "c.json"
    cache.write_text(json.dumps({"version": 1, "basis_fingerprint": "x", "shells": []}))
    assert run("shells", "--n", "1", "--cache", str(cache))[0] == EXIT_PRECONDITION


def test_parsers():
    assert parse_ints("1,-2,3", 3, "x") == (1, -2, 3)
    with pytest.raises(ValueError):
        parse_ints("1,a", 2, "x")
    word = parse_word("0:t,9:1/2,17:-1+t")
    assert word == ((0, T), (9, GaussRational(1, 0) / 2), (17, GaussRational(-1, 1)))
    assert parse_word(format_word(word)) == word
    assert parse_word(None) == ()


def test_config_validation():
    with pytest.raises(ValueError):
        Config(parallelism=0)
    with pytest.raises(ValueError):
        Config(output_format="xml")


def test_evaluate_table_flags_a_corrupted_row():
    raw = [48 * v for v in TABLE6_VALUES]
    good = evaluate_table("I", (), raw)
    assert good.passed and good.normalized == list(TABLE6_VALUES)
    flipped = evaluate_table("I", (), [-x for x in raw])
    assert flipped.passed
    expected = list(TABLE6_VALUES)
    expected[4] = 7
    bad = evaluate_table("I", (), raw, expected)
    assert not bad.passed
    assert bad.row_ok == [i != 4 for i in range(12)]
    assert not evaluate_table("E", (), [0] * 12).passed


def test_table6_exit_code_on_mismatch(monkeypatch):
    import g2fourier.cli as cli
    raw = [GaussRational(48 * v) for v in TABLE6_VALUES]
    monkeypatch.setattr(cli, "_table_frame", lambda frame, words: [raw for _ in words])
    code, text = run("--format", "json", "table6", "--frames", "I")
    assert code == EXIT_OK and json.loads(text)["passed"]
    expected = ",".join(str(v) for v in (TABLE6_VALUES[:-1] + (64,)))
    code, text = run("table6", "--frames", "I", "--expected", expected)
    assert code == EXIT_VERIFY and "MISMATCH" in text
