import io
import re

from tpact.cli import main
from tpact.formats import parse_tpa, parse_tsm


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_inspect_e2(corpus_dir):
    code, out = run("inspect", str(corpus_dir / "E2.sgp"))
    assert code == 0
    assert "n=2 E=2 sigma-classes=1" in out
    assert "e-unitary=yes" in out


def test_inspect_i2_is_not_e_unitary(corpus_dir):
    code, out = run("inspect", str(corpus_dir / "I2.sgp"))
    assert code == 0
    assert "e-unitary=no" in out and "clifford=no" in out


def test_crossed_twisted_z2(corpus_dir, tmp_path):
    dest = tmp_path / "u.sgp"
    code, _ = run("crossed", str(corpus_dir / "Z2_Z2_twisted.tpa"), "-o", str(dest))
    assert code == 0
    from tpact.semigroup import load_table

    assert load_table(dest.read_text()).n == 4


def test_convert_round_trip(corpus_dir, tmp_path):
    src = corpus_dir / "V_Z2_partial.tpa"
    tsm, tpa = tmp_path / "m.tsm", tmp_path / "a.tpa"
    assert run("convert", "--to-module", str(src), "-o", str(tsm))[0] == 0
    assert run("convert", "--to-action", str(tsm), "-o", str(tpa))[0] == 0
    back = parse_tpa(tpa.read_text())
    assert back.same_as(parse_tpa(src.read_text()))
    assert parse_tsm(tsm.read_text()).S.n > 0


def test_convert_non_sieben_exits_1(corpus_dir):
    code, out = run("convert", "--to-action", str(corpus_dir / "nonmono_not_sieben.tsm"))
    assert code == 1
    assert re.search(r"sieben condition fails at \(s,e\)=\(\d+,\d+\)", out)


def test_verify_corpus_passes(corpus_dir):
    paths = sorted(str(p) for p in corpus_dir.iterdir())
    code, out = run("verify", "--quiet", *paths)
    assert code == 0, out
    assert "failed=0" in out


def test_verify_corrupted_action(corpus_dir, tmp_path):
    text = (corpus_dir / "V_Z2_swap.tpa").read_text()
    bad = tmp_path / "bad.tpa"
    bad.write_text(text.replace("THETA 1: 0->1 1->0", "THETA 1: 0->0 1->0"))
    code, out = run("verify", str(bad))
    assert code == 1
    assert re.search(r"CHECK bad\.tpa:axiom-\w+: FAIL witness=\(", out)


def test_verify_without_inputs_is_usage_error():
    assert run("verify")[0] == 2


def test_bad_cap_is_usage_error(corpus_dir):
    assert run("verify", "--max-iso", "0", str(corpus_dir / "E2.sgp"))[0] == 2


def test_missing_file_is_usage_error(tmp_path):
    assert run("inspect", str(tmp_path / "nope.sgp"))[0] == 2


def test_output_is_byte_identical(corpus_dir):
    paths = sorted(str(p) for p in corpus_dir.glob("*.tpa"))
    assert run("verify", "--seed", "5", *paths) == run("verify", "--seed", "5", *paths)
    assert run("crossed", paths[0]) == run("crossed", paths[0])


def test_fail_lines_carry_witness_tuples(corpus_dir, tmp_path):
    bad = tmp_path / "bad.tpa"
    bad.write_text((corpus_dir / "V_Z2_swap.tpa").read_text().replace("THETA 1: 0->1 1->0", "THETA 1: 0->0 1->0"))
    _, out = run("verify", str(bad))
    for line in out.splitlines():
        if ": FAIL" in line:
            assert re.search(r"witness=\([^)]*\)", line)
