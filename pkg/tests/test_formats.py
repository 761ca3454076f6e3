import pytest

from tpact.errors import AxiomViolation, MalformedInput
from tpact.formats import (
    load_bundle,
    parse_ext,
    parse_tpa,
    parse_tsm,
    write_ext,
    write_sgp,
    write_tpa,
    write_tsm,
)
from tpact.semigroup import load_table


def test_sgp_round_trip(corpus_dir):
    for p in sorted(corpus_dir.glob("*.sgp")):
        S = load_table(p.read_text())
        assert load_table(write_sgp(S)).table == S.table


def test_tpa_round_trip(corpus):
    for T in corpus[".tpa"].values():
        text = write_tpa(T)
        assert parse_tpa(text).same_as(T)
        assert write_tpa(parse_tpa(text)) == text


def test_tsm_round_trip(corpus):
    for mod in corpus[".tsm"].values():
        text = write_tsm(mod)
        assert parse_tsm(text).same_as(mod)


def test_ext_round_trip(corpus):
    for ext in corpus[".ext"].values():
        text = write_ext(ext)
        assert write_ext(parse_ext(text)) == text


def test_unicode_arrow_and_comments(corpus):
    T = corpus[".tpa"]["E2_Z2.tpa"]
    text = write_tpa(T).replace("->", " → ")
    text = "# leading comment\n" + text.replace("\nTHETA 0", "  # trailing\nTHETA 0")
    assert parse_tpa(text).same_as(T)


def test_malformed_inputs():
    with pytest.raises(MalformedInput):
        parse_tpa("stray line\n")
    with pytest.raises(MalformedInput):
        parse_tsm("S\n1\n0\n")


def test_missing_w_block(corpus):
    text = write_tpa(corpus[".tpa"]["Z2_Z2_trivial.tpa"])
    cut = text.index("W 1 1:")
    with pytest.raises(MalformedInput):
        parse_tpa(text[:cut])


def test_corrupted_theta_reports_axiom(corpus, tmp_path):
    text = write_tpa(corpus[".tpa"]["V_Z2_swap.tpa"])
    bad = text.replace("THETA 1: 0->1 1->0", "THETA 1: 0->0 1->0")
    assert bad != text
    p = tmp_path / "bad.tpa"
    p.write_text(bad)
    with pytest.raises((AxiomViolation, MalformedInput)):
        load_bundle(p)


def test_unknown_suffix(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("")
    with pytest.raises(MalformedInput):
        load_bundle(p)
