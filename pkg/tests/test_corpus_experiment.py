import io
from fractions import Fraction as F

import pytest

from nipdef.corpus import STANDARD_SPECS, FamilySpec, generate, parse_spec, standard_corpus
from nipdef.experiment import ExperimentRecord, read_csv, read_specfile, run_experiment, write_csv
from nipdef.setsystem import vc_dim

import oracles


def test_generate_examples():
    P = generate("powerset:n=3")
    assert P.nrows == 8 and vc_dim(P) == 3
    T = generate("thresholds:n=6")
    assert T.nrows == 7 and vc_dim(T) == 1 == oracles.vc_dim(T.rows)
    K = generate("k-interval-unions:n=6,k=2")
    assert vc_dim(K) == 4 == oracles.vc_dim(K.rows)


@pytest.mark.parametrize(
    "spec, vc",
    [
        ("powerset:n=4", 4),
        ("thresholds:n=9", 1),
        ("intervals:n=1", 1),
        ("intervals:n=7", 2),
        ("k-interval-unions:n=5,k=1", 2),
        ("k-interval-unions:n=7,k=3", 6),
        ("k-interval-unions:n=4,k=3", 4),
        ("halfplane-grid:w=2,h=2", 3),
        ("halfplane-grid:w=3,h=2", 3),
        ("halfplane-grid:w=4,h=1", 2),
    ],
)
def test_documented_vc(spec, vc):
    S = generate(spec)
    assert vc_dim(S) == vc == oracles.vc_dim(S.rows)


def test_mod_classes_vc_against_oracle():
    for spec in ("mod-classes:n=8,q=3", "mod-classes:n=12,q=4", "mod-classes:n=14,q=5"):
        S = generate(spec)
        assert vc_dim(S) == oracles.vc_dim(S.rows)


def test_generation_is_deterministic():
    for text in ("random:rows=20,cols=7,seed=9", "halfplane-grid:w=3,h=3"):
        assert generate(text) == generate(text)
    assert generate("random:rows=20,cols=7,seed=9") != generate("random:rows=20,cols=7,seed=10")
    assert generate("random:rows=20,cols=7,seed=9").is_canonical()


def test_spec_strings():
    spec = parse_spec(" k-interval-unions : k=2 , n=6 ")
    assert spec == FamilySpec.make("k-interval-unions", n=6, k=2)
    assert str(spec) == "k-interval-unions:k=2,n=6" and spec["n"] == 6
    assert parse_spec(str(spec)) == spec


@pytest.mark.parametrize(
    "text",
    ["nope:n=3", "powerset", "powerset:n=13", "powerset:n=x", "powerset:n", "thresholds:n=3,m=2",
     "k-interval-unions:n=3,k=4", "mod-classes:n=4,q=5"],
)
def test_bad_specs(text):
    with pytest.raises(ValueError):
        parse_spec(text)


def test_standard_corpus_limits():
    corpus = standard_corpus()
    assert len(corpus) == len(STANDARD_SPECS) >= 15
    for spec, S in corpus:
        assert vc_dim(S) <= 3 and S.ncols <= 14 and S.nrows <= 256, spec


# experiments


def test_empty_experiment():
    assert run_experiment([]) == []
    buf = io.StringIO()
    write_csv([], buf)
    assert buf.getvalue().count("\n") == 1


def test_single_record():
    (r,) = run_experiment(["thresholds:n=6"])
    assert r.verification == "pass" and r.m >= 1
    assert (r.columns, r.rows, r.vc) == (6, 7, 1)
    assert r.game_value >= F(2, 3) and r.K >= 1 and r.runtime_ms is not None


def test_order_and_failure_capture():
    recs = run_experiment(["powerset:n=3", "intervals:n=5", "powerset:n=1"], timing=False)
    assert [r.family for r in recs] == ["powerset:n=3", "intervals:n=5", "powerset:n=1"]
    assert recs[0].verification == recs[1].verification == "pass"
    assert recs[2].verification.startswith("fail:")


def test_workers_match_serial():
    specs = ["thresholds:n=4", "intervals:n=4", "powerset:n=2"]
    assert run_experiment(specs, timing=False, workers=2) == run_experiment(specs, timing=False)


def test_csv_roundtrip(tmp_path):
    recs = run_experiment(["thresholds:n=4", "powerset:n=3"], timing=True)
    path = tmp_path / "out.csv"
    write_csv(recs, path)
    assert read_csv(path) == recs
    blank = [ExperimentRecord(**{**r.__dict__, "runtime_ms": None}) for r in recs]
    buf = io.StringIO()
    write_csv(blank, buf)
    buf.seek(0)
    assert read_csv(buf) == blank


def test_specfile(tmp_path):
    path = tmp_path / "specs.txt"
    path.write_text("# corpus\nthresholds:n=4\n\n  powerset:n=2  # small\n")
    assert [str(s) for s in read_specfile(path)] == ["thresholds:n=4", "powerset:n=2"]
