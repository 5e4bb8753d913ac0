import io
import json
import os

from dforge import cli
from dforge import serialize
from dforge.fields import field_make
from dforge.poly import LocalizedRing, PolyRing
from dforge.series import Series


def run_cli(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_census_T():
    code, out = run_cli("census", "--q", "3", "--f", "0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["cusp_count"] == "4"
    assert doc["component_count"] == "1"
    assert doc["x0_cusp_count"] == "2"
    assert doc["mode"] == "enumeration"


def test_census_T2():
    code, out = run_cli("census", "--q", "3", "--f", "0,0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["cusp_count"] == "36"
    assert doc["component_count"] == "3"


def test_census_malformed_f():
    code, _ = run_cli("census", "--q", "3", "--f", "zz")
    assert code == 2
    code, _ = run_cli("census", "--q", "3", "--f", "1")
    assert code == 2
    code, _ = run_cli("census", "--q", "10", "--f", "0,1")
    assert code == 2


def test_tate_document_and_roundtrip():
    code, out = run_cli("tate", "--q", "3", "--f", "0,1", "--N", "9")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == "3" and doc["N"] == "9"
    # Delta has lowest index 6
    assert doc["Delta"]["low"] == "6"
    assert doc["jinv"]["k"] == "6"
    # g[0] equals psi's tau-coefficient 2T: lam-basis [(2T)/1, 0]
    g0 = doc["g"]["coeffs"][0]
    assert g0[0] == {"num": ["0", "2"], "fpow": "0"}
    # field order of the document is fixed
    assert list(doc.keys()) == ["q", "f", "N", "g", "Delta", "jinv",
                                "levels"]
    # levels parse back bit-exactly
    F3 = field_make(3, 1, 1)
    from dforge.drinfeld import rank1_universal
    R = rank1_universal(F3, (0, 1)).ring
    s = serialize.parse_series_rp(doc["levels"]["lam10"], R)
    assert serialize.ser_series_rp(s) == doc["levels"]["lam10"]


def test_tate_insufficient_precision():
    code, _ = run_cli("tate", "--q", "3", "--f", "0,1", "--N", "1")
    assert code == 3


def test_reduce_roundtrip(tmp_path):
    here = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    example = os.path.join(here, "docs", "reduce_input_example.json")
    code, out = run_cli("reduce", example)
    assert code == 0
    doc = json.loads(out)
    assert doc["stable_rank"] == "1"
    assert doc["k"] == "0"
    assert doc["psi"][1]["coeffs"] == ["2"]
    assert doc["lattice_generator"]["low"] == "-3"


def test_reduce_good_reduction(tmp_path):
    doc = {
        "q": "3", "m": "2", "f": ["0", "1"], "N": "8",
        "phi": [serialize.ser_series_field(Series(field_make(3, 1, 2),
                                                  0, (c,), 8))
                for c in (4, 1, 1)],
    }
    p = tmp_path / "good.json"
    p.write_text(json.dumps(doc))
    code, out = run_cli("reduce", str(p))
    assert code == 0
    rep = json.loads(out)
    assert rep["stable_rank"] == "2"
    assert rep["psi"] is None


def test_reduce_nonintegral_slope(tmp_path):
    F9 = field_make(3, 1, 2)
    doc = {
        "q": "3", "m": "2", "f": ["0", "1"], "N": "8",
        "phi": [serialize.ser_series_field(Series(F9, 0, (4,), 8)),
                serialize.ser_series_field(Series(F9, 0, (1,), 8)),
                serialize.ser_series_field(Series(F9, 1, (1,), 8))],
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, _ = run_cli("reduce", str(p))
    assert code == 4


def test_reduce_truncated_too_short(tmp_path):
    F9 = field_make(3, 1, 2)
    doc = {
        "q": "3", "m": "2", "f": ["0", "1"], "N": "8",
        "phi": [serialize.ser_series_field(Series(F9, 0, (4,), 1)),
                serialize.ser_series_field(Series(F9, 0, (1,), 1)),
                serialize.ser_series_field(Series(F9, 0, (1,), 1))],
    }
    p = tmp_path / "short.json"
    p.write_text(json.dumps(doc))
    code, _ = run_cli("reduce", str(p))
    assert code == 3


def test_selftest_passes_and_is_deterministic():
    code1, out1 = run_cli("selftest")
    assert code1 == 0
    assert all(line.startswith("PASS") for line in
               out1.strip().splitlines())
    code2, out2 = run_cli("selftest", "--seed", "7")
    assert code2 == 0
    assert len(out2.strip().splitlines()) == len(out1.strip().splitlines())


def test_serialization_roundtrips():
    F3 = field_make(3, 1, 1)
    A = PolyRing(F3)
    Af = LocalizedRing(A, (0, 1))
    import random
    rng = random.Random(71)
    for _ in range(200):
        a = Af.rand(rng, 3)
        assert serialize.parse_af(serialize.ser_af(a), Af) == a
    s = Series(F3, -2, (1, 2, 0, 1), 7)
    doc = serialize.ser_series_field(s)
    assert serialize.parse_series_field(doc, F3) == s


def test_selftest_detects_mutations(monkeypatch):
    # a forced bug must flip the verdict (mutation check)
    from dforge import selftest as st

    def broken(seed):
        raise AssertionError("forced bug")

    monkeypatch.setattr(st, "SUITES", st.SUITES[:2] +
                        [("forced-mutation", broken)])
    buf = io.StringIO()
    failures = st.run_all(seed=1, out=buf)
    assert failures == 1
    assert "FAIL forced-mutation" in buf.getvalue()


def test_tate_document_full_roundtrip():
    code, out = run_cli("tate", "--q", "3", "--f", "0,1", "--N", "9")
    assert code == 0
    doc = json.loads(out)
    F3 = field_make(3, 1, 1)
    from dforge.drinfeld import rank1_universal
    R = rank1_universal(F3, (0, 1)).ring
    for key in ("g", "Delta"):
        s = serialize.parse_series_rp(doc[key], R)
        assert serialize.ser_series_rp(s) == doc[key]
    alpha0 = serialize.parse_rp(doc["jinv"]["alpha0"], R)
    assert serialize.ser_rp(alpha0) == doc["jinv"]["alpha0"]
    f = serialize.parse_fqpoly(doc["f"])
    assert serialize.ser_fqpoly(f) == doc["f"]
