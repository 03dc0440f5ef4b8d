import json
import random

from trifocal.cameras import random_triple
from trifocal.cli import main
from trifocal.orbits import catalog
from trifocal.tensor import tensor_from_json, tensor_to_json


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_accepts_normal_form(tmp_path, capsys):
    path = write(tmp_path, "nf.json", tensor_to_json(catalog()["trifocal"].tensor))
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "trifocal: True" in out


def test_check_rejects_skew_with_reason(tmp_path, capsys):
    path = write(tmp_path, "f.json", tensor_to_json(catalog()["skew"].tensor))
    assert main(["check", path, "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["is_trifocal"] is False
    assert "P-Rank" in payload["reason"]
    assert payload["schema"] == "trifocal-report/1"
    assert payload["config"]["prime"] == 101


def test_check_malformed_input(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    assert main(["check", path]) == 2
    path2 = write(tmp_path, "bad2.json", "[[1,2],[3,4]]")
    assert main(["check", path2]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2


def test_from_cameras_pipeline(tmp_path, capsys):
    rng = random.Random(71)
    ct = random_triple(rng)
    cams = write(tmp_path, "cams.json",
                 json.dumps({"A1": ct.a1.m, "A2": ct.a2.m, "A3": ct.a3.m}))
    assert main(["from-cameras", cams]) == 0
    blob = capsys.readouterr().out.strip()
    tensor_from_json(blob)  # parses
    tpath = write(tmp_path, "t.json", blob)
    assert main(["check", tpath]) == 0


def test_from_cameras_degenerate(tmp_path, capsys):
    rng = random.Random(72)
    ct = random_triple(rng)
    cams = write(tmp_path, "cams.json",
                 json.dumps({"A1": ct.a1.m, "A2": ct.a2.m, "A3": ct.a2.m}))
    assert main(["from-cameras", cams]) == 2


def test_from_cameras_scaled_camera_scales_tensor(tmp_path, capsys):
    rng = random.Random(73)
    ct = random_triple(rng)
    cams = write(tmp_path, "a.json",
                 json.dumps({"A1": ct.a1.m, "A2": ct.a2.m, "A3": ct.a3.m}))
    main(["from-cameras", cams])
    t = tensor_from_json(capsys.readouterr().out)
    scaled = write(tmp_path, "b.json",
                   json.dumps({"A1": [[2 * x for x in r] for r in ct.a1.m],
                               "A2": ct.a2.m, "A3": ct.a3.m}))
    main(["from-cameras", scaled])
    t2 = tensor_from_json(capsys.readouterr().out)
    assert t2 == t.scale(2)


def test_classify_report(tmp_path, capsys):
    path = write(tmp_path, "nf.json", tensor_to_json(catalog()["trifocal"].tensor))
    assert main(["classify", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["component"] == "Trifocal"
    assert payload["signature"]["prank"] == [3, 3, 2]
    assert payload["is_trifocal"] is True


def test_classify_with_modules(tmp_path, capsys):
    path = write(tmp_path, "f.json", tensor_to_json(catalog()["skew"].tensor))
    assert main(["classify", path, "--with-modules", "--degree-cap", "5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["component"] == "PRank222"
    assert payload["signature"]["m5_vanishing"] is False


def test_discover_degree3(capsys):
    assert main(["discover", "--degree", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["new_generators_by_degree"] == {"1": 0, "2": 0, "3": 10}
    assert payload["modules"] == [
        {"degree": 3, "label": [[1, 1, 1], [1, 1, 1], [3]], "dimension": 10}]
    hits = [row for row in payload["labels"] if row["vanishing"]]
    assert hits == [{"degree": 3, "label": [[1, 1, 1], [1, 1, 1], [3]],
                     "kronecker": 1, "hw_dim": 1, "vanishing": 1, "new": 1}]


def test_discover_deterministic(capsys):
    assert main(["discover", "--degree", "3", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["discover", "--degree", "3", "--json"]) == 0
    assert capsys.readouterr().out == first


def test_discover_other_seed_and_prime(capsys):
    assert main(["discover", "--degree", "3", "--seed", "9",
                 "--prime", "32003", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["new_generators_by_degree"]["3"] == 10
    assert payload["config"] == {"prime": 32003, "seed": 9,
                                 "degree_cap": 6, "oversample": 2}


def test_discover_rejects_over_cap(capsys):
    assert main(["discover", "--degree", "7", "--degree-cap", "6"]) == 2
    assert main(["discover", "--degree", "9", "--degree-cap", "9"]) == 2


def test_hilbert_low_cap(capsys):
    assert main(["hilbert", "--degree-cap", "4", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hilbert_quotient"] == {"1": 27, "2": 378, "3": 3644, "4": 27135}


def test_nzd_verdict_at_low_cap(capsys):
    assert main(["nzd", "--witness", "f", "--degree-cap", "5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["non_zero_divisor"] is True
    assert payload["witness_degree"] == 3
    assert payload["failing_degree"] is None
    assert payload["table"]["5"]["expected"] == payload["table"]["5"]["actual"]


def test_nzd_bad_witness_file(tmp_path, capsys):
    bad = write(tmp_path, "w.txt", "not ** a (poly")
    assert main(["nzd", "--witness", bad, "--degree-cap", "3"]) == 2


def test_nzd_invalid_prime(capsys):
    assert main(["nzd", "--witness", "f", "--prime", "100"]) == 2


def test_catalog_listing(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    for name in ("trifocal", "orbit17", "orbit18", "skew", "sub233"):
        assert name in out
    assert main(["catalog", "nope"]) == 2


def test_catalog_emits_tensor(capsys):
    assert main(["catalog", "skew"]) == 0
    t = tensor_from_json(capsys.readouterr().out)
    assert t == catalog()["skew"].tensor
