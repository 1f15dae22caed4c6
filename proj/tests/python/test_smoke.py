import json
from pathlib import Path

import pytest

import twistbench as tb

DATA = Path(__file__).resolve().parents[2] / "data"

Z2 = (["e", "t"], [[0, 1], [1, 0]])
S3_ELEMENTS = ["e", "r", "r2", "s", "rs", "r2s"]


def s3_table():
    # elements r^i s^j as (i, j); s r = r^{-1} s
    elems = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]

    def mul(a, b):
        (i, j), (k, l) = a, b
        return ((i + (k if j == 0 else -k)) % 3, (j + l) % 2)

    return [[elems.index(mul(a, b)) for b in elems] for a in elems]


def test_groupoids_and_corpus():
    pt = tb.point()
    assert (pt.num_objects, pt.num_morphisms) == (1, 1)
    names = [n for n, _ in tb.corpus()]
    assert names == ["pt", "pair", "BZ2", "BZ2_graded", "B(Z2xZ2)", "BS3", "Gr(swap)", "Z2//Z2", "S3//S3"]
    g = tb.delooping(*Z2, epsilon=[1, -1])
    assert g.phi == [1, -1]
    assert not g.is_ungraded()
    again = tb.groupoid_from_json(json.dumps({"format": 1, **json.loads(g.to_json())}))
    assert again.morphism_ids == g.morphism_ids


def test_cohomology_values():
    bz2 = tb.delooping(*Z2)
    for n in range(3):
        assert str(tb.cohomology(bz2, n, 2)) == "Z/2"
    graded = tb.delooping(*Z2, epsilon=[1, -1])
    h = tb.cohomology(graded, 2, 4, tb.Involution.negation)
    assert h.invariant_factors == [2]
    assert h.order == 2
    rep = h.representative([1])
    assert h.is_cocycle(rep) and h.coordinates(rep) == [1]
    klein = tb.delooping(["e", "a", "b", "ab"], [[i ^ j for j in range(4)] for i in range(4)])
    assert tb.cohomology(klein, 2, 2).order == 8


def test_extensions_and_classes():
    g = tb.delooping(*Z2, epsilon=[1, -1])
    kramers = tb.Extension(g, 4, [0, 0], [0, 0, 0, 2])
    assert kramers.validate() == []
    assert kramers.classify() == {"c": [0], "lambda": [1]}
    triv = tb.Extension.trivial(g, 4)
    assert tb.find_refinement(triv, kramers) is None
    assert tb.find_refinement(kramers, kramers) is not None
    assert not tb.line_morphism_exists(triv, kramers)
    bad = tb.Extension(g, 4, [0, 0], [0, 1, 0, 0])
    assert bad.validate()
    loaded = tb.load_extension(str(DATA / "kramers.json"))
    assert loaded.classify() == kramers.classify()


def test_transgression_and_counts():
    omega = [0] * 8
    omega[7] = 1
    e = tb.transgress(*Z2, 2, omega)
    assert e.validate() == []
    assert e.groupoid.num_objects == 2
    assert tb.count_simples(e)["count"] == 4
    s3 = tb.conjugation(S3_ELEMENTS, s3_table())
    s = tb.count_simples(tb.Extension.trivial(s3, 2))
    assert s["count"] == 8
    assert s["smallest_kept"] > 1e3 * s["tolerance"]
    with pytest.raises(tb.UnsupportedError):
        tb.count_simples(tb.Extension.trivial(tb.delooping(*Z2, epsilon=[1, -1]), 2))


def test_reps_and_files():
    j = tb.load_rep(str(DATA / "j_rep.json"))
    assert j.validate() == []
    assert j.is_irreducible()
    assert j.endo_type() == "H"
    assert j.total_dimension == 2
    kind, violations = tb.validate_file(str(DATA / "broken_compose.json"))
    assert kind == "groupoid" and violations
    with pytest.raises(tb.ParseError):
        tb.validate_file(str(DATA / "malformed.json"))
    with pytest.raises(tb.CapExceededError):
        tb.cohomology(tb.conjugation(S3_ELEMENTS, s3_table()), 2, 12, cap=10)


def test_cli_exit_codes():
    code, out, _ = tb.run_cli(["--format", "json", "count-simples", str(DATA / "s3_double.json")])
    assert code == 0 and json.loads(out)["count"] == 8
    assert tb.run_cli(["validate", str(DATA / "broken_compose.json")])[0] == 1
    assert tb.run_cli(["validate", str(DATA / "malformed.json")])[0] == 2
    assert tb.run_cli(["count-simples", str(DATA / "kramers.json")])[0] == 3
