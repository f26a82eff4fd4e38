import pytest

import soergel


def test_group_basics():
    w = soergel.CoxeterSystem("A2")
    assert len(w) == 6
    assert w.rank == 2
    top = w.parse("s1s2s1")
    assert w.length(top) == 3
    assert w.name(top) == "s1s2s1"
    assert all(w.bruhat_leq(0, x) for x in w.elements())


def test_graded_dim():
    assert [soergel.graded_dim(2, d) for d in range(0, 7)] == [1, 0, 2, 0, 3, 0, 4]


def test_rouquier_formula_small_grid():
    rep = soergel.rouquier_formula("A2", x="s1,s2", y="s1,s2", i_range=(-1, 1), d_range=(0, 4))
    assert rep["schema_version"] == 1
    assert rep["summary"]["failed"] == 0
    diag = [r["computed"] for r in rep["records"] if r["x"] == r["y"] == "s1" and r["i"] == 0]
    assert diag == [1, 0, 2, 0, 3]


def test_cohomology_of_longest_word():
    rep = soergel.cohomology("A2", "s1 s2 s1")
    h0 = [r for r in rep["records"] if r["i"] == 0][0]
    assert h0["result"] == "R_s1s2s1(-3)"
    assert rep["summary"]["failed"] == 0


def test_characters_and_exactness():
    rep = soergel.characters("A1", "s1")
    delta = {r["x"]: r["shifts"] for r in rep["records"] if r["side"] == "delta"}
    assert delta == {"e": [1], "s1": [-1]}
    assert soergel.delta_exact("A2", complex="F")["summary"]["failed"] == 0
    bad = soergel.delta_exact("A1", w="s1", complex="E", side="delta")
    assert bad["summary"]["failed"] > 0


def test_homdim_and_errors():
    rep = soergel.homdim("A1", "braid:s1 s1^-1", "R:e:0", i_range=(0, 0), d_range=(0, 2))
    assert [r["dim"] for r in rep["records"]] == [1, 0, 1]
    with pytest.raises(ValueError):
        soergel.CoxeterSystem("Z9")
    with pytest.raises(ValueError):
        soergel.cohomology("A2", "s1 q2")
