import os
import pathlib

import pytest

import dkbreason as dr

DATA = pathlib.Path(os.environ.get("DKB_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return dr.DKB((DATA / name).read_text())


def test_department_models():
    kb = load("dept.dkb")
    ms = dr.models(kb)
    assert len(ms) == 1
    assert [c["text"] for c in ms[0]["chi"]] == ["DeptMember ⊑ ∃hasCourse @ bob"]
    assert dr.entails(kb, "exists hasCourse(alice)")
    assert not dr.entails(kb, "exists hasCourse(bob)")
    assert dr.entails(kb, "not exists hasCourse(bob)")


def test_query_and_modes():
    kb = load("dept.dkb")
    assert dr.query(kb, "?(x) :- DeptMember(x), hasCourse(x,y).") == [["alice"]]
    nixon = load("nixon.dkb")
    assert not dr.entails(nixon, "Pacifist(nixon)")
    assert dr.entails(nixon, "Pacifist(nixon)", mode="brave")
    assert len(dr.models(nixon, limit=1)) == 1


def test_safety_and_refusal():
    e5 = load("example5.dkb")
    r = dr.check(e5)
    assert not r["exception_safe"] and r["recursive"] and r["chain_bound"] is None
    assert dr.check(load("dept.dkb"))["chain_bound"] == 1
    with pytest.raises(dr.UnsafeKBError):
        dr.models(e5)
    assert dr.is_satisfiable(e5)
    assert not dr.is_satisfiable(load("inconsistent.dkb"))


def test_parse_errors_and_round_trip():
    with pytest.raises(dr.DKBError):
        dr.DKB("A [= .")
    kb = load("dept.dkb")
    assert dr.DKB(str(kb)) == kb
    assert "_ex_hasCourse" in str(dr.normalize(kb))
    assert kb.individuals == ["alice", "bob"]


def test_oracle_matches_models():
    kb = load("nixon.dkb")
    oracle = sorted(sorted(c["axiom"] for c in chi) for chi in dr.oracle_justified_chis(kb))
    pipeline = sorted(sorted(c["axiom"] for c in m["chi"]) for m in dr.models(kb))
    assert oracle == pipeline


def test_compile_is_stable():
    kb = load("dept.dkb")
    text = dr.compile(kb)
    assert text == dr.compile(kb)
    assert 'supEx("_ex_hasCourse",hasCourse,aux_1).' in text
