import random

import pytest

from oracles import Brute

from prefrepair import BoundExceeded, RepairKind, TieBreaker, check_repair, enumerate_repairs, find_crep, repair_report
from prefrepair.generators import RandomParams, fixture, gen_random
from prefrepair.repairs import (
    find_crep_steps,
    is_completion_repair_by_enumeration,
    is_consistent,
    is_global_improvement,
    is_pareto_improvement,
    is_repair,
    iter_repairs,
)

from test_model import unary

J1 = {"f_g_br", "f_a_pi"}
J2 = {"f_g_pa", "f_a_pi"}
J3 = {"f_g_br", "f_a_pa"}
J4 = {"f_g_pi", "f_a_pa"}


def small(seed, n=None, arity=None):
    rng = random.Random(seed)
    return gen_random(
        RandomParams(
            n_facts=n or rng.randint(1, 9),
            max_edge_arity=arity or rng.randint(2, 4),
            edge_density=rng.uniform(0.1, 0.5),
            priority_density=rng.random(),
        ),
        seed,
    )


def test_kind_aliases():
    assert RepairKind.parse("p") is RepairKind.PARETO
    assert RepairKind.parse("g") is RepairKind.GLOBAL
    assert RepairKind.parse("c") is RepairKind.COMPLETION
    assert RepairKind.parse(RepairKind.PLAIN) is RepairKind.PLAIN
    with pytest.raises(ValueError):
        RepairKind.parse("x")


def test_improvements_on_company_ceo():
    d = fixture("company-ceo")
    assert is_pareto_improvement(J2, J1, d)
    assert is_global_improvement(J4, J2, d)
    assert not is_pareto_improvement(J4, J2, d)
    assert not is_global_improvement(J1, J4, d)


def test_consistency_and_plain():
    d = fixture("company-ceo")
    assert is_consistent(J1, d.hypergraph)
    assert not is_consistent({"f_g_pi", "f_g_pa"}, d.hypergraph)
    assert all(is_repair(j, d) for j in (J1, J2, J3, J4))
    assert not is_repair({"f_g_pi"}, d)


def test_witnesses():
    d = fixture("company-ceo")
    r = check_repair(J1, d, "pareto")
    assert r.witness["dominator"] in {"f_g_pa", "f_a_pa"}
    assert is_pareto_improvement(r.witness["improvement"], J1, d)
    assert check_repair(J2, d, "global").witness == {"improvement": ["f_a_pa", "f_g_pi"]}
    assert check_repair({"f_g_pi", "f_g_pa"}, d, "plain").witness == {"inconsistent": ["f_g_pa", "f_g_pi"]}
    assert check_repair({"f_g_pi"}, d, "plain").witness == {"addable": "f_a_pa"}
    steps = check_repair(J4, d, "completion").witness["execution"]
    assert sorted(x for x, a in steps if a == "keep") == sorted(J4)
    assert "stuck" in check_repair(J3, d, "completion").witness


def test_report():
    d = fixture("company-ceo")
    rep = repair_report(J2, d).to_json()
    assert rep["subject"] == sorted(J2)
    assert rep["verdicts"] == {"plain": True, "pareto": True, "global": False, "completion": False}
    assert set(rep) == {"subject", "verdicts", "witness"}


def test_company_ceo_repair_counts():
    d = fixture("company-ceo")
    counts = [len(enumerate_repairs(d, k)) for k in ("plain", "pareto", "global", "completion")]
    assert counts == [4, 3, 2, 1]
    assert enumerate_repairs(d, "completion") == [frozenset(J4)]


def test_followers_repair_counts():
    # frozen from the brute-force oracle
    d = fixture("followers")
    counts = [len(enumerate_repairs(d, k)) for k in ("plain", "pareto", "global", "completion")]
    assert counts == [17, 1, 1, 1]


def test_ccat_fail_completion_repairs():
    d = fixture("ccat-fail")
    got = [sorted(r) for r in enumerate_repairs(d, "completion")]
    assert got == [
        ["Aa1", "Ab2", "Ba2", "Bb1"],
        ["Aa1", "Ab2", "Ba3", "Bb1"],
        ["Aa1", "Ab3", "Ba3", "Bb1"],
    ]
    assert len(enumerate_repairs(d, "global")) == 4


def test_one_fact_instance():
    d = unary("a", [])
    for k in ("plain", "p", "g", "c"):
        assert enumerate_repairs(d, k) == [frozenset({"a"})]


def test_empty_instance():
    d = unary([], [])
    assert enumerate_repairs(d, "c") == [frozenset()]
    assert find_crep(d) == frozenset()
    assert check_repair(set(), d, "global").verdict


def test_find_crep_followers_lexicographic():
    assert find_crep(fixture("followers")) == {"f11", "f22", "f23", "f32", "f34", "f35"}


def test_find_crep_steps_are_full():
    d = fixture("followers")
    steps = find_crep_steps(d)
    assert sorted(x for x, _ in steps) == sorted(d.ids)


def test_tie_breakers():
    d = fixture("ccat-fail")
    outcomes = {find_crep(d, TieBreaker.seeded(s)) for s in range(40)}
    assert outcomes <= set(enumerate_repairs(d, "c"))
    assert len(outcomes) > 1
    order = sorted(d.ids, reverse=True)
    assert find_crep(d, TieBreaker.explicit(order)) in outcomes | set(enumerate_repairs(d, "c"))
    with pytest.raises(ValueError):
        find_crep(d, TieBreaker.explicit(["Aa1"]))
    with pytest.raises(ValueError):
        find_crep(d, TieBreaker("sideways"))


def test_enumeration_bound():
    d = gen_random(RandomParams(n_facts=20), 0)
    with pytest.raises(BoundExceeded):
        enumerate_repairs(d, "plain")
    assert len(enumerate_repairs(d, "plain", limit=3)) == 3
    assert len(enumerate_repairs(d, "plain", bound=20)) > 3


def test_unknown_id_is_rejected():
    with pytest.raises(KeyError):
        check_repair({"nope"}, fixture("company-ceo"), "plain")


def test_improvement_bound():
    # many candidates dominate facts of J
    n = 30
    ids = [f"f{i:02d}" for i in range(n)]
    edges = [[ids[0], x] for x in ids[1:]]
    pri = [(x, ids[0]) for x in ids[1:]]
    d = unary(ids, edges, pri)
    with pytest.raises(BoundExceeded):
        check_repair({ids[0]}, d, "global", bound=10)


@pytest.mark.parametrize("seed", range(60))
def test_enumeration_matches_oracle(seed):
    d = small(seed)
    b = Brute(d)
    for kind, ref in (("plain", b.plain()), ("pareto", b.pareto()), ("global", b.global_())):
        assert set(enumerate_repairs(d, kind)) == {b.names(m) for m in ref}, kind
    assert set(enumerate_repairs(d, "completion")) == {b.names(m) for m in b.greedy_outcomes()}


@pytest.mark.parametrize("seed", range(30))
def test_completion_repairs_match_definition(seed):
    # greedy outcomes against g-repairs of completions
    d = small(seed + 500, n=6)
    b = Brute(d)
    assert {b.names(m) for m in b.completion_repairs()} == set(enumerate_repairs(d, "completion"))


@pytest.mark.parametrize("seed", range(60))
def test_checkers_match_oracle(seed):
    d = small(seed + 1000)
    b = Brute(d)
    crep = set(enumerate_repairs(d, "completion"))
    rng = random.Random(seed)
    for j in rng.sample(b.consistent_sets, min(12, len(b.consistent_sets))) + b.plain():
        names = b.names(j)
        assert check_repair(names, d, "pareto").verdict == (b.pareto_improvement(j) is None)
        assert check_repair(names, d, "global").verdict == (b.global_improvement(j) is None)
        sim = check_repair(names, d, "completion").verdict
        assert sim == (names in crep) == is_completion_repair_by_enumeration(names, d)


@pytest.mark.parametrize("seed", range(30))
def test_witnesses_are_real(seed):
    d = small(seed + 2000)
    for j in enumerate_repairs(d, "plain"):
        r = check_repair(j, d, "pareto")
        if not r.verdict:
            assert is_pareto_improvement(r.witness["improvement"], j, d)
        r = check_repair(j, d, "global")
        if not r.verdict:
            assert is_global_improvement(r.witness["improvement"], j, d)


@pytest.mark.parametrize("seed", range(30))
def test_find_crep_is_a_completion_repair(seed):
    d = small(seed + 3000)
    crep = set(enumerate_repairs(d, "completion"))
    plain = set(enumerate_repairs(d, "plain"))
    for s in range(5):
        r = find_crep(d, TieBreaker.seeded(s))
        assert r in crep and r in plain


def test_iter_repairs_yields_each_once():
    d = small(7, n=9)
    got = list(iter_repairs(d, "plain"))
    assert len(got) == len(set(got))
