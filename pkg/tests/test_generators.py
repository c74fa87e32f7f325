import itertools
import random

import pytest

from oracles import fd_violations

from prefrepair import FD, check_repair, enumerate_repairs, find_crep, g_categoricity, is_transitive, p_categoricity, validate
from prefrepair.generators import (
    FIXTURES,
    CNFInput,
    QSAT2Input,
    RandomParams,
    XCInput,
    factwise_reduce,
    fixture,
    gen_cnf_p,
    gen_qsat2,
    gen_random,
    gen_xc,
)
from prefrepair.generators.reductions import ODOT, OTIMES, parse_literal
from prefrepair.io import dumps, emit_instance
from prefrepair.schemas import standard_schema

from test_acceptance import SAMPLE_CNF, SAMPLE_QSAT, SAMPLE_XC, random_schema_instance

# -- fixtures ------------------------------------------------------------------------


def test_fixture_sizes():
    ceo = fixture("company-ceo")
    assert len(ceo) == 5 and len(ceo.priority) == 3
    fol = fixture("followers")
    assert len(fol) == 10 and len(fol.hypergraph.edges) == 10 and len(fol.priority) == 10
    cf = fixture("ccat-fail")
    assert len(cf) == 8 and cf.schema == standard_schema(1)


def test_fixtures_are_byte_stable():
    for name in FIXTURES:
        assert dumps(emit_instance(fixture(name))) == dumps(emit_instance(fixture(name)))


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("nope")


def test_followers_priority_rule():
    d = fixture("followers")
    assert ("f11", "f12") in d.priority and ("f12", "f22") in d.priority
    assert ("f11", "f22") not in d.priority


# -- random ----------------------------------------------------------------------------


def test_random_is_deterministic():
    p = RandomParams(n_facts=9, max_edge_arity=3, edge_density=0.4)
    assert gen_random(p, 5) == gen_random(p, 5)
    assert gen_random(p, 5) != gen_random(p, 6)


@pytest.mark.parametrize("seed", range(30))
def test_random_instances_are_valid(seed):
    p = RandomParams(n_facts=10, max_edge_arity=4, edge_density=0.4, priority_density=0.8, force_transitive=seed % 2 == 0)
    d = gen_random(p, seed)
    assert validate(d).ok
    if p.force_transitive:
        assert is_transitive(d)


def test_random_fd_mode():
    fd = FD.of("R", {1}, {2})
    d = gen_random(RandomParams(n_facts=12, fd_mode=fd), 1)
    assert d.schema is not None and validate(d).ok
    assert d.hypergraph.edges == fd_violations(d.facts, [fd])


def test_random_params_checked():
    with pytest.raises(ValueError):
        gen_random(RandomParams(edge_density=2.0), 0)
    with pytest.raises(ValueError):
        gen_random(RandomParams(max_edge_arity=1), 0)


# -- exact cover -----------------------------------------------------------------------


def test_xc_validation():
    with pytest.raises(ValueError):
        XCInput.of([1, 2], [[1]]).validate()
    with pytest.raises(ValueError):
        XCInput.of([1], [[]]).validate()
    with pytest.raises(ValueError):
        XCInput.of(["#a"], [["#a"]]).validate()
    with pytest.raises(ValueError):
        XCInput.of([1], [[1, 2]]).validate()


def test_xc_sample_instance():
    d, j0 = gen_xc(SAMPLE_XC)
    assert validate(d).ok
    assert SAMPLE_XC.has_exact_cover()
    assert not p_categoricity(d).unique
    assert check_repair(j0, d, "completion").verdict
    assert find_crep(d) == j0


def test_xc_reference_repair_shape():
    inp = XCInput.of([1, 2], {"A": [1, 2], "B": [2]})
    d, j0 = gen_xc(inp)
    facts = d.by_id
    assert {facts[x].values for x in j0} == {(1, 1), (2, 2), ('#X:A:1', '#X:A:1'), ('#X:A:2', '#X:A:2'), ('#X:B:2', '#X:B:2')}


def test_xc_single_element():
    d, _ = gen_xc(XCInput.of([1], [[1]]))
    assert not p_categoricity(d).unique


def test_xc_no_cover():
    inp = XCInput.of([1, 2, 3], [[1, 2], [2, 3]])
    assert not inp.has_exact_cover()
    d, j0 = gen_xc(inp)
    r = p_categoricity(d)
    assert r.unique and r.repair == j0


def test_xc_as_stated_misses_covers():
    # with (u, u) over every R0(X_x, u), a chosen set is always Pareto-improvable
    for sets in ([[1]], [[1], [2]], [[1, 2], [3]]):
        inp = XCInput.of(sorted({x for s in sets for x in s}), sets)
        assert inp.has_exact_cover()
        d, _ = gen_xc(inp, as_stated=True)
        assert p_categoricity(d).unique
        d, _ = gen_xc(inp)
        assert not p_categoricity(d).unique


def xc_inputs(max_u: int, per_size: int, seed: int):
    rng = random.Random(seed)
    for size in range(1, max_u + 1):
        universe = list(range(1, size + 1))
        subsets = [s for k in range(1, size + 1) for s in itertools.combinations(universe, k)]
        made = 0
        while made < per_size:
            sets = rng.sample(subsets, rng.randint(1, min(5, len(subsets))))
            if set().union(*map(set, sets)) == set(universe):
                made += 1
                yield XCInput.of(universe, [list(s) for s in sets])


@pytest.mark.parametrize("inp", list(xc_inputs(6, 6, 77)), ids=str)
def test_xc_equivalence(inp):
    d, j0 = gen_xc(inp)
    assert validate(d).ok
    assert (not p_categoricity(d).unique) == inp.has_exact_cover()


def test_xc_every_family_over_three_elements():
    # all collections of up to three subsets of {1, 2, 3} that cover it
    universe = [1, 2, 3]
    subsets = [s for k in range(1, 4) for s in itertools.combinations(universe, k)]
    for m in range(1, 4):
        for sets in itertools.combinations(subsets, m):
            if set().union(*map(set, sets)) != set(universe):
                continue
            inp = XCInput.of(universe, [list(s) for s in sets])
            d, _ = gen_xc(inp)
            assert (not p_categoricity(d).unique) == inp.has_exact_cover(), sets


# -- CNF -------------------------------------------------------------------------------


def test_literals():
    assert parse_literal("x") == ("x", True)
    assert parse_literal("-x") == ("x", False)
    assert parse_literal("~x") == ("x", False)
    assert parse_literal(["x", False]) == ("x", False)
    with pytest.raises(ValueError):
        parse_literal("-")


def test_cnf_sample():
    d = gen_cnf_p(SAMPLE_CNF)
    assert validate(d).ok
    assert SAMPLE_CNF.satisfiable()
    assert not p_categoricity(d).unique
    assert d.by_id["v:x1:0"].values == (ODOT, "#v:x1", 0)
    assert d.by_id["c:0"].values == (OTIMES, "#c:0", "#c:0")


def test_cnf_small_cases():
    assert p_categoricity(gen_cnf_p(CNFInput.of(["x"], [["x"], ["-x"]]))).unique
    assert not p_categoricity(gen_cnf_p(CNFInput.of(["x"], [["x"]]))).unique


def test_cnf_clause_facts_are_the_completion_repair():
    d = gen_cnf_p(CNFInput.of(["x", "y"], [["x", "y"], ["-x"]]))
    assert enumerate_repairs(d, "c") == [frozenset({"c:0", "c:1"})]


def test_cnf_validation():
    with pytest.raises(ValueError):
        gen_cnf_p(CNFInput.of(["x"], [["y"]]))
    with pytest.raises(ValueError):
        gen_cnf_p(CNFInput.of(["x"], [[]]))
    with pytest.raises(ValueError):
        CNFInput.from_json({"vars": ["x"]})


@pytest.mark.parametrize("seed", range(60))
def test_cnf_equivalence(seed):
    rng = random.Random(seed)
    names = [f"x{i}" for i in range(rng.randint(1, 4))]
    clauses = [
        [("-" if rng.random() < 0.5 else "") + v for v in rng.sample(names, rng.randint(1, len(names)))]
        for _ in range(rng.randint(1, 6))
    ]
    inp = CNFInput.of(names, clauses)
    assert (not p_categoricity(gen_cnf_p(inp)).unique) == inp.satisfiable()


# -- QSAT2 -----------------------------------------------------------------------------


def test_qsat_sample():
    d = gen_qsat2(SAMPLE_QSAT)
    assert validate(d).ok
    assert SAMPLE_QSAT.valid()
    r = g_categoricity(d)
    assert r.unique and r.repair == {"f0"}
    assert d.by_id["f0"].values == (2, 0, 0)


def test_qsat_small_cases():
    r = g_categoricity(gen_qsat2(QSAT2Input.of([], ["y"], [["y"]])))
    assert r.unique and r.repair == {"f0"}
    assert not g_categoricity(gen_qsat2(QSAT2Input.of(["x"], [], [["x"]]))).unique


def test_qsat_validation():
    with pytest.raises(ValueError):
        gen_qsat2(QSAT2Input.of(["x"], ["x"], [["x"]]))
    with pytest.raises(ValueError):
        QSAT2Input.from_json({"vars": ["x"], "clauses": []})


@pytest.mark.parametrize("seed", range(60))
def test_qsat_equivalence(seed):
    rng = random.Random(seed)
    xs = [f"x{i}" for i in range(rng.randint(0, 3))]
    ys = [f"y{i}" for i in range(rng.randint(0 if xs else 1, 3))]
    names = xs + ys
    clauses = [
        [("-" if rng.random() < 0.5 else "") + v for v in rng.sample(names, rng.randint(1, min(3, len(names))))]
        for _ in range(rng.randint(1, 5))
    ]
    inp = QSAT2Input.of(xs, ys, clauses)
    r = g_categoricity(gen_qsat2(inp))
    assert (r.unique and r.repair == {"f0"}) == inp.valid()


# -- fact-wise reductions --------------------------------------------------------------


def s0(rows, pri=()):
    from prefrepair import Fact, PrioritizedInstance

    facts = [Fact(f"f{i}", "R0", t) for i, t in enumerate(rows)]
    return PrioritizedInstance.from_fds(standard_schema(0), facts, pri)


def test_pi1_formula():
    img = factwise_reduce("pi1", s0([("a", "b")]))
    assert img.facts[0].values == ("a", "b", OTIMES)
    assert img.facts[0].relation == "R1"


def test_pi5_keeps_conflicts():
    d = s0([("a", "b"), ("a", "c")])
    assert len(d.hypergraph.edges) == 1
    assert len(factwise_reduce("pi5", d).hypergraph.edges) == 1


def test_empty_reduction():
    assert len(factwise_reduce("pi3", s0([]))) == 0


def test_side_conditions():
    d = s0([("a", "b")])
    with pytest.raises(ValueError):
        factwise_reduce("two-keys", d, arity=3, x={1, 2}, y={1})
    d6 = random_schema_instance(standard_schema(6), "R6", 3, 2, random.Random(0))
    with pytest.raises(ValueError):
        factwise_reduce("two-fd", d6, arity=3, x={1}, y={2}, w={2}, z={3})
    with pytest.raises(ValueError):
        factwise_reduce("pi9", d)
    with pytest.raises(ValueError):
        factwise_reduce("pi1", d6)


@pytest.mark.parametrize("target", ["pi1", "pi2", "pi3", "pi4", "pi5"])
def test_three_attribute_reductions_preserve_p_repairs(target):
    rng = random.Random(target)
    for _ in range(15):
        d = random_schema_instance(standard_schema(0), "R0", rng.randint(1, 8), 3, rng)
        img = factwise_reduce(target, d)
        assert fd_violations(d.facts, standard_schema(0).fds) == fd_violations(img.facts, img.schema.fds)
        assert enumerate_repairs(d, "p") == enumerate_repairs(img, "p")
