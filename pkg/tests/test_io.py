import json

import pytest

from prefrepair import FD, InstanceFormatError
from prefrepair.generators import CNFInput, RandomParams, XCInput, fixture, gen_cnf_p, gen_random, gen_xc
from prefrepair.io import dumps, emit_instance, emit_schema, load_instance, parse_instance, parse_schema, save_instance


def roundtrip(d):
    return parse_instance(json.loads(dumps(emit_instance(d))))


GENERATED = [
    fixture("company-ceo"),
    fixture("followers"),
    fixture("ccat-fail"),
    gen_random(RandomParams(n_facts=10, max_edge_arity=4, edge_density=0.4), 3),
    gen_random(RandomParams(n_facts=10, fd_mode=FD.of("R", {1}, {2})), 4),
    gen_xc(XCInput.of([1, 2, 3], [[1, 2], [3], [2, 3]]))[0],
    gen_cnf_p(CNFInput.of(["a", "b"], [["a", "-b"]])),
]


@pytest.mark.parametrize("d", GENERATED)
def test_roundtrip(d):
    back = roundtrip(d)
    assert back == d
    assert dumps(emit_instance(back)) == dumps(emit_instance(d))


def test_file_roundtrip(tmp_path):
    d = fixture("followers")
    path = tmp_path / "f.json"
    save_instance(d, path)
    assert load_instance(path) == d


def test_canonical_field_names():
    doc = emit_instance(fixture("company-ceo"))
    assert set(doc) == {"signature", "facts", "fds", "priority"}
    assert set(doc["facts"][0]) == {"id", "relation", "tuple"}
    assert set(doc["fds"][0]) == {"relation", "lhs", "rhs"}
    doc = emit_instance(fixture("followers"))
    assert set(doc) == {"signature", "facts", "hyperedges", "priority"}


def test_output_is_sorted_and_stable():
    a = dumps(emit_instance(fixture("ccat-fail")))
    b = dumps(emit_instance(fixture("ccat-fail")))
    assert a == b
    assert json.loads(a)["priority"] == sorted(json.loads(a)["priority"])


def test_raw_hyperedges_kept_on_request():
    doc = {
        "signature": [{"name": "R", "arity": 1}],
        "facts": [{"id": x, "relation": "R", "tuple": [x]} for x in "abc"],
        "hyperedges": [["a", "b"], ["a", "b", "c"]],
    }
    assert len(parse_instance(doc).hypergraph.edges) == 1
    assert len(parse_instance(doc, minimize=False).hypergraph.edges) == 2


BASE = {"signature": [{"name": "R", "arity": 1}], "facts": [{"id": "a", "relation": "R", "tuple": [1]}]}


@pytest.mark.parametrize(
    "patch",
    [
        {"signature": "nope"},
        {"facts": [{"id": 3, "relation": "R", "tuple": [1]}]},
        {"facts": [{"id": "a", "relation": "R", "tuple": [[1]]}]},
        {"facts": [{"id": "a", "relation": "R"}]},
        {"priority": [["a"]]},
        {"hyperedges": [["a", 1]]},
        {"hyperedges": [], "fds": []},
        {"fds": [{"relation": "R", "lhs": [2], "rhs": [1]}]},
        {"fds": [{"relation": "R", "lhs": "1", "rhs": [1]}]},
        {"signature": [{"name": "R", "arity": True}]},
    ],
)
def test_malformed_documents(patch):
    with pytest.raises(InstanceFormatError):
        parse_instance({**BASE, **patch})


def test_not_an_object():
    with pytest.raises(InstanceFormatError):
        parse_instance([1, 2])


def test_missing_file(tmp_path):
    with pytest.raises(InstanceFormatError):
        load_instance(tmp_path / "missing.json")


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(InstanceFormatError):
        load_instance(p)


def test_schema_roundtrip():
    doc = {"signature": [{"name": "R", "arity": 3}], "fds": [{"relation": "R", "lhs": [1], "rhs": [2, 3]}]}
    assert emit_schema(parse_schema(doc)) == doc


def test_fd_instance_with_bad_arity_is_format_error():
    doc = {**BASE, "fds": [], "facts": [{"id": "a", "relation": "R", "tuple": [1, 2]}]}
    with pytest.raises(InstanceFormatError):
        parse_instance(doc)
