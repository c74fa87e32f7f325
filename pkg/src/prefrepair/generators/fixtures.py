"""The three running-example instances."""

from __future__ import annotations

from ..model import FD, Fact, PrioritizedInstance, Schema, Signature
from ..schemas import standard_schema


def company_ceo() -> PrioritizedInstance:
    sig = Signature.of([("CompCEO", 2)])
    schema = Schema.of(sig, [FD.of("CompCEO", {1}, {2}), FD.of("CompCEO", {2}, {1})])
    rows = {
        "f_g_pi": ("Google", "Pichai"),
        "f_g_pa": ("Google", "Page"),
        "f_g_br": ("Google", "Brin"),
        "f_a_pa": ("Alphabet", "Page"),
        "f_a_pi": ("Alphabet", "Pichai"),
    }
    facts = [Fact(k, "CompCEO", v) for k, v in rows.items()]
    pri = [("f_g_pi", "f_g_pa"), ("f_g_pa", "f_g_br"), ("f_a_pa", "f_a_pi")]
    return PrioritizedInstance.from_fds(schema, facts, pri)


def followers() -> PrioritizedInstance:
    sig = Signature.of([("Follows", 2)])
    cells = ["11", "12", "21", "22", "23", "24", "31", "32", "34", "35"]
    facts = [Fact(f"f{c}", "Follows", (f"a{c[0]}", f"b{c[1]}")) for c in cells]
    edges = [
        ["f11", "f12"],
        ["f21", "f22", "f23"],
        ["f21", "f22", "f24"],
        ["f21", "f23", "f24"],
        ["f22", "f23", "f24"],
        ["f31", "f32", "f34", "f35"],
        ["f11", "f21"],
        ["f11", "f31"],
        ["f21", "f31"],
        ["f12", "f22", "f32"],
    ]
    # f_il > f_jk when (i = j and k = l + 1) or (j = i + 1 and k = l), kept only for neighbors
    pri = [
        ("f11", "f12"), ("f21", "f22"), ("f22", "f23"), ("f23", "f24"),
        ("f31", "f32"), ("f34", "f35"),
        ("f11", "f21"), ("f12", "f22"), ("f21", "f31"), ("f22", "f32"),
    ]
    return PrioritizedInstance.from_hyperedges(sig, facts, edges, pri)


def ccat_fail() -> PrioritizedInstance:
    schema = standard_schema(1)
    names = ["Aa1", "Aa2", "Ab2", "Ab3", "Ba2", "Ba3", "Bb1", "Bb3"]
    facts = [Fact(x, "R1", (x[0], x[1], int(x[2]))) for x in names]
    pri = [
        ("Aa1", "Aa2"), ("Ab2", "Aa2"), ("Aa2", "Ba2"),
        ("Bb1", "Bb3"), ("Ba3", "Bb3"), ("Bb3", "Ab3"),
    ]
    return PrioritizedInstance.from_fds(schema, facts, pri)


FIXTURES = {
    "company-ceo": company_ceo,
    "followers": followers,
    "ccat-fail": ccat_fail,
}


def fixture(name: str) -> PrioritizedInstance:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None
