from .factwise import FACTWISE_TARGETS, factwise_reduce
from .fixtures import FIXTURES, fixture
from .randgen import RandomParams, gen_random
from .reductions import CNFInput, QSAT2Input, XCInput, gen_cnf_p, gen_qsat2, gen_xc

__all__ = [
    "CNFInput",
    "FACTWISE_TARGETS",
    "FIXTURES",
    "QSAT2Input",
    "RandomParams",
    "XCInput",
    "factwise_reduce",
    "fixture",
    "gen_cnf_p",
    "gen_qsat2",
    "gen_random",
    "gen_xc",
]
