import pytest

from sdepth_core.errors import IdealSyntaxError
from sdepth_core.utils.parse_ideal import parse_ideal


test_cases = [
    {"input": "n=3; x1*x2, x2*x3, x1*x3", "n": 3, "generators": ((1, 1, 0), (1, 0, 1), (0, 1, 1))},
    {"input": "  n = 2 ;x1 ,  x2 ", "n": 2, "generators": ((1, 0), (0, 1))},
    {"input": "n=3; x1^2, x2*x3^2", "n": 3, "generators": ((2, 0, 0), (0, 1, 2))},
    {"input": "n=2; x1*x1", "n": 2, "generators": ((2, 0),)},
    {"input": "n=3; x1*x2, x1*x2*x3", "n": 3, "generators": ((1, 1, 0),)},
    {"input": '{"n": 3, "generators": [[1,1,0], [0,1,1]]}', "n": 3, "generators": ((1, 1, 0), (0, 1, 1))},
]


@pytest.mark.parametrize("case", test_cases, ids=[c["input"] for c in test_cases])
def test_parse_ideal(case):
    ideal = parse_ideal(case["input"])
    assert ideal.n == case["n"]
    assert ideal.generators == case["generators"]


bad_inputs = [
    "x1*x2",
    "n=3 x1",
    "n=3;",
    "n=3; y1",
    "n=2; x3",
    "n=2; x1**x2",
    '{"n": 2}',
    '{"n": 2, "generators": [[1, "a"]]}',
    '{"n": 2, "generators": [[1, 0, 0]]}',
    '{"n": 2, "generators": [[0, 0]]}',
    "{not json",
]


@pytest.mark.parametrize("text", bad_inputs)
def test_parse_ideal_rejects(text):
    with pytest.raises(IdealSyntaxError):
        parse_ideal(text)
