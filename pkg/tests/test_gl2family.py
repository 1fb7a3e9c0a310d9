import pytest

from invdeg.gl2family import (Gl2Params, InvalidParams, bruteforce_mindeg, closed_form_mindeg,
                              to_json, valid_params_up_to, validate_params)
from invdeg.diagmin import Found, minimal_degree_bruteforce


def test_validate_examples():
    assert validate_params(Gl2Params(6, 6, 3, 2, 1, 1)) == []
    assert any("gcd(v1,v2)" in v for v in validate_params(Gl2Params(6, 6, 2, 2, 1, 1)))
    assert any("gcd(e,j)" in v for v in validate_params(Gl2Params(30, 10, 5, 2, 3, 3)))


@pytest.mark.parametrize("args, want", [((6, 6, 3, 2, 1, 1), 2),
                                        ((6, 6, 2, 3, 1, 1), 2),
                                        ((30, 10, 5, 2, 7, 3), 6)])
def test_worked_tuples(args, want):
    p = Gl2Params(*args)
    assert closed_form_mindeg(p) == want
    assert bruteforce_mindeg(p) == want


def test_invalid_params_raise():
    with pytest.raises(InvalidParams):
        closed_form_mindeg(Gl2Params(6, 6, 2, 2, 1, 1))
    with pytest.raises(InvalidParams):
        bruteforce_mindeg(Gl2Params(30, 10, 5, 2, 3, 3))


def test_sweep_up_to_20():
    params = list(valid_params_up_to(20))
    assert params
    for p in params:
        assert closed_form_mindeg(p) == bruteforce_mindeg(p), p


def test_action_agrees_with_diagonal_search():
    for p in list(valid_params_up_to(24))[::7]:
        res = minimal_degree_bruteforce(p.action(), p.e)
        assert res == Found(bruteforce_mindeg(p), res.witness)


def test_json():
    assert to_json(Gl2Params(6, 6, 3, 2, 1, 1)) == {"e": 6, "g": 6, "v1": 3, "v2": 2, "j": 1, "d": 1}
