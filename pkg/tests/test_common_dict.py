import pytest

from pyadams.common_dict import simple_obj, simple_obj_update, to_plain


def test_simple_obj():
    res = simple_obj(verdict=True, shift=2, flags=None, _drop_nones=True)
    assert res.verdict
    assert res["shift"] == 2
    assert list(res) == ["verdict", "shift"]
    assert "flags" not in res

    with pytest.raises(AttributeError):
        res.shift = 3
    with pytest.raises(KeyError):
        res["flags"]

    updated = simple_obj_update(res, shift=3)
    assert updated.shift == 3
    assert res.shift == 2
    assert updated != dict(updated.items())


def test_to_plain():
    res = to_plain(simple_obj(a=(1, simple_obj(b=None)), c={2: object}), fallback=lambda x: "x")
    assert res == {"a": [1, {"b": None}], "c": {"2": "x"}}
