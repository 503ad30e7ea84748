import json
from pathlib import Path

import pytest

from pyadams.common_adams import AdamsModule, cyclic_adams, line
from pyadams.common_complex import BoundedComplex, ChainMap, concentrated
from pyadams.common_config import SessionConfig
from pyadams.common_errors import InputError, NotAComplexError
from pyadams.common_io import dumps_object, load_object, loads_object, to_document
from pyadams.common_monoid import unit_monoid
from pyadams.common_periodic import PeriodicComplex, periodify

DATA = Path(__file__).resolve().parent.parent / "data"
CFG = SessionConfig(p=3)


def test_load_data_files():
    assert load_object(DATA / "zp_module.json", CFG) == cyclic_adams(3, 1)
    assert load_object(DATA / "zp0.json", CFG) == concentrated(cyclic_adams(3, 1), 0)
    assert load_object(DATA / "pi_unit.json", CFG) == unit_monoid(CFG)

    X = load_object(DATA / "pi_shift2.json", CFG)
    assert isinstance(X, PeriodicComplex)
    assert X.source.support == (2,)

    q = load_object(DATA / "q_map.json", CFG)
    assert isinstance(q, ChainMap)
    assert q.source.support == (0, 1)


def test_dump_and_reload():
    for obj in (
        line(3, -2),
        concentrated(cyclic_adams(3, 2), 1),
        unit_monoid(CFG),
        load_object(DATA / "q_map.json", CFG),
    ):
        assert loads_object(dumps_object(obj), CFG) == obj


def test_periodification_is_written_through_its_source():
    X = periodify(concentrated(line(3, 0), 2), 4, 4)
    doc = to_document(X)
    assert doc["kind"] == "periodic"
    assert doc["periodify"]["levels"] == [{"degree": 2, "module": {"line": 0}}]


def _load(text):
    return loads_object(text, CFG)


def test_module_document():
    M = _load('{"schema_version": 1, "kind": "module", "module": {"rank": 1, "torsion": [2], "psi": [["1", "0"], ["0", "1"]]}}')
    assert isinstance(M, AdamsModule)
    assert str(M.underlying) == "Z_(3) + Z/3^2"


def test_input_errors():
    with pytest.raises(InputError) as info:
        _load('{"schema_version": 2, "kind": "module", "module": {"line": 0}}')
    assert info.value.path == "$.schema_version"

    with pytest.raises(InputError) as info:
        _load('{"schema_version": 1, "kind": "ring"}')
    assert info.value.path == "$.kind"

    with pytest.raises(InputError) as info:
        _load('{"schema_version": 1, "kind": "module", "p": 5, "module": {"line": 0}}')
    assert info.value.path == "$.p"

    with pytest.raises(InputError) as info:
        _load('{"schema_version": 1, "kind": "module", "module": {"rank": 1, "torsion": [], "psi": [["1/3"]]}}')
    assert info.value.path == "$.module.psi[0][0]"

    with pytest.raises(InputError) as info:
        _load('{"schema_version": 1, "kind": "module", "module": {"rank": 1, "torsion": [], "psi": [["x"]]}}')
    assert info.value.path == "$.module.psi[0][0]"


def test_invalid_adams_modules_are_rejected():
    with pytest.raises(InputError, match="not unipotent") as info:
        _load('{"schema_version": 1, "kind": "module", "module": {"rank": 1, "torsion": [], "psi": [["2"]]}}')
    assert info.value.path == "$.module.psi"

    with pytest.raises(InputError, match="not invertible") as info:
        _load('{"schema_version": 1, "kind": "module", "module": {"rank": 0, "torsion": [1], "psi": [["0"]]}}')
    assert info.value.path == "$.module.psi"

    #: inside a complex the path points at the level
    doc = {
        "schema_version": 1,
        "kind": "bounded",
        "levels": [{"degree": 0, "module": {"rank": 1, "torsion": [], "psi": [["2"]]}}],
    }
    with pytest.raises(InputError) as info:
        _load(json.dumps(doc))
    assert info.value.path == "$.levels[0].module.psi"


def test_json_syntax_error():
    with pytest.raises(InputError) as info:
        loads_object('{"schema_version": 1,\n  "kind": }', CFG, file="broken.json")
    assert info.value.path == "2:11"
    assert info.value.file == "broken.json"
    assert str(info.value).startswith("broken.json:2:11:")


def test_file_is_attached(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema_version": 1, "kind": "bounded", "levels": [{"degree": "0"}]}')
    with pytest.raises(InputError) as info:
        load_object(path, CFG)
    assert info.value.file == path
    assert info.value.path == "$.levels[0].degree"


def test_not_a_complex_is_reported():
    text = """
    {"schema_version": 1, "kind": "bounded",
     "levels": [{"degree": 1, "module": {"line": 0}},
                {"degree": 0, "module": {"line": 0}},
                {"degree": -1, "module": {"line": 0}}],
     "diffs": [{"degree": 1, "matrix": [["1"]]}, {"degree": 0, "matrix": [["1"]]}]}
    """
    with pytest.raises(NotAComplexError) as info:
        _load(text)
    assert info.value.degree == 1
    assert isinstance(load_object(DATA / "zp0.json", CFG), BoundedComplex)
