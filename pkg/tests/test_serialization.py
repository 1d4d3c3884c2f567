import json
import random

import pytest

from frobenii.finite_field import make_field
from frobenii.frobenius_module import random_module
from frobenii.rh_contravariant import algebra_from_etale, truncated_polynomial_algebra
from frobenii.rh_covariant import EtaleAlgebra, random_rep
from frobenii.serialization import (
    SchemaError,
    algebra_from_dict,
    algebra_to_dict,
    etale_from_dict,
    etale_to_dict,
    load,
    module_from_dict,
    module_to_dict,
    rep_from_dict,
    rep_to_dict,
)


@pytest.mark.parametrize("spec", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_module_round_trip(spec):
    rng = random.Random(1)
    M = random_module(make_field(*spec), 3, rng, unit=False)
    doc = json.loads(json.dumps(module_to_dict(M)))
    assert module_from_dict(doc) == M


def test_rep_and_etale_round_trip():
    K = make_field(3, 2)
    V = random_rep(K, 3, random.Random(4))
    assert rep_from_dict(json.loads(json.dumps(rep_to_dict(V)))) == V
    B = EtaleAlgebra(K, [1, 3])
    assert etale_from_dict(etale_to_dict(B)) == B


def test_algebra_round_trip():
    F2 = make_field(2, 1)
    for A in (algebra_from_etale(EtaleAlgebra(make_field(2, 2), [2])), truncated_polynomial_algebra(F2, [1, 0, 1])):
        assert algebra_from_dict(json.loads(json.dumps(algebra_to_dict(A)))) == A


def test_schema_errors():
    with pytest.raises(SchemaError):
        module_from_dict({"field": "2:1"})
    with pytest.raises(SchemaError):
        module_from_dict({"field": "2:1", "matrix": [["1", "0"]]})


def test_load_accepts_inline_and_paths(tmp_path):
    doc = {"field": "2:2", "matrix": [["u"]]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    assert load(json.dumps(doc)) == doc
    assert load(str(path)) == doc
    assert load("@" + str(path)) == doc
