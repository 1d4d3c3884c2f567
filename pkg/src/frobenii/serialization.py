"""JSON documents for modules, Galois representations and algebras.

Field elements are written in the ``u``-grammar (``"u^2+1"``); fields as
``"p:n"``.
"""

from __future__ import annotations

import json

from .finite_field import FiniteField, make_field
from .frobenius_module import FrobModule, ModuleError
from .parsing import parse_field_spec
from .rh_contravariant import FiniteAlgebra
from .rh_covariant import EtaleAlgebra, GaloisRep


class SchemaError(ValueError):
    pass


def _field(doc, key="field") -> FiniteField:
    try:
        spec = doc[key]
    except KeyError:
        raise SchemaError(f"missing {key!r}") from None
    p, n = parse_field_spec(str(spec))
    return make_field(p, n)


def _elem(K, value):
    if isinstance(value, int):
        return K(value)
    if isinstance(value, str):
        return K.parse(value)
    raise SchemaError(f"cannot read field element from {value!r}")


def module_to_dict(M: FrobModule) -> dict:
    return {"field": M.base.spec, "matrix": [[str(c) for c in row] for row in M.matrix]}


def module_from_dict(doc: dict) -> FrobModule:
    K = _field(doc)
    rows = doc.get("matrix")
    if not isinstance(rows, list):
        raise SchemaError("'matrix' must be a list of rows")
    try:
        return FrobModule(K, [[_elem(K, c) for c in row] for row in rows])
    except ModuleError as exc:
        raise SchemaError(str(exc)) from None


def rep_to_dict(V: GaloisRep) -> dict:
    return {"dim": V.dim, "frobenius": [list(r) for r in V.frobenius], "base": V.base.spec}


def rep_from_dict(doc: dict) -> GaloisRep:
    K = _field(doc, "base")
    mat = doc.get("frobenius", [])
    if len(mat) != doc.get("dim", len(mat)):
        raise SchemaError("'dim' disagrees with the size of 'frobenius'")
    try:
        return GaloisRep(K, mat)
    except ModuleError as exc:
        raise SchemaError(str(exc)) from None


def etale_to_dict(B: EtaleAlgebra) -> dict:
    return {"base": B.base.spec, "factors": list(B.factors)}


def etale_from_dict(doc: dict) -> EtaleAlgebra:
    try:
        return EtaleAlgebra(_field(doc, "base"), doc["factors"])
    except (KeyError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def algebra_to_dict(B: FiniteAlgebra) -> dict:
    return {
        "base": B.base.spec,
        "dim": B.dim,
        "mul": [[[str(c) for c in cell] for cell in row] for row in B.mul],
    }


def algebra_from_dict(doc: dict) -> FiniteAlgebra:
    K = _field(doc, "base")
    mul = doc.get("mul")
    if not isinstance(mul, list) or len(mul) != doc.get("dim", len(mul)):
        raise SchemaError("'mul' must be a dim x dim x dim array")
    try:
        return FiniteAlgebra(K, [[[_elem(K, c) for c in cell] for cell in row] for row in mul])
    except ModuleError as exc:
        raise SchemaError(str(exc)) from None


def load(text_or_path: str) -> dict:
    """Inline JSON, or ``@path`` / a path to a JSON file."""
    s = text_or_path.strip()
    if s.startswith("{"):
        return json.loads(s)
    path = s[1:] if s.startswith("@") else s
    with open(path) as fh:
        return json.load(fh)
