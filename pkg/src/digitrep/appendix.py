"""Golden ternary matrices (N = 3 and N = 9) as printed, corrected and regenerated.

The printed transcription lives in ``data/appendix_a_printed.json`` with each
cell as a small arithmetic expression over ``i``, ``pi``, ``sqrt``, ``exp``,
``sin`` and the symbols ``E1..E8``/``G1..G8``.  ``data/appendix_a_oracle.json``
holds the same matrices regenerated from ``F diag(d) F^+``.
"""
from __future__ import annotations

import ast
import cmath
import json
import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional

import numpy as np

from .errors import DomainError
from .lattice import LatticeSpec
from .linalg import matrix_from_dict, matrix_to_dict
from .operators import coordinate_digit, coordinate_operator, momentum_digit_oracle, momentum_operator

__all__ = [
    "READINGS",
    "safe_eval",
    "load_printed",
    "load_oracle_fixture",
    "case_spec",
    "case_names",
    "matrix_names",
    "printed_matrix",
    "corrected_matrix",
    "oracle_matrix",
    "regenerate_fixture",
    "GoldenRow",
    "compare_golden",
]

READINGS = ("printed", "pi_corrected")
PRINTED_FILE = "appendix_a_printed.json"
ORACLE_FILE = "appendix_a_oracle.json"

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp, "sin": cmath.sin}
_CONSTS = {"i": 1j, "pi": math.pi}


def safe_eval(expr: str, names: Optional[Dict[str, complex]] = None) -> complex:
    """Evaluate an arithmetic expression without ``eval``.

    Only numbers, ``+ - * / **``, the constants ``i`` and ``pi``, the functions
    ``sqrt``, ``exp``, ``sin`` and the given ``names`` are allowed.
    """
    env = dict(_CONSTS)
    env.update(names or {})

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](walk(node.operand))
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](walk(node.args[0]))
        raise DomainError(f"unsupported expression {ast.dump(node)} in {expr!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse {expr!r}") from exc
    return complex(walk(tree))


def _read_json(name: str) -> dict:
    return json.loads(resources.files("digitrep.data").joinpath(name).read_text())


@lru_cache(maxsize=None)
def _printed_cached() -> str:
    return json.dumps(_read_json(PRINTED_FILE))


def load_printed() -> dict:
    return json.loads(_printed_cached())


def load_oracle_fixture() -> dict:
    return _read_json(ORACLE_FILE)


def _case(name: str) -> dict:
    for case in load_printed()["cases"]:
        if case["name"] == name:
            return case
    raise DomainError(f"unknown golden case {name!r}")


def case_names() -> List[str]:
    return [c["name"] for c in load_printed()["cases"]]


def matrix_names(case: str) -> List[str]:
    return list(_case(case)["matrices"])


def case_spec(case: str) -> LatticeSpec:
    c = _case(case)
    return LatticeSpec(c["q"], c["n_minus"], c["n_plus"], c["d1_x"], c["d1_p"])


def _symbols(reading: str) -> Dict[str, complex]:
    if reading not in READINGS:
        raise DomainError(f"reading must be one of {READINGS}")
    table = load_printed()["symbols"]
    names = {}
    for letter, forms in table.items():
        form = forms.get(reading, forms["printed"])
        for n in range(1, 9):
            names[f"{letter}{n}"] = safe_eval(form, {"n": n})
    return names


def _repaired_rows(case: dict, name: str) -> List[List[str]]:
    rows = [list(r) for r in case["matrices"][name]["rows"]]
    for fix in case.get("repairs", []):
        if fix["matrix"] == name:
            row = rows[fix["row"]]
            row[fix["cell"]:fix["cell"] + 1] = fix["split"]
    return rows


def _evaluate(entry: dict, rows: Optional[List[List[str]]], names: Dict[str, complex],
              prefactor: Optional[str] = None) -> np.ndarray:
    if "diag" in entry:
        return np.diag([safe_eval(v) for v in entry["diag"]]).astype(complex)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError(f"ragged matrix rows: {[len(r) for r in rows]}")
    scale = safe_eval(prefactor if prefactor is not None else entry["prefactor"])
    return scale * np.array([[safe_eval(c, names) for c in r] for r in rows])


def printed_matrix(case: str, name: str, reading: str = "printed") -> np.ndarray:
    """Matrix exactly as printed; the missing cell separator is the only repair."""
    c = _case(case)
    entry = c["matrices"][name]
    rows = None if "diag" in entry else _repaired_rows(c, name)
    return _evaluate(entry, rows, _symbols(reading))


# Cell-level corrections that turn the printed matrices into the oracle values.
_CORRECTIONS = {
    ("n1_nonsymmetric", "p_-1"): "off-diagonal real part 1 -> -3",
    ("n2_nonsymmetric", "p_-2"): "drop the factor 3 on 3*E3 and 3*E6",
    ("n2_nonsymmetric", "p"): "drop the factor 3 on 3*E3 and 3*E6",
    ("n2_symmetric", "p_-1"): "prefactor 1/(sqrt(3) i) -> i/sqrt(3)",
    ("n2_symmetric", "p_-2"): "prefactor 1/(sqrt(3) i) -> i/sqrt(3)",
    ("n2_symmetric", "p"): "prefactor 1/(9 sqrt(3) i) -> i/(9 sqrt(3))",
}


def corrections() -> Dict[tuple, str]:
    return dict(_CORRECTIONS)


def corrected_matrix(case: str, name: str) -> np.ndarray:
    """Printed matrix with the π-corrected ``G`` and the documented cell fixes."""
    c = _case(case)
    entry = c["matrices"][name]
    if "diag" in entry:
        return printed_matrix(case, name)
    rows = _repaired_rows(c, name)
    prefactor = entry["prefactor"]
    fix = _CORRECTIONS.get((case, name), "")
    if fix.startswith("off-diagonal"):
        rows = [[cell.replace("1 -", "-3 -").replace("1 +", "-3 +") for cell in r] for r in rows]
    elif fix.startswith("drop"):
        rows = [[cell.replace("3*E", "E") for cell in r] for r in rows]
    elif fix.startswith("prefactor"):
        prefactor = f"-({prefactor})"
    return _evaluate(entry, rows, _symbols("pi_corrected"), prefactor)


def oracle_matrix(case: str, name: str) -> np.ndarray:
    spec = case_spec(case)
    if name == "x":
        return coordinate_operator(spec)
    if name == "p":
        return momentum_operator(spec)
    kind, _, index = name.partition("_")
    if kind == "x":
        return coordinate_digit(int(index), spec)
    if kind == "p":
        return momentum_digit_oracle(int(index), spec)
    raise DomainError(f"unknown matrix name {name!r}")


def regenerate_fixture() -> dict:
    """Oracle values of every golden matrix in the linalg JSON layout."""
    out = {"cases": []}
    for case in case_names():
        spec = case_spec(case)
        out["cases"].append({
            "name": case,
            "q": spec.q,
            "n_minus": spec.n_minus,
            "n_plus": spec.n_plus,
            "d1_x": str(spec.d1_x),
            "d1_p": str(spec.d1_p),
            "matrices": {name: matrix_to_dict(oracle_matrix(case, name)) for name in matrix_names(case)},
        })
    return out


def fixture_matrix(case: str, name: str) -> np.ndarray:
    for c in load_oracle_fixture()["cases"]:
        if c["name"] == case:
            return matrix_from_dict(c["matrices"][name])
    raise DomainError(f"unknown golden case {case!r}")


@dataclass(frozen=True)
class GoldenRow:
    case: str
    matrix: str
    reading: str
    distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.distance < self.tol


def compare_golden(reading: str = "printed", tol: float = 1e-12, source: str = "printed") -> List[GoldenRow]:
    """Frobenius distance of each golden matrix to the oracle.

    ``source`` picks the matrix under test: ``"printed"`` (with the given
    reading of ``G``), ``"corrected"`` or ``"fixture"`` (the embedded oracle file).
    """
    rows = []
    for case in case_names():
        for name in matrix_names(case):
            if source == "printed":
                m = printed_matrix(case, name, reading)
            elif source == "corrected":
                m = corrected_matrix(case, name)
            elif source == "fixture":
                m = fixture_matrix(case, name)
            else:
                raise DomainError(f"unknown golden source {source!r}")
            d = float(np.linalg.norm(m - oracle_matrix(case, name)))
            rows.append(GoldenRow(case, name, reading if source == "printed" else source, d, tol))
    return rows
