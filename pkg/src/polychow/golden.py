"""Golden command-line cases.

Each case names its input documents, the argument vector (a leading "@"
marks a document name to be replaced by a file path), the expected exit
code and the expected output.  Expected outputs are written out by hand
from the worked examples; the canonical bytes are json.dumps with sorted
keys plus a newline (or the literal text for CSV cases).
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from typing import Any

from .documents import dumps


def _pm(rank, type_=(2, 1), names=None):
    names = names or [str(i + 1) for i in range(len(type_))]
    return {"elements": list(names), "type": list(type_), "rank": list(rank)}


P0 = _pm([0, 2, 1, 2])
P1 = _pm([0, 2, 2, 3], (2, 2))
BOOL21 = _pm([0, 2, 1, 3])
ZERO21 = _pm([0, 0, 0, 0])
BOOL1 = _pm([0, 1], (1,))
BOOL11 = _pm([0, 1, 1, 2], (1, 1))
BOOL2 = _pm([0, 2], (2,))
ZERO1 = _pm([0, 0], (1,))

DOCUMENTS: dict[str, Any] = {
    "P0": P0,
    "P0map": {"elements": ["1", "2"], "type": [2, 1],
              "rank": {"{}": 0, "{1}": 2, "{2}": 1, "{1,2}": 2}},
    "P1": P1,
    "bool21": BOOL21,
    "zero21": ZERO21,
    "bool1": BOOL1,
    "bool11": BOOL11,
    "bool2": BOOL2,
    "zero1": ZERO1,
    "P0dual": _pm([0, 1, 1, 1]),
    "H2dual": _pm([0, 0, 1, 1]),
    "H2": _pm([0, 2, 0, 2]),
    "P0capped": _pm([0, 2, 0, 2]),
    "normalization": _pm([1, 2, 1, 2]),
    "submodularity": _pm([0, 0, 0, 1], (1, 1)),
    "P0fan_minus": {
        "type": [2, 1], "elements": ["1", "2"],
        "cones": [
            {"I": [], "chain": [], "weight": 1},
            {"I": [], "chain": [[]], "weight": 1},
            {"I": [], "chain": [["2"]], "weight": 1},
            {"I": ["1a"], "chain": [], "weight": 1},
            {"I": ["1b"], "chain": [], "weight": 1},
            {"I": ["2"], "chain": [], "weight": 1},
            {"I": [], "chain": [[], ["2"]], "weight": 1},
            {"I": ["1a"], "chain": [[]], "weight": 1},
            {"I": ["1b"], "chain": [[]], "weight": 1},
            {"I": ["1a", "1b"], "chain": [], "weight": 1},
            {"I": ["1a", "2"], "chain": [], "weight": 1},
            {"I": ["1b", "2"], "chain": [], "weight": 1},
        ]},
    "split_relation": {"terms": [
        {"coefficient": 1, "polymatroid": P1},
        {"coefficient": -1, "polymatroid": _pm([0, 1, 2, 3], (2, 2))},
        {"coefficient": -1, "polymatroid": _pm([0, 2, 2, 3], (2, 2))},
        {"coefficient": 1, "polymatroid": _pm([0, 1, 2, 3], (2, 2))},
    ]},
    "single_term": {"terms": [{"coefficient": 1, "polymatroid": P0}]},
    "cancelling_terms": {"terms": [{"coefficient": 1, "polymatroid": P0},
                                   {"coefficient": -1, "polymatroid": P0}]},
    "P0matrix": {"blocks": [2, 1], "rows": [[1, 0, 1], [0, 1, 1]]},
    "identity21": {"blocks": [2, 1], "rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    "empty21": {"blocks": [2, 1], "rows": []},
}

_EE = ["1a", "1b", "2"]


def _ee_pm(rank, type_):
    return {"elements": _EE, "type": list(type_), "rank": list(rank)}


def _cone(I, chain):
    return {"I": I, "chain": chain, "weight": 1}


@dataclass(frozen=True)
class GoldenCase:
    name: str
    argv: tuple[str, ...]
    exit_code: int
    expected: Any
    csv_text: str | None = None

    def expected_text(self) -> str:
        return self.csv_text if self.csv_text is not None else dumps(self.expected)


def _c(name, argv, expected, exit_code=0, csv_text=None):
    return GoldenCase(name, tuple(argv), exit_code, expected, csv_text)


CASES: list[GoldenCase] = [
    # core
    _c("validate_P0", ["validate", "@P0"], {"valid": True}),
    _c("validate_P0_map_form", ["validate", "@P0map"], {"valid": True}),
    _c("validate_normalization", ["validate", "@normalization"],
       {"error": "Normalization", "operation": "validate", "witness": [[]]}, 1),
    _c("validate_submodularity", ["validate", "@submodularity"],
       {"error": "Submodularity", "operation": "validate", "witness": [["1"], ["2"]]}, 1),
    _c("dual_P0", ["dual", "@P0"], _pm([0, 1, 1, 1])),
    _c("dual_boolean", ["dual", "@bool21"], ZERO21),
    _c("dual_zero", ["dual", "@zero21"], BOOL21),
    _c("union_zero_P0", ["union", "@zero21", "@P0"], P0),
    _c("union_boolean_boolean", ["union", "@bool21", "@bool21"], BOOL21),
    _c("union_duals", ["union", "@P0dual", "@H2dual"], _pm([0, 1, 1, 2])),
    _c("meet_boolean_P0", ["meet", "@bool21", "@P0"], P0),
    _c("meet_P0_H2", ["meet", "@P0", "@H2"], _pm([0, 1, 0, 1])),
    _c("meet_zero_P0", ["meet", "@zero21", "@P0"], ZERO21),
    _c("flats_P0", ["flats", "@P0"], {"flats": [[], ["2"], ["1", "2"]], "loops": []}),
    _c("flats_boolean", ["flats", "@bool21"],
       {"flats": [[], ["1"], ["2"], ["1", "2"]], "loops": []}),
    _c("flats_zero", ["flats", "@zero21"], {"flats": [["1", "2"]], "loops": ["1", "2"]}),
    _c("hr_P0_11", ["hr", "@P0", "--seq", "{1},{1}"], {"hall_rado": True, "matching": ["1", "1"]}),
    _c("hr_P0_12", ["hr", "@P0", "--seq", "{1},{2}"], {"hall_rado": True, "matching": ["1", "2"]}),
    _c("hr_P0_22", ["hr", "@P0", "--seq", "{2},{2}"], {"hall_rado": False, "matching": None}),
    _c("hr_empty_sequence", ["hr", "@P0", "--seq", ""], {"hall_rado": True, "matching": []}),
    # polytopes
    _c("points_P0", ["points", "@P0"], {"points": [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0]]}),
    _c("points_zero", ["points", "@zero21"], {"points": [[0, 0]]}),
    _c("points_boolean", ["points", "@bool21"],
       {"points": [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0], [2, 1]]}),
    _c("base_P0", ["points", "@P0", "--kind", "base"], {"points": [[1, 1], [2, 0]]}),
    _c("base_boolean", ["points", "@bool21", "--kind", "base"], {"points": [[2, 1]]}),
    _c("base_zero", ["points", "@zero21", "--kind", "base"], {"points": [[0, 0]]}),
    _c("base_P0_csv", ["points", "@P0", "--kind", "base", "--format", "csv"], None,
       csv_text="points\n1,1\n2,0\n"),
    # lift
    _c("expand_P0", ["expand", "@P0"], _ee_pm([0, 2, 2, 2, 1, 2, 2, 2], (2, 2, 1))),
    _c("expand_zero", ["expand", "@zero21"], _ee_pm([0] * 8, (0, 0, 0))),
    _c("expand_boolean", ["expand", "@bool21"], _ee_pm([0, 2, 2, 2, 1, 3, 3, 3], (2, 2, 1))),
    _c("lift_P0", ["lift", "@P0"], _ee_pm([0, 1, 1, 2, 1, 2, 2, 2], (1, 1, 1))),
    _c("lift_boolean", ["lift", "@bool21"], _ee_pm([0, 1, 1, 2, 1, 2, 2, 3], (1, 1, 1))),
    _c("lift_zero", ["lift", "@zero21"], _ee_pm([0] * 8, (1, 1, 1))),
    # fans
    _c("polystell_type_1", ["fan", "@bool1", "--polystell"],
       [_cone([], []), _cone([], [[]]), _cone(["1"], [])]),
    _c("polystell_type_11", ["fan", "@bool11", "--polystell", "--summary"],
       {"cones": 11, "dimension": 2, "f": [1, 5, 5], "pure": True}),
    _c("polystell_type_2", ["fan", "@bool2", "--polystell", "--summary"],
       {"cones": 7, "dimension": 2, "f": [1, 3, 3], "pure": True}),
    _c("bergman_boolean_1", ["fan", "@bool1"],
       [_cone([], []), _cone([], [[]]), _cone(["1"], [])]),
    _c("bergman_zero", ["fan", "@zero1"], [_cone([], [])]),
    _c("bergman_P0", ["fan", "@P0", "--summary"],
       {"cones": 13, "dimension": 2, "f": [1, 5, 7], "pure": True}),
    _c("balanced_boolean_1", ["balanced", "@bool1"], {"balanced": True, "witness": None}),
    _c("balanced_P0", ["balanced", "@P0"], {"balanced": True, "witness": None}),
    _c("balanced_P0_minus_cone", ["balanced", "@P0fan_minus"],
       {"balanced": False, "witness": {"I": [], "chain": [["2"]]}}),
    _c("star_boolean_1", ["star", "@bool1"], [_cone([], [])]),
    _c("star_polystell_11", ["star", "@bool11", "--polystell"],
       [_cone([], []), _cone([], [["1"]]), _cone([], [["2"]])]),
    _c("star_loopy", ["star", "@P0capped"],
       {"error": "LoopyPolymatroid", "operation": "star", "witness": [["2"]]}, 1),
    _c("support_P0", ["fan", "@P0", "--support", "--trials", "1000", "--seed", "0"],
       {"support_equal": True}),
    _c("support_boolean_1", ["fan", "@bool1", "--support", "--trials", "200"],
       {"support_equal": True}),
    # chow
    _c("degree_boolean", ["degree", "@bool21", "--seq", "{1},{1},{2}"], {"degree": 1}),
    _c("degree_zero", ["degree", "@zero21", "--seq", ""], {"degree": 1}),
    _c("degree_P0_22", ["degree", "@P0", "--seq", "{2},{2}"], {"degree": 0}),
    _c("degree_P0_11", ["degree", "@P0", "--seq", "{1},{1}"], {"degree": 1}),
    _c("degree_length_mismatch", ["degree", "@P0", "--seq", "{1}"],
       {"error": "LengthMismatch", "operation": "degree", "witness": [1, 2]}, 1),
    _c("bergman_class_P0", ["degree", "@P0", "--seq", "{1},{1}", "--seq", "{1},{2}",
                            "--seq", "{1},{1,2}", "--seq", "{2},{2}", "--seq", "{2},{1,2}",
                            "--seq", "{1,2},{1,2}"],
       {"degrees": [1, 1, 1, 0, 1, 1]}),
    _c("cascade_P0_21", ["cascade", "@P0", "--seq", "{2},{1}"], {"degree": 1}),
    _c("cascade_P0_22", ["cascade", "@P0", "--seq", "{2},{2}"], {"degree": 0}),
    _c("cascade_zero", ["cascade", "@zero21", "--seq", ""], {"degree": 1}),
    _c("volume_P0", ["volume", "@P0"], {"poly": "1/2*t1^2 + t1*t2"}),
    _c("volume_boolean", ["volume", "@bool21"], {"poly": "1/2*t1^2*t2"}),
    _c("volume_zero", ["volume", "@zero21"], {"poly": "1"}),
    _c("egf_P0", ["egf", "@P0"], {"poly": "1/2*t1^2 + t1*t2"}),
    _c("egf_boolean", ["egf", "@bool21"], {"poly": "1/2*t1^2*t2"}),
    _c("egf_zero", ["egf", "@zero21"], {"poly": "1"}),
    _c("split_P1", ["split", "@P1", "--element", "1", "--value", "1"],
       {"le": _pm([0, 1, 2, 3], (2, 2)), "ge": _pm([0, 2, 2, 3], (2, 2)),
        "eq": _pm([0, 1, 2, 3], (2, 2))}),
    _c("split_identity", ["split", "@P0", "--element", "1", "--value", "2"],
       {"le": P0, "ge": _pm([0, 2, 0, 2]), "eq": _pm([0, 2, 0, 2])}),
    _c("split_out_of_range", ["split", "@P0", "--element", "1", "--value", "0"],
       {"error": "SplitOutOfRange", "operation": "split",
        "witness": {"element": "1", "value": 0, "min": 1, "max": 2}}, 1),
    _c("valcheck_split", ["valcheck", "@split_relation"],
       {"classes_zero": True, "indicators_zero": True, "agree": True}),
    _c("valcheck_single", ["valcheck", "@single_term"],
       {"classes_zero": False, "indicators_zero": False, "agree": True}),
    _c("valcheck_cancelling", ["valcheck", "@cancelling_terms"],
       {"classes_zero": True, "indicators_zero": True, "agree": True}),
    _c("dragon_P0_1", ["dragon", "@P0", "--seq", "{1}"], {"degree": 1, "dragon_hall_rado": True}),
    _c("dragon_P0_2", ["dragon", "@P0", "--seq", "{2}"], {"degree": 0, "dragon_hall_rado": False}),
    _c("dragon_rank_one", ["dragon", "@bool1", "--seq", ""], {"degree": 1, "dragon_hall_rado": True}),
    # realization
    _c("realize_P0", ["realize", "@P0matrix"], P0),
    _c("realize_identity", ["realize", "@identity21"], BOOL21),
    _c("realize_empty", ["realize", "@empty21"], ZERO21),
    _c("realize_dual_P0", ["realize", "@P0matrix", "--dual"],
       {"matrix": {"blocks": [2, 1], "rows": [["-1", "-1", "1"]]},
        "polymatroid": _pm([0, 1, 1, 1])}),
    _c("realize_dual_identity", ["realize", "@identity21", "--dual"],
       {"matrix": {"blocks": [2, 1], "rows": []}, "polymatroid": ZERO21}),
    # input errors
    _c("parse_error_sequence", ["degree", "@P0", "--seq", "1,1"],
       {"error": "Parse", "operation": "degree",
        "message": "malformed set sequence '1,1'; expected e.g. {1},{1,2}"}, 2),
]


def run_case(case: GoldenCase, directory: str) -> tuple[int, str]:
    from .cli import run
    argv = []
    for token in case.argv:
        if token.startswith("@"):
            path = os.path.join(directory, token[1:] + ".json")
            if not os.path.exists(path):
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(dumps(DOCUMENTS[token[1:]]))
            argv.append(path)
        else:
            argv.append(token)
    return run(argv)


def check_all(cases=None) -> list[tuple[GoldenCase, bool, str]]:
    """Run every case in a scratch directory; returns (case, passed, actual output)."""
    results = []
    with tempfile.TemporaryDirectory() as directory:
        for case in cases or CASES:
            code, text = run_case(case, directory)
            results.append((case, code == case.exit_code and text == case.expected_text(), text))
    return results
