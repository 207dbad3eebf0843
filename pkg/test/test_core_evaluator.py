"""test unit for core/evaluator.py"""

import runtime_path  # isort:skip

import numpy as np

from core.evaluator import *
from core.initializer import RepTupleInit


def test_residual_evaluator():
    res = ResidualEvaluator.evaluate([[1.0, 2.0]], [[1.0, 0.0]])
    assert res["max_abs"] == 2.0
    assert abs(res["rms"] - np.sqrt(2.0)) < 1e-12


def test_transversality_evaluator():
    m = np.zeros((8, 4))
    m[:4, :4] = np.eye(4)
    assert TransversalityEvaluator.evaluate(m)["verdict"] == "Yes"
    m[3, 3] = 0.0
    res = TransversalityEvaluator.evaluate(m)
    assert res["verdict"] == "No" and res["ratio"] == 0.0
    m[3, 3] = 3e-6
    assert TransversalityEvaluator.evaluate(m)["verdict"] == "Indeterminate"
    assert TransversalityEvaluator.evaluate(np.zeros((8, 4)))["verdict"] \
        == "No"


def test_relation_evaluator():
    np.random.seed(0)
    res = RelationEvaluator.evaluate(RepTupleInit()((100,)))
    assert res["relation"] < 1e-10 and res["traceless"] < 1e-10
