"""Evaluator class."""

import numpy as np

TRANSVERSE_RATIO = 1e-5
DEGENERATE_RATIO = 1e-6


class BaseEvaluator(object):

    @classmethod
    def evaluate(cls, predictions, targets):
        raise NotImplementedError("Must specify evaluator.")


class ResidualEvaluator(BaseEvaluator):
    """Max-abs and RMS distance between two stacks of trace profiles."""

    @classmethod
    def evaluate(cls, predictions, targets):
        predictions = np.asarray(predictions)
        targets = np.asarray(targets)
        assert predictions.shape == targets.shape
        diff = predictions - targets
        res = {"max_abs": float(np.max(np.abs(diff))),
               "rms": float(np.sqrt(np.mean(diff ** 2)))}
        return res


class TransversalityEvaluator(BaseEvaluator):
    """Singular values of the tangent matrix [dL_s | dL_2].

    `predictions` is the (8, 4) Jacobian of the trace profile in
    (phi, theta, chi, psi); `targets` is the rank the span must reach.
    The verdict is "Yes" when the ratio sigma_rank / sigma_max clears
    TRANSVERSE_RATIO, "No" below DEGENERATE_RATIO and "Indeterminate" in
    between.
    """

    @classmethod
    def evaluate(cls, predictions, targets=4):
        s = np.linalg.svd(np.asarray(predictions, dtype=float),
                          compute_uv=False)
        rank = int(targets)
        if s.size < rank or s[0] == 0.0:
            return {"singular_values": s, "ratio": 0.0, "verdict": "No"}
        ratio = float(s[rank - 1] / s[0])
        if ratio >= TRANSVERSE_RATIO:
            verdict = "Yes"
        elif ratio < DEGENERATE_RATIO:
            verdict = "No"
        else:
            verdict = "Indeterminate"
        return {"singular_values": s, "ratio": ratio, "verdict": verdict}


class RelationEvaluator(BaseEvaluator):
    """Residual of [A, B] a b = 1 and of tracelessness over a batch of
    tuples; `targets` is unused."""

    @classmethod
    def evaluate(cls, predictions, targets=None):
        relation = np.asarray(predictions.relation_residual())
        traceless = np.asarray(predictions.traceless_residual())
        res = {"relation": float(np.max(relation)),
               "traceless": float(np.max(traceless))}
        return res
