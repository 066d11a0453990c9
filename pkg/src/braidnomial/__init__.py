"""Braid monodromy of trinomial equations Y^(mn) - X^g Y^(mp) + X^r = 0."""

from .braids import BraidWord, conjugation_invariants, invariants_of, lambda_family, same_element
from .equation import TrinomialEquation, branching_points, build_equation, coincidence_pair, newton_polygon
from .loops import LoopSpec, parse_loop
from .predictor import predict, predicted_artin
from .series import eval_inf_series, eval_p_series, eval_psi, eval_q_series
from .tracker import collision_pair_at, extract_braid, label_base_roots, trace

__all__ = [
    "BraidWord", "LoopSpec", "TrinomialEquation", "branching_points", "build_equation",
    "coincidence_pair", "collision_pair_at", "conjugation_invariants", "eval_inf_series",
    "eval_p_series", "eval_psi", "eval_q_series", "extract_braid", "invariants_of",
    "label_base_roots", "lambda_family", "newton_polygon", "parse_loop", "predict",
    "predicted_artin", "same_element", "trace",
]
