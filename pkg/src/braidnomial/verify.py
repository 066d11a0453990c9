"""Comparison of predicted and traced braids for the same loop product."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braids import BraidWord, conjugation_invariants, same_element, EQUAL_BY_INVARIANTS
from .equation import TrinomialEquation
from .errors import DegenerateProjection
from .loops import product_path
from .predictor import MonodromyPrediction, predict
from .tracker import ExtractedBraid, LabeledBase, TracedPath, TrackerControls, extract_braid, trace_loop
from .twists import DEFAULT_DIRECTION, Slide, TwistSequence, project_samples, simulate

MATCH = "match"
MATCH_CONJ = "match_up_to_conjugation"
MISMATCH = "mismatch"


@dataclass
class LoopComparison:
    prediction: MonodromyPrediction
    traced: TracedPath
    empirical: ExtractedBraid
    predicted_word: BraidWord  # model word conjugated onto the traced base roots
    permutation_ok: bool
    word_verdict: str
    verdict: str
    direction: float


def connector(actual: np.ndarray, model: np.ndarray) -> np.ndarray:
    """Samples of the slide from the traced base roots to the model configuration."""
    seq = TwistSequence(actual, [Slide(tuple((k, complex(z)) for k, z in enumerate(model)))])
    return simulate(seq)


def compare(eq: TrinomialEquation, loops, base: LabeledBase, controls: TrackerControls = TrackerControls(),
            delta: float | None = None, direction: float = DEFAULT_DIRECTION) -> LoopComparison:
    loops = tuple(loops)
    pred = predict(eq, loops)
    traced = trace_loop(eq, product_path(eq, loops, delta, base.eps), base, controls)
    link = connector(base.roots, pred.samples[0])
    # after the loop strand k sits where label P[k] started, so it returns along that path
    back = link[::-1][:, list(pred.permutation)]
    combined = np.concatenate([link, pred.samples[1:], back[1:]], axis=0)
    d = direction
    for _ in range(8):
        try:
            emp = extract_braid(traced, d)
            model = project_samples(combined, d)
            if emp.direction == model.direction == d:
                break
        except DegenerateProjection:
            pass
        d *= 2
    else:
        raise DegenerateProjection("no common projection direction")
    perm_ok = pred.permutation == emp.permutation
    if same_element(model.word, emp.word) == EQUAL_BY_INVARIANTS:
        wv = MATCH
    elif conjugation_invariants(model.word) == conjugation_invariants(emp.word):
        wv = MATCH_CONJ
    else:
        wv = MISMATCH
    verdict = wv if perm_ok else MISMATCH
    return LoopComparison(pred, traced, emp, model.word, perm_ok, wv, verdict, d)
