"""
Explicit splitting steps built from exact sub-flows. States here are plain
float vectors in the flow variables; no lanes.
"""

from typing import Callable, Sequence

import numpy as np

from app.constants.error_codes import ErrorCode
from app.core.exceptions import AppException
from app.models.problems.flow_set import FlowMap, FlowSet
from app.schemas.splitting.scheme_schemas import ABSplittingScheme, CompositionScheme

BaseStep = Callable[[np.ndarray, float], np.ndarray]


def _require_flows(flows: FlowSet, count: int | None = None, at_least: int = 2) -> None:
    n = len(flows)
    if (count is not None and n != count) or n < at_least:
        raise AppException(
            2,
            f"Splitting needs {count if count is not None else f'at least {at_least}'} flows, got {n}",
            ErrorCode.FLOW_COUNT_MISMATCH,
            details={"labels": list(flows.labels)},
        )


# =========================
# SECOND-ORDER BASE STEPS
# =========================
def strang_step(flows: FlowSet, h: float, state: np.ndarray) -> np.ndarray:
    """phi^A_{h/2} o phi^B_h o phi^A_{h/2}, rightmost first."""
    _require_flows(flows, count=2)
    flow_a, flow_b = flows.flows
    state = flow_a(state, h / 2)
    state = flow_b(state, h)
    return flow_a(state, h / 2)


def multi_part_step(flows: FlowSet, h: float, state: np.ndarray) -> np.ndarray:
    """Halves of parts 1..m-1 outward, full step of part m innermost."""
    _require_flows(flows)
    *outer, inner = flows.flows
    for flow in outer:
        state = flow(state, h / 2)
    state = inner(state, h)
    for flow in reversed(outer):
        state = flow(state, h / 2)
    return state


def base_step_for(flows: FlowSet) -> BaseStep:
    if len(flows) == 2:
        return lambda state, h: strang_step(flows, h, state)
    return lambda state, h: multi_part_step(flows, h, state)


# =========================
# COMPOSITIONS
# =========================
def composition_step(scheme: CompositionScheme, base_step: BaseStep, h: float, state: np.ndarray) -> np.ndarray:
    """phi_{gamma_s h} o ... o phi_{gamma_1 h}."""
    for gamma in scheme.gammas:
        state = base_step(state, gamma * h)
    return state


def fused_composition_step(scheme: CompositionScheme, flows: FlowSet, h: float, state: np.ndarray) -> np.ndarray:
    """
    Composition of multi-part Strang stages with the outermost flow of
    neighbouring stages merged into one application.
    """
    _require_flows(flows)
    *outer, inner = flows.flows
    first, middle = outer[0], outer[1:]
    gammas = scheme.gammas

    state = first(state, gammas[0] * h / 2)
    for j, gamma in enumerate(gammas):
        sub = gamma * h
        for flow in middle:
            state = flow(state, sub / 2)
        state = inner(state, sub)
        for flow in reversed(middle):
            state = flow(state, sub / 2)
        if j + 1 < len(gammas):
            state = first(state, (gamma + gammas[j + 1]) * h / 2)
    return first(state, gammas[-1] * h / 2)


def gamma_to_ab(gammas: Sequence[float], name: str = "composition", order: int = 2) -> ABSplittingScheme:
    """a_1 = g_1/2, a_j = (g_{j-1} + g_j)/2, a_{s+1} = g_s/2, b = g."""
    if not gammas:
        raise AppException(2, "gamma list is empty", ErrorCode.INVALID_CONFIG)
    g = [float(x) for x in gammas]
    a = [g[0] / 2]
    a += [(g[j - 1] + g[j]) / 2 for j in range(1, len(g))]
    a.append(g[-1] / 2)
    return ABSplittingScheme(name=name, order=order, a=a, b=g)


def ab_splitting_step(
    scheme: ABSplittingScheme,
    flow_a: FlowMap,
    flow_b: FlowMap,
    h: float,
    state: np.ndarray,
) -> np.ndarray:
    """phi^A_{a_{s+1}h} o phi^B_{b_s h} o ... o phi^B_{b_1 h} o phi^A_{a_1 h}."""
    for a_j, b_j in zip(scheme.a, scheme.b):
        state = flow_a(state, a_j * h)
        state = flow_b(state, b_j * h)
    return flow_a(state, scheme.a[-1] * h)
