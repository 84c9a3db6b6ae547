from app.models.problems.flow_set import FlowSet
from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure

__all__ = ["FlowSet", "OdeProblem", "SecondOrderStructure"]
