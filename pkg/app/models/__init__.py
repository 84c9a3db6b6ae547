# Lanes
from app.models.lanes.state_array import StateArray

# Tableau
from app.models.tableau.gauss_tableau import GaussTableau

# Problems
from app.models.problems.flow_set import FlowSet
from app.models.problems.ode_problem import OdeProblem, SecondOrderStructure

# Integration
from app.models.irkgl.workspace import StepWorkspace
from app.models.irkgl.trajectory import Trajectory
