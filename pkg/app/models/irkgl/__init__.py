from app.models.irkgl.trajectory import Trajectory
from app.models.irkgl.workspace import StepWorkspace

__all__ = ["StepWorkspace", "Trajectory"]
