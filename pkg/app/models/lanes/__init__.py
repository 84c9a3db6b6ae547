from app.models.lanes.state_array import StateArray

__all__ = ["StateArray"]
