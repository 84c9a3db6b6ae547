from app.models.tableau.gauss_tableau import GaussTableau

__all__ = ["GaussTableau"]
