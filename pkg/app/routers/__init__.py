# Routers package
from app.routers import designs, simulations

__all__ = ["designs", "simulations"]
