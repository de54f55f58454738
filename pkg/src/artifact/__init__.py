"""Nearest-neighbour quantum arithmetic over {X, CNOT, controlled-sqrt(X)}."""
__version__ = "0.1.0"
