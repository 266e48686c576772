"""Eigenstates of the two-photon algebra in the Fock-Bargmann representation."""

__version__ = "0.1.0"
