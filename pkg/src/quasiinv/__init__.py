"""Quasi-invariants of finite Coxeter groups and the Dunkl operator calculus, in exact arithmetic."""
__version__ = "0.1.0"
