"""Feasibility of linear systems with <=, <, = and != via asymptotic linear programs."""

__version__ = "0.1.0"
