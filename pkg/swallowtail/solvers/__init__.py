"""Solvers for the ramified Cauchy problem and the inviscid Burgers equation."""
