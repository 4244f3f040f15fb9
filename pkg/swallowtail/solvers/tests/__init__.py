"""Solvers tests."""
