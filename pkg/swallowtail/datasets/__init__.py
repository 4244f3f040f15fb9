"""Run configurations of the convergence tests."""
