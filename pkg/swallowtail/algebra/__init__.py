"""Truncated power series, the cubic ring O[[z]] and exact polynomial ideals."""
