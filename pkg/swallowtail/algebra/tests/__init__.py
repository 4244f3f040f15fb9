"""Algebra tests."""
