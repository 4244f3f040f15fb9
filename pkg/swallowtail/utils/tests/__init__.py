"""Utilities test."""
