"""Tests for results storage."""
