"""Toolkit tests."""
