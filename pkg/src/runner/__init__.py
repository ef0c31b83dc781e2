"""Concurrent corpus certification."""
