"""Test suite for invsemi."""
