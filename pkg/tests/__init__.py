"""Test package for frenet4."""
