"""Test package for viss."""
