"""Test package for semicat."""
