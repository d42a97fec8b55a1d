"""Unit test package for cyquiver."""
