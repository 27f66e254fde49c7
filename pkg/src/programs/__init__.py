"""Oriented-matroid programs and their directed cocircuit graphs."""
