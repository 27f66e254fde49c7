"""Seeded acceptance batteries run by ``main.py acceptance``."""
