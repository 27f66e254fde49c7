"""Topes, simplicial topes and mutations."""
