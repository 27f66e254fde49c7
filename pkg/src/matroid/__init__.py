"""Chirotopes, cocircuit oriented matroids, structural operations and file formats."""
