"""Single-element extensions: lexicographic, perturbed and Mandel."""
