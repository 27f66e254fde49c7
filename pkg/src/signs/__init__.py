"""Sign arithmetic and packed sign vectors."""

from src.signs.sign_vector import Sign, SignVector, compose, conformal, separation

__all__ = ["Sign", "SignVector", "compose", "conformal", "separation"]
