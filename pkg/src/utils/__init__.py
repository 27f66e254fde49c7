"""Serialization, console tables and thread-capped mapping."""
