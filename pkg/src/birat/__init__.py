"""Birationality of rational maps, Rees algebras and free resolutions over Q and F_p."""

__version__ = "0.1.0"
