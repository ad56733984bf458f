"""Exact verification toolkit for a bordered skein exact triangle."""
