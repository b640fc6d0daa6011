"""Exact rational polynomial algebra and binary forms over Q[x]."""
