"""Filtration graphs, concave envelopes and Kempf functions."""
