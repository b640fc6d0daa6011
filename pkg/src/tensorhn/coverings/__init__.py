"""Coverings of the projective line inside ruled surfaces."""
