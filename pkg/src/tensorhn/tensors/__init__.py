"""Rank two tensors over the projective line and their stability."""
