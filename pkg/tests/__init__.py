"""Tensorhn tests."""
