"""Package setup for tensorhn."""

from setuptools import setup

# Source archives without git metadata still get a version
setup(use_scm_version={"fallback_version": "0.0.0"})
