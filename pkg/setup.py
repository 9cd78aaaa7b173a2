"""Setup.py, kept for editable installs with older tooling."""

from setuptools import setup

setup()
