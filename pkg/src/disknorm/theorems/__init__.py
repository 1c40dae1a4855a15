"""Executable checks of the pre-Schwarzian and Bloch norm results."""
