"""Convolutional codes built from linear block codes."""
