"""
Tests for orbita.
"""
