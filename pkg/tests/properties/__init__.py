"""
Property-based tests for orbita.
"""
