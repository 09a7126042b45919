"""Alternating connectivity of random graphs."""
