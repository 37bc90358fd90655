"""Exact certificates for essential-dimension lower bounds."""
