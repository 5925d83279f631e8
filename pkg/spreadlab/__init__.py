"""Irreversible k-threshold and majority conversion processes on graphs."""
