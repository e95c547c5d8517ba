"""Simplicial branched covers via the partial unfolding."""
