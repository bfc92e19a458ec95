"""Exact tropical cluster machinery for sl3-laminations on marked surfaces."""
