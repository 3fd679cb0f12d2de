"""Numerical Tulczyjew triplet maps on principal bundles, trivialized by a connection and reduced by the group."""

__version__ = "0.1.0"
