"""Bayesian revenue toolbox for single-parameter markets."""

from ._auctionlab import *  # noqa: F401,F403
from ._auctionlab import __version__  # noqa: F401
