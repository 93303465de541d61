"""Full counting statistics and TUR quantifiers for maser heat engines."""

from masertur._core import *  # noqa: F401,F403
from masertur._core import __version__  # noqa: F401
