from ._mevgame import *  # noqa: F401,F403
from ._mevgame import __doc__  # noqa: F401
