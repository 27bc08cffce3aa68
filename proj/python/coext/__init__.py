"""Co-extensionality toolkit: formulas, finite membership structures and checks."""

from ._coext import *  # noqa: F401,F403
from ._coext import ParseError, EvalError, Formula, Structure  # noqa: F401
