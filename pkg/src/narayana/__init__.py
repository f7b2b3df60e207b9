"""Narayana numeration, automata over it, and the word-combinatorics built on top."""

from .numeration import narayana, to_canonical, value, is_canonical, normalize  # noqa: F401
from .automata import Automaton  # noqa: F401
from .logic import Registry, compile_query, evaluate, run_script  # noqa: F401
from .estimates import Interval  # noqa: F401

__version__ = "0.1.0"
