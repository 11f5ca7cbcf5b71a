"""Command-line front end and expression language."""

from .evaluate import Value, evaluate, evaluate_text
from .main import main, run
from .syntax import ParseError, parse, to_source
