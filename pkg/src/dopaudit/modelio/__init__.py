"""Model files, built-in fixtures and analysis reports."""

from .fixtures import FIXTURES, fixture_cometric, fixture_model, fixture_names
from .parser import ModelFile, load_model, parse_model, render_model

__all__ = ["FIXTURES", "ModelFile", "fixture_cometric", "fixture_model", "fixture_names", "load_model",
           "parse_model", "render_model"]
