"""
Artifact writers for Niemytzki Lab runs
"""
from .writers import write_csv, write_report
from .figures import lens_figure

__all__ = ["write_csv", "write_report", "lens_figure"]
