# SPDX-License-Identifier: Apache-2.0
"""Interference alignment with quantized Grassmannian CSI feedback."""

from ._core import *  # noqa: F401,F403
from ._core import CSV_HEADER, ConfigError, FailureBudgetError, IoError, SolverError

__version__ = "0.1.0"


def run_csv_rows(config):
    """Run an experiment and return the rows as the CSV text would show them."""
    import csv
    import io

    return list(csv.DictReader(io.StringIO(run_to_csv(config))))
