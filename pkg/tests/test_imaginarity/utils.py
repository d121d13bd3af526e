import logging
import math
import os
import shutil
import tempfile
import unittest

import numpy as np

from imaginarity.conf import override_settings, settings
from imaginarity.states import DensityMatrix

DATA_DIR = settings.DATA_ROOT

# closed forms on the qubit family (I + a sigma_y) / 2
BLOCH_COORDINATES = (0.2, 0.6, 0.9)


def data_path(name):
    return os.path.join(DATA_DIR, name)


def bloch_overlap_measure(a):
    return 1 - math.sqrt(1 - a * a)


def binary_entropy(p):
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def rho_0():
    return DensityMatrix(np.array([[4, 3 - 1j], [3 + 1j, 6]]) / 10)


def delta_0():
    return DensityMatrix(np.array([[6, 1 + 1j], [1 - 1j, 4]]) / 10)


class MockLoggingHandler(logging.Handler):
    """Mock logging handler to check for expected logs."""

    def __init__(self, *args, **kwargs):
        self.reset()
        super().__init__(*args, **kwargs)

    def emit(self, record):
        self.messages[record.levelname.lower()].append(record.getMessage())

    def reset(self):
        self.messages = {
            "debug": [],
            "info": [],
            "warning": [],
            "error": [],
            "critical": [],
        }


class BaseTestCase(unittest.TestCase):
    """
    Collects records of the package logger and gives every test its own
    output directory.
    """

    logger_name = "imaginarity"

    def setUp(self):
        logger = logging.getLogger(self.logger_name)
        self._level = logger.level
        logger.setLevel(logging.DEBUG)
        self.handler = MockLoggingHandler(level=logging.DEBUG)
        logger.addHandler(self.handler)
        self.log = self.handler.messages

        self.output_dir = tempfile.mkdtemp(prefix="imaginarity-")
        self.settings = override_settings(IMAGINARITY_OUTPUT_DIR=self.output_dir)
        self.settings.__enter__()

    def tearDown(self):
        self.settings.__exit__(None, None, None)
        logger = logging.getLogger(self.logger_name)
        logger.removeHandler(self.handler)
        logger.setLevel(self._level)
        shutil.rmtree(self.output_dir)

    def assertClose(self, actual, expected, tol=1e-10):
        self.assertLessEqual(
            abs(actual - expected),
            tol,
            f"{actual!r} differs from {expected!r} by more than {tol}",
        )

    def assertMatrixClose(self, actual, expected, tol=1e-10):
        np.testing.assert_allclose(actual, expected, atol=tol, rtol=0)
