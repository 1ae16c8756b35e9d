# Copyright (C) 2022 Intel Corporation
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions
# and limitations under the License.

""" This module defines the test configuration """
import logging
import os

import pytest
import torch
from _pytest.main import Session

from .helpers import get_test_fixtures
from .helpers.constants import BASE_TEST_PATH

pytest_plugins = get_test_fixtures()

# -------------------------------------------------------
# ---------------- Environment variables ----------------
# -------------------------------------------------------

NUM_THREADS = int(os.environ.get("AQUASPLAT_TEST_THREADS", "1"))
# NUM_THREADS is the number of threads torch may use during the tests. A single
# thread fixes the order of reductions, so repeated runs are bit-identical.

RUN_NIGHTLY = os.environ.get("AQUASPLAT_RUN_NIGHTLY", "0").lower() in ["true", "1"]
# RUN_NIGHTLY enables the desk-scale training runs in the `nightly` directory.

# ------------------------------------------
# ---------------- Fixtures ----------------
# ------------------------------------------


@pytest.fixture(scope="session")
def fxt_base_test_path() -> str:
    """
    This fixture returns the absolute path to the `tests` folder
    """
    yield BASE_TEST_PATH


@pytest.fixture(scope="session")
def fxt_run_nightly() -> bool:
    """
    This fixture returns True if the nightly training runs are enabled
    """
    yield RUN_NIGHTLY


# ----------------------------------------------
# ---------------- Pytest hooks ----------------
# ----------------------------------------------


def pytest_sessionstart(session: Session) -> None:
    """
    This function is called before a pytest test run begins.

    It fixes the number of torch threads for the whole session.

    :param session: Pytest session instance that has just been created
    """
    torch.set_num_threads(NUM_THREADS)
    logging.info(f"Tests run with {NUM_THREADS} torch thread(s).")
