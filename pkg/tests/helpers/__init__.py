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

from .constants import (
    BASE_TEST_PATH,
    DEFAULT_SEED,
    EXACT_TOLERANCE,
    NIGHTLY_TOTAL_STEPS,
)
from .fixtures import get_test_fixtures
from .oracles import (
    brute_force_composite,
    direct_ssim,
    naive_alpha,
    naive_bilinear,
    random_image,
)

__all__ = [
    "BASE_TEST_PATH",
    "DEFAULT_SEED",
    "EXACT_TOLERANCE",
    "NIGHTLY_TOTAL_STEPS",
    "brute_force_composite",
    "direct_ssim",
    "get_test_fixtures",
    "naive_alpha",
    "naive_bilinear",
    "random_image",
]
