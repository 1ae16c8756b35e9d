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


from pathlib import Path
from typing import List

from .constants import BASE_TEST_PATH


def get_test_fixtures() -> List[str]:
    """
    Return the dotted module paths of every fixture file under `tests/fixtures`,
    in a stable order, so that they can be registered as pytest plugins.
    """
    tests_root = Path(BASE_TEST_PATH)
    modules = []
    for path in sorted((tests_root / "fixtures").rglob("*.py")):
        relative = path.relative_to(tests_root.parent).with_suffix("")
        if any(part.startswith("__") for part in relative.parts):
            continue
        modules.append(".".join(relative.parts))
    return modules
