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

import math
from typing import Any, Dict, List

import attr


@attr.define(slots=False)
class FiniteDifferenceEntry:
    """
    Comparison of the analytic and numeric derivative for one parameter entry.

    :var name: Name of the parameter group
    :var index: Flat index of the entry inside its group
    :var analytic: Derivative computed by back-propagation
    :var numeric: Central finite difference
    :var relative_error: |a - n| / max(|a|, |n|, 1e-8)
    :var kink: True if a discrete decision of the forward pass changed within +-h.
        Such entries are excluded from the tolerance check
    """

    name: str
    index: int
    analytic: float
    numeric: float
    relative_error: float
    kink: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the entry as a dictionary.
        """
        return attr.asdict(self)


@attr.define(slots=False)
class FiniteDifferenceReport:
    """
    Result of a finite difference check over a subset of parameter entries.

    :var step_size: Step size h used for the central differences
    :var tolerance: Maximum allowed relative error
    :var entries: Per-entry comparison results
    """

    step_size: float
    tolerance: float
    entries: List[FiniteDifferenceEntry] = attr.field(factory=list)

    @property
    def checked_entries(self) -> List[FiniteDifferenceEntry]:
        """
        Return the entries that count towards the tolerance check.
        """
        return [entry for entry in self.entries if not entry.kink]

    @property
    def excluded_entries(self) -> List[FiniteDifferenceEntry]:
        """
        Return the entries that were flagged as lying on a kink.
        """
        return [entry for entry in self.entries if entry.kink]

    @property
    def max_error(self) -> float:
        """
        Return the largest relative error of the checked entries.
        """
        errors = [entry.relative_error for entry in self.checked_entries]
        return max(errors) if errors else 0.0

    @property
    def mean_error(self) -> float:
        """
        Return the mean relative error of the checked entries.
        """
        errors = [entry.relative_error for entry in self.checked_entries]
        return math.fsum(errors) / len(errors) if errors else 0.0

    @property
    def passed(self) -> bool:
        """
        Return True if every checked entry is within the tolerance.
        """
        return self.max_error <= self.tolerance

    def summary(self) -> Dict[str, Any]:
        """
        Return the aggregate values of the report.
        """
        return {
            "step_size": self.step_size,
            "tolerance": self.tolerance,
            "num_checked": len(self.checked_entries),
            "num_excluded": len(self.excluded_entries),
            "max_error": self.max_error,
            "mean_error": self.mean_error,
            "passed": self.passed,
        }
