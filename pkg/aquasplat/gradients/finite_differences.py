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

import logging
from typing import Callable, Optional, Sequence

import torch

from aquasplat.data_models import FiniteDifferenceEntry, FiniteDifferenceReport

from .param_set import ParamSet, gradients_of
from .tape import ForwardTape, active_tape

MIN_STEP_SIZE = 1e-7
MAX_STEP_SIZE = 1e-3
ERROR_FLOOR = 1e-8


def relative_error(analytic: float, numeric: float) -> float:
    """
    Return |a - n| / max(|a|, |n|, 1e-8).
    """
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), ERROR_FLOOR)


def _evaluate(function: Callable[[], torch.Tensor], tape: ForwardTape) -> float:
    """
    Evaluate `function` without gradient tracking while `tape` is active.
    """
    with torch.no_grad(), active_tape(tape):
        return float(function())


def fd_check(
    function: Callable[[], torch.Tensor],
    params: ParamSet,
    subset: Optional[Sequence[int]] = None,
    step_size: float = 1e-6,
    tolerance: float = 1e-4,
) -> FiniteDifferenceReport:
    """
    Compare the gradient of a scalar function with central finite differences.

    `function` is evaluated once under a recording tape and differentiated. Every
    entry of `subset` is then shifted by +-h in place and the function is evaluated
    again with the recorded stop-gradient values replayed, so both derivatives
    describe the same function. Entries for which the forward pass takes a different
    discrete decision at +-h are flagged as kinks and do not count towards the
    tolerance. All parameters are restored afterwards.

    :param function: Callable computing a scalar tensor from the current values of
        `params`
    :param params: ParamSet holding the parameters to perturb
    :param subset: Flat indices into the ParamSet to check. Defaults to all entries
    :param step_size: Step size h, in [1e-7, 1e-3]
    :param tolerance: Maximum relative error for the check to pass
    :return: FiniteDifferenceReport holding the per-entry results
    """
    if not MIN_STEP_SIZE <= step_size <= MAX_STEP_SIZE:
        raise ValueError(
            f"Finite difference step size must be in [{MIN_STEP_SIZE}, "
            f"{MAX_STEP_SIZE}], got {step_size}"
        )
    indices = list(range(len(params))) if subset is None else [int(i) for i in subset]

    base_tape = ForwardTape()
    with active_tape(base_tape):
        value = function()
    analytic = gradients_of(value, params).flatten()

    report = FiniteDifferenceReport(step_size=step_size, tolerance=tolerance)
    for flat_index in indices:
        position, local_index = params.locate(flat_index)
        values = params.tensors[position].data.view(-1)
        original = values[local_index].item()

        values[local_index] = original + step_size
        plus_tape = base_tape.replay()
        f_plus = _evaluate(function, plus_tape)
        values[local_index] = original - step_size
        minus_tape = base_tape.replay()
        f_minus = _evaluate(function, minus_tape)
        values[local_index] = original

        numeric = (f_plus - f_minus) / (2.0 * step_size)
        derivative = float(analytic[flat_index])
        kink = not (
            base_tape.same_branches(plus_tape) and base_tape.same_branches(minus_tape)
        )
        report.entries.append(
            FiniteDifferenceEntry(
                name=params.names[position],
                index=local_index,
                analytic=derivative,
                numeric=numeric,
                relative_error=relative_error(derivative, numeric),
                kink=kink,
            )
        )
    logging.debug(
        f"Finite difference check of {len(indices)} entries: max relative error "
        f"{report.max_error:.3e}, {len(report.excluded_entries)} excluded."
    )
    return report
