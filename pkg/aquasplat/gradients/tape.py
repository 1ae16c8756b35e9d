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

"""
Bookkeeping for the non-differentiable parts of a forward pass.

Every value that is cut from the autograd graph goes through `stop_gradient`, and
every discrete decision (skip masks, clip masks, validity masks) is reported through
`note_branch`. Outside of a tape both calls are cheap pass-throughs. A finite
difference check records a tape at the base point and replays it at the perturbed
points, so that stop-gradient values are held fixed and flipped decisions can be
detected.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from enum import Enum
from typing import Iterator, List, Optional

import attr
import torch


class TapeMode(Enum):
    """
    Enum representing what a ForwardTape does with the values that reach it.
    """

    RECORD = "record"
    REPLAY = "replay"

    def __str__(self) -> str:
        """
        Return the string representation of the TapeMode instance.
        """
        return self.value


@attr.define(slots=False)
class ForwardTape:
    """
    Ordered record of the stop-gradient values and branch decisions of one forward
    pass.

    :var mode: Whether values are being recorded or replayed
    :var stop_gradients: Detached values in the order in which they were produced
    :var branches: Boolean decision masks in the order in which they were produced
    """

    mode: TapeMode = TapeMode.RECORD
    stop_gradients: List[torch.Tensor] = attr.field(factory=list)
    branches: List[torch.Tensor] = attr.field(factory=list)

    def __attrs_post_init__(self) -> None:
        """
        Initialize the replay cursor.
        """
        self._cursor = 0
        self.diverged = False

    def replay(self) -> "ForwardTape":
        """
        Return a tape that replays the stop-gradient values of this tape and records
        fresh branch decisions.
        """
        return ForwardTape(mode=TapeMode.REPLAY, stop_gradients=self.stop_gradients)

    def take(self, value: torch.Tensor) -> torch.Tensor:
        """
        Handle a detached value: store it when recording, substitute the stored
        value when replaying.

        A replayed pass whose values no longer line up with the recording (a
        different count or shape) is marked as diverged and keeps its own values.
        Recorded values are stored as copies, unaffected by later in-place changes
        to the parameters.

        :param value: Detached tensor produced by the current forward pass
        :return: Tensor to use in place of `value`
        """
        if self.mode == TapeMode.RECORD:
            self.stop_gradients.append(value.clone())
            return value
        if self._cursor >= len(self.stop_gradients):
            self.diverged = True
            return value
        recorded = self.stop_gradients[self._cursor]
        self._cursor += 1
        if recorded.shape != value.shape:
            self.diverged = True
            return value
        return recorded

    def same_branches(self, other: "ForwardTape") -> bool:
        """
        Return True if both tapes took exactly the same discrete decisions.
        """
        if self.diverged or other.diverged:
            return False
        if len(self.branches) != len(other.branches):
            return False
        return all(
            mine.shape == theirs.shape and bool(torch.equal(mine, theirs))
            for mine, theirs in zip(self.branches, other.branches)
        )


_ACTIVE_TAPE: ContextVar[Optional[ForwardTape]] = ContextVar(
    "aquasplat_forward_tape", default=None
)


def stop_gradient(value: torch.Tensor) -> torch.Tensor:
    """
    Return `value` cut from the autograd graph.

    Inside a replaying tape the value recorded at the base point is returned instead.

    :param value: Tensor to detach
    :return: Detached tensor
    """
    detached = value.detach()
    tape = _ACTIVE_TAPE.get()
    if tape is None:
        return detached
    return tape.take(detached)


def note_branch(mask: torch.Tensor) -> None:
    """
    Report a discrete decision of the forward pass to the active tape, if any.

    :param mask: Boolean tensor holding the decision per element
    """
    tape = _ACTIVE_TAPE.get()
    if tape is not None:
        tape.branches.append(mask.detach().clone())


@contextmanager
def active_tape(tape: ForwardTape) -> Iterator[ForwardTape]:
    """
    Context manager that makes `tape` the active tape for the duration of the block.

    :param tape: Tape to activate
    :return: The activated tape
    """
    token = _ACTIVE_TAPE.set(tape)
    try:
        yield tape
    finally:
        _ACTIVE_TAPE.reset(token)
