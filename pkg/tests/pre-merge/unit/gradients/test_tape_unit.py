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

import torch

from aquasplat.data_models import DTYPE
from aquasplat.gradients import (
    ForwardTape,
    TapeMode,
    active_tape,
    note_branch,
    stop_gradient,
)


class TestForwardTape:
    def test_pass_through_without_tape(self):
        # Arrange
        value = torch.ones(3, dtype=DTYPE, requires_grad=True)

        # Act
        detached = stop_gradient(value)
        note_branch(value > 0)

        # Assert
        assert not detached.requires_grad
        assert torch.equal(detached, value.detach())

    def test_replay_substitutes_recorded_values(self):
        # Arrange
        tape = ForwardTape()
        with active_tape(tape):
            stop_gradient(torch.tensor([1.0, 2.0], dtype=DTYPE))
        replay = tape.replay()

        # Act
        with active_tape(replay):
            replayed = stop_gradient(torch.tensor([5.0, 6.0], dtype=DTYPE))

        # Assert
        assert replay.mode == TapeMode.REPLAY
        assert replayed.tolist() == [1.0, 2.0]
        assert not replay.diverged
        assert len(tape.stop_gradients) == 1

    def test_recorded_values_ignore_later_in_place_changes(self):
        # Arrange
        parameter = torch.tensor([1.0, 2.0], dtype=DTYPE)
        tape = ForwardTape()
        with active_tape(tape):
            stop_gradient(parameter)

        # Act
        parameter.add_(10.0)
        with active_tape(tape.replay()):
            replayed = stop_gradient(parameter)

        # Assert
        assert replayed.tolist() == [1.0, 2.0]

    def test_mismatched_replay_diverges(self):
        # Arrange
        tape = ForwardTape()
        with active_tape(tape):
            stop_gradient(torch.zeros(2, dtype=DTYPE))
        wrong_shape = tape.replay()
        too_many = tape.replay()

        # Act
        with active_tape(wrong_shape):
            kept = stop_gradient(torch.ones(3, dtype=DTYPE))
        with active_tape(too_many):
            stop_gradient(torch.zeros(2, dtype=DTYPE))
            stop_gradient(torch.zeros(2, dtype=DTYPE))

        # Assert
        assert wrong_shape.diverged and too_many.diverged
        assert kept.tolist() == [1.0, 1.0, 1.0]
        assert not tape.same_branches(wrong_shape)

    def test_branch_comparison(self):
        # Arrange
        values = torch.tensor([-1.0, 2.0], dtype=DTYPE)
        first, same, flipped = ForwardTape(), ForwardTape(), ForwardTape()

        # Act
        for tape, offset in ((first, 0.0), (same, 0.5), (flipped, 1.5)):
            with active_tape(tape):
                note_branch(values + offset > 0)

        # Assert
        assert first.same_branches(same)
        assert not first.same_branches(flipped)
        assert not first.same_branches(ForwardTape())

    def test_tape_is_deactivated_after_the_block(self):
        # Arrange
        tape = ForwardTape()

        # Act
        with active_tape(tape):
            note_branch(torch.tensor([True]))
        note_branch(torch.tensor([False]))

        # Assert
        assert len(tape.branches) == 1
