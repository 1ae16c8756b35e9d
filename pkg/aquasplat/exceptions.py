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

from typing import Any, Dict, Optional, Type


class AquaSplatError(Exception):
    """
    Base class for all errors raised by the aquasplat package.
    """


class SceneFormatError(AquaSplatError):
    """
    Exception raised when a scene, camera or network file cannot be parsed.

    :param path: Path to the file that failed to parse
    :param message: Description of the problem
    :param line_number: Optional 1-based line number at which the problem was found
    """

    def __init__(
        self, path: str, message: str, line_number: Optional[int] = None
    ) -> None:
        self.path = path
        self.message = message
        self.line_number = line_number

    def __str__(self) -> str:
        """
        Return the string representation of the parsing error.
        """
        location = f"'{self.path}'"
        if self.line_number is not None:
            location += f", line {self.line_number}"
        return f"Unable to parse {location}: {self.message}"


class ConfigurationError(AquaSplatError):
    """
    Exception raised when a configuration does not match the expected schema.

    :param input_dictionary: Raw key/value pairs that were received
    :param output_type: Type of the configuration object that should be created
    :param message: Error message describing the mismatch
    :param error_type: Type of the underlying validation error
    """

    def __init__(
        self,
        input_dictionary: Dict[str, Any],
        output_type: Type,
        message: str,
        error_type: Type,
    ) -> None:
        self.input_dictionary = input_dictionary
        self.output_type = output_type
        self.message = message
        self.error_type = error_type

    def __str__(self) -> str:
        """
        Return the string representation of the configuration error.
        """
        return (
            f"Creating a configuration of type '{self.output_type.__name__}' failed "
            f"with error: \n\n'{self.error_type.__name__}': {self.message}. "
            f"\n\nThe following values were received: \n{self.input_dictionary}"
        )


class RenderError(AquaSplatError):
    """
    Exception raised when rendering cannot produce a valid image.

    :param quantity: Name of the quantity that is invalid, for example 'sigma_attn'
    :param message: Description of the problem
    :param num_invalid: Number of invalid entries, if applicable
    """

    def __init__(self, quantity: str, message: str, num_invalid: int = 0) -> None:
        self.quantity = quantity
        self.message = message
        self.num_invalid = num_invalid

    def __str__(self) -> str:
        """
        Return the string representation of the render error.
        """
        error_str = f"Render failed on '{self.quantity}': {self.message}"
        if self.num_invalid:
            error_str += f" ({self.num_invalid} invalid entries)"
        return error_str


class NonFiniteGradientError(AquaSplatError):
    """
    Exception raised when back-propagation produces NaN or infinite gradients.

    :param term: Name of the loss term that produced the non-finite gradient
    :param parameter: Name of the parameter group that received it
    """

    def __init__(self, term: str, parameter: str) -> None:
        self.term = term
        self.parameter = parameter

    def __str__(self) -> str:
        """
        Return the string representation of the gradient error.
        """
        return (
            f"Non-finite gradient for parameter group '{self.parameter}', produced "
            f"by loss term '{self.term}'."
        )


class TrainingAbortedError(AquaSplatError):
    """
    Exception raised when training encounters a non-finite loss.

    :param step: Training step at which the problem occurred
    :param losses: Dictionary of loss values at that step
    :param last_checkpoint: Path to the last checkpoint that was written, if any
    """

    def __init__(
        self,
        step: int,
        losses: Dict[str, float],
        last_checkpoint: Optional[str] = None,
    ) -> None:
        self.step = step
        self.losses = losses
        self.last_checkpoint = last_checkpoint

    def __str__(self) -> str:
        """
        Return the string representation of the abort.
        """
        error_str = (
            f"Training aborted at step {self.step}: non-finite loss {self.losses}."
        )
        if self.last_checkpoint is not None:
            error_str += f" Last good checkpoint: '{self.last_checkpoint}'."
        else:
            error_str += " No checkpoint was written before the failure."
        return error_str


class ScheduleError(ValueError):
    """
    Exception raised when a schedule is queried outside the training horizon.
    """


class DepthRangeError(ValueError):
    """
    Exception raised when a depth map is outside the normalized [0, 1] range.
    """
