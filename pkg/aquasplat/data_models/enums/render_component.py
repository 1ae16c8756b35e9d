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

from enum import Enum
from typing import List


class RenderComponent(Enum):
    """
    Enum representing the image components that can be written by the renderer.
    """

    COMPOSITE = "composite"
    OBJECT = "object"
    MEDIUM = "medium"
    DEPTH = "depth"
    RESTORED = "restored"
    ALL = "all"

    def __str__(self) -> str:
        """
        Return the string representation of the RenderComponent instance.
        """
        return self.value

    @classmethod
    def individual_components(cls) -> List["RenderComponent"]:
        """
        Return the list of components that correspond to a single output image.

        :return: List of RenderComponent instances, excluding ALL
        """
        return [cls.COMPOSITE, cls.OBJECT, cls.MEDIUM, cls.DEPTH, cls.RESTORED]

    def expand(self) -> List["RenderComponent"]:
        """
        Return the individual components that this component stands for.

        :return: List of RenderComponent instances
        """
        if self == RenderComponent.ALL:
            return self.individual_components()
        return [self]
