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

import json
import logging
import os

from aquasplat.data_models import Checkpoint, TrainConfig

from .config_converter import ConfigConverter
from .network_converter import NetworkConverter
from .scene_converter import SceneConverter

SCENE_FILE = "scene.txt"
NETWORK_FILE = "networks.txt"
CONFIG_FILE = "config.txt"
STATE_FILE = "state.json"


def checkpoint_folder_name(step: int) -> str:
    """
    Return the name of the checkpoint folder for a step.
    """
    return f"step_{step:06d}"


class CheckpointConverter:
    """
    Class that handles reading and writing training checkpoints.

    A checkpoint is a directory holding the scene file, the network file, the
    configuration snapshot and a JSON state file with the step index.
    """

    @staticmethod
    def save(checkpoint: Checkpoint, directory: str) -> str:
        """
        Write a checkpoint to a directory, creating it if needed.

        :param checkpoint: Checkpoint to write
        :param directory: Target directory
        :return: Path of the directory
        """
        os.makedirs(directory, exist_ok=True, mode=0o770)
        SceneConverter.save(checkpoint.cloud, os.path.join(directory, SCENE_FILE))
        NetworkConverter.save(checkpoint.field, os.path.join(directory, NETWORK_FILE))
        ConfigConverter.save(checkpoint.config, os.path.join(directory, CONFIG_FILE))
        with open(os.path.join(directory, STATE_FILE), "w") as state_file:
            json.dump({"step": checkpoint.step}, state_file)
        logging.info(f"Checkpoint of step {checkpoint.step} saved to '{directory}'.")
        return directory

    @staticmethod
    def load(directory: str) -> Checkpoint:
        """
        Read a checkpoint from a directory.

        :param directory: Directory written by `save`
        :return: Checkpoint holding the cloud, networks, configuration and step
        """
        if not os.path.isdir(directory):
            raise FileNotFoundError(f"No checkpoint found at '{directory}'")
        with open(os.path.join(directory, STATE_FILE), "r") as state_file:
            state = json.load(state_file)
        return Checkpoint(
            cloud=SceneConverter.load(os.path.join(directory, SCENE_FILE)),
            field=NetworkConverter.load(os.path.join(directory, NETWORK_FILE)),
            config=ConfigConverter.load(
                os.path.join(directory, CONFIG_FILE), TrainConfig
            ),
            step=int(state["step"]),
        )
