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
Command line interface of aquasplat.

Usage: aquasplat {simulate,train,render,eval,check-grad} [flags]. Invalid flags
print the usage text and exit with code 2, runtime failures exit with code 1.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from .aquasplat import AquaSplat
from .data_models import (
    FixtureSpec,
    MediumPreset,
    MediumPresetName,
    MetricTask,
    RenderComponent,
)
from .exceptions import AquaSplatError
from .training import format_reports

EXIT_SUCCESS = 0
EXIT_FAILURE = 1


def build_parser() -> argparse.ArgumentParser:
    """
    Return the argument parser for all subcommands.
    """
    parser = argparse.ArgumentParser(
        prog="aquasplat",
        description="Gaussian splatting through scattering media",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", help="Generate or degrade a dataset with a medium preset"
    )
    simulate.add_argument("--output", required=True, help="Output directory")
    simulate.add_argument(
        "--preset",
        choices=[str(name) for name in MediumPresetName],
        default=str(MediumPresetName.FOG),
        help="Built-in medium preset",
    )
    simulate.add_argument("--clean-dir", help="Folder of clean images")
    simulate.add_argument("--depth-dir", help="Folder of depth maps")
    for name, label in (
        ("--beta-d", "Direct attenuation"),
        ("--beta-b", "Backscatter"),
        ("--beta-inf", "Veiling light"),
    ):
        simulate.add_argument(
            name,
            type=float,
            nargs=3,
            metavar=("R", "G", "B"),
            help=f"{label} coefficients of a custom medium",
        )
    simulate.add_argument(
        "--fixture-gaussians",
        type=int,
        help="Generate a synthetic scene with this many Gaussians",
    )
    simulate.add_argument("--train-views", type=int, default=12)
    simulate.add_argument("--test-views", type=int, default=3)
    simulate.add_argument("--width", type=int, default=64)
    simulate.add_argument("--height", type=int, default=48)
    simulate.add_argument("--seed", type=int, default=0)

    train = commands.add_parser("train", help="Train on a dataset directory")
    train.add_argument("--config", required=True, help="key=value config file")
    train.add_argument("--dataset", required=True, help="Dataset directory")
    train.add_argument("--output", required=True, help="Output directory")

    render = commands.add_parser("render", help="Render a trained checkpoint")
    render.add_argument("--checkpoint", required=True, help="Checkpoint directory")
    render.add_argument("--cameras", required=True, help="Camera file")
    render.add_argument("--output", required=True, help="Output directory")
    render.add_argument(
        "--component",
        choices=[str(component) for component in RenderComponent],
        default=str(RenderComponent.COMPOSITE),
    )

    evaluate = commands.add_parser("eval", help="Compare rendered images")
    evaluate.add_argument("--pred-dir", required=True, help="Rendered images")
    evaluate.add_argument("--gt-dir", required=True, help="Ground truth images")
    evaluate.add_argument(
        "--task",
        choices=[str(task) for task in MetricTask],
        default=str(MetricTask.NOVEL_VIEW),
    )

    check_grad = commands.add_parser(
        "check-grad", help="Verify the analytic gradients on a micro-scene"
    )
    check_grad.add_argument("--seed", type=int, default=0)
    check_grad.add_argument("--step-size", type=float, default=1e-6)
    check_grad.add_argument("--tolerance", type=float, default=1e-4)
    return parser


def _run_simulate(
    aquasplat: AquaSplat, args: argparse.Namespace, parser: argparse.ArgumentParser
) -> int:
    custom = [args.beta_d, args.beta_b, args.beta_inf]
    if any(value is not None for value in custom) and None in custom:
        parser.error("--beta-d, --beta-b and --beta-inf must be given together")
    if args.fixture_gaussians is not None:
        if args.clean_dir is not None or args.depth_dir is not None:
            parser.error("--fixture-gaussians cannot be combined with --clean-dir")
        spec = FixtureSpec(
            num_gaussians=args.fixture_gaussians,
            num_train_views=args.train_views,
            num_test_views=args.test_views,
            width=args.width,
            height=args.height,
            preset=args.preset,
            seed=args.seed,
        )
        aquasplat.simulate_fixture(spec, output_dir=args.output)
        return EXIT_SUCCESS
    if args.clean_dir is None or args.depth_dir is None:
        parser.error(
            "simulate requires either --fixture-gaussians or both --clean-dir and "
            "--depth-dir"
        )
    if args.beta_d is not None:
        preset = MediumPreset(
            name="custom",
            beta_d=args.beta_d,
            beta_b=args.beta_b,
            beta_inf=args.beta_inf,
        )
    else:
        preset = MediumPreset.from_name(args.preset)
    aquasplat.simulate_images(args.clean_dir, args.depth_dir, args.output, preset)
    return EXIT_SUCCESS


def _run_command(
    aquasplat: AquaSplat, args: argparse.Namespace, parser: argparse.ArgumentParser
) -> int:
    if args.command == "simulate":
        return _run_simulate(aquasplat, args, parser)
    if args.command == "train":
        result = aquasplat.train(args.config, args.dataset, output_dir=args.output)
        print(json.dumps({"validation": result.validation}))
        return EXIT_SUCCESS
    if args.command == "render":
        aquasplat.render(
            args.checkpoint, args.cameras, args.output, component=args.component
        )
        return EXIT_SUCCESS
    if args.command == "eval":
        report = aquasplat.evaluate(args.pred_dir, args.gt_dir, task=args.task)
        for record in report.to_records():
            print(json.dumps(record))
        return EXIT_SUCCESS
    reports = aquasplat.check_gradients(
        seed=args.seed, step_size=args.step_size, tolerance=args.tolerance
    )
    print(format_reports(reports))
    if all(report.passed for report in reports.values()):
        return EXIT_SUCCESS
    return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line interface.

    :param argv: Arguments without the program name. Defaults to sys.argv[1:]
    :return: Exit code of the command
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    aquasplat = AquaSplat()
    try:
        return _run_command(aquasplat, args, parser)
    except (AquaSplatError, OSError, ValueError) as error:
        logging.error(f"aquasplat {args.command} failed: {error}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
