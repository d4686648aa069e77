"""Two-axis parameter grids over ``datalad hamiltonian-run``

The outer axis is expanded here, one derived configuration per value,
each run in its own process; the inner axis is the configuration's own
``sweep`` section and runs on ``--jobs`` threads inside that process.

    python tools/grid_sweep.py -p device.kappa -v 1e-4 -v 2e-4 -o grid cool_sweep.yaml
"""
import copy
import logging
import subprocess
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List

from datalad_hamiltonian.exceptions import ConfigError
from datalad_hamiltonian.pathutils.parameterpath import ParameterPathParser
from datalad_hamiltonian.schema import (
    load_config,
    validate_config,
)
from datalad_hamiltonian.utils import (
    format_float,
    write_json,
)


log_level = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "fatal": logging.FATAL
}

running_processes: List[subprocess.Popen] = list()
failed_processes: List[subprocess.Popen] = list()


logger = logging.getLogger("grid_sweep")

argument_parser = ArgumentParser(description="Parallel two-axis parameter grid")
argument_parser.add_argument("-m", "--max-processes", type=int, default=4, help="maximum number of parallel processes")
argument_parser.add_argument("-l", "--log-level", type=str, default="warning", help="log level of this script and of datalad")
argument_parser.add_argument("-p", "--path", type=str, required=True, help="parameter path of the outer axis, e.g. device.kappa")
argument_parser.add_argument("-v", "--value", type=float, action="append", required=True, help="value of the outer axis, can be given multiple times")
argument_parser.add_argument("-j", "--jobs", type=int, default=1, help="threads per process for the inner sweep")
argument_parser.add_argument("-o", "--out", type=str, default="grid", help="directory receiving configurations and results")
argument_parser.add_argument("config", type=str, help="the base experiment configuration")

arguments: Namespace = argument_parser.parse_args(sys.argv[1:])


def reap_finished():
    for p in list(running_processes):
        if p.poll() is not None:
            logger.debug(f"process {p.pid} exited with {p.returncode}")
            running_processes.remove(p)
            if p.returncode != 0:
                failed_processes.append(p)


def ensure_less_processes_than(max_processes: int):
    while len(running_processes) >= max_processes:
        reap_finished()
        if len(running_processes) >= max_processes:
            running_processes[0].wait()


def execute_command_line(purpose, command_line):
    ensure_less_processes_than(arguments.max_processes)
    p = subprocess.Popen(command_line)
    running_processes.append(p)
    logger.info(f"started process {p.pid} [{purpose}]: {' '.join(command_line)}")


def derived_configs(document: dict, out_dir: Path) -> List[Path]:
    path = ParameterPathParser(arguments.path).parse()
    base_output = validate_config(document).output
    result = []
    for index, value in enumerate(arguments.value):
        point = copy.deepcopy(document)
        path.set(point, value)
        point["output"] = f"{base_output}-{index:03d}"
        config_path = out_dir / f"{point['output']}.config.json"
        write_json(config_path, point)
        logger.info(f"{config_path}: {arguments.path} = {format_float(value)}")
        result.append(config_path)
    return result


def main() -> int:
    logging.basicConfig(level=log_level[arguments.log_level])

    if arguments.max_processes < 1:
        print("Error: number of processes must be greater or equal to 1", file=sys.stderr)
        return 1

    out_dir = Path(arguments.out)
    try:
        configs = derived_configs(load_config(arguments.config), out_dir)
    except ConfigError as e:
        print(f"Error: invalid configuration: {e}", file=sys.stderr)
        return 1

    for config_path in configs:
        execute_command_line(
            f"grid point {config_path.name}",
            [
                "datalad", "-l", arguments.log_level, "hamiltonian-run",
                "--jobs", str(arguments.jobs), "--out", str(out_dir),
                str(config_path)
            ])

    while running_processes:
        running_processes[0].wait()
        reap_finished()

    for p in failed_processes:
        print(f"Error: {' '.join(p.args)} exited with {p.returncode}", file=sys.stderr)
    return 1 if failed_processes else 0


if __name__ == "__main__":
    exit(main())
